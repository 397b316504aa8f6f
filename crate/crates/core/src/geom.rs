//! Planar primitives: points, segments, the orientation predicate and the
//! proper-crossing test used by every algorithm in the crate.
//!
//! Collinearity is decided with a relative tolerance: a cross product is
//! treated as zero when its magnitude is below [`COLLINEAR_EPSILON`] times the
//! squared extent of the points involved. Ties along a sort axis are always
//! exact comparisons.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative collinearity threshold shared by all predicates.
pub const COLLINEAR_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(Error::NonFinite { x, y })
        }
    }

    #[inline]
    pub fn coord(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
        }
    }

    /// Bitwise equality, so that `-0.0` and `0.0` are distinct and NaN never sneaks in.
    #[inline]
    pub fn bits(&self) -> (u64, u64) {
        (self.x.to_bits(), self.y.to_bits())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn perpendicular(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if a == b {
            return Err(Error::ZeroLengthSegment { x: a.x, y: a.y });
        }
        Ok(Segment { a, b })
    }

    /// Closed projection interval on `axis`, as `(min, max)`.
    #[inline]
    pub fn interval(&self, axis: Axis) -> (f64, f64) {
        let (u, v) = (self.a.coord(axis), self.b.coord(axis));
        if u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }
}

/// Outcome of intersecting two segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrossKind {
    None,
    /// The open interiors cross at exactly this point.
    Proper(Point),
    /// Endpoint touching or collinear overlap.
    Degenerate,
}

#[inline]
fn cross(p: Point, q: Point, r: Point) -> f64 {
    (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
}

/// Sign of `(q - p) x (r - p)`: `+1` for a counter-clockwise turn, `-1` for
/// clockwise, `0` when collinear within [`COLLINEAR_EPSILON`].
pub fn orientation_sign(p: Point, q: Point, r: Point) -> i8 {
    orientation_sign_eps(p, q, r, COLLINEAR_EPSILON)
}

pub fn orientation_sign_eps(p: Point, q: Point, r: Point, eps: f64) -> i8 {
    let det = cross(p, q, r);
    let scale = (q.x - p.x)
        .abs()
        .max((q.y - p.y).abs())
        .max((r.x - p.x).abs())
        .max((r.y - p.y).abs());
    if det.abs() <= eps * scale * scale {
        0
    } else if det > 0.0 {
        1
    } else {
        -1
    }
}

/// True iff the closed projections of both segments on `axis` intersect.
#[inline]
pub fn interval_overlap(s1: &Segment, s2: &Segment, axis: Axis) -> bool {
    let (lo1, hi1) = s1.interval(axis);
    let (lo2, hi2) = s2.interval(axis);
    lo1 <= hi2 && lo2 <= hi1
}

/// Classifies the contact between two segments.
///
/// Segments that share an endpoint because they are consecutive polygon edges
/// must be filtered out by the caller; here a shared endpoint is `Degenerate`.
pub fn segment_cross(s1: &Segment, s2: &Segment) -> CrossKind {
    if !interval_overlap(s1, s2, Axis::X) || !interval_overlap(s1, s2, Axis::Y) {
        return CrossKind::None;
    }
    let (a, b, c, d) = (s1.a, s1.b, s2.a, s2.b);
    let o1 = orientation_sign(a, b, c);
    let o2 = orientation_sign(a, b, d);
    let o3 = orientation_sign(c, d, a);
    let o4 = orientation_sign(c, d, b);

    if o1 * o2 > 0 || o3 * o4 > 0 {
        return CrossKind::None;
    }
    // An endpoint on the other segment, or a collinear pair whose boxes
    // overlap (and therefore share a span).
    if o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0 {
        return CrossKind::Degenerate;
    }

    // Signs strictly alternate on both sides: solve for the crossing on s1.
    let d3 = cross(c, d, a);
    let d4 = cross(c, d, b);
    let t = d3 / (d3 - d4);
    CrossKind::Proper(Point {
        x: a.x + t * (b.x - a.x),
        y: a.y + t * (b.y - a.y),
    })
}
