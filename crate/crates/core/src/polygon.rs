//! Polygon rings, orientation, the all-pairs simplicity oracle and the
//! index-reversal correction of a single crossing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{segment_cross, CrossKind, Point, Segment, COLLINEAR_EPSILON};

/// A closed ring of at least three vertices. Edge `i` joins vertex `i` to
/// vertex `(i + 1) % n`; the closing vertex is never stored twice.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrientationSign {
    Ccw,
    Cw,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        for (i, p) in vertices.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(Error::NonFinite { x: p.x, y: p.y });
            }
            if *p == vertices[(i + 1) % n] {
                return Err(Error::DuplicateConsecutiveVertex { index: i });
            }
        }
        Ok(Polygon { vertices })
    }

    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self> {
        let pts = coords
            .iter()
            .map(|&(x, y)| Point::new(x, y))
            .collect::<Result<Vec<_>>>()?;
        Polygon::new(pts)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false; a polygon has at least three vertices.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    #[inline]
    pub fn vertex(&self, v: usize) -> Point {
        self.vertices[v]
    }

    /// Edge `i` as a segment from vertex `i` to its successor.
    #[inline]
    pub fn edge(&self, i: usize) -> Segment {
        edge_of(&self.vertices, i)
    }

    #[inline]
    pub fn edges_adjacent(&self, i: usize, j: usize) -> bool {
        edges_adjacent(self.len(), i, j)
    }

    /// Vertices as a multiset key, for conservation checks.
    pub fn sorted_vertex_bits(&self) -> Vec<(u64, u64)> {
        let mut bits: Vec<_> = self.vertices.iter().map(Point::bits).collect();
        bits.sort_unstable();
        bits
    }

    /// Undirected edge set keyed by endpoint bits, independent of labelling.
    pub fn edge_set(&self) -> Vec<((u64, u64), (u64, u64))> {
        let n = self.len();
        let mut edges: Vec<_> = (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i].bits(), self.vertices[(i + 1) % n].bits());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        edges.sort_unstable();
        edges
    }
}

#[inline]
pub(crate) fn edge_of(vertices: &[Point], i: usize) -> Segment {
    let n = vertices.len();
    Segment {
        a: vertices[i],
        b: vertices[(i + 1) % n],
    }
}

/// Edges `i` and `j` share a vertex (or are the same edge).
#[inline]
pub fn edges_adjacent(n: usize, i: usize, j: usize) -> bool {
    i == j || (i + 1) % n == j || (j + 1) % n == i
}

/// Twice the signed area (shoelace sum).
pub fn shoelace(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (p, q) = (vertices[i], vertices[(i + 1) % n]);
            p.x * q.y - q.x * p.y
        })
        .sum()
}

pub(crate) fn area_sign_of(vertices: &[Point]) -> Result<OrientationSign> {
    let sum = shoelace(vertices);
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in vertices {
        lo_x = lo_x.min(p.x);
        hi_x = hi_x.max(p.x);
        lo_y = lo_y.min(p.y);
        hi_y = hi_y.max(p.y);
    }
    let scale = (hi_x - lo_x).max(hi_y - lo_y);
    if sum.abs() <= COLLINEAR_EPSILON * scale * scale {
        Err(Error::DegenerateArea)
    } else if sum > 0.0 {
        Ok(OrientationSign::Ccw)
    } else {
        Ok(OrientationSign::Cw)
    }
}

pub fn signed_area_sign(poly: &Polygon) -> Result<OrientationSign> {
    area_sign_of(&poly.vertices)
}

/// Reverses the vertex subsequence `[lo, hi]`, leaving the rest untouched.
pub fn reverse_range(poly: &Polygon, lo: usize, hi: usize) -> Result<Polygon> {
    let mut vertices = poly.vertices.clone();
    reverse_in_place(&mut vertices, lo, hi)?;
    Ok(Polygon { vertices })
}

pub(crate) fn reverse_in_place(vertices: &mut [Point], lo: usize, hi: usize) -> Result<()> {
    if lo > hi || hi >= vertices.len() {
        return Err(Error::IndexOutOfRange {
            lo,
            hi,
            len: vertices.len(),
        });
    }
    vertices[lo..=hi].reverse();
    Ok(())
}

/// Applied reversal(s) of one correction, in application order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CorrectionSteps {
    pub lo: usize,
    pub hi: usize,
    /// The orientation guard reversed `1..n-1` after the main reversal.
    pub guard: bool,
}

/// Uncrosses edges `i < j` in place, then restores the pre-correction
/// orientation if the reversal flipped it and it was defined.
pub(crate) fn correct_in_place(
    vertices: &mut [Point],
    i: usize,
    j: usize,
    guard: bool,
) -> Result<CorrectionSteps> {
    let n = vertices.len();
    let before = if guard {
        area_sign_of(vertices).ok()
    } else {
        None
    };
    reverse_in_place(vertices, i + 1, j)?;
    let mut steps = CorrectionSteps {
        lo: i + 1,
        hi: j,
        guard: false,
    };
    if let Some(before) = before {
        if let Ok(after) = area_sign_of(vertices) {
            if after != before {
                reverse_in_place(vertices, 1, n - 1)?;
                steps.guard = true;
            }
        }
    }
    Ok(steps)
}

/// Fixes the proper crossing between edges `i` and `j` by reversing the
/// vertices `[i+1, j]`, with the orientation guard.
pub fn correct_crossing(poly: &Polygon, i: usize, j: usize) -> Result<Polygon> {
    let n = poly.len();
    if i >= j || j >= n {
        return Err(Error::IndexOutOfRange {
            lo: i,
            hi: j,
            len: n,
        });
    }
    if poly.edges_adjacent(i, j)
        || !matches!(
            segment_cross(&poly.edge(i), &poly.edge(j)),
            CrossKind::Proper(_)
        )
    {
        return Err(Error::NotACrossing { i, j });
    }
    let mut vertices = poly.vertices.clone();
    correct_in_place(&mut vertices, i, j, true)?;
    Ok(Polygon { vertices })
}

/// All-pairs simplicity check: no two non-adjacent edges meet at all.
pub fn is_simple(poly: &Polygon) -> bool {
    let n = poly.len();
    for i in 0..n {
        let ei = poly.edge(i);
        for j in i + 2..n {
            if edges_adjacent(n, i, j) {
                continue;
            }
            if segment_cross(&ei, &poly.edge(j)) != CrossKind::None {
                return false;
            }
        }
    }
    true
}
