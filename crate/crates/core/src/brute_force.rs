//! All-pairs oracles: the quadratic report, the two brute-force correctors
//! that define the reference picking order, and the single-edge query.

use crate::error::{Error, Result};
use crate::geom::{segment_cross, CrossKind, Point};
use crate::polygon::{
    area_sign_of, edge_of, edges_adjacent, reverse_in_place, OrientationSign, Polygon,
};
use crate::scanline::IntersectionEvent;

fn check(vertices: &[Point], i: usize, j: usize) -> Result<Option<Point>> {
    match segment_cross(&edge_of(vertices, i), &edge_of(vertices, j)) {
        CrossKind::None => Ok(None),
        CrossKind::Proper(at) => Ok(Some(at)),
        CrossKind::Degenerate => Err(Error::DegenerateInput {
            edge_i: i.min(j),
            edge_j: i.max(j),
        }),
    }
}

/// Every proper crossing, in lexicographic `(i, j)` order.
pub fn bf_report(poly: &Polygon) -> Result<Vec<IntersectionEvent>> {
    let n = poly.len();
    let verts = poly.vertices();
    let mut events = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if edges_adjacent(n, i, j) {
                continue;
            }
            if let Some(at) = check(verts, i, j)? {
                events.push(IntersectionEvent::new(i, j, at));
            }
        }
    }
    Ok(events)
}

/// Edges properly crossing edge `i`, optionally only those with a higher index.
pub fn bf_query(poly: &Polygon, i: usize, higher_only: bool) -> Vec<usize> {
    let n = poly.len();
    let ei = poly.edge(i);
    (0..n)
        .filter(|&j| !edges_adjacent(n, i, j) && (!higher_only || j > i))
        .filter(|&j| matches!(segment_cross(&ei, &poly.edge(j)), CrossKind::Proper(_)))
        .collect()
}

/// First crossing partner of edge `e` among edges `lo..hi`.
fn first_partner(
    vertices: &[Point],
    e: usize,
    lo: usize,
    hi: usize,
) -> Result<Option<(usize, Point)>> {
    let n = vertices.len();
    for b in lo..hi {
        if edges_adjacent(n, e, b) {
            continue;
        }
        if let Some(at) = check(vertices, b, e)? {
            return Ok(Some((b, at)));
        }
    }
    Ok(None)
}

struct Run {
    vertices: Vec<Point>,
    events: Vec<IntersectionEvent>,
    cap: usize,
}

impl Run {
    fn new(poly: &Polygon) -> Self {
        let n = poly.len();
        Run {
            vertices: poly.vertices().to_vec(),
            events: Vec::new(),
            cap: 4 * n * n,
        }
    }

    fn uncross(&mut self, i: usize, j: usize, at: Point) -> Result<()> {
        if self.events.len() >= self.cap {
            return Err(Error::NonTermination {
                corrections: self.events.len(),
                polygon: self.vertices.clone(),
                events: self.events.clone(),
            });
        }
        self.events.push(IntersectionEvent::new(i, j, at));
        reverse_in_place(&mut self.vertices, i + 1, j)
    }

    /// Scans pairs `(i, j > i)` in increasing order. `settle` runs after each
    /// correction and returns the edge index to resume from. The orientation
    /// is restored once, at the end.
    fn drive<F>(
        mut self,
        initial_sign: Option<OrientationSign>,
        mut settle: F,
    ) -> Result<(Polygon, Vec<IntersectionEvent>)>
    where
        F: FnMut(&mut Run, usize, usize) -> Result<usize>,
    {
        let n = self.vertices.len();
        let mut i = 0;
        'outer: while i < n {
            let mut j = i + 2;
            while j < n {
                if !edges_adjacent(n, i, j) {
                    if let Some(at) = check(&self.vertices, i, j)? {
                        self.uncross(i, j, at)?;
                        i = settle(&mut self, i, j)?.min(i);
                        continue 'outer;
                    }
                }
                j += 1;
            }
            i += 1;
        }
        if let Some(before) = initial_sign {
            if area_sign_of(&self.vertices)
                .ok()
                .is_some_and(|after| after != before)
            {
                reverse_in_place(&mut self.vertices, 1, n - 1)?;
            }
        }
        Ok((Polygon::new(self.vertices)?, self.events))
    }
}

/// Brute-force corrector that, after each fix of `(i, j)`, re-checks every
/// edge between the two indexes against lower edges before resuming.
pub fn bf_correct_v2(poly: &Polygon) -> Result<(Polygon, Vec<IntersectionEvent>)> {
    let sign = area_sign_of(poly.vertices()).ok();
    Run::new(poly).drive(sign, |run, i, j| {
        let mut resume = i;
        for a in i..=j {
            if let Some((b, _)) = first_partner(&run.vertices, a, 0, a.min(resume))? {
                resume = resume.min(b);
            }
        }
        Ok(resume)
    })
}

/// Brute-force corrector that only re-checks the two newly formed edges
/// against lower edges, recursing on the lower of each new pair.
pub fn bf_correct_v3(poly: &Polygon) -> Result<(Polygon, Vec<IntersectionEvent>)> {
    let sign = area_sign_of(poly.vertices()).ok();
    Run::new(poly).drive(sign, |run, i, j| {
        let low_j = settle_lower(run, j, 0)?;
        let low_i = settle_lower(run, i, 0)?;
        Ok(low_i.min(low_j))
    })
}

/// Removes crossings between edge `e` and lower edges, recursing on the
/// lower edge of every new pair. Returns the lowest edge index touched.
fn settle_lower(run: &mut Run, e: usize, depth: usize) -> Result<usize> {
    let n = run.vertices.len();
    assert!(depth <= n, "recursion deeper than the ring");
    let mut lowest = e;
    while let Some((b, at)) = first_partner(&run.vertices, e, 0, e)? {
        run.uncross(b, e, at)?;
        lowest = lowest.min(b);
        lowest = lowest.min(settle_lower(run, b, depth + 1)?);
    }
    Ok(lowest)
}
