//! Scan-line reporting and correction of self-intersections.
//!
//! Vertices are sorted once along the polygon's major coordinate. For every
//! sorted position `p`, each edge leaving the vertex at `p` towards a higher
//! position is tested against the edges starting at the positions lying
//! strictly between its two extremities. No tree or event queue is kept: the
//! only memory beyond the ring is the sorted order, its inverse and the start
//! of each equal-coordinate run (three integer arrays of length `n`).
//!
//! The corrector stops at the first crossing, uncrosses it by reversing the
//! vertex range between the two edges, relabels the sorted order in place and
//! backtracks. Sorted positions name fixed points of the plane, so a reversal
//! only renames the vertices stored in the order; the coordinates never move.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{interval_overlap, orientation_sign, segment_cross, Axis, CrossKind, Point};
use crate::polygon::{correct_in_place, edge_of, edges_adjacent, is_simple, Polygon};

/// Vertex indices sorted along one axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedOrder {
    pub axis: Axis,
    /// Sorted position -> vertex index.
    pub order: Vec<usize>,
    /// Vertex index -> sorted position.
    pub rank: Vec<usize>,
    /// Sorted position -> first position of its equal-coordinate run.
    pub run_start: Vec<usize>,
}

impl SortedOrder {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Relabels the order after vertices `[lo, hi]` were reversed: every
    /// stored index `v` in that range becomes `lo + hi - v`.
    pub fn apply_reversal(&mut self, lo: usize, hi: usize) -> Result<()> {
        let n = self.order.len();
        if lo > hi || hi >= n {
            return Err(Error::IndexOutOfRange { lo, hi, len: n });
        }
        for v in lo..=hi {
            self.order[self.rank[v]] = lo + hi - v;
        }
        self.rank[lo..=hi].reverse();
        Ok(())
    }
}

/// Backtracking memory of the corrector.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanState {
    /// Position where the last crossing was corrected, with the upper
    /// exploration limit in force before that correction.
    pub last: Option<LastCorrection>,
    /// Sorted-position interval touched by the last correction.
    pub impact: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LastCorrection {
    pub pos: usize,
    pub former_upper: usize,
}

impl ScanState {
    pub fn backtrack_allowed(&self, p: usize) -> bool {
        matches!(self.impact, Some((lo, hi)) if lo <= p && p <= hi)
    }

    pub fn former_upper(&self, p: usize) -> Option<usize> {
        self.last.filter(|l| l.pos == p).map(|l| l.former_upper)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntersectionEvent {
    pub edge_i: usize,
    pub edge_j: usize,
    #[serde(flatten)]
    pub at: Point,
}

impl IntersectionEvent {
    pub fn new(a: usize, b: usize, at: Point) -> Self {
        IntersectionEvent {
            edge_i: a.min(b),
            edge_j: a.max(b),
            at,
        }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.edge_i, self.edge_j)
    }
}

/// Work counters of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub n_vertices: usize,
    pub n_crossings: usize,
    /// Sorted positions visited by the outer loop, revisits included.
    pub n_real: usize,
    /// Candidate points examined, summed over all edges.
    pub explored: usize,
}

impl RunMetrics {
    /// Visits beyond one pass plus one revisit per correction.
    pub fn n_supp(&self) -> i64 {
        self.n_real as i64 - self.n_vertices as i64 - self.n_crossings as i64
    }

    pub fn avg_explored(&self) -> f64 {
        self.explored as f64 / self.n_vertices.max(1) as f64
    }
}

/// An edge leaving a vertex: its index and the vertex at its far end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRef {
    pub edge: usize,
    pub other: usize,
}

/// The axis with the larger coordinate range; ties go to X.
pub fn major_axis(poly: &Polygon) -> Axis {
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in poly.vertices() {
        lo_x = lo_x.min(p.x);
        hi_x = hi_x.max(p.x);
        lo_y = lo_y.min(p.y);
        hi_y = hi_y.max(p.y);
    }
    if hi_y - lo_y > hi_x - lo_x {
        Axis::Y
    } else {
        Axis::X
    }
}

/// Stable sort by exact coordinate, ties by vertex index.
pub fn sort_vertices(poly: &Polygon, axis: Axis) -> SortedOrder {
    sort_points(poly.vertices(), axis)
}

fn sort_points(vertices: &[Point], axis: Axis) -> SortedOrder {
    let n = vertices.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        vertices[a]
            .coord(axis)
            .total_cmp(&vertices[b].coord(axis))
            .then(a.cmp(&b))
    });
    let mut rank = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        rank[v] = pos;
    }
    let mut run_start = vec![0; n];
    for pos in 1..n {
        let same = vertices[order[pos]].coord(axis) == vertices[order[pos - 1]].coord(axis);
        run_start[pos] = if same { run_start[pos - 1] } else { pos };
    }
    SortedOrder {
        axis,
        order,
        rank,
        run_start,
    }
}

/// Both edges at vertex `v`, the previous one first.
#[inline]
fn incident(n: usize, v: usize) -> [EdgeRef; 2] {
    let prev = (v + n - 1) % n;
    [
        EdgeRef {
            edge: prev,
            other: prev,
        },
        EdgeRef {
            edge: v,
            other: (v + 1) % n,
        },
    ]
}

/// Edges at `v` whose far endpoint sits higher in the sorted order.
pub fn upward_segments(poly: &Polygon, so: &SortedOrder, v: usize) -> Vec<EdgeRef> {
    upward(poly.len(), so, v).collect()
}

#[inline]
fn upward(n: usize, so: &SortedOrder, v: usize) -> impl Iterator<Item = EdgeRef> + '_ {
    let r = so.rank[v];
    incident(n, v)
        .into_iter()
        .filter(move |e| so.rank[e.other] > r)
}

/// Result of a reporting scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub axis: Axis,
    /// Sorted by edge pair.
    pub events: Vec<IntersectionEvent>,
    pub metrics: RunMetrics,
}

/// Reports every proper crossing, sorting along the major axis.
pub fn report_intersections(poly: &Polygon) -> Result<Vec<IntersectionEvent>> {
    Ok(report_scan(poly, major_axis(poly))?.events)
}

pub fn report_scan(poly: &Polygon, axis: Axis) -> Result<ScanReport> {
    let n = poly.len();
    let verts = poly.vertices();
    let so = sort_vertices(poly, axis);
    let perp = axis.perpendicular();
    let mut events = Vec::new();
    let mut metrics = RunMetrics {
        n_vertices: n,
        ..Default::default()
    };

    for p in 0..n {
        metrics.n_real += 1;
        let v = so.order[p];
        for e in upward(n, &so, v) {
            let seg_e = edge_of(verts, e.edge);
            for r in p + 1..so.rank[e.other] {
                metrics.explored += 1;
                let w = so.order[r];
                for f in upward(n, &so, w) {
                    if edges_adjacent(n, e.edge, f.edge) {
                        continue;
                    }
                    let seg_f = edge_of(verts, f.edge);
                    if !interval_overlap(&seg_e, &seg_f, perp) {
                        continue;
                    }
                    match segment_cross(&seg_e, &seg_f) {
                        CrossKind::None => {}
                        CrossKind::Proper(at) => {
                            events.push(IntersectionEvent::new(e.edge, f.edge, at))
                        }
                        CrossKind::Degenerate => {
                            return Err(Error::DegenerateInput {
                                edge_i: e.edge.min(f.edge),
                                edge_j: e.edge.max(f.edge),
                            })
                        }
                    }
                }
            }
        }
    }
    events.sort_by_key(IntersectionEvent::pair);
    events.dedup_by_key(|ev| ev.pair());
    metrics.n_crossings = events.len();
    Ok(ScanReport {
        axis,
        events,
        metrics,
    })
}

/// Outcome of a correction run.
#[derive(Debug, Clone, PartialEq)]
pub struct Correction {
    pub polygon: Polygon,
    /// Every correction applied, in order, labelled with the edge indices
    /// in force just before it.
    pub events: Vec<IntersectionEvent>,
    pub metrics: RunMetrics,
}

/// Corrects all crossings, sorting along the major axis.
pub fn correct_all(poly: &Polygon) -> Result<Correction> {
    correct_scan(poly, major_axis(poly))
}

/// A crossing found during the scan, in sorted positions.
struct Hit {
    edge_e: usize,
    /// Position of the far end of the studied edge.
    upper: usize,
    edge_f: usize,
    /// Position of the candidate point.
    r: usize,
    /// Position of the candidate edge's other extremity.
    s: usize,
    at: Point,
}

pub fn correct_scan(poly: &Polygon, axis: Axis) -> Result<Correction> {
    let n = poly.len();
    let mut verts = poly.vertices().to_vec();
    let mut so = sort_points(&verts, axis);
    let perp = axis.perpendicular();
    let cap = 4 * n * n;
    let mut state = ScanState::default();
    let mut events = Vec::new();
    let mut metrics = RunMetrics {
        n_vertices: n,
        ..Default::default()
    };

    let mut p = 0;
    while p < n {
        metrics.n_real += 1;
        let v = so.order[p];
        let extend = state.former_upper(p);
        let backtrack = state.backtrack_allowed(p);

        let mut hit = None;
        'search: for e in upward(n, &so, v) {
            let seg_e = edge_of(&verts, e.edge);
            let own_upper = so.rank[e.other];
            let upper = extend.map_or(own_upper, |f| f.max(own_upper));
            for r in p + 1..upper {
                metrics.explored += 1;
                let w = so.order[r];
                for f in incident(n, w) {
                    let s = so.rank[f.other];
                    if !backtrack && s < r {
                        continue;
                    }
                    if edges_adjacent(n, e.edge, f.edge) {
                        continue;
                    }
                    let seg_f = edge_of(&verts, f.edge);
                    if !interval_overlap(&seg_e, &seg_f, perp) {
                        continue;
                    }
                    match segment_cross(&seg_e, &seg_f) {
                        CrossKind::None => {}
                        CrossKind::Proper(at) => {
                            hit = Some(Hit {
                                edge_e: e.edge,
                                upper: own_upper,
                                edge_f: f.edge,
                                r,
                                s,
                                at,
                            });
                            break 'search;
                        }
                        CrossKind::Degenerate => {
                            return Err(Error::DegenerateInput {
                                edge_i: e.edge.min(f.edge),
                                edge_j: e.edge.max(f.edge),
                            })
                        }
                    }
                }
            }
        }

        let Some(hit) = hit else {
            p += 1;
            continue;
        };
        if events.len() >= cap {
            return Err(Error::NonTermination {
                corrections: events.len(),
                polygon: verts,
                events,
            });
        }

        let (i, j) = (hit.edge_e.min(hit.edge_f), hit.edge_e.max(hit.edge_f));
        events.push(IntersectionEvent::new(i, j, hit.at));
        // The two new edges close triangles with the crossing point.
        let pockets = [
            [verts[i], hit.at, verts[j]],
            [verts[(i + 1) % n], hit.at, verts[(j + 1) % n]],
        ];
        let steps = correct_in_place(&mut verts, i, j, true)?;
        so.apply_reversal(steps.lo, steps.hi)?;
        if steps.guard {
            so.apply_reversal(1, n - 1)?;
        }

        state.last = Some(LastCorrection {
            pos: p,
            former_upper: hit.upper,
        });
        let target = if hit.s < p {
            // The candidate edge reached below the studied position: restart
            // from the lowest extremity of the edges now meeting at that point.
            state.impact = Some((hit.s, hit.r));
            let v = so.order[hit.s];
            incident(n, v)
                .iter()
                .map(|e| so.rank[e.other])
                .fold(hit.s, usize::min)
        } else {
            state.impact = Some((p, hit.r));
            p
        };
        let target = target.min(pocket_sweep(
            &verts,
            &so,
            &pockets,
            hit.s.min(p),
            &mut metrics,
        ));
        if let Some(impact) = state.impact.as_mut() {
            impact.0 = impact.0.min(target);
        }
        p = so.run_start[target];
    }

    metrics.n_crossings = events.len();
    let polygon = Polygon::new(verts)?;
    debug_assert!(is_simple(&polygon));
    Ok(Correction {
        polygon,
        events,
        metrics,
    })
}

fn in_triangle(t: &[Point; 3], q: Point) -> bool {
    let a = orientation_sign(t[0], t[1], q);
    let b = orientation_sign(t[1], t[2], q);
    let c = orientation_sign(t[2], t[0], q);
    (a >= 0 && b >= 0 && c >= 0) || (a <= 0 && b <= 0 && c <= 0)
}

/// An old edge can only cross a new one without crossing either removed
/// edge if it ends inside one of the pockets. Returns the lowest position
/// reached by an edge leaving such an endpoint, or `lowest` if none.
fn pocket_sweep(
    verts: &[Point],
    so: &SortedOrder,
    pockets: &[[Point; 3]; 2],
    lowest: usize,
    metrics: &mut RunMetrics,
) -> usize {
    let n = verts.len();
    let axis = so.axis;
    let top = pockets
        .iter()
        .flatten()
        .map(|q| q.coord(axis))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut target = lowest;
    let mut q = so.run_start[lowest];
    while q < n && verts[so.order[q]].coord(axis) <= top {
        let v = so.order[q];
        let pt = verts[v];
        metrics.explored += 1;
        let corner = pockets.iter().flatten().any(|c| c.bits() == pt.bits());
        if !corner && pockets.iter().any(|t| in_triangle(t, pt)) {
            for e in incident(n, v) {
                target = target.min(so.rank[e.other]);
            }
        }
        q += 1;
    }
    target
}

/// Relabelled copy of `so` after vertices `[lo, hi]` were reversed.
pub fn resort_after_reversal(so: &SortedOrder, lo: usize, hi: usize) -> Result<SortedOrder> {
    let mut out = so.clone();
    out.apply_reversal(lo, hi)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::reverse_range;

    fn bowtie() -> Polygon {
        Polygon::from_coords(&[(0., 0.), (2., 2.), (2., 0.), (0., 2.)]).unwrap()
    }

    fn square() -> Polygon {
        Polygon::from_coords(&[(0., 0.), (2., 0.), (2., 2.), (0., 2.)]).unwrap()
    }

    fn hexagon() -> Polygon {
        let pts: Vec<_> = (0..6)
            .map(|k| {
                let a = k as f64 * std::f64::consts::PI / 3.0 + 0.1;
                (a.cos(), a.sin())
            })
            .collect();
        Polygon::from_coords(&pts).unwrap()
    }

    #[test]
    fn major_axis_examples() {
        let wide = Polygon::from_coords(&[(0., 0.), (10., 0.), (10., 2.)]).unwrap();
        let tall = Polygon::from_coords(&[(0., 0.), (2., 0.), (2., 10.)]).unwrap();
        assert_eq!(major_axis(&wide), Axis::X);
        assert_eq!(major_axis(&tall), Axis::Y);
        assert_eq!(major_axis(&square()), Axis::X);
    }

    #[test]
    fn sort_examples() {
        let so = sort_vertices(&bowtie(), Axis::Y);
        assert_eq!(so.order, vec![0, 2, 1, 3]);
        assert_eq!(so.run_start, vec![0, 0, 2, 2]);
        let stair =
            Polygon::from_coords(&[(0., 0.), (1., 1.), (2., 2.), (3., 3.), (1., 4.)]).unwrap();
        assert_eq!(sort_vertices(&stair, Axis::Y).order, vec![0, 1, 2, 3, 4]);
        let so = sort_vertices(&hexagon(), Axis::X);
        for (pos, &v) in so.order.iter().enumerate() {
            assert_eq!(so.rank[v], pos);
        }
    }

    #[test]
    fn upward_examples() {
        let hex = hexagon();
        let so = sort_vertices(&hex, Axis::Y);
        assert_eq!(upward_segments(&hex, &so, so.order[0]).len(), 2);
        assert_eq!(upward_segments(&hex, &so, so.order[5]).len(), 0);
        // A vertex with one neighbour below and one above.
        let mid = (0..6)
            .find(|&v| {
                let [a, b] = incident(6, v);
                (so.rank[a.other] < so.rank[v]) != (so.rank[b.other] < so.rank[v])
            })
            .unwrap();
        assert_eq!(upward_segments(&hex, &so, mid).len(), 1);
    }

    #[test]
    fn report_examples() {
        assert!(report_intersections(&square()).unwrap().is_empty());
        let ev = report_intersections(&bowtie()).unwrap();
        assert_eq!(
            ev,
            vec![IntersectionEvent::new(0, 2, Point { x: 1., y: 1. })]
        );
    }

    #[test]
    fn report_flags_degenerate_contact() {
        // Edge 2 starts on the interior of edge 0.
        let poly =
            Polygon::from_coords(&[(0., 0.), (4., 0.), (2., 0.), (2., 3.), (-1., 3.)]).unwrap();
        assert!(matches!(
            report_scan(&poly, Axis::X),
            Err(Error::DegenerateInput { .. })
        ));
    }

    #[test]
    fn correct_examples() {
        let out = correct_all(&square()).unwrap();
        assert_eq!(out.polygon, square());
        assert!(out.events.is_empty());
        assert_eq!(out.metrics.n_crossings, 0);
        assert_eq!(out.metrics.n_supp(), 0);

        let out = correct_all(&bowtie()).unwrap();
        assert_eq!(out.polygon, square());
        assert_eq!(out.events.len(), 1);
        assert_eq!(out.events[0].pair(), (0, 2));
        assert_eq!(out.metrics.n_real, 5);
        assert_eq!(out.metrics.n_supp(), 0);
    }

    #[test]
    fn resort_examples() {
        let so = sort_vertices(&hexagon(), Axis::Y);
        assert_eq!(resort_after_reversal(&so, 3, 3).unwrap(), so);
        let twice =
            resort_after_reversal(&resort_after_reversal(&so, 1, 4).unwrap(), 1, 4).unwrap();
        assert_eq!(twice, so);
        assert!(matches!(
            resort_after_reversal(&so, 4, 1),
            Err(Error::IndexOutOfRange { .. })
        ));

        // After the bowtie fix the relabelled order equals a fresh sort.
        let fixed = reverse_range(&bowtie(), 1, 2).unwrap();
        for axis in [Axis::X, Axis::Y] {
            let so = sort_vertices(&bowtie(), axis);
            let remapped = resort_after_reversal(&so, 1, 2).unwrap();
            let fresh = sort_vertices(&fixed, axis);
            assert_eq!(remapped.rank.len(), fresh.rank.len());
            // Same point at every position, and a valid inverse pair.
            for pos in 0..4 {
                assert_eq!(
                    fixed.vertex(remapped.order[pos]).coord(axis),
                    fixed.vertex(fresh.order[pos]).coord(axis)
                );
                assert_eq!(remapped.rank[remapped.order[pos]], pos);
            }
            assert_eq!(remapped.run_start, fresh.run_start);
        }
    }

    #[test]
    fn state_rules() {
        let mut st = ScanState::default();
        assert!(!st.backtrack_allowed(0));
        assert_eq!(st.former_upper(3), None);
        st.last = Some(LastCorrection {
            pos: 3,
            former_upper: 9,
        });
        st.impact = Some((2, 6));
        assert_eq!(st.former_upper(3), Some(9));
        assert_eq!(st.former_upper(4), None);
        assert!(st.backtrack_allowed(2) && st.backtrack_allowed(6));
        assert!(!st.backtrack_allowed(7) && !st.backtrack_allowed(1));
    }

    #[test]
    fn edge_spanning_a_new_edge_is_revisited() {
        // Found by random search: one of the new edges created by a fix is
        // crossed by an old edge that starts below every position the
        // three backtracking rules return to.
        let poly = Polygon::from_coords(&[
            (-65.66222487209633, 13.27061834606315),
            (-34.03927066343682, 0.0),
            (52.449407568775555, -14.391271228947657),
            (0.0, 28.61944273340554),
            (66.81786783010061, -95.99390111994468),
            (89.73136550490277, 0.0),
            (40.44575514583131, 41.535663374450046),
            (62.42980426710139, -34.782358772191714),
            (-98.59629281295055, 0.0),
            (-73.26559944433994, 31.13252537562816),
            (78.01695161985997, 0.0),
            (72.35961549000153, -31.431730488789253),
        ])
        .unwrap();
        let out = correct_all(&poly).unwrap();
        assert!(is_simple(&out.polygon));
        assert_eq!(out.polygon.sorted_vertex_bits(), poly.sorted_vertex_bits());
    }

    #[test]
    fn triangle_membership_is_closed() {
        let t = [
            Point { x: 0., y: 0. },
            Point { x: 4., y: 0. },
            Point { x: 0., y: 4. },
        ];
        assert!(in_triangle(&t, Point { x: 1., y: 1. }));
        assert!(in_triangle(&t, Point { x: 2., y: 2. }));
        assert!(!in_triangle(&t, Point { x: 3., y: 3. }));
        let flipped = [t[0], t[2], t[1]];
        assert!(in_triangle(&flipped, Point { x: 1., y: 1. }));
    }
}
