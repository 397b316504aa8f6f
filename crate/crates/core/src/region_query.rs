//! Isolated edge queries answered from the sorted order alone.
//!
//! The ring is renumbered so that the lowest vertex is vertex 0; the highest
//! one (`half`) then splits it into two chains, `1..half` and `half+1..n`.
//! A query on edge `i` explores five regions of the sorted array: the span
//! between the edge's extremities, then downwards and upwards from it. Each
//! of the four corner regions (lower/upper crossed with the two chains) keeps
//! a [`SectionTracker`] that watches for a run of consecutive vertex numbers
//! in the order expected from an uninterrupted chain. A walk stops once both
//! of its trackers have seen such a homogeneous section, or when the array
//! runs out.

use std::str::FromStr;

use crate::geom::{segment_cross, CrossKind};
use crate::polygon::{edges_adjacent, Polygon};
use crate::scanline::{major_axis, sort_vertices, SortedOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryMode {
    Strict,
    /// Skips the restart on a farther vertex once a section is complete.
    Relaxed,
}

impl FromStr for QueryMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(QueryMode::Strict),
            "relaxed" => Ok(QueryMode::Relaxed),
            other => Err(format!("unknown query mode `{other}`")),
        }
    }
}

/// Completion state of one corner region.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SectionTracker {
    /// Anchor vertex of the current run; `None` after a reset.
    pub start: Option<usize>,
    /// Vertex number expected next on the chain.
    pub end: isize,
    /// Sorted position where the run began.
    pub num_start: usize,
    pub complete: bool,
}

impl SectionTracker {
    /// Feeds the vertex `cand` found at sorted position `pos`.
    ///
    /// `step` is the index increment expected along the chain while moving
    /// away from the queried edge, `walk` the direction of the walk in the
    /// sorted array (both `+1` or `-1`).
    pub fn update(&mut self, cand: usize, pos: usize, step: isize, walk: isize, mode: QueryMode) {
        let c = cand as isize;
        let Some(start) = self.start else {
            self.start = Some(cand);
            self.end = c + step;
            self.num_start = pos;
            return;
        };
        let ahead = (c - start as isize) * step;
        if c == self.end {
            if pos as isize == self.num_start as isize + walk {
                // Consecutive positions: an edge perpendicular to the sort axis.
                self.start = None;
            } else {
                self.complete = true;
            }
        } else if ahead > 0 {
            if mode == QueryMode::Strict || !self.complete {
                self.start = Some(cand);
                self.end = c + step;
                self.num_start = pos;
                self.complete = false;
            }
        } else if ahead < 0 {
            self.start = None;
            self.complete = false;
        }
    }
}

/// The four corner trackers of one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryFrame {
    /// Vertex number of the highest point.
    pub half: usize,
    pub lower_left: SectionTracker,
    pub lower_right: SectionTracker,
    pub upper_left: SectionTracker,
    pub upper_right: SectionTracker,
    pub mode: QueryMode,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Region {
    Lower,
    Upper,
}

impl QueryFrame {
    fn new(half: usize, mode: QueryMode) -> Self {
        QueryFrame {
            half,
            lower_left: SectionTracker::default(),
            lower_right: SectionTracker::default(),
            upper_left: SectionTracker::default(),
            upper_right: SectionTracker::default(),
            mode,
        }
    }

    /// Routes a candidate to its corner tracker. The chain `1..half` climbs
    /// with increasing numbers, the chain `half+1..n` descends.
    fn feed(&mut self, region: Region, cand: usize, pos: usize) {
        if cand == 0 || cand == self.half {
            return;
        }
        let rising = cand < self.half;
        let (tracker, step, walk) = match (region, rising) {
            (Region::Upper, true) => (&mut self.upper_right, 1, 1),
            (Region::Upper, false) => (&mut self.upper_left, -1, 1),
            (Region::Lower, true) => (&mut self.lower_right, -1, -1),
            (Region::Lower, false) => (&mut self.lower_left, 1, -1),
        };
        tracker.update(cand, pos, step, walk, self.mode);
    }

    fn corners(&self, region: Region) -> (bool, bool) {
        match region {
            Region::Lower => (self.lower_left.complete, self.lower_right.complete),
            Region::Upper => (self.upper_left.complete, self.upper_right.complete),
        }
    }
}

/// A strict frame, shadowed in relaxed mode by a relaxed one. A corner
/// counts as complete once either frame says so, which keeps the relaxed
/// walk from ever outlasting the strict one.
struct Frames {
    strict: QueryFrame,
    relaxed: Option<QueryFrame>,
}

impl Frames {
    fn new(half: usize, mode: QueryMode) -> Self {
        Frames {
            strict: QueryFrame::new(half, QueryMode::Strict),
            relaxed: (mode == QueryMode::Relaxed)
                .then(|| QueryFrame::new(half, QueryMode::Relaxed)),
        }
    }

    fn feed(&mut self, region: Region, cand: usize, pos: usize) {
        self.strict.feed(region, cand, pos);
        if let Some(r) = self.relaxed.as_mut() {
            r.feed(region, cand, pos);
        }
    }

    fn complete(&self, region: Region) -> bool {
        let (l, r) = self.strict.corners(region);
        match &self.relaxed {
            None => l && r,
            Some(relaxed) => {
                let (rl, rr) = relaxed.corners(region);
                (l || rl) && (r || rr)
            }
        }
    }
}

/// Everything a query found, in the numbering it was asked in.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryOutcome {
    /// Edges properly crossing the queried one, ascending.
    pub crossings: Vec<usize>,
    /// Edges found touching or overlapping it.
    pub degenerate: Vec<usize>,
    /// Crossings already found while exploring between the extremities.
    pub phase1: Vec<usize>,
    /// Candidate points examined over the three phases.
    pub explored: usize,
}

/// Rotates the ring so the vertex at sorted position 0 becomes vertex 0.
pub fn renumber_from_lowest(poly: &Polygon, so: &SortedOrder) -> (Polygon, SortedOrder) {
    let n = poly.len();
    let shift = so.order[0];
    let mut vertices = poly.vertices().to_vec();
    vertices.rotate_left(shift);
    let order = so.order.iter().map(|&v| (v + n - shift) % n).collect();
    let rank = (0..n).map(|k| so.rank[(k + shift) % n]).collect();
    let renumbered = SortedOrder {
        axis: so.axis,
        order,
        rank,
        run_start: so.run_start.clone(),
    };
    (
        Polygon::new(vertices).expect("rotation keeps a valid ring"),
        renumbered,
    )
}

/// Runs the five-region query on edge `i` of a renumbered ring.
///
/// # Panics
///
/// If `so` was not renumbered, i.e. sorted position 0 is not vertex 0.
pub fn query_outcome(
    poly: &Polygon,
    so: &SortedOrder,
    i: usize,
    mode: QueryMode,
    higher_only: bool,
) -> QueryOutcome {
    assert_eq!(
        so.order[0], 0,
        "query needs a ring renumbered from its lowest vertex"
    );
    let n = poly.len();
    let seg = poly.edge(i);
    let (ra, rb) = (so.rank[i], so.rank[(i + 1) % n]);
    let (lo, hi) = (ra.min(rb), ra.max(rb));
    let mut frame = Frames::new(so.order[n - 1], mode);
    let mut out = QueryOutcome::default();

    let test = |w: usize, out: &mut QueryOutcome| {
        out.explored += 1;
        for f in [(w + n - 1) % n, w] {
            if edges_adjacent(n, i, f) || (higher_only && f < i) {
                continue;
            }
            match segment_cross(&seg, &poly.edge(f)) {
                CrossKind::None => {}
                CrossKind::Proper(_) => out.crossings.push(f),
                CrossKind::Degenerate => out.degenerate.push(f),
            }
        }
    };

    for r in lo + 1..hi {
        test(so.order[r], &mut out);
    }
    out.phase1 = out.crossings.clone();

    for r in (0..lo).rev() {
        let w = so.order[r];
        test(w, &mut out);
        frame.feed(Region::Lower, w, r);
        if frame.complete(Region::Lower) {
            break;
        }
    }
    for r in hi + 1..n {
        let w = so.order[r];
        test(w, &mut out);
        frame.feed(Region::Upper, w, r);
        if frame.complete(Region::Upper) {
            break;
        }
    }

    for list in [&mut out.crossings, &mut out.degenerate, &mut out.phase1] {
        list.sort_unstable();
        list.dedup();
    }
    out
}

/// Edges crossing edge `i` of a renumbered ring.
pub fn query_edge(
    poly: &Polygon,
    so: &SortedOrder,
    i: usize,
    mode: QueryMode,
    higher_only: bool,
) -> Vec<usize> {
    query_outcome(poly, so, i, mode, higher_only).crossings
}

pub fn query_explored_count(poly: &Polygon, so: &SortedOrder, i: usize, mode: QueryMode) -> usize {
    query_outcome(poly, so, i, mode, false).explored
}

/// A ring prepared for repeated queries in its original numbering.
#[derive(Debug, Clone)]
pub struct RegionIndex {
    renumbered: Polygon,
    order: SortedOrder,
    shift: usize,
}

impl RegionIndex {
    pub fn new(poly: &Polygon) -> Self {
        Self::with_axis(poly, major_axis(poly))
    }

    pub fn with_axis(poly: &Polygon, axis: crate::geom::Axis) -> Self {
        let so = sort_vertices(poly, axis);
        let shift = so.order[0];
        let (renumbered, order) = renumber_from_lowest(poly, &so);
        RegionIndex {
            renumbered,
            order,
            shift,
        }
    }

    pub fn len(&self) -> usize {
        self.renumbered.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn query(&self, edge: usize, mode: QueryMode, higher_only: bool) -> QueryOutcome {
        let n = self.len();
        let local = (edge + n - self.shift) % n;
        let mut out = query_outcome(&self.renumbered, &self.order, local, mode, false);
        let back = |list: &mut Vec<usize>| {
            for e in list.iter_mut() {
                *e = (*e + self.shift) % n;
            }
            if higher_only {
                list.retain(|&e| e > edge);
            }
            list.sort_unstable();
        };
        back(&mut out.crossings);
        back(&mut out.degenerate);
        back(&mut out.phase1);
        out
    }
}
