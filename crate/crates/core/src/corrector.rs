//! Interchangeable self-intersection correctors, selectable by name.

use crate::brute_force::{bf_correct_v2, bf_correct_v3};
use crate::error::Result;
use crate::polygon::Polygon;
use crate::registry::{Named, Registry};
use crate::scanline::{correct_all, IntersectionEvent, RunMetrics};

/// A corrected ring and the corrections that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Repair {
    pub polygon: Polygon,
    pub events: Vec<IntersectionEvent>,
    /// Work counters, for correctors that keep them.
    pub metrics: Option<RunMetrics>,
}

pub trait Corrector: Named + Send + Sync {
    fn correct(&self, poly: &Polygon) -> Result<Repair>;
}

/// Sorted scan with backtracking.
pub struct ScanCorrector;

/// Brute force, re-checking the whole reversed range after each fix.
pub struct RangeRecheck;

/// Brute force, re-checking only the two new edges, recursively.
pub struct NewEdgeRecheck;

impl Named for ScanCorrector {
    fn name(&self) -> &'static str {
        "scan"
    }
}

impl Corrector for ScanCorrector {
    fn correct(&self, poly: &Polygon) -> Result<Repair> {
        let out = correct_all(poly)?;
        Ok(Repair {
            polygon: out.polygon,
            events: out.events,
            metrics: Some(out.metrics),
        })
    }
}

impl Named for RangeRecheck {
    fn name(&self) -> &'static str {
        "v2"
    }
}

impl Corrector for RangeRecheck {
    fn correct(&self, poly: &Polygon) -> Result<Repair> {
        let (polygon, events) = bf_correct_v2(poly)?;
        Ok(Repair {
            polygon,
            events,
            metrics: None,
        })
    }
}

impl Named for NewEdgeRecheck {
    fn name(&self) -> &'static str {
        "v3"
    }
}

impl Corrector for NewEdgeRecheck {
    fn correct(&self, poly: &Polygon) -> Result<Repair> {
        let (polygon, events) = bf_correct_v3(poly)?;
        Ok(Repair {
            polygon,
            events,
            metrics: None,
        })
    }
}

/// The built-in correctors: `scan`, `v2` and `v3`.
pub fn correctors() -> Registry<dyn Corrector> {
    let mut reg: Registry<dyn Corrector> = Registry::new("corrector");
    reg.register(Box::new(ScanCorrector))
        .register(Box::new(RangeRecheck))
        .register(Box::new(NewEdgeRecheck));
    reg
}
