//! Algorithms run with counting enabled.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::polygon::Polygon;
use crate::region_query::{QueryMode, RegionIndex};
use crate::registry::{Named, Registry};
use crate::scanline::{correct_all, major_axis, report_scan, RunMetrics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Report,
    Correct,
    QueryStrict,
    QueryRelaxed,
}

impl Algo {
    pub const ALL: [Algo; 4] = [
        Algo::Report,
        Algo::Correct,
        Algo::QueryStrict,
        Algo::QueryRelaxed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Report => "report",
            Algo::Correct => "correct",
            Algo::QueryStrict => "query-strict",
            Algo::QueryRelaxed => "query-relaxed",
        }
    }

    /// Whether the backtracking counters of [`RunMetrics`] mean anything.
    pub fn tracks_visits(self) -> bool {
        self == Algo::Correct
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "algorithm",
                name: s.to_string(),
            })
    }
}

pub trait InstrumentedAlgorithm: Named + Send + Sync {
    fn run(&self, poly: &Polygon) -> Result<RunMetrics>;
}

pub struct ReportRun;
pub struct CorrectRun;

/// Every edge queried in turn; `n_crossings` counts each pair once.
pub struct QueryRun(pub QueryMode);

impl Named for ReportRun {
    fn name(&self) -> &'static str {
        Algo::Report.name()
    }
}

impl InstrumentedAlgorithm for ReportRun {
    fn run(&self, poly: &Polygon) -> Result<RunMetrics> {
        Ok(report_scan(poly, major_axis(poly))?.metrics)
    }
}

impl Named for CorrectRun {
    fn name(&self) -> &'static str {
        Algo::Correct.name()
    }
}

impl InstrumentedAlgorithm for CorrectRun {
    fn run(&self, poly: &Polygon) -> Result<RunMetrics> {
        Ok(correct_all(poly)?.metrics)
    }
}

impl Named for QueryRun {
    fn name(&self) -> &'static str {
        match self.0 {
            QueryMode::Strict => Algo::QueryStrict.name(),
            QueryMode::Relaxed => Algo::QueryRelaxed.name(),
        }
    }
}

impl InstrumentedAlgorithm for QueryRun {
    fn run(&self, poly: &Polygon) -> Result<RunMetrics> {
        let index = RegionIndex::new(poly);
        let n = poly.len();
        let mut metrics = RunMetrics {
            n_vertices: n,
            ..Default::default()
        };
        for i in 0..n {
            let out = index.query(i, self.0, true);
            if let Some(&j) = out.degenerate.first() {
                return Err(Error::DegenerateInput {
                    edge_i: i.min(j),
                    edge_j: i.max(j),
                });
            }
            metrics.explored += out.explored;
            metrics.n_crossings += out.crossings.len();
        }
        Ok(metrics)
    }
}

pub fn algorithms() -> Registry<dyn InstrumentedAlgorithm> {
    let mut reg: Registry<dyn InstrumentedAlgorithm> = Registry::new("algorithm");
    reg.register(Box::new(ReportRun))
        .register(Box::new(CorrectRun))
        .register(Box::new(QueryRun(QueryMode::Strict)))
        .register(Box::new(QueryRun(QueryMode::Relaxed)));
    reg
}
