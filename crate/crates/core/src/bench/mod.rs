//! Corpus generation, instrumented runs and log-log fits of explored points
//! per segment against N.

pub mod algo;
pub mod family;
pub mod svg;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polygon::Polygon;
use crate::scanline::RunMetrics;

pub use algo::{algorithms, Algo, InstrumentedAlgorithm};
pub use family::{families, Family, PolygonFamily};

/// What to generate: every size, every seed, `count` polygons each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub count: usize,
}

impl CorpusSpec {
    pub fn new(family: Family, sizes: Vec<usize>, seeds: Vec<u64>, count: usize) -> Result<Self> {
        let spec = CorpusSpec {
            family,
            sizes,
            seeds,
            count,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.seeds.is_empty() || self.count == 0 {
            return Err(Error::InvalidSpec("empty sizes, seeds or count".into()));
        }
        if let Some(n) = self.sizes.iter().find(|&&n| n < 4) {
            return Err(Error::InvalidSpec(format!("size {n} is below 4")));
        }
        Ok(())
    }

    /// `(N, seed)` of every polygon in the corpus. Seeds are derived so that
    /// `gen_polygon(spec, N, seed)` alone reproduces any instance.
    pub fn instances(&self) -> Vec<(usize, u64)> {
        let mut out = Vec::with_capacity(self.sizes.len() * self.seeds.len() * self.count);
        for &n in &self.sizes {
            for &s in &self.seeds {
                for c in 0..self.count {
                    out.push((n, instance_seed(s, n, c)));
                }
            }
        }
        out
    }
}

/// SplitMix64 finaliser over the base seed, size and copy number.
pub fn instance_seed(seed: u64, n: usize, copy: usize) -> u64 {
    let mut z = seed
        .wrapping_add((n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add((copy as u64).wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gen_polygon(spec: &CorpusSpec, n: usize, seed: u64) -> Result<Polygon> {
    families().get(spec.family.name())?.generate(n, seed)
}

pub fn run_instrumented(poly: &Polygon, algo: Algo) -> Result<RunMetrics> {
    algorithms().get(algo.name())?.run(poly)
}

/// One polygon run through one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub algo: Algo,
    pub metrics: RunMetrics,
}

/// Runs every instance of `spec` through every algorithm in `algos`, in
/// parallel. Rows come back in instance order, then algorithm order.
pub fn run_corpus(spec: &CorpusSpec, algos: &[Algo]) -> Result<Vec<BenchRow>> {
    spec.validate()?;
    let fam = families();
    let runners = algorithms();
    let generator = fam.get(spec.family.name())?;
    let chunks: Vec<Vec<BenchRow>> = spec
        .instances()
        .into_par_iter()
        .map(|(n, seed)| {
            let poly = generator.generate(n, seed)?;
            algos
                .iter()
                .map(|&algo| {
                    Ok(BenchRow {
                        family: spec.family,
                        n,
                        seed,
                        algo,
                        metrics: runners.get(algo.name())?.run(&poly)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub constant: f64,
    pub exponent: f64,
    /// Pearson correlation of the logged data; 0 when either side is constant.
    pub correlation: f64,
    pub n_points: usize,
}

impl FitResult {
    pub fn predict(&self, n: f64) -> f64 {
        self.constant * n.powf(self.exponent)
    }
}

/// Least squares of `ln avg` on `ln N`.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<FitResult> {
    let valid = points
        .iter()
        .filter(|(n, a)| *n > 0.0 && *a > 0.0 && n.is_finite() && a.is_finite())
        .count();
    if points.len() < 3 || valid < points.len() {
        return Err(Error::InsufficientData(valid));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, a)| (n.ln(), a.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in &logs {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        // All points share one N: the slope is undetermined.
        return Err(Error::InsufficientData(1));
    }
    let exponent = sxy / sxx;
    let correlation = if syy == 0.0 {
        0.0
    } else {
        sxy / (sxx * syy).sqrt()
    };
    Ok(FitResult {
        constant: (my - exponent * mx).exp(),
        exponent,
        correlation,
        n_points: logs.len(),
    })
}

/// A fitted `(family, algorithm)` group.
pub type GroupFit = (Family, Algo, FitResult);

/// Fit per `(family, algo)` over one point per polygon. Groups whose points
/// cannot be fitted are skipped.
pub fn fit_rows(rows: &[BenchRow]) -> Vec<GroupFit> {
    let mut groups: BTreeMap<(&str, &str), Vec<&BenchRow>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.metrics.avg_explored() > 0.0) {
        groups
            .entry((r.family.name(), r.algo.name()))
            .or_default()
            .push(r);
    }
    groups
        .into_values()
        .filter_map(|group| {
            let pts: Vec<_> = group
                .iter()
                .map(|r| (r.n as f64, r.metrics.avg_explored()))
                .collect();
            fit_exponent(&pts)
                .ok()
                .map(|fit| (group[0].family, group[0].algo, fit))
        })
        .collect()
}

/// Share of unusual backtracking over a corrected corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct OverheadSummary {
    /// `(family, N, seed, 100 * n_supp / N)` per corrected polygon.
    pub per_polygon: Vec<(Family, usize, u64, f64)>,
    /// Fraction of polygons with `n_supp > 0`.
    pub fraction_with_overhead: f64,
    pub mean_percent: f64,
    pub max_percent: f64,
}

pub fn backtrack_overhead_report(rows: &[BenchRow]) -> OverheadSummary {
    let per_polygon: Vec<_> = rows
        .iter()
        .filter(|r| r.algo == Algo::Correct)
        .map(|r| {
            let pct = 100.0 * r.metrics.n_supp() as f64 / r.n as f64;
            (r.family, r.n, r.seed, pct)
        })
        .collect();
    let m = per_polygon.len().max(1) as f64;
    OverheadSummary {
        fraction_with_overhead: per_polygon.iter().filter(|p| p.3 > 0.0).count() as f64 / m,
        mean_percent: per_polygon.iter().map(|p| p.3).sum::<f64>() / m,
        max_percent: per_polygon.iter().map(|p| p.3).fold(0.0, f64::max),
        per_polygon,
    }
}

#[derive(Serialize)]
struct BenchRecord<'a> {
    family: &'a str,
    #[serde(rename = "N")]
    n: usize,
    seed: u64,
    algo: &'a str,
    explored: usize,
    avg_explored: f64,
    k: usize,
    n_real: Option<usize>,
    n_supp: Option<i64>,
}

#[derive(Serialize)]
struct FitRecord<'a> {
    family: &'a str,
    algo: &'a str,
    constant: f64,
    exponent: f64,
    correlation: f64,
}

#[derive(Serialize)]
struct OverheadRecord<'a> {
    family: &'a str,
    #[serde(rename = "N")]
    n: usize,
    seed: u64,
    supp_percent: f64,
}

pub fn write_bench_csv<W: std::io::Write>(out: W, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        let visits = r.algo.tracks_visits();
        w.serialize(BenchRecord {
            family: r.family.name(),
            n: r.n,
            seed: r.seed,
            algo: r.algo.name(),
            explored: r.metrics.explored,
            avg_explored: r.metrics.avg_explored(),
            k: r.metrics.n_crossings,
            n_real: visits.then_some(r.metrics.n_real),
            n_supp: visits.then(|| r.metrics.n_supp()),
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_fit_csv<W: std::io::Write>(out: W, fits: &[GroupFit]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for (f, a, fit) in fits {
        w.serialize(FitRecord {
            family: f.name(),
            algo: a.name(),
            constant: fit.constant,
            exponent: fit.exponent,
            correlation: fit.correlation,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_overhead_csv<W: std::io::Write>(out: W, summary: &OverheadSummary) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for &(f, n, seed, pct) in &summary.per_polygon {
        w.serialize(OverheadRecord {
            family: f.name(),
            n,
            seed,
            supp_percent: pct,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Runs a corpus and writes `bench.csv`, `fit.csv`, `overhead.csv` (when
/// correction ran) and `scatter.svg` into `dir`.
pub fn run_to_dir(
    spec: &CorpusSpec,
    algos: &[Algo],
    dir: &Path,
) -> Result<(Vec<BenchRow>, Vec<GroupFit>)> {
    let rows = run_corpus(spec, algos)?;
    let fits = fit_rows(&rows);
    fs::create_dir_all(dir)?;
    write_bench_csv(fs::File::create(dir.join("bench.csv"))?, &rows)?;
    write_fit_csv(fs::File::create(dir.join("fit.csv"))?, &fits)?;
    if algos.contains(&Algo::Correct) {
        let summary = backtrack_overhead_report(&rows);
        write_overhead_csv(fs::File::create(dir.join("overhead.csv"))?, &summary)?;
    }
    fs::write(dir.join("scatter.svg"), svg::scatter(&rows, &fits))?;
    Ok((rows, fits))
}
