//! Synthetic polygon families.
//!
//! The two "average" families get their roughness from periodic fractional
//! Brownian signals rather than independent per-vertex noise. With white
//! noise an edge spans a constant fraction of the polygon whatever N is, so
//! the number of points between its extremities grows linearly; with a
//! Hurst exponent H the edge extent shrinks like N^-H and the count like
//! N^(1-H).

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::polygon::Polygon;
use crate::registry::{Named, Registry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    RandomStar,
    NoisyContour,
    WorstCaseFan,
    PerpendicularHeavy,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::RandomStar,
        Family::NoisyContour,
        Family::WorstCaseFan,
        Family::PerpendicularHeavy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RandomStar => "random-star",
            Family::NoisyContour => "noisy-contour",
            Family::WorstCaseFan => "worst-case-fan",
            Family::PerpendicularHeavy => "perpendicular-heavy",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "family",
                name: s.to_string(),
            })
    }
}

pub trait PolygonFamily: Named + Send + Sync {
    /// Deterministic polygon with `n` vertices for `seed`.
    fn generate(&self, n: usize, seed: u64) -> Result<Polygon>;
}

/// Roughly evenly spread angles visited in a locally shuffled order, with a
/// fractal radial profile.
#[derive(Debug, Clone, Copy)]
pub struct RandomStar {
    pub hurst: f64,
    /// Radial roughness relative to the unit radius.
    pub roughness: f64,
    /// Half-width, in index units, of the shuffle applied to the angular order.
    pub shuffle: f64,
}

/// A circle whose contour is displaced by a fractal 2D signal.
#[derive(Debug, Clone, Copy)]
pub struct NoisyContour {
    pub hurst: f64,
    pub amplitude: f64,
}

/// Long, nearly parallel edges zigzagging between two bands, all spanning
/// the middle of the sort axis.
#[derive(Debug, Clone, Copy)]
pub struct WorstCaseFan {
    pub height: f64,
}

/// Two jittered serpentines whose edges run across the sort axis.
#[derive(Debug, Clone, Copy)]
pub struct PerpendicularHeavy {
    /// Vertical jitter as a multiple of the serpentine pitch.
    pub jitter: f64,
}

impl Default for RandomStar {
    fn default() -> Self {
        RandomStar {
            hurst: 0.65,
            roughness: 0.3,
            shuffle: 1.5,
        }
    }
}

impl Default for NoisyContour {
    fn default() -> Self {
        NoisyContour {
            hurst: 0.75,
            amplitude: 0.2,
        }
    }
}

impl Default for WorstCaseFan {
    fn default() -> Self {
        WorstCaseFan { height: 10.0 }
    }
}

impl Default for PerpendicularHeavy {
    fn default() -> Self {
        PerpendicularHeavy { jitter: 1.5 }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidSpec(format!("size {n} is below 4")));
    }
    Ok(())
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Periodic signal of length `n` with a power-law spectrum of slope
/// `-(2H + 1)`, scaled to unit RMS. Real and imaginary parts are two
/// independent real signals.
pub fn periodic_fbm(n: usize, hurst: f64, rng: &mut impl Rng) -> Vec<Complex<f64>> {
    let mut buf = vec![Complex::new(0.0, 0.0); n];
    for (b, slot) in buf.iter_mut().enumerate().skip(1) {
        let f = b.min(n - b) as f64;
        let amp = f.powf(-(hurst + 0.5));
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *slot = Complex::new(re, im) * amp;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let rms = (buf.iter().map(|c| c.norm_sqr()).sum::<f64>() / n as f64).sqrt();
    if rms > 0.0 {
        for c in &mut buf {
            *c /= rms;
        }
    }
    buf
}

impl Named for RandomStar {
    fn name(&self) -> &'static str {
        Family::RandomStar.name()
    }
}

impl PolygonFamily for RandomStar {
    fn generate(&self, n: usize, seed: u64) -> Result<Polygon> {
        check_size(n)?;
        let mut rng = rng_for(seed);
        let radius = periodic_fbm(n, self.hurst, &mut rng);
        let mut slots: Vec<(f64, usize)> = (0..n)
            .map(|i| (i as f64 + rng.random_range(-self.shuffle..=self.shuffle), i))
            .collect();
        slots.sort_by(|a, b| a.0.total_cmp(&b.0));
        let coords: Vec<(f64, f64)> = slots
            .iter()
            .map(|&(_, i)| {
                let theta = TAU * (i as f64 + rng.random_range(-0.4..0.4)) / n as f64;
                let r = 1.0 + self.roughness * radius[i].re;
                (r * theta.cos(), r * theta.sin())
            })
            .collect();
        Polygon::from_coords(&coords)
    }
}

impl Named for NoisyContour {
    fn name(&self) -> &'static str {
        Family::NoisyContour.name()
    }
}

impl PolygonFamily for NoisyContour {
    fn generate(&self, n: usize, seed: u64) -> Result<Polygon> {
        check_size(n)?;
        let mut rng = rng_for(seed);
        let noise = periodic_fbm(n, self.hurst, &mut rng);
        let coords: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let theta = TAU * i as f64 / n as f64;
                let d = noise[i] * self.amplitude;
                (theta.cos() + d.re, theta.sin() + d.im)
            })
            .collect();
        Polygon::from_coords(&coords)
    }
}

impl Named for WorstCaseFan {
    fn name(&self) -> &'static str {
        Family::WorstCaseFan.name()
    }
}

impl PolygonFamily for WorstCaseFan {
    fn generate(&self, n: usize, seed: u64) -> Result<Polygon> {
        check_size(n)?;
        let mut rng = rng_for(seed);
        let h = self.height;
        let pitch = 1.0 / n as f64;
        let coords: Vec<(f64, f64)> = (0..n)
            .map(|k| {
                let x = (k as f64 + rng.random_range(-0.2..0.2)) * pitch;
                let y = if n % 2 == 1 && k == n - 1 {
                    // An odd ring cannot alternate; park the spare vertex
                    // on the common level.
                    h / 2.0
                } else if k % 2 == 0 {
                    rng.random_range(0.0..0.05 * h)
                } else {
                    h - rng.random_range(0.0..0.05 * h)
                };
                (x, y)
            })
            .collect();
        Polygon::from_coords(&coords)
    }
}

impl Named for PerpendicularHeavy {
    fn name(&self) -> &'static str {
        Family::PerpendicularHeavy.name()
    }
}

impl PolygonFamily for PerpendicularHeavy {
    fn generate(&self, n: usize, seed: u64) -> Result<Polygon> {
        check_size(n)?;
        let mut rng = rng_for(seed);
        let up = n / 2;
        let down = n - up;
        let height = 4.0;
        let mut coords = Vec::with_capacity(n);
        let pitch = height / up as f64;
        for k in 0..up {
            let x = if k % 2 == 0 { 0.0 } else { 1.0 };
            let jit = rng.random_range(-self.jitter..=self.jitter) * pitch;
            coords.push((x + rng.random_range(-0.05..0.05), k as f64 * pitch + jit));
        }
        let pitch = height / down as f64;
        for k in 0..down {
            let x = if k % 2 == 0 { 2.2 } else { 1.2 };
            let jit = rng.random_range(-self.jitter..=self.jitter) * pitch;
            coords.push((
                x + rng.random_range(-0.05..0.05),
                height - k as f64 * pitch + jit,
            ));
        }
        Polygon::from_coords(&coords)
    }
}

/// The built-in families, keyed by [`Family::name`].
pub fn families() -> Registry<dyn PolygonFamily> {
    let mut reg: Registry<dyn PolygonFamily> = Registry::new("family");
    reg.register(Box::new(RandomStar::default()))
        .register(Box::new(NoisyContour::default()))
        .register(Box::new(WorstCaseFan::default()))
        .register(Box::new(PerpendicularHeavy::default()));
    reg
}
