//! Seeded Monte Carlo plumbing.
//!
//! Every estimator splits its sample budget over a fixed number of shards,
//! each driven by its own ChaCha stream whose seed is derived from the run
//! seed. Shard results are combined by weighted mean and variance, so the
//! output depends only on `(seed, samples)` and not on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geom::Vector3;

/// Default seed used when a caller does not supply one.
pub const DEFAULT_SEED: u64 = 0xDD6C;

const SHARDS: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed }
    }

    /// Same budget, seed mixed with `tag` so that independent estimates in
    /// one run never share a stream.
    pub fn derive(&self, tag: u64) -> Self {
        Self { samples: self.samples, seed: mix_seed(self.seed, tag) }
    }
}

impl Default for McConfig {
    fn default() -> Self {
        Self { samples: 100_000, seed: DEFAULT_SEED }
    }
}

/// Monte Carlo result: sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithError {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl EstimateWithError {
    pub fn scaled(&self, factor: f64) -> Self {
        Self { mean: self.mean * factor, stderr: self.stderr * factor.abs(), ..*self }
    }

    /// `|mean - target| <= k * stderr`.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.stderr
    }
}

/// SplitMix64 finaliser over `seed ^ tag`.
pub fn mix_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Uniform direction on the unit sphere (normalized Gaussian triple).
pub fn uniform_sphere<R: Rng + ?Sized>(rng: &mut R) -> Vector3 {
    loop {
        let v = Vector3::new(gaussian(rng), gaussian(rng), gaussian(rng));
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let mean = self.mean + d * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + d * d * (self.n as f64 * other.n as f64) / n as f64;
        Moments { n, mean, m2 }
    }
}

/// Mean of `draw` over `cfg.samples` independent draws, with standard error.
pub fn estimate<F>(cfg: McConfig, draw: F) -> EstimateWithError
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let samples = cfg.samples.max(1);
    let shards = SHARDS.min(samples as u64);
    let base = samples / shards as usize;
    let extra = samples % shards as usize;
    let m = (0..shards)
        .into_par_iter()
        .map(|s| {
            let count = base + usize::from((s as usize) < extra);
            let mut rng = rng(mix_seed(cfg.seed, s + 1));
            let mut acc = Moments::default();
            for _ in 0..count {
                acc.push(draw(&mut rng));
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Moments::default(), Moments::merge);
    let var = if m.n > 1 { m.m2 / (m.n - 1) as f64 } else { 0.0 };
    EstimateWithError {
        mean: m.mean,
        stderr: (var / m.n as f64).sqrt(),
        samples: m.n,
        seed: cfg.seed,
    }
}
