//! The multiplicative Chernoff tail `Pr(BIN(n, p) > np + t) < exp(-t²/(3np))`
//! and a sampler to check it empirically.

use rand::distr::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// `exp(-t² / (3np))`, valid for `0 ≤ t ≤ np` and `0 < p ≤ 1`.
pub fn chernoff_tail_bound(n: u64, p: f64, t: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ParameterOutOfRange("p must lie in (0, 1]"));
    }
    let mean = n as f64 * p;
    if !(t >= 0.0 && t <= mean) {
        return Err(Error::ParameterOutOfRange("t must lie in [0, np]"));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    Ok(libm::exp(-t * t / (3.0 * mean)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub hits: u64,
    pub samples: u64,
}

impl TailEstimate {
    pub fn frequency(&self) -> f64 {
        self.hits as f64 / self.samples as f64
    }

    /// Binomial standard error of [`TailEstimate::frequency`].
    pub fn std_error(&self) -> f64 {
        let f = self.frequency();
        libm::sqrt(f * (1.0 - f) / self.samples as f64)
    }
}

/// Counts how often a sum of `n` Bernoulli(p) draws exceeds `np + t`.
pub fn binomial_upper_tail_estimate(
    n: u64,
    p: f64,
    t: f64,
    samples: u64,
    seed: u64,
) -> Result<TailEstimate> {
    if samples == 0 {
        return Err(Error::NoTrials);
    }
    let coin = Bernoulli::new(p).map_err(|_| Error::ParameterOutOfRange("p must lie in [0, 1]"))?;
    let cut = n as f64 * p + t;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    for _ in 0..samples {
        let successes = (0..n).filter(|_| coin.sample(&mut rng)).count();
        hits += (successes as f64 > cut) as u64;
    }
    Ok(TailEstimate { hits, samples })
}
