//! Exact stochastic (Gillespie) simulation of the untruncated ladder.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::rates::LadderRates;
use crate::error::{require_positive, Error, Result};

/// Level-dependent jump rates of a birth-death chain on `n >= 0`.
pub trait BirthDeath {
    /// Rate of `n -> n-1`.
    fn decay(&self, n: usize) -> f64;
    /// Rate of `n-1 -> n`.
    fn excite(&self, n: usize) -> f64;
}

impl BirthDeath for LadderRates {
    fn decay(&self, n: usize) -> f64 {
        LadderRates::decay(self, n)
    }

    fn excite(&self, n: usize) -> f64 {
        LadderRates::excite(self, n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JumpStatistics {
    /// Terminal level of each trial, in trial order.
    pub terminal: Vec<usize>,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
}

impl JumpStatistics {
    pub fn standard_error(&self) -> f64 {
        (self.variance / self.terminal.len() as f64).sqrt()
    }
}

/// Random stream for one trial: ChaCha8 keyed by `seed`, stream `trial`.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs one trajectory from `n0` for `span` seconds and returns the final level.
pub fn jump_trajectory<R: BirthDeath + ?Sized>(n0: usize, rates: &R, span: f64, rng: &mut impl Rng) -> usize {
    let mut n = n0;
    let mut t = 0.0;
    loop {
        let down = rates.decay(n);
        let up = rates.excite(n + 1);
        let total = down + up;
        if total <= 0.0 {
            return n;
        }
        // 1 − U lies in (0, 1], keeping the logarithm finite.
        let u: f64 = rng.random();
        t += -(1.0 - u).ln() / total;
        if t > span {
            return n;
        }
        if rng.random::<f64>() * total < down {
            n -= 1;
        } else {
            n += 1;
        }
    }
}

/// Independent trials from level `n0`; reproducible for a given `seed`
/// irrespective of thread count.
pub fn monte_carlo_ladder<R: BirthDeath + Sync + ?Sized>(
    n0: usize,
    rates: &R,
    span: f64,
    seed: u64,
    trials: usize,
) -> Result<JumpStatistics> {
    if trials == 0 {
        return Err(Error::domain("trials", "at least one trial is required"));
    }
    require_positive("span", span)?;
    let terminal: Vec<usize> = (0..trials as u64)
        .into_par_iter()
        .map(|i| jump_trajectory(n0, rates, span, &mut trial_rng(seed, i)))
        .collect();
    let count = terminal.len() as f64;
    let mean = terminal.iter().map(|&n| n as f64).sum::<f64>() / count;
    let variance = if terminal.len() > 1 {
        terminal.iter().map(|&n| (n as f64 - mean).powi(2)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    Ok(JumpStatistics { terminal, mean, variance })
}
