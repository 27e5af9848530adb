//! Populations of the truncated vibrational ladder and their master equation
//!
//! ```text
//! dΠ_n/dt = Γ_{n+1} Π_{n+1} + γ_n Π_{n−1} − (Γ_n + γ_{n+1}) Π_n
//! ```
//!
//! The top rung `n_max` is reflecting: its upward rate is dropped, so the
//! truncated generator conserves probability exactly.

use std::io::Write;

use nalgebra::{DMatrix, DVector};

use super::rates::{successive_ratio, LadderRates};
use crate::constants::{HBAR, K_B};
use crate::error::{require_positive, Error, Result};

/// Default tail-mass tolerance at the top rung.
pub const TAIL_TOLERANCE: f64 = 1e-9;

/// Truncation policy: start at `n_max`, double while the tail is too
/// heavy, give up beyond `max_n_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub n_max: usize,
    pub max_n_max: usize,
    pub tail_tolerance: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            n_max: 200,
            max_n_max: 6400,
            tail_tolerance: TAIL_TOLERANCE,
        }
    }
}

impl Truncation {
    pub fn fixed(n_max: usize) -> Self {
        Self {
            n_max,
            max_n_max: n_max,
            ..Self::default()
        }
    }

    fn resolve(&self, mut build: impl FnMut(usize) -> Result<LadderState>) -> Result<LadderState> {
        let mut n_max = self.n_max.max(1);
        loop {
            let state = build(n_max)?;
            if state.tail_mass() <= self.tail_tolerance {
                return Ok(state);
            }
            if n_max >= self.max_n_max {
                return Err(Error::Truncation {
                    n_max,
                    tail: state.tail_mass(),
                    tolerance: self.tail_tolerance,
                });
            }
            n_max = (2 * n_max).min(self.max_n_max);
        }
    }
}

/// Probability distribution over `|0>, ..., |n_max>`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderState {
    populations: Vec<f64>,
}

impl LadderState {
    /// Accepts populations that are non-negative and sum to one within 1e-12.
    pub fn new(populations: Vec<f64>) -> Result<Self> {
        if populations.is_empty() {
            return Err(Error::domain("populations", "ladder needs at least one level"));
        }
        if let Some(p) = populations.iter().find(|p| !(**p >= 0.0 && p.is_finite())) {
            return Err(Error::domain("populations", format!("negative or non-finite population {p}")));
        }
        let total: f64 = populations.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::domain("populations", format!("must sum to 1, got {total}")));
        }
        Ok(Self { populations })
    }

    /// Normalizes non-negative weights.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::domain("populations", "weights must have positive finite sum"));
        }
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    /// All population in level `n`.
    pub fn pure(n: usize, n_max: usize) -> Result<Self> {
        if n > n_max {
            return Err(Error::domain("n", format!("level {n} above n_max = {n_max}")));
        }
        let mut p = vec![0.0; n_max + 1];
        p[n] = 1.0;
        Ok(Self { populations: p })
    }

    /// Truncated geometric (thermal) distribution with untruncated mean `mean_n`.
    pub fn thermal(mean_n: f64, n_max: usize) -> Result<Self> {
        require_positive("mean_n", mean_n)?;
        geometric(mean_n / (1.0 + mean_n), n_max)
    }

    pub fn thermal_auto(mean_n: f64, truncation: &Truncation) -> Result<Self> {
        truncation.resolve(|n| Self::thermal(mean_n, n))
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn n_max(&self) -> usize {
        self.populations.len() - 1
    }

    pub fn mean_n(&self) -> f64 {
        self.populations.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean_n();
        self.populations
            .iter()
            .enumerate()
            .map(|(n, p)| (n as f64 - m).powi(2) * p)
            .sum()
    }

    pub fn ground_population(&self) -> f64 {
        self.populations[0]
    }

    /// Population of the top rung.
    pub fn tail_mass(&self) -> f64 {
        *self.populations.last().expect("non-empty ladder")
    }

    pub fn total(&self) -> f64 {
        self.populations.iter().sum()
    }

    /// Total-variation distance; the shorter ladder is zero-padded.
    pub fn total_variation(&self, other: &LadderState) -> f64 {
        let len = self.populations.len().max(other.populations.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        0.5 * (0..len)
            .map(|i| (get(&self.populations, i) - get(&other.populations, i)).abs())
            .sum::<f64>()
    }

    /// Writes `n,pi_n`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "pi_n"])?;
        for (n, p) in self.populations.iter().enumerate() {
            w.write_record([n.to_string(), p.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn geometric(ratio: f64, n_max: usize) -> Result<LadderState> {
    if !(0.0..1.0).contains(&ratio) {
        return Err(Error::Internal(format!("geometric ratio {ratio} outside [0, 1)")));
    }
    let mut weights = Vec::with_capacity(n_max + 1);
    let mut w = 1.0;
    for _ in 0..=n_max {
        weights.push(w);
        w *= ratio;
    }
    LadderState::from_weights(weights)
}

/// Untruncated stationary mean `(η_c ξ + 2/5) / ((1 − ξ) η_c)`.
pub fn steady_state_mean(eta_c: f64, xi: f64) -> f64 {
    let r = successive_ratio(eta_c, xi);
    r / (1.0 - r)
}

/// Untruncated stationary ground-state population `(1 − ξ) η_c / (η_c + 2/5)`.
pub fn steady_state_ground(eta_c: f64, xi: f64) -> f64 {
    1.0 - successive_ratio(eta_c, xi)
}

/// Stationary distribution: geometric with ratio `(ξη_c + 2/5)/(η_c + 2/5)`,
/// truncated and renormalized per `truncation`.
pub fn steady_state_distribution(eta_c: f64, xi: f64, truncation: &Truncation) -> Result<LadderState> {
    require_positive("eta_c", eta_c)?;
    if !(xi > 0.0 && xi < 1.0) {
        return Err(Error::domain("xi", format!("must lie in (0, 1), got {xi}")));
    }
    let r = successive_ratio(eta_c, xi);
    assert!(r < 1.0, "successive ratio {r} >= 1 for xi < 1, eta_c > 0");
    truncation.resolve(|n| geometric(r, n))
}

/// How [`evolve_populations`] advances the ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LadderStepper {
    /// Exact propagator `exp(G dt)` of the time-invariant generator.
    #[default]
    Exact,
    /// Classical RK4; requires `dt * max exit rate < 0.1`.
    Explicit,
}

/// Sampled master-equation solution.
#[derive(Debug, Clone)]
pub struct LadderTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<LadderState>,
}

impl LadderTrajectory {
    pub fn last(&self) -> &LadderState {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Dense generator of the truncated ladder.
pub fn generator(rates: &LadderRates, n_max: usize) -> DMatrix<f64> {
    let dim = n_max + 1;
    let mut g = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        let up = if n < n_max { rates.excite(n + 1) } else { 0.0 };
        g[(n, n)] = -(rates.decay(n) + up);
        if n < n_max {
            g[(n, n + 1)] = rates.decay(n + 1);
            g[(n + 1, n)] = rates.excite(n + 1);
        }
    }
    g
}

/// Largest exit rate `Γ_n + γ_{n+1}` on the truncated ladder.
pub fn max_exit_rate(rates: &LadderRates, n_max: usize) -> f64 {
    (0..=n_max)
        .map(|n| rates.decay(n) + if n < n_max { rates.excite(n + 1) } else { 0.0 })
        .fold(0.0, f64::max)
}

/// Integrates the master equation over `[0, span]`, sampling every `dt`.
///
/// Fails with [`Error::Truncation`] if any sampled state puts more than
/// `tail_tolerance` on the top rung.
pub fn evolve_populations(
    initial: &LadderState,
    rates: &LadderRates,
    span: f64,
    dt: f64,
    stepper: LadderStepper,
    tail_tolerance: f64,
) -> Result<LadderTrajectory> {
    require_positive("dt", dt)?;
    require_positive("span", span)?;
    let steps = (span / dt).round() as usize;
    if steps == 0 {
        return Err(Error::domain("dt", format!("span {span} s is shorter than one step")));
    }
    let n_max = initial.n_max();
    let gen = generator(rates, n_max);

    let step: Box<dyn Fn(&DVector<f64>) -> DVector<f64>> = match stepper {
        LadderStepper::Exact => {
            // exp of a Metzler matrix is entrywise non-negative with unit
            // column sums; clip and rescale away the round-off.
            let mut prop = (&gen * dt).exp().map(|x| x.max(0.0));
            for mut col in prop.column_iter_mut() {
                let sum = col.sum();
                col /= sum;
            }
            Box::new(move |p| &prop * p)
        }
        LadderStepper::Explicit => {
            let max_dt = super::STABILITY_BOUND / max_exit_rate(rates, n_max);
            if dt >= max_dt {
                return Err(Error::Stability { dt, max_dt });
            }
            Box::new(move |p| {
                let k1 = &gen * p;
                let k2 = &gen * (p + &k1 * (0.5 * dt));
                let k3 = &gen * (p + &k2 * (0.5 * dt));
                let k4 = &gen * (p + &k3 * dt);
                p + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0)
            })
        }
    };

    let check_tail = |p: &DVector<f64>| {
        let tail = p[n_max];
        if tail > tail_tolerance {
            Err(Error::Truncation {
                n_max,
                tail,
                tolerance: tail_tolerance,
            })
        } else {
            Ok(())
        }
    };

    let mut p = DVector::from_column_slice(initial.populations());
    check_tail(&p)?;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(initial.clone());
    for k in 1..=steps {
        p = step(&p);
        check_tail(&p)?;
        times.push(k as f64 * dt);
        states.push(LadderState {
            populations: p.iter().copied().collect(),
        });
    }
    Ok(LadderTrajectory { times, states })
}

/// Net kinetic-energy change per particle, `−ħω_V Σ (Γ_n − γ_{n+1}) Π_n`, in W.
///
/// The sum runs over the truncated ladder, where the top rung has no
/// upward channel. Negative means net cooling.
pub fn energy_flux(state: &LadderState, rates: &LadderRates, omega_v: f64) -> f64 {
    let n_max = state.n_max();
    let sum: f64 = state
        .populations()
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let up = if n < n_max { rates.excite(n + 1) } else { 0.0 };
            (rates.decay(n) - up) * p
        })
        .sum();
    -HBAR * omega_v * sum
}

/// Temperature-equivalent of a mean occupation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TemperatureConvention {
    /// `k_B T = ħω_V <n>`; the reporting default.
    #[default]
    Quanta,
    /// `k_B T = ħω_V (<n> + 1/2)`.
    ZeroPoint,
    /// Boltzmann fit, `<n> = 1/(exp(ħω_V/k_B T) − 1)`.
    Boltzmann,
}

pub fn temperature_equivalent(mean_n: f64, omega_v: f64, convention: TemperatureConvention) -> f64 {
    let quantum = HBAR * omega_v / K_B;
    match convention {
        TemperatureConvention::Quanta => quantum * mean_n,
        TemperatureConvention::ZeroPoint => quantum * (mean_n + 0.5),
        TemperatureConvention::Boltzmann => quantum / (1.0 + 1.0 / mean_n).ln(),
    }
}
