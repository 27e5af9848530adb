//! Time integration of the driven two-mode field equations.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;

use super::matrix::{mat_vec, ModeMatrix, Vec2};
use crate::error::{require_finite, require_positive, Error, Result};
use crate::params::CavityParams;

/// Explicit stepping requires `dt * |λ|max` below this bound.
pub const STABILITY_BOUND: f64 = 0.1;

/// Traveling-wave amplitudes (square root of photon number) and, when
/// known, the sidebands riding on `alpha_+`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldState {
    pub alpha_plus: Complex64,
    pub alpha_minus: Complex64,
    pub beta: Option<Complex64>,
    pub gamma: Option<Complex64>,
}

impl FieldState {
    pub fn new(alpha_plus: Complex64, alpha_minus: Complex64) -> Self {
        Self {
            alpha_plus,
            alpha_minus,
            beta: None,
            gamma: None,
        }
    }

    fn as_vec(&self) -> Vec2 {
        [self.alpha_plus, self.alpha_minus]
    }
}

/// Localization parameter as a function of time.
#[derive(Clone)]
pub enum GTrajectory {
    Constant(Complex64),
    /// `g(t) = |g| (1 + iε cos Ωt)`.
    PhaseModulated { g_mod: f64, epsilon: f64, omega: f64 },
    Custom {
        description: String,
        g: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    },
}

impl GTrajectory {
    pub fn at(&self, t: f64) -> Complex64 {
        match self {
            GTrajectory::Constant(g) => *g,
            GTrajectory::PhaseModulated { g_mod, epsilon, omega } => {
                Complex64::new(*g_mod, g_mod * epsilon * (omega * t).cos())
            }
            GTrajectory::Custom { g, .. } => g(t),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, GTrajectory::Constant(_))
    }
}

impl fmt::Debug for GTrajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GTrajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GTrajectory::Constant(g) => write!(f, "constant g = {} {:+}i", g.re, g.im),
            GTrajectory::PhaseModulated { g_mod, epsilon, omega } => {
                write!(f, "g = {g_mod} (1 + i {epsilon} cos({omega} t))")
            }
            GTrajectory::Custom { description, .. } => f.write_str(description),
        }
    }
}

/// Uniformly sampled solution of the field equations.
#[derive(Debug, Clone)]
pub struct FieldTimeSeries {
    pub times: Vec<f64>,
    pub alpha_plus: Vec<Complex64>,
    pub alpha_minus: Vec<Complex64>,
    pub dt: f64,
    pub description: String,
}

impl FieldTimeSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<FieldState> {
        let i = self.len().checked_sub(1)?;
        Some(FieldState::new(self.alpha_plus[i], self.alpha_minus[i]))
    }

    /// Writes `t,re_ap,im_ap,re_am,im_am`, one row per sample.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "re_ap", "im_ap", "re_am", "im_am"])?;
        for ((t, ap), am) in self.times.iter().zip(&self.alpha_plus).zip(&self.alpha_minus) {
            w.write_record([
                t.to_string(),
                ap.re.to_string(),
                ap.im.to_string(),
                am.re.to_string(),
                am.im.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Integrates `d/dt (α+, α−) = M(g(t)) (α+, α−) + γ0 (η+, η−)` over
/// `[0, span]` with `round(span/dt) + 1` samples.
///
/// Constant `g` uses the exact propagator. Time-dependent `g` uses
/// classical RK4 and fails with [`Error::Stability`] unless
/// `dt * |λ|max < 0.1`.
pub fn integrate_modes(
    initial: &FieldState,
    pump: (Complex64, Complex64),
    g: &GTrajectory,
    cavity: &CavityParams,
    n_delta0: f64,
    span: f64,
    dt: f64,
) -> Result<FieldTimeSeries> {
    require_positive("dt", dt)?;
    require_positive("span", span)?;
    require_finite("n_delta0", n_delta0)?;
    let steps = (span / dt).round() as usize;
    if steps == 0 {
        return Err(Error::domain("dt", format!("span {span} s is shorter than one step")));
    }
    let drive = [cavity.gamma_0 * pump.0, cavity.gamma_0 * pump.1];
    let matrix_at = |t: f64| ModeMatrix::unchecked(cavity.delta_c, n_delta0, g.at(t), cavity.gamma_c);

    let mut times = Vec::with_capacity(steps + 1);
    let mut ap = Vec::with_capacity(steps + 1);
    let mut am = Vec::with_capacity(steps + 1);
    let mut x = initial.as_vec();
    let mut record = |k: usize, x: &Vec2| {
        times.push(k as f64 * dt);
        ap.push(x[0]);
        am.push(x[1]);
    };
    record(0, &x);

    if let GTrajectory::Constant(g0) = g {
        let m = ModeMatrix::new(cavity.delta_c, n_delta0, *g0, cavity.gamma_c)?;
        let fixed = m.fixed_point(&drive);
        let prop = m.propagator(dt);
        for k in 1..=steps {
            let dev = mat_vec(&prop, &[x[0] - fixed[0], x[1] - fixed[1]]);
            x = [fixed[0] + dev[0], fixed[1] + dev[1]];
            record(k, &x);
        }
    } else {
        let radius = (0..=2 * steps)
            .map(|i| matrix_at(0.5 * dt * i as f64).spectral_radius())
            .fold(0.0, f64::max);
        let max_dt = STABILITY_BOUND / radius;
        if dt >= max_dt {
            return Err(Error::Stability { dt, max_dt });
        }
        let rhs = |t: f64, x: &Vec2| {
            let mx = matrix_at(t).apply(x);
            [mx[0] + drive[0], mx[1] + drive[1]]
        };
        let axpy = |x: &Vec2, h: f64, k: &Vec2| [x[0] + h * k[0], x[1] + h * k[1]];
        for k in 1..=steps {
            let t = (k - 1) as f64 * dt;
            let k1 = rhs(t, &x);
            let k2 = rhs(t + 0.5 * dt, &axpy(&x, 0.5 * dt, &k1));
            let k3 = rhs(t + 0.5 * dt, &axpy(&x, 0.5 * dt, &k2));
            let k4 = rhs(t + dt, &axpy(&x, dt, &k3));
            for i in 0..2 {
                x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            record(k, &x);
        }
    }

    Ok(FieldTimeSeries {
        times,
        alpha_plus: ap,
        alpha_minus: am,
        dt,
        description: g.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::response::steady_state_carrier;
    use std::f64::consts::PI;

    fn cavity(delta_c: f64) -> CavityParams {
        CavityParams::new(1.8e5, 130e-6, 0.1, PI * 1.7e4)
            .unwrap()
            .with_detuning(delta_c)
            .unwrap()
    }

    #[test]
    fn sample_count_and_times() {
        let cav = cavity(0.0);
        let s = integrate_modes(
            &FieldState::default(),
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            &GTrajectory::Constant(Complex64::new(0.5, 0.0)),
            &cav,
            -1e6,
            1e-4,
            1e-6,
        )
        .unwrap();
        assert_eq!(s.len(), 101);
        assert!((s.times[100] - 1e-4).abs() < 1e-18);
    }

    #[test]
    fn free_decay_rate_is_gamma_c() {
        let cav = cavity(-1.5e6);
        let init = FieldState::new(Complex64::new(1.0, 0.2), Complex64::new(-0.3, 0.7));
        let zero = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for g in [
            GTrajectory::Constant(Complex64::from_polar(0.9, 1.1)),
            GTrajectory::PhaseModulated {
                g_mod: 0.9,
                epsilon: 1e-3,
                omega: 2.0 * PI * 380e3,
            },
        ] {
            let s = integrate_modes(&init, zero, &g, &cav, -1.3e6, 4e-5, 2e-8).unwrap();
            let n0 = (s.alpha_plus[0].norm_sqr() + s.alpha_minus[0].norm_sqr()).sqrt();
            for k in (0..s.len()).step_by(250) {
                let n = (s.alpha_plus[k].norm_sqr() + s.alpha_minus[k].norm_sqr()).sqrt();
                let expect = n0 * (-cav.gamma_c * s.times[k]).exp();
                // Constant g: M + M^† = −2γc, so the total norm decays exactly.
                let tol = if g.is_constant() { 1e-6 } else { 1e-2 };
                assert!(((n - expect) / expect).abs() < tol, "{g}: {n} vs {expect}");
            }
        }
    }

    #[test]
    fn stability_guard_reports_max_dt() {
        let cav = cavity(-2.5e6);
        let g = GTrajectory::PhaseModulated {
            g_mod: 0.9,
            epsilon: 1e-3,
            omega: 2.4e6,
        };
        let err = integrate_modes(
            &FieldState::default(),
            (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)),
            &g,
            &cav,
            -1.3e6,
            1e-4,
            1e-6,
        )
        .unwrap_err();
        match err {
            Error::Stability { dt, max_dt } => {
                assert_eq!(dt, 1e-6);
                assert!(max_dt < dt && max_dt > 1e-9);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn constant_g_relaxes_to_analytic_carrier() {
        let g = 0.9;
        let n_delta0 = -1.3e6;
        let cav = cavity(-2.2e6);
        let eta = Complex64::new(0.7, -0.2);
        let s = integrate_modes(
            &FieldState::default(),
            (eta, eta),
            &GTrajectory::Constant(Complex64::new(g, 0.0)),
            &cav,
            n_delta0,
            2e-3,
            1e-6,
        )
        .unwrap();
        let end = s.last().unwrap();
        let expect = steady_state_carrier(&cav, n_delta0, g, eta);
        assert!((end.alpha_plus - expect).norm() < 1e-8 * expect.norm());
        assert!((end.alpha_minus - expect).norm() < 1e-8 * expect.norm());
    }

    #[test]
    fn csv_header_and_rows() {
        let cav = cavity(0.0);
        let s = integrate_modes(
            &FieldState::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)),
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            &GTrajectory::Constant(Complex64::new(0.0, 0.0)),
            &cav,
            -1e6,
            2e-6,
            1e-6,
        )
        .unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,re_ap,im_ap,re_am,im_am"));
        assert_eq!(lines.next(), Some("0,1,0,0,1"));
        assert_eq!(text.lines().count(), 4);
    }
}
