use num_complex::Complex64;

use crate::error::{require_finite, require_positive, Error, Result};

pub type Vec2 = [Complex64; 2];
pub type Mat2 = [[Complex64; 2]; 2];

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Coupling matrix of the two counter-propagating traveling waves:
///
/// ```text
/// M = | i(δc − NΔ0) − γc     −iNΔ0 g          |
///     | −iNΔ0 g*             i(δc − NΔ0) − γc |
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeMatrix {
    pub delta_c: f64,
    pub n_delta0: f64,
    pub g: Complex64,
    pub gamma_c: f64,
}

impl ModeMatrix {
    pub fn new(delta_c: f64, n_delta0: f64, g: Complex64, gamma_c: f64) -> Result<Self> {
        require_positive("gamma_c", gamma_c)?;
        require_finite("delta_c", delta_c)?;
        require_finite("n_delta0", n_delta0)?;
        if !(g.norm() <= 1.0 + 1e-12) {
            return Err(Error::domain("g", format!("|g| must not exceed 1, got {}", g.norm())));
        }
        Ok(Self::unchecked(delta_c, n_delta0, g, gamma_c))
    }

    /// No range check on `g`; used by the integrator, where a phase-modulated
    /// `g` may exceed unit modulus at second order in the modulation depth.
    pub(crate) fn unchecked(delta_c: f64, n_delta0: f64, g: Complex64, gamma_c: f64) -> Self {
        Self {
            delta_c,
            n_delta0,
            g,
            gamma_c,
        }
    }

    pub fn diagonal(&self) -> Complex64 {
        Complex64::new(-self.gamma_c, self.delta_c - self.n_delta0)
    }

    pub fn entries(&self) -> Mat2 {
        let d = self.diagonal();
        [
            [d, -I * self.n_delta0 * self.g],
            [-I * self.n_delta0 * self.g.conj(), d],
        ]
    }

    /// Half of the eigenfrequency splitting, `|NΔ0| |g|`.
    fn half_splitting(&self) -> f64 {
        self.n_delta0.abs() * self.g.norm()
    }

    /// Eigenvalues `i(δc − NΔ0(1 ± |g|)) − γc`: the first belongs to the
    /// pumped (lattice) mode, the second to the unpumped mode.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let gm = self.g.norm();
        [
            Complex64::new(-self.gamma_c, self.delta_c - self.n_delta0 * (1.0 + gm)),
            Complex64::new(-self.gamma_c, self.delta_c - self.n_delta0 * (1.0 - gm)),
        ]
    }

    /// Eigenfrequency splitting `2 |NΔ0| |g|`, rad/s.
    pub fn splitting(&self) -> f64 {
        2.0 * self.half_splitting()
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        let d = self.diagonal();
        let s = self.half_splitting();
        (d + I * s).norm().max((d - I * s).norm())
    }

    pub fn apply(&self, x: &Vec2) -> Vec2 {
        let m = self.entries();
        [
            m[0][0] * x[0] + m[0][1] * x[1],
            m[1][0] * x[0] + m[1][1] * x[1],
        ]
    }

    /// Exact propagator `exp(M t)`.
    ///
    /// The off-diagonal part `B` squares to `−(NΔ0 |g|)^2` times identity,
    /// so `exp(Bt) = cos(θt) + sin(θt)/θ · B`.
    pub fn propagator(&self, t: f64) -> Mat2 {
        let theta = self.half_splitting();
        let (c, s_over_theta) = if theta * t.abs() < 1e-8 {
            (1.0, t)
        } else {
            ((theta * t).cos(), (theta * t).sin() / theta)
        };
        let scale = (self.diagonal() * t).exp();
        let m = self.entries();
        [
            [scale * c, scale * s_over_theta * m[0][1]],
            [scale * s_over_theta * m[1][0], scale * c],
        ]
    }

    /// Solves `M x = rhs`.
    pub fn solve(&self, rhs: &Vec2) -> Vec2 {
        let m = self.entries();
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        [
            (m[1][1] * rhs[0] - m[0][1] * rhs[1]) / det,
            (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det,
        ]
    }

    /// Fixed point of `dx/dt = M x + drive`.
    pub fn fixed_point(&self, drive: &Vec2) -> Vec2 {
        let x = self.solve(drive);
        [-x[0], -x[1]]
    }
}

pub(crate) fn mat_vec(m: &Mat2, x: &Vec2) -> Vec2 {
    [
        m[0][0] * x[0] + m[0][1] * x[1],
        m[1][0] * x[0] + m[1][1] * x[1],
    ]
}
