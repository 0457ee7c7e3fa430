//! Equation and wave parameters, kinematics and the reduced quadrature
//! constants.
//!
//! The equation is
//!
//! ```text
//! (u_t + a (u^m)_x + b (u^n)_xxx)_x + s Δ⊥ u = 0
//! ```
//!
//! in `N` spatial dimensions. Travelling waves depend on
//! `ξ = x + μ·y − ν t` only, and their shape is governed by
//! `κ = ν − s|μ|²`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Coefficients and nonlinearity powers of the K_N(m,n) equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquationParams {
    pub a: f64,
    pub b: f64,
    /// Transverse sign. `0` selects the one-dimensional K(m,n) reduction.
    pub s: i32,
    pub m: Rational,
    pub n: Rational,
    /// Number of spatial dimensions.
    pub dim: usize,
}

impl EquationParams {
    pub fn new(a: f64, b: f64, s: i32, m: Rational, n: Rational, dim: usize) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter("a and b must be finite".into()));
        }
        if a == 0.0 {
            return Err(Error::ZeroCoefficient("a"));
        }
        if b == 0.0 {
            return Err(Error::ZeroCoefficient("b"));
        }
        if !m.is_positive() {
            return Err(Error::NonPositivePower("m"));
        }
        if !n.is_positive() {
            return Err(Error::NonPositivePower("n"));
        }
        if !(-1..=1).contains(&s) {
            return Err(Error::InvalidParameter(format!(
                "s must be -1, 0 or +1, got {s}"
            )));
        }
        if dim == 0 {
            return Err(Error::DimensionMismatch("N must be at least 1".into()));
        }
        if s == 0 && dim > 1 {
            return Err(Error::DimensionMismatch(format!(
                "s = 0 is the one-dimensional reduction but N = {dim}"
            )));
        }
        Ok(EquationParams { a, b, s, m, n, dim })
    }

    /// Convex nonlinearity: `sgn(a) = sgn(b)`.
    pub fn is_convex(&self) -> bool {
        self.a.signum() == self.b.signum()
    }
}

/// Transverse slopes `μ` (length `N − 1`) and temporal frequency `ν`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaveParams {
    pub mu: Vec<f64>,
    pub nu: f64,
}

impl WaveParams {
    pub fn new(mu: Vec<f64>, nu: f64) -> Result<Self> {
        if !nu.is_finite() || mu.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("μ and ν must be finite".into()));
        }
        Ok(WaveParams { mu, nu })
    }

    /// `|μ|²`
    pub fn mu_norm_sq(&self) -> f64 {
        self.mu.iter().fold(0.0, |acc, v| acc + v * v)
    }

    pub fn mu_norm(&self) -> f64 {
        self.mu_norm_sq().sqrt()
    }

    /// Travelling-wave variable `ξ = x + μ·y − ν t`.
    pub fn xi(&self, t: f64, x: f64, y: &[f64]) -> f64 {
        x + self.mu.iter().zip(y).map(|(m, y)| m * y).sum::<f64>() - self.nu * t
    }

    pub(crate) fn check_dim(&self, eq: &EquationParams) -> Result<()> {
        if self.mu.len() + 1 != eq.dim {
            return Err(Error::DimensionMismatch(format!(
                "μ has {} components but N = {} needs {}",
                self.mu.len(),
                eq.dim,
                eq.dim - 1
            )));
        }
        Ok(())
    }
}

/// Derived kinematic quantities of a plane travelling wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Kinematics {
    /// `κ = ν − s|μ|²`
    pub kappa: f64,
    /// `c = ν / √(1 + |μ|²)`
    pub speed: f64,
    /// Direction angle `θ = arctan|μ|` from the positive x axis.
    pub theta: f64,
    /// Polar angle of `(μ₁, μ₂)` in the transverse plane, only for N = 3.
    pub phi: Option<f64>,
}

impl Kinematics {
    /// The kinematic relation `c = s sin²θ / |cos θ|` that ties speed to
    /// direction when `κ = 0`.
    pub fn zero_kappa_speed(s: i32, theta: f64) -> f64 {
        s as f64 * theta.sin().powi(2) / theta.cos().abs()
    }
}

pub fn kappa(eq: &EquationParams, w: &WaveParams) -> f64 {
    w.nu - eq.s as f64 * w.mu_norm_sq()
}

pub fn kinematics(eq: &EquationParams, w: &WaveParams) -> Result<Kinematics> {
    w.check_dim(eq)?;
    let mu2 = w.mu_norm_sq();
    let phi = (eq.dim == 3).then(|| w.mu[1].atan2(w.mu[0]));
    Ok(Kinematics {
        kappa: kappa(eq, w),
        speed: w.nu / (1.0 + mu2).sqrt(),
        theta: mu2.sqrt().atan(),
        phi,
    })
}

/// Constants of the compacton quadrature
/// `∫₀^V dV / √(E + C V + B V^{1+1/n} − A V^{1+m/n}) = L ∓ ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedConstants {
    pub e: f64,
    pub c: f64,
    pub b: f64,
    pub a: f64,
    /// Integration constants of the reduction chain. `c1` is zero on the
    /// quadrature branch; `c4` is the half-width when it is known.
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: Option<f64>,
}

pub fn reduced_constants(
    eq: &EquationParams,
    w: &WaveParams,
    c2: f64,
    c3: f64,
) -> Result<ReducedConstants> {
    w.check_dim(eq)?;
    let (m, n) = (eq.m.value(), eq.n.value());
    let k = kappa(eq, w);
    Ok(ReducedConstants {
        e: 2.0 * c3 / eq.b,
        c: 2.0 * c2 / eq.b,
        b: 2.0 * n * k / ((n + 1.0) * eq.b),
        a: 2.0 * n * eq.a / ((m + n) * eq.b),
        c1: 0.0,
        c2,
        c3,
        c4: None,
    })
}

impl ReducedConstants {
    /// Constants given directly, without provenance.
    pub fn from_coefficients(e: f64, c: f64, b: f64, a: f64) -> Self {
        ReducedConstants {
            e,
            c,
            b,
            a,
            c1: 0.0,
            c2: f64::NAN,
            c3: f64::NAN,
            c4: None,
        }
    }
}
