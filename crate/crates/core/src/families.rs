//! Closed-form travelling waves: line compactons, weak-compactons,
//! solitary waves and heavy-tail waves.
//!
//! Every compacton has the form `U = α·(base(ξ))^q` on `|ξ| ≤ L` and is cut
//! off to zero outside. Powers of negative bases follow [`signed_pow`].

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::{jacobi_series, Jet};
use crate::params::{kappa, kinematics, reduced_constants, EquationParams, Kinematics, ReducedConstants, WaveParams};
use crate::rational::Rational;
use crate::specfun::{elliptic_k, elliptic_k_imag, jacobi, jacobi_imag, signed_pow, tan_fixed_points, EllipticModulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyId {
    LinCos,
    LinSin,
    LinMixed,
    SolitarySech,
    HeavyTailHi,
    SolitarySechSub,
    HeavyTailSub,
    CosCompacton,
    SinCompacton,
    CnZeroKappa,
    SnZeroKappa,
    AlgZeroKappa,
    CnGeneral,
    SnGeneral,
    CnNegB,
    SnNegB,
    AlgGeneral,
    AlgNonconvex,
}

/// Solution class each family belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExpectedClass {
    WeakCompacton,
    Compacton,
    NonCompact,
}

impl FamilyId {
    pub const ALL: [FamilyId; 18] = [
        FamilyId::LinCos,
        FamilyId::LinSin,
        FamilyId::LinMixed,
        FamilyId::SolitarySech,
        FamilyId::HeavyTailHi,
        FamilyId::SolitarySechSub,
        FamilyId::HeavyTailSub,
        FamilyId::CosCompacton,
        FamilyId::SinCompacton,
        FamilyId::CnZeroKappa,
        FamilyId::SnZeroKappa,
        FamilyId::AlgZeroKappa,
        FamilyId::CnGeneral,
        FamilyId::SnGeneral,
        FamilyId::CnNegB,
        FamilyId::SnNegB,
        FamilyId::AlgGeneral,
        FamilyId::AlgNonconvex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::LinCos => "LinCos",
            FamilyId::LinSin => "LinSin",
            FamilyId::LinMixed => "LinMixed",
            FamilyId::SolitarySech => "SolitarySech",
            FamilyId::HeavyTailHi => "HeavyTailHi",
            FamilyId::SolitarySechSub => "SolitarySechSub",
            FamilyId::HeavyTailSub => "HeavyTailSub",
            FamilyId::CosCompacton => "CosCompacton",
            FamilyId::SinCompacton => "SinCompacton",
            FamilyId::CnZeroKappa => "CnZeroKappa",
            FamilyId::SnZeroKappa => "SnZeroKappa",
            FamilyId::AlgZeroKappa => "AlgZeroKappa",
            FamilyId::CnGeneral => "CnGeneral",
            FamilyId::SnGeneral => "SnGeneral",
            FamilyId::CnNegB => "CnNegB",
            FamilyId::SnNegB => "SnNegB",
            FamilyId::AlgGeneral => "AlgGeneral",
            FamilyId::AlgNonconvex => "AlgNonconvex",
        }
    }

    /// Profile formula, in plain text.
    pub fn formula(self) -> &'static str {
        match self {
            FamilyId::LinCos => "u = α cos(√(a/b) ξ/2)^{2/n}, L = √(b/a) π",
            FamilyId::LinSin => "u = α sin(√(a/b) ξ/2)^{2/n}, L = 2√(b/a) π",
            FamilyId::LinMixed => "u = α (±(ω cos z ξ − sin ωξ))^{1/n}, ω = √(a/b), L = z/ω, z = tan z",
            FamilyId::SolitarySech => "u = (B/A)^{1/(m−1)} sech((m−1)√B ξ/2)^{2/(m−1)}",
            FamilyId::HeavyTailHi => "u = (A/B + (m−1)² B ξ²/4)^{−1/(m−1)}",
            FamilyId::SolitarySechSub => "u = |A/B|^{1/(1−m)} sech((1−m)√|A| ξ/2)^{2/(1−m)}",
            FamilyId::HeavyTailSub => "u = (|B/A| + (1−m)² |A| ξ²/4)^{−1/(1−m)}",
            FamilyId::CosCompacton => "u = α cos(βξ)^{2/(n−1)}, β = (n−1)/(2n) √(a/b), L = π/(2β)",
            FamilyId::SinCompacton => "u = α sin(βξ)^{2/(n−1)}, β = (n−1)/(2n) √(a/b), L = π/β",
            FamilyId::CnZeroKappa => "u = α cn(βξ, 1/√2)^{2/n}, β = √(a α^n/(3b)), L = K(1/√2)/β",
            FamilyId::SnZeroKappa => "u = α sn(βξ, i)^{2/n}, β = √(a α^n/(6b)), L = 2K(i)/β",
            FamilyId::AlgZeroKappa => "u = α (1 − a ξ²/(12 b α^{n/2}))^{2/n}",
            FamilyId::CnGeneral => "u = α cn(βξ, 1/√2)^{2/(n−1)}, m = 2n−1, b > 0",
            FamilyId::SnGeneral => "u = α sn(βξ, i)^{2/(n−1)}, m = 2n−1, b > 0",
            FamilyId::CnNegB => "u = α cn(βξ, 1/√2)^{2/(1−n)}, m = 2n−1, b < 0",
            FamilyId::SnNegB => "u = α sn(βξ, i)^{2/(1−n)}, m = 2n−1, b < 0",
            FamilyId::AlgGeneral => "u = α (1 − βξ²)^{2/(n−1)}, m = (n+1)/2",
            FamilyId::AlgNonconvex => "u = α (1 − βξ²)^{1/(n−1)}, m = 2−n, sgn(a) = −sgn(b)",
        }
    }

    pub fn is_solitary(self) -> bool {
        matches!(
            self,
            FamilyId::SolitarySech | FamilyId::HeavyTailHi | FamilyId::SolitarySechSub | FamilyId::HeavyTailSub
        )
    }

    pub fn is_heavy_tail(self) -> bool {
        matches!(self, FamilyId::HeavyTailHi | FamilyId::HeavyTailSub)
    }

    pub fn expected_class(self) -> ExpectedClass {
        use FamilyId::*;
        match self {
            LinCos | LinSin | LinMixed | CnZeroKappa | SnZeroKappa | AlgZeroKappa => ExpectedClass::WeakCompacton,
            SolitarySech | HeavyTailHi | SolitarySechSub | HeavyTailSub => ExpectedClass::NonCompact,
            _ => ExpectedClass::Compacton,
        }
    }

    /// Names of the free parameters a family accepts.
    pub fn free_extras(self) -> &'static [&'static str] {
        use FamilyId::*;
        match self {
            LinCos | LinSin => &["alpha"],
            LinMixed => &["alpha", "root_index", "phase_sign"],
            CnZeroKappa | SnZeroKappa | AlgZeroKappa => &["alpha"],
            _ => &[],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name().to_ascii_lowercase() == key)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SignClass {
    Nonnegative,
    /// Negative amplitude on a base that keeps one sign.
    Nonpositive,
    /// Two lobes whose negative part is raised to an even power.
    SquaredNode,
    SignChanging,
}

/// The function raised to the power `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Shape {
    Cos { beta: f64 },
    Sin { beta: f64 },
    /// `cn(βξ, 1/√2)`
    Cn { beta: f64 },
    /// `sn(βξ, i)`
    SnImag { beta: f64 },
    /// `1 − γξ²`
    Quadratic { gamma: f64 },
    /// `phase·(ω cos z ξ − sin ωξ)`
    LinMixed { omega: f64, z: f64, phase: f64 },
    Sech { beta: f64 },
    /// `1 + γξ²`
    InverseQuadratic { gamma: f64 },
}

impl Shape {
    /// Whether the base takes both signs on the support.
    pub fn two_signed(&self) -> bool {
        matches!(self, Shape::Sin { .. } | Shape::SnImag { .. } | Shape::LinMixed { .. })
    }

    fn plain(&self, xi: f64) -> f64 {
        match *self {
            Shape::Cos { beta } => (beta * xi).cos(),
            Shape::Sin { beta } => (beta * xi).sin(),
            Shape::Cn { beta } => jacobi(beta * xi, FRAC_1_SQRT_2).map(|t| t.1).unwrap_or(f64::NAN),
            Shape::SnImag { beta } => jacobi_imag(beta * xi, 1.0).map(|t| t.0).unwrap_or(f64::NAN),
            Shape::Quadratic { gamma } => 1.0 - gamma * xi * xi,
            Shape::LinMixed { omega, z, phase } => phase * (omega * z.cos() * xi - (omega * xi).sin()),
            Shape::Sech { beta } => 1.0 / (beta * xi).cosh(),
            Shape::InverseQuadratic { gamma } => 1.0 + gamma * xi * xi,
        }
    }

    /// Base at `ξ = ±(L − d)` written so that it stays accurate as `d → 0`.
    fn near_edge(&self, positive: bool, d: f64, l: f64) -> f64 {
        let sgn = if positive { 1.0 } else { -1.0 };
        match *self {
            Shape::Cos { beta } => (beta * d).sin(),
            Shape::Sin { beta } => sgn * (beta * d).sin(),
            Shape::Cn { beta } => {
                // cn(K − u) = k' sn(u)/dn(u)
                let (sn, _, dn) = jacobi(beta * d, FRAC_1_SQRT_2).unwrap_or((f64::NAN, 0.0, 1.0));
                FRAC_1_SQRT_2 * sn / dn
            }
            // sn(2K − u) = sn(u)
            Shape::SnImag { beta } => sgn * jacobi_imag(beta * d, 1.0).map(|t| t.0).unwrap_or(f64::NAN),
            Shape::Quadratic { gamma } => gamma * d * (2.0 * l - d),
            Shape::LinMixed { omega, z, phase } => {
                let x = omega * d;
                let half = (0.5 * x).sin();
                let sin_minus_x = if x < 1e-2 {
                    let x2 = x * x;
                    -x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
                } else {
                    x.sin() - x
                };
                sgn * phase * (2.0 * z.sin() * half * half + z.cos() * sin_minus_x)
            }
            Shape::Sech { .. } | Shape::InverseQuadratic { .. } => self.plain(sgn * (l - d)),
        }
    }

    fn jet(&self, xi: f64) -> Jet {
        let x = Jet::var(xi);
        match *self {
            Shape::Cos { beta } => x.scale(beta).cos(),
            Shape::Sin { beta } => x.scale(beta).sin(),
            Shape::Cn { beta } => {
                let u = beta * xi;
                let (s, c, d) = jacobi(u, FRAC_1_SQRT_2).unwrap_or((f64::NAN, f64::NAN, f64::NAN));
                let series = jacobi_series(s, c, d, FRAC_1_SQRT_2);
                x.scale(beta).compose(series[1])
            }
            Shape::SnImag { beta } => {
                // sn(u, i) = (1/√2) sd(√2 u, 1/√2)
                let v = SQRT_2 * beta * xi;
                let (s, c, d) = jacobi(v, FRAC_1_SQRT_2).unwrap_or((f64::NAN, f64::NAN, f64::NAN));
                let series = jacobi_series(s, c, d, FRAC_1_SQRT_2);
                let arg = x.scale(SQRT_2 * beta);
                (arg.compose(series[0]) * arg.compose(series[2]).recip()).scale(FRAC_1_SQRT_2)
            }
            Shape::Quadratic { gamma } => Jet::constant(1.0) - (x * x).scale(gamma),
            Shape::LinMixed { omega, z, phase } => (x.scale(omega * z.cos()) - x.scale(omega).sin()).scale(phase),
            Shape::Sech { beta } => {
                let y = x.scale(beta);
                let cosh = (y.exp() + (-y).exp()).scale(0.5);
                cosh.recip()
            }
            Shape::InverseQuadratic { gamma } => Jet::constant(1.0) + (x * x).scale(gamma),
        }
    }
}

/// Free parameters of a family. Unset values take their defaults:
/// `alpha = 1`, `root_index = 1`, `phase_sign = +1`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Extras {
    pub alpha: Option<f64>,
    pub root_index: Option<usize>,
    pub phase_sign: Option<i32>,
}

impl Extras {
    pub fn with_alpha(alpha: f64) -> Self {
        Extras { alpha: Some(alpha), ..Default::default() }
    }

    /// Sets a named extra; unknown names are errors.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        match key {
            "alpha" => self.alpha = Some(value),
            "root_index" | "j" => {
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(Error::InvalidParameter(format!("root_index must be a positive integer, got {value}")));
                }
                self.root_index = Some(value as usize);
            }
            "phase_sign" | "phase" => {
                if value != 1.0 && value != -1.0 {
                    return Err(Error::InvalidParameter(format!("phase_sign must be +1 or -1, got {value}")));
                }
                self.phase_sign = Some(value as i32);
            }
            other => return Err(Error::InvalidParameter(format!("unknown extra `{other}`"))),
        }
        Ok(())
    }

    pub fn from_pairs(pairs: &[(&str, f64)]) -> Result<Self> {
        let mut e = Extras::default();
        for (k, v) in pairs {
            e.set(k, *v)?;
        }
        Ok(e)
    }
}

/// A concrete travelling wave.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profile {
    pub family: FamilyId,
    pub eq: EquationParams,
    pub wave: WaveParams,
    pub alpha: f64,
    /// Argument scale of the base (γ for the algebraic shapes, ω for LinMixed).
    pub beta: f64,
    pub q: Rational,
    pub modulus: Option<EllipticModulus>,
    /// Half-width `L`; infinite for solitary and heavy-tail waves.
    pub half_width: f64,
    /// Cutoff power: `U ~ U₀^± (L ∓ ξ)^p`.
    pub p: Option<Rational>,
    pub u0_plus: f64,
    pub u0_minus: f64,
    pub sign_class: SignClass,
    pub shape: Shape,
    /// Right side `C₁ξ + C₂` of the twice-integrated ODE.
    pub c1: f64,
    pub c2: f64,
    pub extras: Extras,
    /// `(A, B)` of the solitary first-order ODE.
    pub solitary_ab: Option<(f64, f64)>,
}

fn validity(msg: impl Into<String>) -> Error {
    Error::Validity(msg.into())
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(validity(msg))
    }
}

fn sgn(x: f64) -> i32 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `κ = 0` up to rounding in `ν − s|μ|²`.
pub fn kappa_is_zero(eq: &EquationParams, w: &WaveParams) -> bool {
    let k = kappa(eq, w);
    k == 0.0 || k.abs() <= 1e-12 * (w.nu.abs() + w.mu_norm_sq())
}

/// `κ = −2bn(n+1)/(n−1)²`, the pinned value of the `n ≥ 3` windows.
pub fn pinned_kappa(eq: &EquationParams) -> f64 {
    let n = eq.n.value();
    -2.0 * eq.b * n * (n + 1.0) / ((n - 1.0) * (n - 1.0))
}

fn n_window(eq: &EquationParams, k: f64) -> Result<()> {
    let one = Rational::ONE;
    let three = Rational::integer(3);
    if eq.n > one && eq.n < three {
        return Ok(());
    }
    if eq.n >= three {
        let pin = pinned_kappa(eq);
        if (k - pin).abs() <= 1e-10 * pin.abs() {
            return Ok(());
        }
        return Err(validity(format!(
            "n ≥ 3 requires κ = −2bn(n+1)/(n−1)² = {pin}, got κ = {k}"
        )));
    }
    Err(validity("requires 1 < n < 3, or n ≥ 3 with κ = −2bn(n+1)/(n−1)²"))
}

/// `(A, B)` of `U′² − B U^{3−n} + A U^{2+m−n} = 0`.
pub fn solitary_coefficients(eq: &EquationParams, w: &WaveParams) -> (f64, f64) {
    let (m, n) = (eq.m.value(), eq.n.value());
    let k = kappa(eq, w);
    (2.0 * eq.a / (n * (m + n) * eq.b), 2.0 * k / (n * (n + 1.0) * eq.b))
}

/// One-dimensional equation (`s = 0`, `b = 1`) whose solitary coefficients
/// are the given `A`, `B`.
pub fn equation_for_solitary(a_coef: f64, b_coef: f64, m: Rational, n: Rational) -> Result<(EquationParams, WaveParams)> {
    let (mv, nv) = (m.value(), n.value());
    let a = a_coef * nv * (mv + nv) / 2.0;
    let nu = b_coef * nv * (nv + 1.0) / 2.0;
    Ok((EquationParams::new(a, 1.0, 0, m, n, 1)?, WaveParams::new(vec![], nu)?))
}

struct Draft {
    alpha: f64,
    beta: f64,
    q: Rational,
    modulus: Option<EllipticModulus>,
    half_width: f64,
    p: Option<Rational>,
    /// Slopes of the base at `+L` and `−L` (second-order coefficient for LinMixed).
    slopes: (f64, f64),
    shape: Shape,
    c1: f64,
    c2: f64,
}

/// Builds a profile after checking the family's validity conditions.
pub fn make_profile(family: FamilyId, eq: &EquationParams, wave: &WaveParams, extras: Extras) -> Result<Profile> {
    wave.check_dim(eq)?;
    let (a, b) = (eq.a, eq.b);
    let (m, n) = (eq.m, eq.n);
    let nf = n.value();
    let k = kappa(eq, wave);
    let k2 = Rational::integer(2);
    let one = Rational::ONE;
    let alpha_extra = extras.alpha.unwrap_or(1.0);
    if !alpha_extra.is_finite() {
        return Err(Error::InvalidParameter("alpha must be finite".into()));
    }
    let mut resolved = extras;
    use FamilyId::*;

    let draft = match family {
        LinCos | LinSin | LinMixed => {
            require(m == n, "requires m = n")?;
            require(kappa_is_zero(eq, wave), "κ = 0 required (ν = s|μ|²)")?;
            require(sgn(a) == sgn(b), "requires sgn(a) = sgn(b)")?;
            require(alpha_extra > 0.0, "requires α > 0")?;
            resolved.alpha = Some(alpha_extra);
            let alpha = alpha_extra;
            let omega = (a / b).sqrt();
            let an = alpha.powf(nf);
            match family {
                LinCos | LinSin => {
                    let beta = 0.5 * omega;
                    let q = k2 / n;
                    let (shape, half_width, slopes) = if family == LinCos {
                        (Shape::Cos { beta }, PI / omega, (beta, beta))
                    } else {
                        (Shape::Sin { beta }, 2.0 * PI / omega, (beta, -beta))
                    };
                    Draft { alpha, beta, q, modulus: None, half_width, p: Some(q), slopes, shape, c1: 0.0, c2: 0.5 * a * an }
                }
                _ => {
                    let j = extras.root_index.unwrap_or(1);
                    let phase = extras.phase_sign.unwrap_or(1);
                    resolved.root_index = Some(j);
                    resolved.phase_sign = Some(phase);
                    let z = tan_fixed_points(j)[j - 1];
                    let ph = phase as f64;
                    let q = one / n;
                    if !(q.numer_is_odd() && q.denom_is_odd()) {
                        return Err(Error::Parity(format!(
                            "LinMixed changes sign at ξ = 0 and needs odd numerator and denominator in 1/n = {q}"
                        )));
                    }
                    let c = 0.5 * ph * omega * omega * z.sin();
                    Draft {
                        alpha,
                        beta: omega,
                        q,
                        modulus: None,
                        half_width: z / omega,
                        p: Some(k2 * q),
                        slopes: (c, -c),
                        shape: Shape::LinMixed { omega, z, phase: ph },
                        c1: a * an * ph * omega * z.cos(),
                        c2: 0.0,
                    }
                }
            }
        }
        CosCompacton | SinCompacton => {
            require(m == n, "requires m = n")?;
            n_window(eq, k)?;
            require(sgn(k) != 0 && sgn(k) == sgn(a) && sgn(a) == sgn(b), "requires sgn(κ) = sgn(a) = sgn(b)")?;
            let alpha = (2.0 * nf * k / ((nf + 1.0) * a)).powf(1.0 / (nf - 1.0));
            let beta = (nf - 1.0) / (2.0 * nf) * (a / b).sqrt();
            let q = k2 / (n - one);
            let (shape, half_width, slopes) = if family == CosCompacton {
                (Shape::Cos { beta }, PI / (2.0 * beta), (beta, beta))
            } else {
                (Shape::Sin { beta }, PI / beta, (beta, -beta))
            };
            Draft { alpha, beta, q, modulus: None, half_width, p: Some(q), slopes, shape, c1: 0.0, c2: 0.0 }
        }
        CnZeroKappa | SnZeroKappa => {
            require(m == k2 * n, "requires m = 2n")?;
            require(kappa_is_zero(eq, wave), "κ = 0 required (ν = s|μ|²)")?;
            require(sgn(a) == sgn(b), "requires sgn(a) = sgn(b)")?;
            require(alpha_extra != 0.0, "requires α ≠ 0")?;
            resolved.alpha = Some(alpha_extra);
            let alpha = alpha_extra;
            let an = signed_pow(alpha, n).map_err(|_| Error::Parity(format!("α < 0 needs an odd denominator in n = {n}")))?;
            let ratio = a * an / b;
            require(ratio > 0.0, "requires a α^n / b > 0")?;
            let q = k2 / n;
            let c2 = a * an * an / 3.0;
            if family == CnZeroKappa {
                let beta = (ratio / 3.0).sqrt();
                let kk = elliptic_k(FRAC_1_SQRT_2)?;
                let c = beta * FRAC_1_SQRT_2;
                Draft {
                    alpha,
                    beta,
                    q,
                    modulus: Some(EllipticModulus::Real(FRAC_1_SQRT_2)),
                    half_width: kk / beta,
                    p: Some(q),
                    slopes: (c, c),
                    shape: Shape::Cn { beta },
                    c1: 0.0,
                    c2,
                }
            } else {
                let beta = (ratio / 6.0).sqrt();
                let ki = elliptic_k_imag(1.0)?;
                Draft {
                    alpha,
                    beta,
                    q,
                    modulus: Some(EllipticModulus::Imaginary(1.0)),
                    half_width: 2.0 * ki / beta,
                    p: Some(q),
                    slopes: (beta, -beta),
                    shape: Shape::SnImag { beta },
                    c1: 0.0,
                    c2,
                }
            }
        }
        AlgZeroKappa => {
            require(k2 * m == n, "requires m = n/2")?;
            require(kappa_is_zero(eq, wave), "κ = 0 required (ν = s|μ|²)")?;
            require(sgn(a) == sgn(b), "requires sgn(a) = sgn(b)")?;
            require(alpha_extra != 0.0, "requires α ≠ 0")?;
            resolved.alpha = Some(alpha_extra);
            let alpha = alpha_extra;
            let ah = signed_pow(alpha, m).map_err(|_| Error::Parity(format!("α < 0 needs an odd denominator in n/2 = {m}")))?;
            let gamma = a / (12.0 * b * ah);
            require(gamma > 0.0, "requires a α^{n/2} / b > 0")?;
            let q = k2 / n;
            let c = 2.0 * gamma.sqrt();
            Draft {
                alpha,
                beta: gamma,
                q,
                modulus: None,
                half_width: 1.0 / gamma.sqrt(),
                p: Some(q),
                slopes: (c, c),
                shape: Shape::Quadratic { gamma },
                c1: 0.0,
                c2: 2.0 * a * ah / 3.0,
            }
        }
        CnGeneral | SnGeneral | CnNegB | SnNegB => {
            require(m == k2 * n - one, "requires m = 2n − 1")?;
            let neg_b = matches!(family, CnNegB | SnNegB);
            if neg_b {
                require(b < 0.0, "requires b < 0")?;
                let third = Rational::new(1, 3);
                let s_n = if n > third { 1 } else if n < third { -1 } else { 0 };
                require(sgn(k) * sgn(a) == s_n && s_n != 0, "requires sgn(κ)·sgn(a) = sgn(n − 1/3)")?;
                require(n < one && m < n, "requires 1 > n > m")?;
            } else {
                require(b > 0.0, "requires b > 0")?;
                require(sgn(k) != 0 && sgn(k) == sgn(a), "requires sgn(κ) = sgn(a)")?;
                n_window(eq, k)?;
            }
            // The mirrored branch a < 0, κ < 0 does not satisfy the ODE.
            require(a > 0.0 && k > 0.0, "requires a > 0 and κ > 0")?;
            let alpha = ((3.0 * nf - 1.0) * k / ((nf + 1.0) * a)).powf(1.0 / (2.0 * (nf - 1.0)));
            let root4 = (a * k / ((nf + 1.0) * (3.0 * nf - 1.0))).powf(0.25);
            let q = if neg_b { k2 / (one - n) } else { k2 / (n - one) };
            let scale = (nf - 1.0).abs() * root4;
            if matches!(family, CnGeneral | CnNegB) {
                let beta = scale / (nf * b.abs()).sqrt();
                let c = beta * FRAC_1_SQRT_2;
                Draft {
                    alpha,
                    beta,
                    q,
                    modulus: Some(EllipticModulus::Real(FRAC_1_SQRT_2)),
                    half_width: elliptic_k(FRAC_1_SQRT_2)? / beta,
                    p: Some(q),
                    slopes: (c, c),
                    shape: Shape::Cn { beta },
                    c1: 0.0,
                    c2: 0.0,
                }
            } else {
                let beta = scale / (2.0 * nf * b.abs()).sqrt();
                Draft {
                    alpha,
                    beta,
                    q,
                    modulus: Some(EllipticModulus::Imaginary(1.0)),
                    half_width: 2.0 * elliptic_k_imag(1.0)? / beta,
                    p: Some(q),
                    slopes: (beta, -beta),
                    shape: Shape::SnImag { beta },
                    c1: 0.0,
                    c2: 0.0,
                }
            }
        }
        AlgGeneral => {
            require(k2 * m == n + one, "requires m = (n+1)/2")?;
            n_window(eq, k)?;
            require(sgn(k) != 0 && sgn(k) == sgn(a) && sgn(a) == sgn(b), "requires sgn(κ) = sgn(a) = sgn(b)")?;
            let alpha = ((3.0 * nf + 1.0) * k / (2.0 * (nf + 1.0) * a)).powf(2.0 / (nf - 1.0));
            let gamma = (nf - 1.0).powi(2) * (nf + 1.0) * a * a / (2.0 * (3.0 * nf + 1.0).powi(2) * k * nf * b);
            let q = k2 / (n - one);
            let c = 2.0 * gamma.sqrt();
            Draft {
                alpha,
                beta: gamma,
                q,
                modulus: None,
                half_width: 1.0 / gamma.sqrt(),
                p: Some(q),
                slopes: (c, c),
                shape: Shape::Quadratic { gamma },
                c1: 0.0,
                c2: 0.0,
            }
        }
        AlgNonconvex => {
            require(m == k2 - n, "requires m = 2 − n")?;
            require(
                sgn(k) != 0 && sgn(k) == sgn(a) && sgn(a) == -sgn(b),
                "requires sgn(κ) = sgn(a) = −sgn(b)",
            )?;
            require(n > one && n < k2, "requires 2 > n > 1")?;
            let alpha = ((nf + 1.0) * a / (2.0 * k)).powf(1.0 / (nf - 1.0));
            let gamma = (nf - 1.0).powi(2) * k * k / ((nf + 1.0).powi(2) * nf * (a * b).abs());
            let q = one / (n - one);
            let c = 2.0 * gamma.sqrt();
            Draft {
                alpha,
                beta: gamma,
                q,
                modulus: None,
                half_width: 1.0 / gamma.sqrt(),
                p: Some(q),
                slopes: (c, c),
                shape: Shape::Quadratic { gamma },
                c1: 0.0,
                c2: 0.0,
            }
        }
        SolitarySech | HeavyTailHi | SolitarySechSub | HeavyTailSub => {
            let (ac, bc) = solitary_coefficients(eq, wave);
            let mf = m.value();
            let (alpha, beta, q, shape) = match family {
                SolitarySech => {
                    require(n == one, "requires n = 1")?;
                    require(m > one, "requires m > 1")?;
                    require(ac > 0.0 && bc > 0.0, "requires sgn(A) = sgn(B) > 0")?;
                    let beta = (mf - 1.0) * bc.sqrt() / 2.0;
                    ((bc / ac).powf(1.0 / (mf - 1.0)), beta, k2 / (m - one), Shape::Sech { beta })
                }
                HeavyTailHi => {
                    require(n == k2 - m, "requires n = 2 − m")?;
                    require(m > one && m < k2, "requires 1 < m < 2")?;
                    require(ac > 0.0 && bc > 0.0, "requires A > 0 and B > 0")?;
                    let gamma = (mf - 1.0).powi(2) * bc * bc / (4.0 * ac);
                    ((bc / ac).powf(1.0 / (mf - 1.0)), gamma, -(one / (m - one)), Shape::InverseQuadratic { gamma })
                }
                SolitarySechSub => {
                    require(n == m, "requires n = m")?;
                    require(m < one, "requires m < 1")?;
                    require(ac < 0.0 && bc < 0.0, "requires A < 0 and B < 0")?;
                    let beta = (1.0 - mf) * ac.abs().sqrt() / 2.0;
                    ((ac / bc).powf(1.0 / (1.0 - mf)), beta, k2 / (one - m), Shape::Sech { beta })
                }
                _ => {
                    require(n == k2 * m - one, "requires n = 2m − 1")?;
                    require(m > r(1, 2) && m < one, "requires 1/2 < m < 1")?;
                    require(ac < 0.0 && bc < 0.0, "requires A < 0 and B < 0")?;
                    let gamma = (1.0 - mf).powi(2) * ac * ac / (4.0 * bc.abs());
                    ((ac / bc).powf(1.0 / (1.0 - mf)), gamma, -(one / (one - m)), Shape::InverseQuadratic { gamma })
                }
            };
            return Ok(Profile {
                family,
                eq: eq.clone(),
                wave: wave.clone(),
                alpha,
                beta,
                q,
                modulus: None,
                half_width: f64::INFINITY,
                p: None,
                u0_plus: f64::NAN,
                u0_minus: f64::NAN,
                sign_class: SignClass::Nonnegative,
                shape,
                c1: 0.0,
                c2: 0.0,
                extras: resolved,
                solitary_ab: Some((ac, bc)),
            });
        }
    };

    finish(family, eq, wave, draft, resolved)
}

fn finish(family: FamilyId, eq: &EquationParams, wave: &WaveParams, d: Draft, extras: Extras) -> Result<Profile> {
    if !(d.half_width.is_finite() && d.half_width > 0.0 && d.alpha.is_finite() && d.beta.is_finite()) {
        return Err(validity(format!(
            "parameters give a degenerate profile (α = {}, L = {})",
            d.alpha, d.half_width
        )));
    }
    let sign_class = if d.shape.two_signed() {
        if !d.q.denom_is_odd() {
            return Err(Error::Parity(format!(
                "{family}: the base changes sign but q = {} has an even denominator",
                d.q
            )));
        }
        if d.q.numer_is_odd() {
            SignClass::SignChanging
        } else {
            SignClass::SquaredNode
        }
    } else if d.alpha < 0.0 {
        SignClass::Nonpositive
    } else {
        SignClass::Nonnegative
    };
    let takes_negative = d.alpha < 0.0 || sign_class == SignClass::SignChanging;
    if takes_negative && !(eq.m.denom_is_odd() && eq.n.denom_is_odd()) {
        return Err(Error::Parity(format!(
            "{family}: U takes negative values, so m = {} and n = {} need odd denominators",
            eq.m, eq.n
        )));
    }
    let u0 = |c: f64| -> Result<f64> { Ok(d.alpha * signed_pow(c, d.q)?) };
    Ok(Profile {
        family,
        eq: eq.clone(),
        wave: wave.clone(),
        alpha: d.alpha,
        beta: d.beta,
        q: d.q,
        modulus: d.modulus,
        half_width: d.half_width,
        p: d.p,
        u0_plus: u0(d.slopes.0)?,
        u0_minus: u0(d.slopes.1)?,
        sign_class,
        shape: d.shape,
        c1: d.c1,
        c2: d.c2,
        extras,
        solitary_ab: None,
    })
}

impl Profile {
    pub fn is_compact(&self) -> bool {
        self.half_width.is_finite()
    }

    pub fn kappa(&self) -> f64 {
        kappa(&self.eq, &self.wave)
    }

    pub fn kinematics(&self) -> Kinematics {
        kinematics(&self.eq, &self.wave).expect("dimensions checked at construction")
    }

    /// The base function before the power and the cutoff.
    pub fn base(&self, xi: f64) -> f64 {
        let l = self.half_width;
        if l.is_finite() && xi.abs() > 0.5 * l {
            let d = (l - xi.abs()).max(0.0);
            return self.shape.near_edge(xi > 0.0, d, l);
        }
        self.shape.plain(xi)
    }

    pub fn try_evaluate(&self, xi: f64) -> Result<f64> {
        if xi.is_nan() {
            return Err(Error::Domain("ξ is NaN".into()));
        }
        if xi.abs() > self.half_width {
            return Ok(0.0);
        }
        let mut base = self.base(xi);
        if !self.shape.two_signed() {
            base = base.max(0.0);
        }
        if base == 0.0 {
            return Ok(0.0);
        }
        Ok(self.alpha * signed_pow(base, self.q)?)
    }

    /// `U_c(ξ)`, exactly zero outside `|ξ| ≤ L`.
    pub fn evaluate(&self, xi: f64) -> f64 {
        self.try_evaluate(xi)
            .expect("parities are validated when the profile is built")
    }

    /// `U` at `ξ = ±(L − d)`.
    pub fn evaluate_near_edge(&self, positive: bool, d: f64) -> f64 {
        let mut base = self.shape.near_edge(positive, d, self.half_width);
        if !self.shape.two_signed() {
            base = base.max(0.0);
        }
        if base == 0.0 {
            return 0.0;
        }
        self.alpha * signed_pow(base, self.q).expect("parities are validated when the profile is built")
    }

    /// `u(t, x, y)` with `ξ = x + μ·y − νt`.
    pub fn evaluate_field(&self, t: f64, x: f64, y: &[f64]) -> Result<f64> {
        if y.len() != self.wave.mu.len() {
            return Err(Error::DimensionMismatch(format!(
                "y has {} components, expected {}",
                y.len(),
                self.wave.mu.len()
            )));
        }
        self.try_evaluate(self.wave.xi(t, x, y))
    }

    /// Interior zeros of the profile.
    pub fn nodes(&self) -> Vec<f64> {
        if let Shape::LinMixed { omega, z, .. } = self.shape {
            // higher roots of z = tan z leave extra sign changes inside
            let inner = crate::roots::scan_roots(|x| x * z.cos() - x.sin(), 1e-9 * z, z * (1.0 - 1e-6), 4000, 1e-15);
            let mut out: Vec<f64> = inner.iter().rev().map(|x| -x / omega).collect();
            out.push(0.0);
            out.extend(inner.iter().map(|x| x / omega));
            return out;
        }
        if self.shape.two_signed() {
            vec![0.0]
        } else {
            vec![]
        }
    }

    /// Intervals between consecutive zeros on the support.
    pub fn lobes(&self) -> Vec<(f64, f64)> {
        let l = self.half_width;
        if !l.is_finite() {
            return vec![(f64::NEG_INFINITY, f64::INFINITY)];
        }
        let mut pts = vec![-l];
        pts.extend(self.nodes());
        pts.push(l);
        pts.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Taylor jet of `U` at an interior point away from nodes.
    pub fn u_jet(&self, xi: f64) -> Result<Jet> {
        Ok(self.shape.jet(xi).powr(self.q)?.scale(self.alpha))
    }

    /// Jets of `U`, `U^m` and `U^n` at `ξ`.
    pub fn power_jets(&self, xi: f64) -> Result<(Jet, Jet, Jet)> {
        let u = self.u_jet(xi)?;
        Ok((u, u.powr(self.eq.m)?, u.powr(self.eq.n)?))
    }

    /// Largest `|U|` on a fine sample of the support.
    pub fn peak(&self) -> f64 {
        let l = if self.is_compact() { self.half_width } else { 10.0 };
        (0..=2000)
            .map(|i| self.evaluate(-l + 2.0 * l * i as f64 / 2000.0).abs())
            .fold(0.0, f64::max)
    }

    /// `V = U^n` at the cutoff: `V ~ V₀^± (L ∓ ξ)^{pn}`.
    pub fn pn(&self) -> Option<Rational> {
        self.p.map(|p| p * self.eq.n)
    }

    /// Constants of the compacton quadrature for one lobe.
    pub fn reduced_constants(&self) -> Result<ReducedConstants> {
        if self.c1 != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "{}: C₁ ≠ 0, the profile is not on the quadrature branch",
                self.family
            )));
        }
        let mut rc = reduced_constants(&self.eq, &self.wave, self.c2, 0.0)?;
        if self.is_compact() {
            let lobes = self.lobes();
            rc.c4 = Some(0.5 * (lobes[0].1 - lobes[0].0));
        }
        Ok(rc)
    }
}

/// A family whose validity conditions hold for given equation and wave
/// parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Admissible {
    pub family: FamilyId,
    /// Free parameters and their admissible ranges.
    pub extras: &'static str,
    /// Set when the validity conditions hold but no real profile exists
    /// because of power parity.
    pub parity_obstruction: Option<String>,
}

fn extras_range(f: FamilyId) -> &'static str {
    use FamilyId::*;
    match f {
        LinCos | LinSin => "alpha > 0",
        LinMixed => "alpha > 0, root_index >= 1, phase_sign = ±1",
        CnZeroKappa | SnZeroKappa | AlgZeroKappa => "alpha != 0 with a·alpha^n/b > 0",
        _ => "none",
    }
}

/// All families whose validity conditions can be met for `(eq, wave)`.
pub fn catalog_admissible(eq: &EquationParams, wave: &WaveParams) -> Vec<Admissible> {
    FamilyId::ALL
        .into_iter()
        .filter_map(|family| match make_profile(family, eq, wave, Extras::default()) {
            Ok(_) => Some(Admissible { family, extras: extras_range(family), parity_obstruction: None }),
            Err(Error::Parity(why)) => Some(Admissible { family, extras: extras_range(family), parity_obstruction: Some(why) }),
            Err(_) => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(a: f64, b: f64, s: i32, m: Rational, n: Rational, dim: usize) -> EquationParams {
        EquationParams::new(a, b, s, m, n, dim).unwrap()
    }

    fn wave(mu: &[f64], nu: f64) -> WaveParams {
        WaveParams::new(mu.to_vec(), nu).unwrap()
    }

    #[test]
    fn cos_compacton_example() {
        let e = eq(1.0, 1.0, 1, r(2, 1), r(2, 1), 2);
        let p = make_profile(FamilyId::CosCompacton, &e, &wave(&[1.0], 1.75), Extras::default()).unwrap();
        assert!((p.alpha - 1.0).abs() < 1e-15);
        assert!((p.half_width - 2.0 * PI).abs() < 1e-13);
        assert!((p.evaluate(0.0) - 1.0).abs() < 1e-15);
        for xi in [-5.0, -1.0, 0.7, 3.0, 6.0] {
            let exact = (xi / 4.0f64).cos().powi(2);
            assert!((p.evaluate(xi) - exact).abs() < 1e-14);
        }
        assert_eq!(p.evaluate(2.0 * p.half_width), 0.0);
        assert_eq!(p.evaluate(p.half_width), 0.0);
        assert_eq!(p.p, Some(r(2, 1)));
        assert_eq!(p.sign_class, SignClass::Nonnegative);
    }

    #[test]
    fn solitary_sech_example() {
        let e = eq(1.0, 1.0, 0, r(2, 1), r(1, 1), 1);
        let p = make_profile(FamilyId::SolitarySech, &e, &wave(&[], 1.0), Extras::default()).unwrap();
        assert!((p.evaluate(0.0) - 1.5).abs() < 1e-15);
        let x: f64 = 1.3;
        assert!((p.evaluate(x) - 1.5 / (x / 2.0).cosh().powi(2)).abs() < 1e-15);
        assert!(!p.is_compact());
    }

    #[test]
    fn heavy_tail_figure_parameters() {
        let (e, w) = equation_for_solitary(0.5, 2.0, r(9, 5), r(1, 5)).unwrap();
        let (ac, bc) = solitary_coefficients(&e, &w);
        assert!((ac - 0.5).abs() < 1e-15 && (bc - 2.0).abs() < 1e-15);
        let p = make_profile(FamilyId::HeavyTailHi, &e, &w, Extras::default()).unwrap();
        assert!((p.evaluate(0.0) - 4f64.powf(1.25)).abs() < 1e-12);
    }

    #[test]
    fn sine_compacton_squared_node() {
        let e = eq(1.0, 1.0, 1, r(2, 1), r(2, 1), 2);
        let p = make_profile(FamilyId::SinCompacton, &e, &wave(&[1.0], 1.75), Extras::default()).unwrap();
        assert_eq!(p.sign_class, SignClass::SquaredNode);
        assert!(p.evaluate(-3.0) > 0.0 && p.evaluate(3.0) > 0.0);
        assert_eq!(p.nodes(), vec![0.0]);
    }

    #[test]
    fn sign_changing_line_sine() {
        let e = eq(1.0, 1.0, 1, r(2, 5), r(2, 5), 2);
        let p = make_profile(FamilyId::LinSin, &e, &wave(&[1.0], 1.0), Extras::default()).unwrap();
        assert_eq!(p.q, r(5, 1));
        assert_eq!(p.sign_class, SignClass::SignChanging);
        assert!((p.evaluate(-1.0) + p.evaluate(1.0)).abs() < 1e-15);
    }

    #[test]
    fn zero_kappa_required() {
        let e = eq(1.0, 1.0, 1, r(4, 1), r(2, 1), 2);
        let err = make_profile(FamilyId::CnZeroKappa, &e, &wave(&[1.0], 1.5), Extras::default()).unwrap_err();
        assert_eq!(err, Error::Validity("κ = 0 required (ν = s|μ|²)".into()));
    }

    #[test]
    fn lin_mixed_needs_odd_powers() {
        let e = eq(1.0, 1.0, 1, r(2, 1), r(2, 1), 2);
        let err = make_profile(FamilyId::LinMixed, &e, &wave(&[1.0], 1.0), Extras::default()).unwrap_err();
        assert!(matches!(err, Error::Parity(_)));
        let e = eq(2.0, 1.0, 1, r(1, 5), r(1, 5), 2);
        let p = make_profile(FamilyId::LinMixed, &e, &wave(&[1.0], 1.0), Extras::default()).unwrap();
        assert!((p.half_width - 4.493_409_457_909_064 / 2f64.sqrt()).abs() < 1e-12);
        assert!(p.evaluate(p.half_width).abs() < 1e-12);
        assert!(p.evaluate(-p.half_width).abs() < 1e-12);
        assert!(p.evaluate(0.999 * p.half_width).abs() < 1e-3);
        assert_eq!(p.sign_class, SignClass::SignChanging);
    }

    #[test]
    fn edge_forms_match_plain_evaluation() {
        let e = eq(1.3, 0.7, 1, r(11, 5), r(8, 5), 2);
        let w = wave(&[0.4], 0.16 + 0.9);
        for fam in [FamilyId::CnGeneral, FamilyId::SnGeneral] {
            let p = make_profile(fam, &e, &w, Extras::default()).unwrap();
            for xi in [0.55, 0.7, 0.95] {
                let x = xi * p.half_width;
                let a = p.shape.plain(x);
                let b = p.base(x);
                assert!((a - b).abs() < 1e-12, "{fam} {xi}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn catalog_for_equal_powers_on_zero_kappa() {
        let e = eq(1.0, 1.0, 1, r(2, 1), r(2, 1), 2);
        let list = catalog_admissible(&e, &wave(&[1.0], 1.0));
        let ids: Vec<_> = list.iter().map(|a| a.family).collect();
        assert_eq!(ids, vec![FamilyId::LinCos, FamilyId::LinSin, FamilyId::LinMixed]);
        assert!(list[2].parity_obstruction.is_some());
        let other: Vec<_> = catalog_admissible(&e, &wave(&[2.0], 4.0)).iter().map(|a| a.family).collect();
        assert_eq!(ids, other);
    }

    #[test]
    fn catalog_for_positive_kappa() {
        let e = eq(1.0, 1.0, 1, r(2, 1), r(2, 1), 2);
        let ids: Vec<_> = catalog_admissible(&e, &wave(&[1.0], 1.75)).iter().map(|a| a.family).collect();
        assert!(ids.contains(&FamilyId::CosCompacton) && ids.contains(&FamilyId::SinCompacton));
        assert!(!ids.contains(&FamilyId::LinCos));
    }

    #[test]
    fn parses_family_names() {
        assert_eq!("cos-compacton".parse::<FamilyId>().unwrap(), FamilyId::CosCompacton);
        assert_eq!("LinMixed".parse::<FamilyId>().unwrap(), FamilyId::LinMixed);
        assert!("nope".parse::<FamilyId>().is_err());
    }

    #[test]
    fn field_translation_invariance() {
        let e = eq(1.0, 1.0, 1, r(2, 1), r(2, 1), 3);
        let p = make_profile(FamilyId::CosCompacton, &e, &wave(&[0.5, 0.5], 1.25), Extras::default()).unwrap();
        let f0 = p.evaluate_field(0.3, 1.0, &[0.2, -0.4]).unwrap();
        let d = 0.7;
        let f1 = p.evaluate_field(0.3 + d, 1.0 + 1.25 * d, &[0.2, -0.4]).unwrap();
        assert!((f0 - f1).abs() < 1e-12);
        let p3 = make_profile(FamilyId::CosCompacton, &e, &wave(&[1.0, 1.0], 2.5), Extras::default()).unwrap();
        assert_eq!(p3.evaluate_field(0.0, 1.0, &[1.0, 1.0]).unwrap(), p3.evaluate(3.0));
        assert!(p.evaluate_field(0.0, 0.0, &[1.0]).is_err());
    }
}
