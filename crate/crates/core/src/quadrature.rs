//! Compacton and solitary-wave quadratures.
//!
//! The compacton profile in `V = U^n` solves `V′² = Φ(V)` with
//!
//! ```text
//! Φ(V) = E + C V + B V^{1+1/n} − A V^{1+m/n}
//! ```
//!
//! so `L = ∫₀^{V_max} dV/√Φ`. Both endpoints are algebraic singularities;
//! each half of the integral is mapped to a smooth integrand before the
//! tanh-sinh rule is applied.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::Profile;
use crate::integrate::tanh_sinh;
use crate::params::{reduced_constants, EquationParams, ReducedConstants, WaveParams};
use crate::rational::Rational;
use crate::roots::brent;

const QUAD_TOL: f64 = 1e-13;

/// `Σ cᵢ V^{eᵢ}` with non-zero coefficients, sorted by exponent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerSum {
    pub terms: Vec<(f64, f64)>,
}

impl PowerSum {
    pub fn new(mut terms: Vec<(f64, f64)>) -> Self {
        terms.retain(|t| t.0 != 0.0);
        terms.sort_by(|x, y| x.1.total_cmp(&y.1));
        // merge equal exponents
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            match out.last_mut() {
                Some(last) if last.1 == e => last.0 += c,
                _ => out.push((c, e)),
            }
        }
        out.retain(|t| t.0 != 0.0);
        PowerSum { terms: out }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent with a non-zero coefficient.
    pub fn leading(&self) -> Option<(f64, f64)> {
        self.terms.first().copied()
    }

    pub fn eval(&self, v: f64) -> f64 {
        self.terms.iter().map(|&(c, e)| if e == 0.0 { c } else { c * v.powf(e) }).sum()
    }

    pub fn d1(&self, v: f64) -> f64 {
        self.terms.iter().filter(|t| t.1 != 0.0).map(|&(c, e)| c * e * v.powf(e - 1.0)).sum()
    }

    pub fn d2(&self, v: f64) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.1 != 0.0 && t.1 != 1.0)
            .map(|&(c, e)| c * e * (e - 1.0) * v.powf(e - 2.0))
            .sum()
    }

    /// `Σ cᵢ V^{eᵢ − λ}`: the sum with its leading power factored out.
    pub fn reduced(&self, v: f64, lambda: f64) -> f64 {
        self.terms.iter().map(|&(c, e)| if e == lambda { c } else { c * v.powf(e - lambda) }).sum()
    }
}

/// Constants of the compacton quadrature and the powers they belong to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialSpec {
    pub rc: ReducedConstants,
    pub m: Rational,
    pub n: Rational,
}

impl PotentialSpec {
    pub fn new(rc: ReducedConstants, m: Rational, n: Rational) -> Self {
        PotentialSpec { rc, m, n }
    }

    pub fn from_coefficients(e: f64, c: f64, b: f64, a: f64, m: Rational, n: Rational) -> Self {
        Self::new(ReducedConstants::from_coefficients(e, c, b, a), m, n)
    }

    pub fn from_params(eq: &EquationParams, w: &WaveParams, c2: f64, c3: f64) -> Result<Self> {
        Ok(Self::new(reduced_constants(eq, w, c2, c3)?, eq.m, eq.n))
    }

    /// Quadrature constants of a closed-form compacton.
    pub fn from_profile(p: &Profile) -> Result<Self> {
        Ok(Self::new(p.reduced_constants()?, p.eq.m, p.eq.n))
    }

    pub fn power_sum(&self) -> PowerSum {
        let (m, n) = (self.m.value(), self.n.value());
        let rc = &self.rc;
        PowerSum::new(vec![(rc.e, 0.0), (rc.c, 1.0), (rc.b, 1.0 + 1.0 / n), (-rc.a, 1.0 + m / n)])
    }

    /// Extremum `V* = (B/(mA))^{n/(m−1)}` of `Φ(V)/V`, when `B` and `A`
    /// share a sign.
    pub fn vstar(&self) -> Option<f64> {
        let (b, a) = (self.rc.b, self.rc.a);
        let m = self.m.value();
        if b == 0.0 || a == 0.0 || b.signum() != a.signum() || self.m == Rational::ONE {
            return None;
        }
        Some((b / (m * a)).powf(self.n.value() / (m - 1.0)))
    }
}

/// `Φ(V)`.
pub fn potential(spec: &PotentialSpec, v: f64) -> Result<f64> {
    if v < 0.0 || v.is_nan() {
        return Err(Error::Domain(format!("Φ needs V ≥ 0, got {v}")));
    }
    Ok(spec.power_sum().eval(v))
}

/// Smallest positive root of `Φ`, with `Φ > 0` on `(0, V_max)`.
pub fn find_vmax(spec: &PotentialSpec) -> Result<f64> {
    if spec.rc.a == 0.0 {
        return Err(Error::Degenerate("A = 0".into()));
    }
    let ps = spec.power_sum();
    let (_, lambda) = ps.leading().ok_or_else(|| Error::NoRoot("Φ vanishes identically".into()))?;
    let sign = |v: f64| ps.reduced(v, lambda);
    let mut grid: Vec<f64> = (0..=800).map(|i| 1e-30 * 2f64.powf(i as f64 * 0.25)).take_while(|&v| v <= 1e30).collect();
    if let Some(vs) = spec.vstar() {
        if vs.is_finite() && vs > 0.0 {
            grid.push(vs);
        }
    }
    grid.sort_by(f64::total_cmp);
    if sign(grid[0]) <= 0.0 {
        return Err(Error::NoRoot("Φ is not positive near V = 0".into()));
    }
    for w in grid.windows(2) {
        let f1 = sign(w[1]);
        if f1 == 0.0 {
            return Ok(w[1]);
        }
        if f1 < 0.0 {
            return brent(sign, w[0], w[1], 1e-15 * w[1]);
        }
    }
    Err(Error::NoRoot("Φ stays positive up to V = 1e30".into()))
}

/// Result of [`half_width`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfWidth {
    pub value: f64,
    pub vmax: f64,
    /// Lower and upper panels split at `V_max/2`.
    pub lower: f64,
    pub upper: f64,
    /// Set when `E ≠ 0`: the integral is finite but the profile is not a
    /// compacton.
    pub e_nonzero: bool,
}

/// Integration machinery shared by the half-width and the inversion.
struct Quad {
    ps: PowerSum,
    lambda: f64,
    gamma: f64,
    vmax: f64,
    d1: f64,
    d2: f64,
}

impl Quad {
    fn new(spec: &PotentialSpec) -> Result<Self> {
        let vmax = find_vmax(spec)?;
        let ps = spec.power_sum();
        let (_, lambda) = ps.leading().expect("find_vmax succeeded");
        if lambda >= 2.0 {
            return Err(Error::DivergentIntegral(format!(
                "Φ ~ V^{lambda} near 0: ∫ dV/√Φ diverges (pn ≤ 1)"
            )));
        }
        let d1 = ps.d1(vmax);
        if d1 >= 0.0 {
            return Err(Error::DivergentIntegral(format!(
                "V_max = {vmax} is a multiple root of Φ: the profile never reaches it"
            )));
        }
        let d2 = ps.d2(vmax);
        Ok(Quad { gamma: 1.0 / (1.0 - 0.5 * lambda), ps, lambda, vmax, d1, d2 })
    }

    /// `∫₀^V dW/√Φ` for `V ≤ V_max/2`, with `W = V s^γ`.
    fn lower(&self, v: f64) -> Result<f64> {
        if v <= 0.0 {
            return Ok(0.0);
        }
        let g = self.gamma;
        let q = tanh_sinh(
            |_, s, _| {
                let w = v * s.powf(g);
                1.0 / self.ps.reduced(w, self.lambda).sqrt()
            },
            0.0,
            1.0,
            QUAD_TOL,
        )?;
        Ok(g * v.powf(1.0 - 0.5 * self.lambda) * q.value)
    }

    fn phi_below_max(&self, d: f64) -> f64 {
        if d < 1e-6 * self.vmax {
            -self.d1 * d + 0.5 * self.d2 * d * d
        } else {
            self.ps.eval(self.vmax - d)
        }
    }

    /// `∫_V^{V_max} dW/√Φ` for `V ≥ V_max/2`, with `W = V_max − r²`.
    fn upper(&self, v: f64) -> Result<f64> {
        let rmax = (self.vmax - v).max(0.0).sqrt();
        if rmax == 0.0 {
            return Ok(0.0);
        }
        let q = tanh_sinh(
            |r, ra, _| {
                let d = if ra < 0.5 * rmax { ra * ra } else { r * r };
                if d == 0.0 {
                    return 2.0 / (-self.d1).sqrt();
                }
                2.0 * d.sqrt() / self.phi_below_max(d).sqrt()
            },
            0.0,
            rmax,
            QUAD_TOL,
        )?;
        Ok(q.value)
    }
}

/// `L = ∫₀^{V_max} dV/√Φ`.
pub fn half_width(spec: &PotentialSpec) -> Result<HalfWidth> {
    let q = Quad::new(spec)?;
    let mid = 0.5 * q.vmax;
    let lower = q.lower(mid)?;
    let upper = q.upper(mid)?;
    Ok(HalfWidth { value: lower + upper, vmax: q.vmax, lower, upper, e_nonzero: spec.rc.e != 0.0 })
}

/// Samples of a profile on `[0, extent]`, reflected evenly to negative `ξ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericProfile {
    pub xi: Vec<f64>,
    /// `V = U^n`.
    pub v: Vec<f64>,
    pub u: Vec<f64>,
    /// Support half-width; infinite for solitary waves.
    pub half_width: f64,
    /// Right end of the sampled range.
    pub extent: f64,
    pub vmax: f64,
    #[serde(skip)]
    slopes: Vec<f64>,
}

impl NumericProfile {
    /// `exact` holds `U′` from the first integral where it is finite; the
    /// rest fall back to monotone (Fritsch–Carlson) slopes.
    fn build(xi: Vec<f64>, v: Vec<f64>, u: Vec<f64>, half_width: f64, vmax: f64, exact: Vec<f64>) -> Self {
        let extent = *xi.last().expect("non-empty grid");
        let slopes = pchip_slopes(&xi, &u)
            .into_iter()
            .zip(exact)
            .map(|(m, e)| if e.is_finite() { e } else { m })
            .collect();
        NumericProfile { xi, v, u, half_width, extent, vmax, slopes }
    }

    /// Cubic Hermite interpolation of `U`; zero beyond the support and
    /// NaN beyond the sampled range.
    pub fn evaluate(&self, xi: f64) -> f64 {
        let x = xi.abs();
        if x >= self.half_width {
            return 0.0;
        }
        if x > self.extent {
            return f64::NAN;
        }
        let i = match self.xi.partition_point(|&g| g <= x) {
            0 => 0,
            k if k >= self.xi.len() => self.xi.len() - 2,
            k => k - 1,
        };
        let (x0, x1) = (self.xi[i], self.xi[i + 1]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let (y0, y1) = (self.u[i], self.u[i + 1]);
        let (m0, m1) = (self.slopes[i], self.slopes[i + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * h * m0 + (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * h * m1
    }

    /// `sup |U_num − U_closed|` over the grid. A two-lobe closed form is
    /// compared lobe by lobe, after shifting the lobe centre to `ξ = 0`.
    pub fn sup_deviation(&self, profile: &Profile) -> f64 {
        let lobes = profile.lobes();
        let (lo, hi) = lobes[0];
        let centre = if lo.is_finite() { 0.5 * (lo + hi) } else { 0.0 };
        self.xi
            .iter()
            .zip(&self.u)
            .flat_map(|(&x, &u)| [(centre + x, u), (centre - x, u)])
            .map(|(x, u)| (profile.evaluate(x).abs() - u).abs())
            .fold(0.0, f64::max)
    }
}

/// Fritsch–Carlson slopes for monotone cubic Hermite interpolation.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i])).collect();
    let mut m = vec![0.0; n];
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for i in 1..n - 1 {
        m[i] = if delta[i - 1] * delta[i] <= 0.0 { 0.0 } else { 0.5 * (delta[i - 1] + delta[i]) };
    }
    for i in 0..n - 1 {
        if delta[i] == 0.0 {
            m[i] = 0.0;
            m[i + 1] = 0.0;
            continue;
        }
        let a = m[i] / delta[i];
        let b = m[i + 1] / delta[i];
        let s = a * a + b * b;
        if s > 9.0 {
            let t = 3.0 / s.sqrt();
            m[i] = t * a * delta[i];
            m[i + 1] = t * b * delta[i];
        }
    }
    m
}

fn lobatto(samples: usize, length: f64) -> Vec<f64> {
    let k = (samples - 1) as f64;
    (0..samples)
        .map(|i| {
            if i == 0 {
                0.0
            } else if i == samples - 1 {
                length
            } else {
                0.5 * length * (1.0 - (std::f64::consts::PI * i as f64 / k).cos())
            }
        })
        .collect()
}

/// Solves `∫_V^{V_max} dW/√Φ = ξ` on a Chebyshev–Lobatto grid of `[0, L]`.
pub fn invert_profile(spec: &PotentialSpec, samples: usize) -> Result<NumericProfile> {
    if samples < 16 {
        return Err(Error::InvalidParameter(format!("need at least 16 samples, got {samples}")));
    }
    let q = Quad::new(spec)?;
    let mid = 0.5 * q.vmax;
    let lower_mid = q.lower(mid)?;
    let upper_mid = q.upper(mid)?;
    let l = lower_mid + upper_mid;
    let inv_n = spec.n.recip();
    let xi = lobatto(samples, l);
    let mut v = Vec::with_capacity(samples);
    for (i, &x) in xi.iter().enumerate() {
        let val = if i == 0 {
            q.vmax
        } else if i == samples - 1 {
            0.0
        } else if x <= upper_mid {
            // ξ = ∫_V^{V_max}
            let f = |vv: f64| q.upper(vv).map(|g| g - x).unwrap_or(f64::NAN);
            brent(f, mid, q.vmax, 1e-15 * q.vmax)?
        } else {
            // L − ξ = ∫₀^V
            let d = l - x;
            let f = |vv: f64| q.lower(vv).map(|g| g - d).unwrap_or(f64::NAN);
            brent(f, 0.0, mid, 1e-16 * q.vmax)?
        };
        v.push(val);
    }
    let u: Vec<f64> = v.iter().map(|&vv| if vv <= 0.0 { 0.0 } else { vv.powf(inv_n.value()) }).collect();
    // U′ = (1/n) V^{1/n−1} V′ with V′ = −√Φ on ξ > 0
    let slopes = v
        .iter()
        .map(|&vv| {
            if vv <= 0.0 {
                return f64::NAN;
            }
            let phi = potential(spec, vv).unwrap_or(0.0).max(0.0);
            -inv_n.value() * vv.powf(inv_n.value() - 1.0) * phi.sqrt()
        })
        .collect();
    Ok(NumericProfile::build(xi, v, u, l, q.vmax, slopes))
}

/// Solitary wave from `U′² = B U^{3−n} − A U^{2+m−n}`, sampled uniformly
/// on `[0, xi_max]`.
pub fn solitary_profile(a: f64, b: f64, m: Rational, n: Rational, xi_max: f64, samples: usize) -> Result<NumericProfile> {
    if samples < 2 || !(xi_max > 0.0) {
        return Err(Error::InvalidParameter("need samples ≥ 2 and xi_max > 0".into()));
    }
    if a == 0.0 || b == 0.0 || a.signum() != b.signum() || m == Rational::ONE {
        return Err(Error::NoTurningPoint(format!("A = {a} and B = {b} must share a sign, with m ≠ 1")));
    }
    let (mf, nf) = (m.value(), n.value());
    let ustar = (b / a).powf(1.0 / (mf - 1.0));
    // U′² = U^{3−n} g(U)
    let g = |w: f64| b - a * w.powf(mf - 1.0);
    let gp = -a * (mf - 1.0) * ustar.powf(mf - 2.0);
    let gpp = -a * (mf - 1.0) * (mf - 2.0) * ustar.powf(mf - 3.0);
    if !(gp < 0.0) {
        return Err(Error::NoTurningPoint(format!("U* = {ustar} is not a simple turning point")));
    }
    let rhs = |w: f64, d: f64| -> f64 {
        let gw = if d < 1e-6 * ustar { -gp * d + 0.5 * gpp * d * d } else { g(w) };
        w.powf(3.0 - nf) * gw
    };
    let half = 0.5 * ustar;
    // ∫_{U*−r²} ... with W = U* − r²
    let upper = |u: f64| -> Result<f64> {
        let rmax = (ustar - u).max(0.0).sqrt();
        if rmax == 0.0 {
            return Ok(0.0);
        }
        tanh_sinh(
            |r, ra, _| {
                let d = if ra < 0.5 * rmax { ra * ra } else { r * r };
                if d == 0.0 {
                    return 2.0 / (-gp * ustar.powf(3.0 - nf)).sqrt();
                }
                2.0 * d.sqrt() / rhs(ustar - d, d).sqrt()
            },
            0.0,
            rmax,
            QUAD_TOL,
        )
        .map(|q| q.value)
    };
    let upper_half = upper(half)?;
    // ∫_U^{U*/2} in t = ln W
    let lower = |u: f64| -> Result<f64> {
        tanh_sinh(
            |t, _, _| {
                let w = t.exp();
                w / rhs(w, ustar - w).sqrt()
            },
            u.ln(),
            half.ln(),
            QUAD_TOL,
        )
        .map(|q| q.value)
    };
    let xi_of = |u: f64| -> Result<f64> {
        if u >= half {
            upper(u)
        } else {
            Ok(upper_half + lower(u)?)
        }
    };
    let xi: Vec<f64> = (0..samples).map(|i| xi_max * i as f64 / (samples - 1) as f64).collect();
    let mut u = Vec::with_capacity(samples);
    let mut floor = half;
    for (i, &x) in xi.iter().enumerate() {
        if i == 0 {
            u.push(ustar);
            continue;
        }
        if x <= upper_half {
            let f = |uu: f64| upper(uu).map(|s| s - x).unwrap_or(f64::NAN);
            u.push(brent(f, half, ustar, 1e-15 * ustar)?);
            continue;
        }
        while xi_of(floor)? < x {
            floor *= 0.5;
            if floor < 1e-280 {
                return Err(Error::NoRoot(format!("profile does not reach ξ = {x}")));
            }
        }
        let f = |t: f64| xi_of(t.exp()).map(|s| s - x).unwrap_or(f64::NAN);
        u.push(brent(f, floor.ln(), half.ln(), 1e-14)?.exp());
    }
    let v = u.iter().map(|&uu: &f64| uu.powf(nf)).collect();
    let slopes = u.iter().map(|&uu| -rhs(uu, ustar - uu).max(0.0).sqrt()).collect();
    Ok(NumericProfile::build(xi, v, u, f64::INFINITY, ustar.powf(nf), slopes))
}
