//! Numerical verification of travelling-wave profiles.
//!
//! Every check reports a dimensionless measurement that passes when it is
//! at most its tolerance.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{classify_profile, CutoffPower, SolutionClass};
use crate::error::{Error, Result};
use crate::families::{kappa_is_zero, Profile};
use crate::integrate::integrate_panels;
use crate::jet::Jet;
use crate::params::EquationParams;
use crate::rational::Rational;

// ---------------------------------------------------------------- residuals

fn second_difference<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h)
}

/// Sampling window: the support, or `|ξ| ≤ 10` for solitary waves.
fn window(profile: &Profile) -> f64 {
    if profile.is_compact() {
        profile.half_width
    } else {
        10.0
    }
}

/// Interior grid shrunk by `shrink` from the window ends, with points closer
/// than `node_gap` to an interior node removed.
fn interior_grid(profile: &Profile, points: usize, shrink: f64, node_gap: f64) -> Vec<f64> {
    let w = window(profile) * (1.0 - shrink);
    let nodes = profile.nodes();
    let gap = node_gap * window(profile);
    (0..points)
        .map(|i| -w + 2.0 * w * i as f64 / (points.max(2) - 1) as f64)
        .filter(|x| nodes.iter().all(|z| (x - z).abs() > gap))
        .collect()
}

/// Scale-relative residual of `−κU + aU^m + b(U^n)″ = C₁ξ + C₂` on 90% of
/// the support, with `(U^n)″` from fourth-order central differences.
pub fn residual_reduced(profile: &Profile, c1: f64, c2: f64, grid_points: usize) -> f64 {
    let eq = &profile.eq;
    let k = profile.kappa();
    let h = 1e-4 * window(profile);
    let u = |x: f64| profile.evaluate(x);
    let v = |x: f64| pow_or_zero(u(x), eq.n);
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for x in interior_grid(profile, grid_points, 0.05, 0.02) {
        let ux = u(x);
        let terms = [-k * ux, eq.a * pow_or_zero(ux, eq.m), eq.b * second_difference(&v, x, h)];
        let rhs = c1 * x + c2;
        let r = terms.iter().sum::<f64>() - rhs;
        worst = worst.max(r.abs());
        scale = scale.max(terms.iter().map(|t| t.abs()).sum::<f64>() + rhs.abs());
    }
    if scale == 0.0 {
        0.0
    } else {
        worst / scale
    }
}

fn pow_or_zero(x: f64, r: Rational) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        crate::specfun::signed_pow(x, r).unwrap_or(f64::NAN)
    }
}

/// Relative residual of `U′² − B U^{3−n} + A U^{2+m−n} = 0` on `|ξ| ≤ 10`.
pub fn solitary_residual(profile: &Profile, grid_points: usize) -> Result<f64> {
    let (a, b) = profile.solitary_ab.ok_or_else(|| Error::InvalidParameter("not a solitary profile".into()))?;
    let (m, n) = (profile.eq.m, profile.eq.n);
    let three = Rational::integer(3);
    let two = Rational::integer(2);
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for x in interior_grid(profile, grid_points, 0.0, 0.0) {
        let jet = profile.u_jet(x)?;
        let u = jet.value();
        let d = jet.d(1);
        let tb = b * pow_or_zero(u, three - n);
        let ta = a * pow_or_zero(u, two + m - n);
        worst = worst.max((d * d - tb + ta).abs());
        scale = scale.max(tb.abs() + ta.abs() + d * d);
    }
    Ok(if scale == 0.0 { 0.0 } else { worst / scale })
}

// ---------------------------------------------------------- singular terms

/// One-sided limit of a boundary term at the cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum Limit {
    Zero,
    Finite(f64),
    Infinite,
}

impl Limit {
    pub fn vanishes(self) -> bool {
        matches!(self, Limit::Zero)
    }
}

/// A power term `c·d^e` of an expansion in `d = L ∓ ξ`.
#[derive(Debug, Clone, Copy)]
struct Term {
    coef: f64,
    exp: CutoffPower,
}

fn exp_eq(x: CutoffPower, y: CutoffPower) -> bool {
    match (x.exact, y.exact) {
        (Some(a), Some(b)) => a == b,
        _ => (x.value - y.value).abs() <= 1e-9 * x.value.abs().max(y.value.abs()).max(1.0),
    }
}

/// Limit as `d → 0⁺` of `Σ cᵢ d^{eᵢ}`, grouping equal exponents.
fn limit_of(terms: &[Term]) -> Limit {
    let mut groups: Vec<(CutoffPower, f64, f64)> = Vec::new();
    for t in terms {
        match groups.iter_mut().find(|g| exp_eq(g.0, t.exp)) {
            Some(g) => {
                g.1 += t.coef;
                g.2 += t.coef.abs();
            }
            None => groups.push((t.exp, t.coef, t.coef.abs())),
        }
    }
    groups.retain(|g| g.1.abs() > 1e-9 * g.2);
    groups.sort_by(|x, y| x.0.value.total_cmp(&y.0.value));
    match groups.first() {
        None => Limit::Zero,
        Some(g) if exp_eq(g.0, CutoffPower::from(Rational::ZERO)) => Limit::Finite(g.1),
        Some(g) if g.0.value < 0.0 => Limit::Infinite,
        Some(_) => Limit::Zero,
    }
}

fn shifted(p: CutoffPower, by: i64) -> CutoffPower {
    match p.exact {
        Some(r) => CutoffPower::from(r + Rational::integer(by)),
        None => CutoffPower::from(p.value + by as f64),
    }
}

fn scaled(p: CutoffPower, r: Rational) -> CutoffPower {
    match p.exact {
        Some(e) => CutoffPower::from(e * r),
        None => CutoffPower::from(p.value * r.value()),
    }
}

/// Leading-order limits of `(A₀, A₁, A₂, A₃)` for `U ~ U₀ d^p`, using only
/// the asymptotic form (no use of the ODE). `side` is `+1` at `ξ = L`
/// and `−1` at `ξ = −L`.
pub fn asymptotic_limits(u0: f64, p: impl Into<CutoffPower>, eq: &EquationParams, kappa: f64, side: f64) -> [Limit; 4] {
    let p = p.into();
    let pn = scaled(p, eq.n);
    let pm = scaled(p, eq.m);
    let v0 = pow_or_zero(u0, eq.n);
    let w0 = pow_or_zero(u0, eq.m);
    // d/dξ = −side·d/dd
    let a3 = [Term { coef: eq.b * v0, exp: pn }];
    let a2 = [Term { coef: -side * eq.b * pn.value * v0, exp: shifted(pn, -1) }];
    let a1 = [
        Term { coef: -kappa * u0, exp: p },
        Term { coef: eq.a * w0, exp: pm },
        Term { coef: eq.b * pn.value * (pn.value - 1.0) * v0, exp: shifted(pn, -2) },
    ];
    let a0: Vec<Term> = a1
        .iter()
        .map(|t| Term { coef: -side * t.coef * t.exp.value, exp: shifted(t.exp, -1) })
        .collect();
    [limit_of(&a0), limit_of(&a1), limit_of(&a2), limit_of(&a3)]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SideLimits {
    /// `(A₀, A₁, A₂, A₃)`
    pub limits: [Limit; 4],
    /// The same terms evaluated near the cutoff and extrapolated.
    pub numeric: [f64; 4],
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularTerms {
    pub plus: SideLimits,
    pub minus: SideLimits,
}

impl SingularTerms {
    pub fn all_vanish(&self) -> bool {
        self.plus.limits.iter().chain(&self.minus.limits).all(|l| l.vanishes())
    }

    /// `A₂`, `A₃` vanish at both ends and some `A₁` does not.
    pub fn weak_pattern(&self) -> bool {
        let outer = [&self.plus, &self.minus].iter().all(|s| s.limits[2].vanishes() && s.limits[3].vanishes());
        outer && [&self.plus, &self.minus].iter().any(|s| !s.limits[1].vanishes())
    }

    pub fn consistent(&self) -> bool {
        self.plus.consistent && self.minus.consistent
    }
}

/// `[A₀, A₁, A₂, A₃]` at `ξ` from the Taylor jets of the profile, with the
/// summed magnitudes of the terms that make up each.
fn boundary_terms(profile: &Profile, xi: f64) -> Result<([f64; 4], [f64; 4])> {
    let (u, um, v) = profile.power_jets(xi)?;
    let eq = &profile.eq;
    let k = profile.kappa();
    let t1 = [-k * u.value(), eq.a * um.value(), eq.b * v.d(2)];
    let t0 = [-k * u.d(1), eq.a * um.d(1), eq.b * v.d(3)];
    let (a2, a3) = (eq.b * v.d(1), eq.b * v.value());
    Ok(([sum(&t0), sum(&t1), a2, a3], [abs_sum(&t0), abs_sum(&t1), a2.abs(), a3.abs()]))
}

/// Limits of the singular boundary terms at `ξ = ±L`. `A₂`, `A₃` follow
/// from the cutoff asymptotics; `A₁ = C₁ξ + C₂` and `A₀ = C₁` follow from the
/// twice-integrated ODE. A numeric evaluation approaching the cutoff is
/// compared with both.
pub fn singular_terms(profile: &Profile) -> Result<SingularTerms> {
    if !profile.is_compact() {
        return Err(Error::NonCompact);
    }
    let p = profile.p.expect("compact profiles carry p");
    let l = profile.half_width;
    let side_limits = |side: f64, u0: f64| -> Result<SideLimits> {
        let asym = asymptotic_limits(u0, p, &profile.eq, profile.kappa(), side);
        let a1 = profile.c1 * side * l + profile.c2;
        let lim = |x: f64| if x == 0.0 { Limit::Zero } else { Limit::Finite(x) };
        let limits = [lim(profile.c1), lim(a1), asym[2], asym[3]];
        // numeric: d = L·10⁻²·2^{−k}
        let ds: Vec<f64> = (0..7).map(|k| 1e-2 * l * 0.5f64.powi(k)).collect();
        let vals: Vec<([f64; 4], [f64; 4])> =
            ds.iter().map(|&d| boundary_terms(profile, side * (l - d))).collect::<Result<_>>()?;
        let (last, last_scale) = vals[vals.len() - 1];
        let (prev, _) = vals[vals.len() - 2];
        let (first, _) = vals[0];
        let mut numeric = [0.0; 4];
        let mut consistent = true;
        for i in 0..4 {
            // A₀, A₁ approach their limits linearly in d
            numeric[i] = if i < 2 { 2.0 * last[i] - prev[i] } else { last[i] };
            let ok = match limits[i] {
                // identities: compare against the size of the cancelling terms
                _ if i < 2 => {
                    let target = match limits[i] {
                        Limit::Finite(x) => x,
                        _ => 0.0,
                    };
                    // A₀ is the slope of A₁, so A₁'s size over L also counts
                    let scale = if i == 0 { last_scale[0] + last_scale[1] / l } else { last_scale[1] };
                    (numeric[i] - target).abs() <= 1e-6 * (scale + target.abs())
                }
                Limit::Zero => last[i].abs() < 0.5 * first[i].abs() || last[i] == 0.0,
                Limit::Finite(x) => (last[i] - x).abs() <= 1e-2 * x.abs(),
                Limit::Infinite => last[i].abs() > 1.5 * first[i].abs(),
            };
            consistent &= ok;
        }
        Ok(SideLimits { limits, numeric, consistent })
    };
    Ok(SingularTerms { plus: side_limits(1.0, profile.u0_plus)?, minus: side_limits(-1.0, profile.u0_minus)? })
}

// --------------------------------------------------------------- weak forms

/// Smooth bump `P(t)·exp(−1/(1 − t²))`, `t = (ξ − ξ₀)/w`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestFunction {
    pub center: f64,
    pub width: f64,
    /// Coefficients of `P` in increasing degree.
    pub poly_coeffs: Vec<f64>,
}

impl TestFunction {
    pub fn bump(center: f64, width: f64) -> Self {
        TestFunction { center, width, poly_coeffs: vec![1.0] }
    }

    pub fn poly_degree(&self) -> usize {
        self.poly_coeffs.len().saturating_sub(1)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.width, self.center + self.width)
    }

    /// Jet of `ψ` at `ξ`.
    pub fn jet(&self, xi: f64) -> Jet {
        let t = (Jet::var(xi) - Jet::constant(self.center)).scale(1.0 / self.width);
        let g = Jet::constant(1.0) - t * t;
        if g.value() <= 2e-3 {
            return Jet::constant(0.0);
        }
        let e = (-g.recip()).exp();
        let mut p = Jet::constant(0.0);
        for &c in self.poly_coeffs.iter().rev() {
            p = p * t + Jet::constant(c);
        }
        p * e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeakOrder {
    Fourth,
    Second,
}

/// Panel breaks of a test support split at the cutoffs and interior nodes.
fn breaks(profile: &Profile, test: &TestFunction) -> Vec<f64> {
    let (lo, hi) = test.support();
    let mut pts = vec![lo, hi];
    let mut cand = profile.nodes();
    if profile.is_compact() {
        cand.push(-profile.half_width);
        cand.push(profile.half_width);
    }
    pts.extend(cand.into_iter().filter(|&x| x > lo && x < hi));
    pts.sort_by(f64::total_cmp);
    pts
}

/// `|I(ψ)|` relative to the integral of the absolute integrand terms.
pub fn weak_form_single(profile: &Profile, test: &TestFunction, order: WeakOrder) -> Result<f64> {
    let eq = &profile.eq;
    let k = profile.kappa();
    let l = profile.half_width;
    let br = breaks(profile, test);
    let (i1, i2) = match order {
        WeakOrder::Fourth => (2, 4),
        WeakOrder::Second => (0, 2),
    };
    let f = |x: f64| -> (f64, f64) {
        let u = profile.evaluate(x);
        let psi = test.jet(x);
        let lower = (-k * u + eq.a * pow_or_zero(u, eq.m)) * psi.d(i1);
        let upper = eq.b * pow_or_zero(u, eq.n) * psi.d(i2);
        (lower, upper)
    };
    let tol = 1e-12;
    let value = integrate_panels(|x| {
        let (a, b) = f(x);
        a + b
    }, &br, tol)?;
    let norm = integrate_panels(|x| {
        let (a, b) = f(x);
        a.abs() + b.abs()
    }, &br, 1e-6)?;
    let (value, norm) = if order == WeakOrder::Second {
        let inside: Vec<f64> = br.iter().map(|&x| x.clamp(-l, l)).collect();
        let g = |x: f64| (profile.c1 * x + profile.c2) * test.jet(x).value();
        let sub = integrate_panels(g, &inside, tol)?;
        let sub_abs = integrate_panels(|x| g(x).abs(), &inside, 1e-6)?;
        (value - sub, norm + sub_abs)
    } else {
        (value, norm)
    };
    Ok(if norm == 0.0 { 0.0 } else { value.abs() / norm })
}

/// Largest relative weak-form residual over a set of test functions.
pub fn weak_form_residual(profile: &Profile, tests: &[TestFunction], order: WeakOrder) -> Result<f64> {
    tests
        .iter()
        .map(|t| weak_form_single(profile, t, order))
        .try_fold(0.0f64, |acc, r| r.map(|v| acc.max(v)))
}

/// Random bumps with centres in `[−1.1L, 1.1L]` and widths in
/// `[0.05L, 0.6L]`, drawn deterministically from `seed`.
pub fn random_tests(profile: &Profile, count: usize, seed: u64) -> Vec<TestFunction> {
    let l = window(profile);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let center = rng.gen_range(-1.1 * l..1.1 * l);
            let width = rng.gen_range(0.05 * l..0.6 * l);
            let degree = rng.gen_range(0..=2usize);
            let mut poly_coeffs = vec![1.0];
            for _ in 0..degree {
                poly_coeffs.push(rng.gen_range(-0.5..0.5));
            }
            TestFunction { center, width, poly_coeffs }
        })
        .collect()
}

/// Off-centre bumps straddling each cutoff, so that `ψ′(±L) ≠ 0`.
pub fn straddling_tests(profile: &Profile) -> Vec<TestFunction> {
    if !profile.is_compact() {
        return vec![];
    }
    let l = profile.half_width;
    let w = 0.4 * l;
    vec![TestFunction::bump(l + 0.3 * w, w), TestFunction::bump(-l - 0.3 * w, w)]
}

// --------------------------------------------------------- conservation laws

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConsLawId {
    TopologicalCharge,
    Mass,
    WeightedMassCos,
    WeightedMassSin,
}

impl ConsLawId {
    pub const ALL: [ConsLawId; 4] =
        [ConsLawId::TopologicalCharge, ConsLawId::Mass, ConsLawId::WeightedMassCos, ConsLawId::WeightedMassSin];

    pub fn name(self) -> &'static str {
        match self {
            ConsLawId::TopologicalCharge => "TopologicalCharge",
            ConsLawId::Mass => "Mass",
            ConsLawId::WeightedMassCos => "WeightedMassCos",
            ConsLawId::WeightedMassSin => "WeightedMassSin",
        }
    }

    /// Whether the law holds for the equation and wave of `profile`.
    pub fn applies(self, profile: &Profile) -> bool {
        match self {
            ConsLawId::TopologicalCharge | ConsLawId::Mass => true,
            _ => {
                let eq = &profile.eq;
                eq.m == eq.n && kappa_is_zero(eq, &profile.wave) && eq.a / eq.b > 0.0
            }
        }
    }
}

impl fmt::Display for ConsLawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConsLawId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ConsLawId::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown conservation law `{s}`")))
    }
}

/// Density `T`, flux `X` and transverse fluxes `Y`, each kept as a list of
/// additive terms so that cancellations can be measured.
struct Densities {
    t: Vec<f64>,
    x: Vec<f64>,
    y: Vec<Vec<f64>>,
}

fn sum(v: &[f64]) -> f64 {
    v.iter().sum()
}

fn abs_sum(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

fn densities(profile: &Profile, law: ConsLawId, t: f64, x: f64, y: &[f64]) -> Result<Densities> {
    if !law.applies(profile) {
        return Err(Error::LawNotApplicable(format!("{law} needs m = n, ν = s|μ|² and a/b > 0")));
    }
    let eq = &profile.eq;
    let w = &profile.wave;
    let xi = w.xi(t, x, y);
    let (u, um, v) = profile.power_jets(xi)?;
    let s = eq.s as f64;
    let mu = &w.mu;
    let zeta = xi + profile.kappa() * t;
    let (u0, u1) = (u.value(), u.d(1));
    let ut = -w.nu * u1;
    let core = [ut, eq.a * um.d(1), eq.b * v.d(3)];
    let d = match law {
        ConsLawId::TopologicalCharge => Densities {
            t: vec![],
            x: core.to_vec(),
            y: mu.iter().map(|m| vec![s * m * u1]).collect(),
        },
        ConsLawId::Mass => {
            let mut xs: Vec<f64> = core.iter().map(|c| zeta * c).collect();
            xs.extend([-eq.a * um.value(), -eq.b * v.d(2)]);
            Densities {
                t: vec![-u0],
                x: xs,
                y: mu.iter().map(|m| vec![s * zeta * m * u1, -s * m * u0]).collect(),
            }
        }
        ConsLawId::WeightedMassCos | ConsLawId::WeightedMassSin => {
            let omega = (eq.a / eq.b).sqrt();
            let (sn, cs) = (omega * zeta).sin_cos();
            // the sine law is the cosine law with (cos, sin) → (sin, −cos)
            let (c, sg) = if law == ConsLawId::WeightedMassCos { (cs, sn) } else { (-sn, cs) };
            Densities {
                t: vec![-omega * c * u0],
                x: vec![sg * ut, sg * eq.b * v.d(3), -eq.b * omega * c * v.d(2)],
                y: mu.iter().map(|m| vec![s * sg * m * u1, -s * m * omega * c * u0]).collect(),
            }
        }
    };
    Ok(d)
}

/// Variation of the first integral `X + μ·Y − νT` along the profile at
/// `t = 0`, relative to `max(|mean|, term scale)`.
pub fn first_integral_check(profile: &Profile, law: ConsLawId, grid_points: usize) -> Result<f64> {
    let w = &profile.wave;
    let zeros = vec![0.0; w.mu.len()];
    let (mut lo, mut hi, mut total, mut scale) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0.0f64);
    let grid = interior_grid(profile, grid_points, 0.05, 0.02);
    for &x in &grid {
        let d = densities(profile, law, 0.0, x, &zeros)?;
        let fi = sum(&d.x) + w.mu.iter().zip(&d.y).map(|(m, y)| m * sum(y)).sum::<f64>() - w.nu * sum(&d.t);
        let sc = abs_sum(&d.x) + w.mu.iter().zip(&d.y).map(|(m, y)| m.abs() * abs_sum(y)).sum::<f64>() + w.nu.abs() * abs_sum(&d.t);
        lo = lo.min(fi);
        hi = hi.max(fi);
        total += fi;
        scale = scale.max(sc);
    }
    let mean = total / grid.len() as f64;
    let denom = mean.abs().max(scale);
    Ok(if denom == 0.0 { 0.0 } else { (hi - lo) / denom })
}

/// Largest `|D_t T + D_x X + D_y·Y|` at random interior spacetime points,
/// relative to the sum of the magnitudes of the differentiated terms. The
/// outer derivatives are fourth-order central differences.
pub fn divergence_check(profile: &Profile, law: ConsLawId, points: usize, seed: u64) -> Result<f64> {
    let w = &profile.wave;
    let lw = window(profile);
    let nodes = profile.nodes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-3 * lw;
    // derivative of every term of one component along one coordinate
    let deriv = |g: &dyn Fn(f64) -> Result<Vec<f64>>, z: f64| -> Result<Vec<f64>> {
        let (p2, p1, m1, m2) = (g(z + 2.0 * h)?, g(z + h)?, g(z - h)?, g(z - 2.0 * h)?);
        Ok((0..p1.len()).map(|i| (-p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * h)).collect())
    };
    let mut worst = 0.0f64;
    let mut taken = 0;
    while taken < points {
        let xi: f64 = rng.gen_range(-0.9 * lw..0.9 * lw);
        if nodes.iter().any(|z| (xi - z).abs() < 0.05 * lw) {
            continue;
        }
        taken += 1;
        let t: f64 = rng.gen_range(-0.5..0.5);
        let y: Vec<f64> = w.mu.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = xi - w.mu.iter().zip(&y).map(|(m, yy)| m * yy).sum::<f64>() + w.nu * t;
        let mut parts = deriv(&|tt| densities(profile, law, tt, x, &y).map(|d| d.t), t)?;
        parts.extend(deriv(&|xx| densities(profile, law, t, xx, &y).map(|d| d.x), x)?);
        for i in 0..y.len() {
            let g = |yy: f64| {
                let mut yv = y.clone();
                yv[i] = yy;
                densities(profile, law, t, x, &yv).map(|d| d.y[i].clone())
            };
            parts.extend(deriv(&g, y[i])?);
        }
        let norm = abs_sum(&parts);
        if norm > 0.0 {
            worst = worst.max(sum(&parts).abs() / norm);
        }
    }
    Ok(worst)
}

// ------------------------------------------------------------- power fits

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerFit {
    pub slope: f64,
    /// Largest deviation of the log data from the fitted line.
    pub max_log_residual: f64,
    pub r_squared: f64,
}

fn fit_line(xs: &[f64], ys: &[f64]) -> PowerFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let max_log_residual = xs.iter().zip(ys).map(|(x, y)| (y - icpt - slope * x).abs()).fold(0.0, f64::max);
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    PowerFit { slope, max_log_residual, r_squared }
}

/// Slope of `log|U|` against `log(L − ξ)` over `L − ξ ∈ [10⁻⁶L, 10⁻³L]`,
/// at the right-hand cutoff.
pub fn estimate_cutoff_power(profile: &Profile) -> Result<PowerFit> {
    if !profile.is_compact() {
        return Err(Error::NonCompact);
    }
    let l = profile.half_width;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for i in 0..40 {
        let d = l * 10f64.powf(-6.0 + 3.0 * i as f64 / 39.0);
        let u = profile.evaluate_near_edge(true, d).abs();
        if u > 0.0 {
            xs.push(d.ln());
            ys.push(u.ln());
        }
    }
    if xs.len() < 2 {
        return Err(Error::Domain("profile vanishes near the cutoff".into()));
    }
    Ok(fit_line(&xs, &ys))
}

/// Far-field decay exponent `k` in `U ~ ξ^{−k}`, fitted over
/// `ξ ∈ [lo, hi]`.
pub fn estimate_decay_exponent(profile: &Profile, lo: f64, hi: f64) -> Result<PowerFit> {
    if profile.is_compact() || !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParameter("decay fits need a non-compact profile and 0 < lo < hi".into()));
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for i in 0..40 {
        let x = lo * (hi / lo).powf(i as f64 / 39.0);
        let u = profile.try_evaluate(x)?.abs();
        if u > 0.0 && u.is_finite() {
            xs.push(x.ln());
            ys.push(u.ln());
        }
    }
    if xs.len() < 2 {
        return Err(Error::Domain("profile underflows on the fit range".into()));
    }
    let mut fit = fit_line(&xs, &ys);
    fit.slope = -fit.slope;
    Ok(fit)
}

// ------------------------------------------------------------------ suites

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CheckKind {
    Residual,
    Singular,
    WeakForm2,
    WeakForm4,
    ConsLaw,
    Power,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Residual,
        CheckKind::Singular,
        CheckKind::WeakForm2,
        CheckKind::WeakForm4,
        CheckKind::ConsLaw,
        CheckKind::Power,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Residual => "residual",
            CheckKind::Singular => "singular",
            CheckKind::WeakForm2 => "weakform2",
            CheckKind::WeakForm4 => "weakform4",
            CheckKind::ConsLaw => "conslaw",
            CheckKind::Power => "power",
        }
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

/// Default tolerances of the suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub residual: f64,
    pub solitary: f64,
    pub weak_form: f64,
    pub first_integral: f64,
    pub divergence: f64,
    /// Relative error of the fitted cutoff power.
    pub power: f64,
    /// Allowed number of singular-term inconsistencies.
    pub singular: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-5,
            solitary: 1e-8,
            weak_form: 1e-6,
            first_integral: 1e-6,
            divergence: 1e-4,
            power: 0.02,
            singular: 0.0,
        }
    }
}

impl Tolerances {
    pub fn scaled(self, f: f64) -> Self {
        Tolerances {
            residual: self.residual * f,
            solitary: self.solitary * f,
            weak_form: self.weak_form * f,
            first_integral: self.first_integral * f,
            divergence: self.divergence * f,
            power: self.power * f,
            singular: self.singular * f,
        }
    }

    /// Overrides one tolerance by check or field name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        match key {
            "residual" => self.residual = value,
            "solitary" => self.solitary = value,
            "weakform" | "weakform2" | "weakform4" | "weak_form" => self.weak_form = value,
            "conslaw" | "first_integral" => self.first_integral = value,
            "divergence" => self.divergence = value,
            "power" => self.power = value,
            "singular" => self.singular = value,
            other => return Err(Error::InvalidParameter(format!("unknown tolerance `{other}`"))),
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub check_name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub details: String,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>, measured: f64, tolerance: f64, details: impl Into<String>) -> Self {
        CheckEntry {
            check_name: name.into(),
            measured,
            tolerance,
            pass: measured <= tolerance,
            details: details.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct VerificationReport {
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.check_name == name)
    }
}

/// Options of [`run_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub checks: Vec<CheckKind>,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub grid_points: usize,
    pub random_tests: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            checks: CheckKind::ALL.to_vec(),
            tolerances: Tolerances::default(),
            seed: 0,
            grid_points: 401,
            random_tests: 20,
        }
    }
}

fn fmt_class(c: Result<SolutionClass>) -> String {
    match c {
        Ok(c) => c.to_string(),
        Err(e) => e.to_string(),
    }
}

/// Runs the selected checks; entries are sorted by name.
pub fn run_suite(profile: &Profile, opts: &SuiteOptions) -> Result<VerificationReport> {
    let tol = &opts.tolerances;
    let mut entries = Vec::new();
    let compact = profile.is_compact();
    for &check in &opts.checks {
        match check {
            CheckKind::Residual => {
                let r = residual_reduced(profile, profile.c1, profile.c2, opts.grid_points);
                entries.push(CheckEntry::new("residual", r, tol.residual, "reduced ODE, 90% interior"));
                if profile.solitary_ab.is_some() {
                    let r = solitary_residual(profile, opts.grid_points)?;
                    entries.push(CheckEntry::new("residual.solitary", r, tol.solitary, "first-order ODE, |ξ| ≤ 10"));
                }
            }
            CheckKind::Singular if compact => {
                let st = singular_terms(profile)?;
                let class = classify_profile(profile);
                let pattern_ok = match class {
                    Ok(SolutionClass::Compacton(_)) | Ok(SolutionClass::Classical) => st.all_vanish(),
                    Ok(SolutionClass::WeakCompacton) => !st.all_vanish(),
                    _ => false,
                };
                let bad = (!pattern_ok) as u8 as f64 + (!st.consistent()) as u8 as f64;
                entries.push(CheckEntry::new(
                    "singular",
                    bad,
                    tol.singular,
                    format!(
                        "class {}; limits at +L {:?}; numeric agreement {}",
                        fmt_class(class),
                        st.plus.limits,
                        st.consistent()
                    ),
                ));
            }
            CheckKind::WeakForm2 | CheckKind::WeakForm4 => {
                let order = if check == CheckKind::WeakForm2 { WeakOrder::Second } else { WeakOrder::Fourth };
                let inner = random_tests(profile, opts.random_tests, opts.seed);
                let edge = straddling_tests(profile);
                let ri = weak_form_residual(profile, &inner, order)?;
                let re = weak_form_residual(profile, &edge, order)?;
                let mut details = format!(
                    "{} bumps: random max {:.3e}, {} straddling the cutoff max {:.3e}",
                    inner.len() + edge.len(),
                    ri,
                    edge.len(),
                    re
                );
                if compact && ri.max(re) > tol.weak_form {
                    let st = singular_terms(profile)?;
                    details.push_str(&format!("; A₁ at +L {:?}, at −L {:?}", st.plus.limits[1], st.minus.limits[1]));
                }
                entries.push(CheckEntry::new(check.name(), ri.max(re), tol.weak_form, details));
            }
            CheckKind::ConsLaw => {
                for law in ConsLawId::ALL.into_iter().filter(|l| l.applies(profile)) {
                    let v = first_integral_check(profile, law, opts.grid_points)?;
                    entries.push(CheckEntry::new(format!("conslaw.{}.first_integral", law.name()), v, tol.first_integral, ""));
                    let d = divergence_check(profile, law, 100, opts.seed)?;
                    entries.push(CheckEntry::new(format!("conslaw.{}.divergence", law.name()), d, tol.divergence, "100 random points"));
                }
            }
            CheckKind::Power if compact => {
                let fit = estimate_cutoff_power(profile)?;
                let p = profile.p.expect("compact").value();
                entries.push(CheckEntry::new(
                    "power",
                    (fit.slope - p).abs() / p,
                    tol.power,
                    format!("fitted {:.6} against {}", fit.slope, profile.p.expect("compact")),
                ));
            }
            CheckKind::Singular | CheckKind::Power => {
                entries.push(CheckEntry::new(check.name(), 0.0, 0.0, "skipped: unbounded support"));
            }
        }
    }
    entries.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    Ok(VerificationReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_profile, Extras, FamilyId};
    use crate::params::WaveParams;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn cos_profile() -> Profile {
        let e = EquationParams::new(1.0, 1.0, 1, r(2, 1), r(2, 1), 2).unwrap();
        make_profile(FamilyId::CosCompacton, &e, &WaveParams::new(vec![1.0], 1.75).unwrap(), Extras::default()).unwrap()
    }

    fn lin_cos() -> Profile {
        let e = EquationParams::new(1.0, 1.0, 1, r(2, 1), r(2, 1), 2).unwrap();
        make_profile(FamilyId::LinCos, &e, &WaveParams::new(vec![1.0], 1.0).unwrap(), Extras::default()).unwrap()
    }

    #[test]
    fn bump_vanishes_smoothly() {
        let t = TestFunction::bump(0.0, 1.0);
        assert!((t.jet(0.0).value() - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(t.jet(0.9999).value(), 0.0);
        assert!(t.jet(0.99).d(4).abs() < 1e-6);
    }

    #[test]
    fn cosine_compacton_checks() {
        let p = cos_profile();
        assert!(residual_reduced(&p, 0.0, 0.0, 401) < 1e-8);
        let st = singular_terms(&p).unwrap();
        assert!(st.all_vanish() && st.consistent(), "{st:?}");
        let tests = straddling_tests(&p);
        assert!(weak_form_residual(&p, &tests, WeakOrder::Fourth).unwrap() < 1e-8);
        let fit = estimate_cutoff_power(&p).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-3);
    }

    #[test]
    fn line_cosine_is_weak_only() {
        let p = lin_cos();
        let st = singular_terms(&p).unwrap();
        assert!(st.weak_pattern() && st.consistent(), "{st:?}");
        let tests = straddling_tests(&p);
        assert!(weak_form_residual(&p, &tests, WeakOrder::Second).unwrap() < 1e-8);
        assert!(weak_form_residual(&p, &tests, WeakOrder::Fourth).unwrap() > 1e-3);
    }

    #[test]
    fn synthetic_low_power_has_divergent_a2() {
        let e = EquationParams::new(1.0, 1.0, 1, r(2, 1), r(2, 1), 2).unwrap();
        let lim = asymptotic_limits(1.0, 0.45, &e, 0.75, 1.0);
        assert_eq!(lim[3], Limit::Zero);
        assert_eq!(lim[2], Limit::Infinite);
    }

    #[test]
    fn conservation_laws_on_line_cosine() {
        let p = lin_cos();
        for law in ConsLawId::ALL {
            assert!(first_integral_check(&p, law, 201).unwrap() < 1e-9, "{law}");
            assert!(divergence_check(&p, law, 20, 1).unwrap() < 1e-6, "{law}");
        }
        assert!(matches!(
            first_integral_check(&cos_profile(), ConsLawId::WeightedMassCos, 11),
            Err(Error::LawNotApplicable(_))
        ));
    }
}
