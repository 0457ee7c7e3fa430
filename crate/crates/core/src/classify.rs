//! Solution classes of cutoff profiles `U_c = U·H(L − |ξ|)` and the case
//! analysis of the compacton quadrature.
//!
//! Near the cutoff `U ~ U₀(L ∓ ξ)^p`. With `p` and the powers `m`, `n`:
//!
//! * case 1: `p > 1`, `pm > 1`, `pn > 3`
//! * case 2: `p = 2/(n−1)`, `pm > 1`, `2n(n+1)/(n−1)² = −κ/b`
//! * case 3: `p = 2/(n−m)`, `2n(n+m)/(n−m)² = −a/b`, `κ = 0`
//! * case 4: `p = 2/(n−m) > 1`
//!
//! Any case makes the profile a pointwise distributional solution
//! ("compacton"). Failing those, `pn > 1` still gives a weak solution of the
//! twice-integrated ODE.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{ExpectedClass, Profile};
use crate::params::{kappa, EquationParams, ReducedConstants, WaveParams};
use crate::quadrature::{find_vmax, PotentialSpec};
use crate::rational::Rational;

/// Relative tolerance for the equality conditions of cases 2 and 3.
pub const EQ_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolutionClass {
    Classical,
    Compacton(u8),
    WeakCompacton,
    NotASolution,
}

impl SolutionClass {
    pub fn is_weak_solution(self) -> bool {
        !matches!(self, SolutionClass::NotASolution)
    }

    /// Agreement with the class a family is known to belong to.
    pub fn matches(self, expected: ExpectedClass) -> bool {
        matches!(
            (self, expected),
            (SolutionClass::Compacton(_), ExpectedClass::Compacton)
                | (SolutionClass::WeakCompacton, ExpectedClass::WeakCompacton)
        )
    }
}

impl fmt::Display for SolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionClass::Classical => f.write_str("Classical"),
            SolutionClass::Compacton(k) => write!(f, "Compacton(case {k})"),
            SolutionClass::WeakCompacton => f.write_str("WeakCompacton"),
            SolutionClass::NotASolution => f.write_str("NotASolution"),
        }
    }
}

/// A cutoff power, exact when known as a rational.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffPower {
    pub exact: Option<Rational>,
    pub value: f64,
}

impl From<Rational> for CutoffPower {
    fn from(r: Rational) -> Self {
        CutoffPower { exact: Some(r), value: r.value() }
    }
}

impl From<f64> for CutoffPower {
    fn from(v: f64) -> Self {
        CutoffPower { exact: None, value: v }
    }
}

impl CutoffPower {
    fn equals(&self, r: Option<Rational>, approx: f64) -> bool {
        match (self.exact, r) {
            (Some(p), Some(q)) => p == q,
            _ => rel_eq(self.value, approx),
        }
    }
}

fn rel_eq(x: f64, y: f64) -> bool {
    (x - y).abs() <= EQ_TOL * x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}

/// Inputs to the case conditions besides the powers.
#[derive(Debug, Clone, Copy)]
struct Side {
    /// `−κ/b`
    minus_kappa_over_b: f64,
    kappa_zero: bool,
    minus_a_over_b: f64,
}

/// Full outcome of the pointwise test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointwiseReport {
    pub class: SolutionClass,
    pub pn: f64,
    pub pm: f64,
    /// Every case whose conditions hold.
    pub cases: Vec<u8>,
    /// `m ≥ 2`, `n ≥ 4` and `p > 4`, so `U_c` is `C⁴` at the cutoff.
    pub classical: bool,
}

fn check_powers(m: Rational, n: Rational) -> Result<()> {
    if m == Rational::ONE || n == Rational::ONE {
        return Err(Error::Domain("the cutoff analysis needs m ≠ 1 and n ≠ 1".into()));
    }
    Ok(())
}

fn pointwise(p: CutoffPower, m: Rational, n: Rational, side: Side) -> Result<PointwiseReport> {
    if !(p.value > 0.0) {
        return Err(Error::Domain(format!("cutoff power must be positive, got {}", p.value)));
    }
    check_powers(m, n)?;
    let (mf, nf) = (m.value(), n.value());
    let one = Rational::ONE;
    let two = Rational::integer(2);
    let pm = p.value * mf;
    let pn = p.value * nf;
    let mut cases = Vec::new();
    if p.value > 1.0 && pm > 1.0 && pn > 3.0 {
        cases.push(1);
    }
    let p2 = two / (n - one);
    if p2.is_positive() && p.equals(Some(p2), p2.value()) && pm > 1.0 {
        let lhs = 2.0 * nf * (nf + 1.0) / ((nf - 1.0) * (nf - 1.0));
        if rel_eq(lhs, side.minus_kappa_over_b) {
            cases.push(2);
        }
    }
    if m != n {
        let p3 = two / (n - m);
        if p3.is_positive() && p.equals(Some(p3), p3.value()) {
            let lhs = 2.0 * nf * (nf + mf) / ((nf - mf) * (nf - mf));
            if side.kappa_zero && rel_eq(lhs, side.minus_a_over_b) {
                cases.push(3);
            }
            if p3 > one {
                cases.push(4);
            }
        }
    }
    let classical = mf >= 2.0 && nf >= 4.0 && p.value > 4.0;
    let class = if classical && !cases.is_empty() {
        SolutionClass::Classical
    } else if let Some(&k) = cases.first() {
        SolutionClass::Compacton(k)
    } else if pn > 1.0 {
        SolutionClass::WeakCompacton
    } else {
        SolutionClass::NotASolution
    };
    Ok(PointwiseReport { class, pn, pm, cases, classical })
}

fn side_of(eq: &EquationParams, w: &WaveParams) -> Side {
    Side {
        minus_kappa_over_b: -kappa(eq, w) / eq.b,
        kappa_zero: crate::families::kappa_is_zero(eq, w),
        minus_a_over_b: -eq.a / eq.b,
    }
}

/// Pointwise test with every satisfied case listed.
pub fn pointwise_report(p: impl Into<CutoffPower>, eq: &EquationParams, w: &WaveParams) -> Result<PointwiseReport> {
    pointwise(p.into(), eq.m, eq.n, side_of(eq, w))
}

/// Class of a cutoff profile with cutoff power `p`. When several cases hold
/// the lowest is reported.
pub fn classify_pointwise(p: impl Into<CutoffPower>, eq: &EquationParams, w: &WaveParams) -> Result<SolutionClass> {
    pointwise_report(p, eq, w).map(|r| r.class)
}

/// Class of a catalog profile from its stored cutoff power.
pub fn classify_profile(profile: &Profile) -> Result<SolutionClass> {
    let p = profile.p.ok_or(Error::NonCompact)?;
    classify_pointwise(p, &profile.eq, &profile.wave)
}

/// Leading small-`V` behaviour of `Φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuadratureCase {
    ENonzero,
    CLeading,
    /// `B V^{1+1/n}` leads (`m > 1`).
    BLeading,
    /// `−A V^{1+m/n}` leads (`m < 1`).
    ALeading,
    /// No positive root is possible.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub quadrature_case: QuadratureCase,
    /// Power of `V` at the cutoff; absent when the case has none.
    pub pn: Option<f64>,
    pub exists_weak: bool,
    pub exists_compacton: bool,
    pub compacton_cases: Vec<u8>,
    pub vmax: Option<f64>,
    pub vstar: Option<f64>,
    /// `C < ((1−m)/m)·B·V*^{1/n}` when the root needs it.
    pub pstar_condition: Option<bool>,
    /// Threshold `((1−m)/m)·B·V*^{1/n}`.
    pub threshold: Option<f64>,
    /// The same threshold in closed form,
    /// `|m−1|/m^{m/(m−1)}·(|B|^m/|A|)^{1/(m−1)}` (m > 1) or
    /// `(1−m)/m^{m/(m−1)}·(A/B^m)^{1/(1−m)}` (m < 1).
    pub threshold_closed: Option<f64>,
    pub notes: Vec<String>,
}

impl CaseReport {
    /// Class of the quadrature profile these constants produce.
    pub fn class(&self) -> SolutionClass {
        match self.compacton_cases.first() {
            _ if !self.exists_weak => SolutionClass::NotASolution,
            Some(&c) => SolutionClass::Compacton(c),
            None => SolutionClass::WeakCompacton,
        }
    }
}

/// Closed form of the `C` threshold.
pub fn threshold_closed_form(b: f64, a: f64, m: f64) -> f64 {
    let pre = (m - 1.0).abs() / m.powf(m / (m - 1.0));
    if m > 1.0 {
        pre * (b.abs().powf(m) / a.abs()).powf(1.0 / (m - 1.0))
    } else {
        pre * (a / b.powf(m)).powf(1.0 / (1.0 - m))
    }
}

/// Which solution classes the quadrature with constants `rc` admits.
pub fn quadrature_case(rc: &ReducedConstants, eq: &EquationParams) -> Result<CaseReport> {
    if rc.a == 0.0 {
        return Err(Error::Degenerate("A = 0".into()));
    }
    let (m, n) = (eq.m, eq.n);
    let (mf, nf) = (m.value(), n.value());
    let spec = PotentialSpec::new(*rc, m, n);
    let vstar = spec.vstar();
    let threshold = vstar.map(|vs| (1.0 - mf) / mf * rc.b * vs.powf(1.0 / nf));
    let mut report = CaseReport {
        quadrature_case: QuadratureCase::Degenerate,
        pn: None,
        exists_weak: false,
        exists_compacton: false,
        compacton_cases: vec![],
        vmax: None,
        vstar,
        pstar_condition: None,
        threshold,
        threshold_closed: vstar.map(|_| threshold_closed_form(rc.b, rc.a, mf)),
        notes: vec![],
    };
    let one = Rational::ONE;
    if rc.e != 0.0 {
        report.quadrature_case = QuadratureCase::ENonzero;
        report.pn = Some(1.0);
        report.notes.push("E ≠ 0: V ~ (L ∓ ξ), pn = 1, no compacton".into());
    } else if rc.c != 0.0 {
        report.quadrature_case = QuadratureCase::CLeading;
        report.pn = Some(2.0);
        let (b, a, c) = (rc.b, rc.a, rc.c);
        let root = if c <= 0.0 {
            report.notes.push("C < 0: Φ < 0 near V = 0".into());
            false
        } else if m > one {
            if a > 0.0 {
                true
            } else if b < 0.0 {
                let ok = c < threshold.expect("V* exists for A, B < 0");
                report.pstar_condition = Some(ok);
                ok
            } else {
                false
            }
        } else if m < one {
            if b < 0.0 || (b == 0.0 && a > 0.0) {
                true
            } else if b > 0.0 && a > 0.0 {
                let ok = c < threshold.expect("V* exists for A, B > 0");
                report.pstar_condition = Some(ok);
                ok
            } else {
                false
            }
        } else {
            b < a
        };
        report.exists_weak = root;
    } else if m == one || rc.b == 0.0 {
        report.quadrature_case = QuadratureCase::Degenerate;
        report.notes.push("E = C = 0 with a single power: no positive root".into());
    } else if m > one {
        report.quadrature_case = QuadratureCase::BLeading;
        let pn = 2.0 * nf / (nf - 1.0);
        report.pn = Some(pn);
        let root = rc.b > 0.0 && rc.a > 0.0;
        if root && n > one {
            report.exists_weak = true;
            let p = Rational::integer(2) / (n - one);
            // κ = B(n+1)b/(2n)
            let kappa = rc.b * (nf + 1.0) * eq.b / (2.0 * nf);
            let side = Side { minus_kappa_over_b: -kappa / eq.b, kappa_zero: false, minus_a_over_b: -eq.a / eq.b };
            report.compacton_cases = pointwise(p.into(), m, n, side)?.cases;
        } else if n <= one {
            report.notes.push("n ≤ 1: ∫ dV/√Φ diverges at V = 0".into());
        }
    } else {
        report.quadrature_case = QuadratureCase::ALeading;
        let pn = 2.0 * nf / (nf - mf);
        report.pn = Some(pn);
        let root = rc.a < 0.0 && rc.b < 0.0;
        if root && n > m && n != one {
            report.exists_weak = true;
            let p = Rational::integer(2) / (n - m);
            let kappa = rc.b * (nf + 1.0) * eq.b / (2.0 * nf);
            let side = Side { minus_kappa_over_b: -kappa / eq.b, kappa_zero: false, minus_a_over_b: -eq.a / eq.b };
            report.compacton_cases = pointwise(p.into(), m, n, side)?.cases;
        } else if n <= m {
            report.notes.push("n ≤ m: ∫ dV/√Φ diverges at V = 0".into());
        }
    }
    report.exists_compacton = !report.compacton_cases.is_empty();
    if report.quadrature_case != QuadratureCase::Degenerate {
        report.vmax = find_vmax(&spec).ok();
    }
    if report.exists_weak && report.vmax.is_none() {
        report.notes.push("positive-root conditions hold but no root was found numerically".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn eq(m: Rational, n: Rational) -> EquationParams {
        EquationParams::new(1.0, 1.0, 1, m, n, 2).unwrap()
    }

    fn w(nu: f64) -> WaveParams {
        WaveParams::new(vec![1.0], nu).unwrap()
    }

    #[test]
    fn pointwise_examples() {
        let e = eq(r(2, 1), r(2, 1));
        assert_eq!(classify_pointwise(r(2, 1), &e, &w(1.75)).unwrap(), SolutionClass::Compacton(1));
        assert_eq!(classify_pointwise(r(1, 2), &e, &w(1.75)).unwrap(), SolutionClass::NotASolution);
        assert_eq!(classify_pointwise(r(1, 1), &e, &w(1.75)).unwrap(), SolutionClass::WeakCompacton);
        assert_eq!(classify_pointwise(1.0, &e, &w(1.75)).unwrap(), SolutionClass::WeakCompacton);
        assert!(matches!(classify_pointwise(0.0, &e, &w(1.0)), Err(Error::Domain(_))));
        assert!(matches!(classify_pointwise(2.0, &eq(r(1, 1), r(2, 1)), &w(1.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn ties_list_every_case() {
        // n = 2, κ = −12b pins case 2 as well as case 1
        let e = eq(r(2, 1), r(2, 1));
        let rep = pointwise_report(r(2, 1), &e, &w(1.0 - 12.0)).unwrap();
        assert_eq!(rep.cases, vec![1, 2]);
        assert_eq!(rep.class, SolutionClass::Compacton(1));
    }

    #[test]
    fn classical_needs_high_powers() {
        let e = eq(r(2, 1), r(4, 1));
        assert_eq!(classify_pointwise(r(5, 1), &e, &w(1.5)).unwrap(), SolutionClass::Classical);
        assert_eq!(classify_pointwise(r(4, 1), &e, &w(1.5)).unwrap(), SolutionClass::Compacton(1));
    }

    #[test]
    fn quadrature_examples() {
        let e = eq(r(2, 1), r(2, 1));
        let rc = ReducedConstants::from_coefficients(1.0, 0.0, 0.0, 1.0);
        let rep = quadrature_case(&rc, &e).unwrap();
        assert!(!rep.exists_weak && rep.pn == Some(1.0));
        let rc = ReducedConstants::from_coefficients(0.0, 1.0, 0.0, 1.0);
        let rep = quadrature_case(&rc, &eq(r(2, 1), r(1, 1))).unwrap();
        assert!(rep.exists_weak);
        assert!((rep.vmax.unwrap() - 1.0).abs() < 1e-14);
        let rc = ReducedConstants::from_coefficients(0.0, 0.0, 1.0, 1.0);
        let rep = quadrature_case(&rc, &e).unwrap();
        assert_eq!(rep.quadrature_case, QuadratureCase::BLeading);
        assert!(rep.exists_compacton);
        assert_eq!(rep.compacton_cases, vec![1]);
        assert!(quadrature_case(&ReducedConstants::from_coefficients(0.0, 0.0, 1.0, 0.0), &e).is_err());
        let rep = quadrature_case(&ReducedConstants::from_coefficients(0.0, 0.0, 0.0, 1.0), &e).unwrap();
        assert_eq!(rep.quadrature_case, QuadratureCase::Degenerate);
        assert!(rep.vmax.is_none());
    }

    #[test]
    fn thresholds_agree() {
        for (b, a, m) in [(-1.0, -2.0, r(2, 1)), (-0.3, -0.7, r(3, 2)), (1.0, 2.0, r(1, 2)), (0.4, 3.0, r(1, 4))] {
            let e = eq(m, r(2, 1));
            let rc = ReducedConstants::from_coefficients(0.0, 1e-3, b, a);
            let rep = quadrature_case(&rc, &e).unwrap();
            let (t, tc) = (rep.threshold.unwrap(), rep.threshold_closed.unwrap());
            assert!((t - tc).abs() <= 1e-13 * t.abs(), "{t} vs {tc}");
            assert_eq!(rep.pstar_condition, Some(true));
            assert!(rep.vmax.is_some());
        }
    }
}
