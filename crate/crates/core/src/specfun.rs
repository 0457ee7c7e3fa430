//! Special functions: complete elliptic integral of the first kind,
//! Jacobi elliptic functions for real and purely imaginary modulus,
//! signed rational powers and the fixed points of `tan z = z`.
//!
//! Moduli are given as `k` (not the parameter `k²`).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::roots::brent;

/// Modulus of an elliptic function.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(tag = "regime", content = "k")]
pub enum EllipticModulus {
    /// `0 ≤ k < 1`
    Real(f64),
    /// Modulus `i·k` with `k > 0`.
    Imaginary(f64),
}

impl EllipticModulus {
    pub fn validate(self) -> Result<Self> {
        match self {
            EllipticModulus::Real(k) if (0.0..1.0).contains(&k) => Ok(self),
            EllipticModulus::Imaginary(k) if k > 0.0 && k.is_finite() => Ok(self),
            other => Err(Error::Domain(format!("invalid elliptic modulus {other:?}"))),
        }
    }
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= 4.0 * f64::EPSILON * an {
            return an;
        }
        a = an;
        b = bn;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind `K(k)` by the
/// arithmetic–geometric mean.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!("K(k) needs 0 ≤ k < 1, got {k}")));
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    Ok(PI / (2.0 * agm(1.0, kp)))
}

/// `K(i k) = K(k / √(1+k²)) / √(1+k²)`.
pub fn elliptic_k_imag(k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!("imaginary modulus needs k > 0, got {k}")));
    }
    let s = (1.0 + k * k).sqrt();
    Ok(elliptic_k(k / s)? / s)
}

/// `(sn, cn, dn)(u, k)` for a real modulus `0 ≤ k < 1`, via the
/// descending Landen (AGM) scheme.
pub fn jacobi(u: f64, k: f64) -> Result<(f64, f64, f64)> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!(
            "Jacobi functions need 0 ≤ k < 1, got {k}"
        )));
    }
    if k == 0.0 {
        return Ok((u.sin(), u.cos(), 1.0));
    }
    let mut a = [0.0f64; 32];
    let mut c = [0.0f64; 32];
    a[0] = 1.0;
    c[0] = k;
    let mut b = ((1.0 - k) * (1.0 + k)).sqrt();
    let mut levels = 0;
    while levels < 31 {
        let i = levels;
        a[i + 1] = 0.5 * (a[i] + b);
        c[i + 1] = 0.5 * (a[i] - b);
        b = (a[i] * b).sqrt();
        levels += 1;
        if c[levels].abs() <= f64::EPSILON * a[levels] {
            break;
        }
    }
    let mut phi = (1u64 << levels) as f64 * a[levels] * u;
    for i in (1..=levels).rev() {
        phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let dn = (1.0 - k * k * sn * sn).sqrt();
    Ok((sn, cn, dn))
}

pub fn jacobi_sn(u: f64, k: f64) -> Result<f64> {
    jacobi(u, k).map(|t| t.0)
}

pub fn jacobi_cn(u: f64, k: f64) -> Result<f64> {
    jacobi(u, k).map(|t| t.1)
}

pub fn jacobi_dn(u: f64, k: f64) -> Result<f64> {
    jacobi(u, k).map(|t| t.2)
}

/// `(sn, cn, dn)(u, i k)` through the imaginary-modulus transformation
/// `sn(u, ik) = k₁' sd(u/k₁', k₁)`, `k₁ = k/√(1+k²)`, `k₁' = 1/√(1+k²)`.
pub fn jacobi_imag(u: f64, k: f64) -> Result<(f64, f64, f64)> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!("imaginary modulus needs k > 0, got {k}")));
    }
    let s = (1.0 + k * k).sqrt();
    let k1 = k / s;
    let k1p = 1.0 / s;
    let (sn, cn, dn) = jacobi(u * s, k1)?;
    Ok((k1p * sn / dn, cn / dn, 1.0 / dn))
}

pub fn jacobi_sn_imag(u: f64, k: f64) -> Result<f64> {
    jacobi_imag(u, k).map(|t| t.0)
}

/// Real power of a possibly negative base with a rational exponent.
///
/// For `x < 0` the root is real only if the denominator is odd; the
/// result then carries the sign `sgn(x)^num`.
pub fn signed_pow(x: f64, r: Rational) -> Result<f64> {
    if x > 0.0 {
        return Ok(pow_positive(x, r));
    }
    if x == 0.0 {
        return if r.is_positive() {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!("0^{r} is undefined")))
        };
    }
    if x.is_nan() {
        return Err(Error::Domain("NaN base".into()));
    }
    if !r.denom_is_odd() {
        return Err(Error::Domain(format!(
            "({x})^{r}: even root of a negative number"
        )));
    }
    let mag = pow_positive(-x, r);
    Ok(if r.numer_is_odd() { -mag } else { mag })
}

fn pow_positive(x: f64, r: Rational) -> f64 {
    if r.is_integer() && r.numer().abs() <= 64 {
        x.powi(r.numer() as i32)
    } else {
        x.powf(r.value())
    }
}

/// The first `count` positive solutions of `z = tan z`. The j-th root lies
/// in `(jπ, jπ + π/2)`.
pub fn tan_fixed_points(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|j| {
            let lo = j as f64 * PI;
            let hi = lo + FRAC_PI_2;
            // sin z − z cos z has the same zeros and no poles.
            brent(|z| z.sin() - z * z.cos(), lo, hi, 1e-15)
                .expect("tan z = z root is bracketed by construction")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    /// Independent AGM loop written out for the oracle comparisons.
    fn k_oracle(k: f64) -> f64 {
        let (mut a, mut b) = (1.0f64, (1.0 - k * k).sqrt());
        for _ in 0..40 {
            let t = 0.5 * (a + b);
            b = (a * b).sqrt();
            a = t;
        }
        PI / (2.0 * a)
    }

    #[test]
    fn complete_integral_values() {
        assert_eq!(elliptic_k(0.0).unwrap(), FRAC_PI_2);
        let k = elliptic_k(FRAC_1_SQRT_2).unwrap();
        assert!((k - 1.854_074_677_301_372).abs() < 1e-13);
        assert!((k - k_oracle(FRAC_1_SQRT_2)).abs() < 1e-14);
        let near = elliptic_k(0.99999).unwrap();
        assert!(near.is_finite() && near > 6.0);
        assert!((near - k_oracle(0.99999)).abs() / near < 1e-13);
        assert!(elliptic_k(1.0).is_err());
        assert!(elliptic_k(-0.1).is_err());
    }

    #[test]
    fn jacobi_initial_values_and_degenerate_modulus() {
        for k in [0.0, 0.3, FRAC_1_SQRT_2, 0.99] {
            let (sn, cn, dn) = jacobi(0.0, k).unwrap();
            assert_eq!((sn, cn, dn), (0.0, 1.0, 1.0));
        }
        let (sn, cn, _) = jacobi(1.0, 0.0).unwrap();
        assert!((cn - 0.540_302_305_868_139_8).abs() < 1e-15);
        assert!((sn - 0.841_470_984_807_896_5).abs() < 1e-15);
        assert!(jacobi(1.0, 1.0).is_err());
    }

    #[test]
    fn cn_vanishes_at_quarter_period() {
        let kk = k_oracle(FRAC_1_SQRT_2);
        assert!(jacobi_cn(kk, FRAC_1_SQRT_2).unwrap().abs() < 1e-10);
        assert!((jacobi_sn(kk, FRAC_1_SQRT_2).unwrap() - 1.0).abs() < 1e-12);
        // period 4K
        for u in [0.3, 1.1, 2.9] {
            let d = jacobi_cn(u + 4.0 * kk, FRAC_1_SQRT_2).unwrap() - jacobi_cn(u, FRAC_1_SQRT_2).unwrap();
            assert!(d.abs() < 1e-12);
        }
    }

    #[test]
    fn imaginary_modulus() {
        assert_eq!(jacobi_sn_imag(0.0, 1.0).unwrap(), 0.0);
        let ki = elliptic_k_imag(1.0).unwrap();
        assert!((ki - k_oracle(FRAC_1_SQRT_2) / 2f64.sqrt()).abs() < 1e-14);
        assert!((ki - 1.311_028_777_146_06).abs() < 1e-12);
        assert!((2.0 * ki - 2.622_057_554_292_12).abs() < 1e-12);
        assert!(jacobi_sn_imag(2.0 * ki, 1.0).unwrap().abs() < 1e-12);
        assert!((jacobi_sn_imag(ki, 1.0).unwrap() - 1.0).abs() < 1e-12);
        // odd in u
        for u in [0.2, 0.9, 2.4] {
            let s = jacobi_sn_imag(u, 1.0).unwrap() + jacobi_sn_imag(-u, 1.0).unwrap();
            assert!(s.abs() < 1e-15);
        }
        assert!((jacobi_sn_imag(1.0, 1e-8).unwrap() - 1f64.sin()).abs() < 1e-7);
        assert!(jacobi_sn_imag(1.0, 0.0).is_err());
    }

    #[test]
    fn imaginary_modulus_identities() {
        // sn² + cn² = 1 and dn² − k² sn² = 1 for modulus i·k.
        for &k in &[0.5, 1.0, 2.0] {
            for i in 0..50 {
                let u = -4.0 + 0.17 * i as f64;
                let (sn, cn, dn) = jacobi_imag(u, k).unwrap();
                assert!((sn * sn + cn * cn - 1.0).abs() < 1e-13);
                assert!((dn * dn - k * k * sn * sn - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn signed_pow_parity_table() {
        let r = |n, d| Rational::new(n, d);
        assert!((signed_pow(-8.0, r(1, 3)).unwrap() + 2.0).abs() < 1e-15);
        assert!(signed_pow(-4.0, r(1, 2)).is_err());
        assert!((signed_pow(-2.0, r(2, 3)).unwrap() - 2f64.powf(2.0 / 3.0)).abs() < 1e-15);
        assert!((signed_pow(-2.0, r(5, 1)).unwrap() + 32.0).abs() < 1e-15);
        assert_eq!(signed_pow(0.0, r(1, 2)).unwrap(), 0.0);
        assert!(signed_pow(0.0, r(-1, 2)).is_err());
        assert!(signed_pow(0.0, r(0, 1)).is_err());
        assert_eq!(signed_pow(9.0, r(1, 2)).unwrap(), 3.0);
    }

    /// Bisection oracle for the tan fixed points.
    fn bisect(lo: f64, hi: f64) -> f64 {
        let f = |z: f64| z.sin() - z * z.cos();
        let (mut lo, mut hi) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(lo).signum() == f(mid).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn tan_fixed_point_values() {
        let z = tan_fixed_points(5);
        assert!((z[0] - 4.493_409_457_9).abs() < 1e-9);
        assert!((z[1] - 7.725_251_836_9).abs() < 1e-9);
        assert!((z[0] - bisect(PI, 1.5 * PI)).abs() < 1e-12);
        assert!((z[1] - bisect(2.0 * PI, 2.5 * PI)).abs() < 1e-12);
        for (j, w) in z.windows(2).enumerate() {
            assert!(w[0] < w[1]);
            let lo = (j + 1) as f64 * PI;
            assert!(w[0] > lo && w[0] < lo + FRAC_PI_2);
        }
        for &r in &z {
            assert!((r - r.tan()).abs() < 1e-10);
        }
    }
}
