//! Truncated Taylor series ("jets") for exact low-order derivatives.
//!
//! A [`Jet`] stores `f(x₀+h) = Σ c_k h^k` for `k ≤ 4`, so derivatives up to
//! the fourth are available as `k!·c_k`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::rational::Rational;
use crate::specfun::signed_pow;

pub const ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [f64; ORDER]);

const FACT: [f64; ORDER] = [1.0, 1.0, 2.0, 6.0, 24.0];

impl Jet {
    pub fn constant(c: f64) -> Self {
        let mut j = [0.0; ORDER];
        j[0] = c;
        Jet(j)
    }

    /// The independent variable at `x0`.
    pub fn var(x0: f64) -> Self {
        let mut j = [0.0; ORDER];
        j[0] = x0;
        j[1] = 1.0;
        Jet(j)
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// `k`-th derivative.
    pub fn d(&self, k: usize) -> f64 {
        self.0[k] * FACT[k]
    }

    pub fn scale(self, s: f64) -> Self {
        Jet(self.0.map(|c| c * s))
    }

    /// `Σ series[k]·(self − self₀)^k`, i.e. an outer function given by its
    /// Taylor coefficients at `self₀`.
    pub fn compose(self, series: [f64; ORDER]) -> Self {
        let mut h = self;
        h.0[0] = 0.0;
        let mut out = Jet::constant(series[0]);
        let mut pow = Jet::constant(1.0);
        for &s in series.iter().skip(1) {
            pow = pow * h;
            out = out + pow.scale(s);
        }
        out
    }

    pub fn recip(self) -> Self {
        let a = self.0;
        let mut r = [0.0; ORDER];
        r[0] = 1.0 / a[0];
        for k in 1..ORDER {
            let s: f64 = (1..=k).map(|j| a[j] * r[k - j]).sum();
            r[k] = -s / a[0];
        }
        Jet(r)
    }

    pub fn exp(self) -> Self {
        let e = self.0[0].exp();
        self.compose([e, e, e / 2.0, e / 6.0, e / 24.0])
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.0[0].sin_cos();
        self.compose([s, c, -s / 2.0, -c / 6.0, s / 24.0])
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.0[0].sin_cos();
        self.compose([c, -s, -c / 2.0, s / 6.0, c / 24.0])
    }

    /// `f^r` with real `r`; requires `f₀ ≠ 0` unless `r` is a
    /// non-negative integer small enough to expand by multiplication.
    pub fn powr(self, r: Rational) -> Result<Self> {
        let a = self.0;
        if r.is_integer() && (0..=8).contains(&r.numer()) {
            let mut out = Jet::constant(1.0);
            for _ in 0..r.numer() {
                out = out * self;
            }
            return Ok(out);
        }
        let rv = r.value();
        let mut g = [0.0; ORDER];
        g[0] = signed_pow(a[0], r)?;
        for k in 1..ORDER {
            let s: f64 = (1..=k)
                .map(|j| (rv * j as f64 - (k - j) as f64) * a[j] * g[k - j])
                .sum();
            g[k] = s / (k as f64 * a[0]);
        }
        Ok(Jet(g))
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut r = self.0;
        for (x, y) in r.iter_mut().zip(o.0) {
            *x += y;
        }
        Jet(r)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut r = [0.0; ORDER];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in o.0.iter().enumerate().take(ORDER - i) {
                r[i + j] += x * y;
            }
        }
        Jet(r)
    }
}

/// Taylor coefficients of `(sn, cn, dn)(u₀ + h, k)` from the system
/// `sn' = cn dn`, `cn' = −sn dn`, `dn' = −k² sn cn`.
pub fn jacobi_series(sn: f64, cn: f64, dn: f64, k: f64) -> [[f64; ORDER]; 3] {
    let mut s = [0.0; ORDER];
    let mut c = [0.0; ORDER];
    let mut d = [0.0; ORDER];
    s[0] = sn;
    c[0] = cn;
    d[0] = dn;
    let k2 = k * k;
    for j in 0..ORDER - 1 {
        let conv = |x: &[f64; ORDER], y: &[f64; ORDER]| (0..=j).map(|i| x[i] * y[j - i]).sum::<f64>();
        let cd = conv(&c, &d);
        let sd = conv(&s, &d);
        let sc = conv(&s, &c);
        let n = (j + 1) as f64;
        s[j + 1] = cd / n;
        c[j + 1] = -sd / n;
        d[j + 1] = -k2 * sc / n;
    }
    [s, c, d]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_exp_of_square() {
        // f = exp(x²) at x = 0.5
        let x = Jet::var(0.5);
        let f = (x * x).exp();
        let e = 0.25f64.exp();
        assert!((f.d(0) - e).abs() < 1e-15);
        assert!((f.d(1) - e).abs() < 1e-14);
        assert!((f.d(2) - 3.0 * e).abs() < 1e-14);
        assert!((f.d(3) - 7.0 * e).abs() < 1e-13);
        assert!((f.d(4) - 25.0 * e).abs() < 1e-12);
    }

    #[test]
    fn reciprocal_and_powers() {
        let x = Jet::var(2.0);
        let r = x.recip();
        assert!((r.d(3) + 6.0 / 16.0).abs() < 1e-15);
        let p = x.powr(Rational::new(3, 2)).unwrap();
        assert!((p.d(2) - 0.75 / 2f64.sqrt()).abs() < 1e-14);
        // odd root of a negative base keeps its sign
        let y = Jet::var(-8.0).powr(Rational::new(1, 3)).unwrap();
        assert!((y.value() + 2.0).abs() < 1e-15);
        assert!((y.d(1) - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn trig_derivatives() {
        let s = Jet::var(0.3).scale(2.0).sin();
        assert!((s.d(4) - 16.0 * 0.6f64.sin()).abs() < 1e-13);
        let c = Jet::var(0.3).cos();
        assert!((c.d(3) - 0.3f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn jacobi_series_at_zero() {
        // sn = u − (1+k²)u³/6 + …
        let k: f64 = 0.6;
        let [s, c, d] = jacobi_series(0.0, 1.0, 1.0, k);
        assert_eq!(s[1], 1.0);
        assert!((s[3] + (1.0 + k * k) / 6.0).abs() < 1e-15);
        assert!((c[2] + 0.5).abs() < 1e-15);
        assert!((d[2] + k * k / 2.0).abs() < 1e-15);
    }
}
