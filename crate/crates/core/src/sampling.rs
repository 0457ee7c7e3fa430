//! Random valid parameter draws for each family.

use rand::Rng;

use crate::error::{Error, Result};
use crate::families::{make_profile, Extras, FamilyId, Profile};
use crate::params::{EquationParams, WaveParams};
use crate::rational::Rational;

/// Random rational in `(lo, hi)`, other than 1, with denominator at most
/// `max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, lo: f64, hi: f64, max_den: i64) -> Rational {
    loop {
        let den = rng.gen_range(1..=max_den);
        let a = (lo * den as f64).floor() as i64 + 1;
        let b = (hi * den as f64).ceil() as i64 - 1;
        if a > b {
            continue;
        }
        let r = Rational::new(rng.gen_range(a..=b), den);
        // unit powers fall outside the cutoff analysis
        if r.value() > lo && r.value() < hi && r != Rational::ONE {
            return r;
        }
    }
}

fn signed<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let v = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Powers `(m, n)` drawn from the family's structural relation.
fn powers<R: Rng>(family: FamilyId, rng: &mut R) -> (Rational, Rational) {
    use FamilyId::*;
    let one = Rational::ONE;
    let two = Rational::integer(2);
    match family {
        LinCos | LinSin | LinMixed => {
            let n = random_rational(rng, 0.15, 4.0, 7);
            (n, n)
        }
        CosCompacton | SinCompacton => {
            let n = random_rational(rng, 1.0, 3.0, 7);
            (n, n)
        }
        CnZeroKappa | SnZeroKappa => {
            let n = random_rational(rng, 0.15, 4.0, 7);
            (two * n, n)
        }
        AlgZeroKappa => {
            let n = random_rational(rng, 0.15, 4.0, 7);
            (n / two, n)
        }
        CnGeneral | SnGeneral => {
            let n = random_rational(rng, 1.0, 3.0, 7);
            (two * n - one, n)
        }
        CnNegB | SnNegB => {
            let n = random_rational(rng, 0.5, 1.0, 7);
            (two * n - one, n)
        }
        AlgGeneral => {
            let n = random_rational(rng, 1.0, 3.0, 7);
            ((n + one) / two, n)
        }
        AlgNonconvex => {
            let n = random_rational(rng, 1.0, 2.0, 7);
            (two - n, n)
        }
        SolitarySech => (random_rational(rng, 1.0, 4.0, 5), one),
        HeavyTailHi => {
            let m = random_rational(rng, 1.0, 2.0, 7);
            (m, two - m)
        }
        SolitarySechSub => {
            let m = random_rational(rng, 0.0, 1.0, 7);
            (m, m)
        }
        HeavyTailSub => {
            let m = random_rational(rng, 0.5, 1.0, 7);
            (m, two * m - one)
        }
    }
}

fn zero_kappa(family: FamilyId) -> bool {
    use FamilyId::*;
    matches!(family, LinCos | LinSin | LinMixed | CnZeroKappa | SnZeroKappa | AlgZeroKappa)
}

/// One attempt at a random instance; may fail validation.
pub fn try_random_instance<R: Rng>(family: FamilyId, rng: &mut R) -> Result<Profile> {
    let (m, n) = powers(family, rng);
    if !family.is_solitary() && (m == Rational::ONE || n == Rational::ONE) {
        return Err(Error::Domain("unit power".into()));
    }
    let dim = rng.gen_range(1..=3usize);
    let s = if dim == 1 && rng.gen_bool(0.5) { 0 } else if rng.gen_bool(0.5) { 1 } else { -1 };
    let eq = EquationParams::new(signed(rng, 0.5, 2.0), signed(rng, 0.5, 2.0), s, m, n, dim)?;
    let mu: Vec<f64> = (1..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let kappa = if zero_kappa(family) { 0.0 } else { signed(rng, 0.3, 2.0) };
    let nu = kappa + s as f64 * mu.iter().map(|m| m * m).sum::<f64>();
    let wave = WaveParams::new(mu, nu)?;
    let mut extras = Extras::default();
    match family {
        FamilyId::LinCos | FamilyId::LinSin => extras.alpha = Some(rng.gen_range(0.5..2.0)),
        FamilyId::LinMixed => {
            extras.alpha = Some(rng.gen_range(0.5..2.0));
            extras.root_index = Some(rng.gen_range(1..=3));
            extras.phase_sign = Some(if rng.gen_bool(0.5) { 1 } else { -1 });
        }
        FamilyId::CnZeroKappa | FamilyId::SnZeroKappa | FamilyId::AlgZeroKappa => {
            extras.alpha = Some(signed(rng, 0.5, 2.0))
        }
        _ => {}
    }
    make_profile(family, &eq, &wave, extras)
}

/// A random valid instance of `family`, by rejection.
pub fn random_instance<R: Rng>(family: FamilyId, rng: &mut R) -> Result<Profile> {
    let mut last = None;
    for _ in 0..20_000 {
        match try_random_instance(family, rng) {
            Ok(p) => return Ok(p),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Validity(format!("no valid draw for {family}"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_family_has_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in FamilyId::ALL {
            let p = random_instance(f, &mut rng).unwrap();
            assert_eq!(p.family, f);
        }
    }
}
