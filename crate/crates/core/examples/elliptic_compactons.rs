//! cn and sn compactons with zero κ and for m = 2n − 1.

use compacton_lab::*;

fn show(p: &Profile) {
    println!(
        "{:<12} m={:<4} n={:<4} L {:>9.5}  p {:<5} peak {:.5}  {}",
        p.family.name(),
        p.eq.m.to_string(),
        p.eq.n.to_string(),
        p.half_width,
        p.p.map(|r| r.to_string()).unwrap_or_default(),
        p.peak(),
        classify_profile(p).map(|c| c.to_string()).unwrap_or_else(|e| e.to_string())
    );
}

fn main() -> Result<()> {
    let (m, n) = (Rational::integer(3), Rational::new(3, 2));
    let eq = EquationParams::new(1.2, 0.7, 1, m, n, 2)?;
    let line = WaveParams::new(vec![1.0], 1.0)?;
    for f in [FamilyId::CnZeroKappa, FamilyId::SnZeroKappa, FamilyId::AlgZeroKappa] {
        let eq = if f == FamilyId::AlgZeroKappa { EquationParams::new(1.2, 0.7, 1, Rational::new(3, 4), n, 2)? } else { eq.clone() };
        show(&make_profile(f, &eq, &line, Extras::with_alpha(1.3))?);
    }

    // m = 2n − 1 with a lifted line
    let n = Rational::new(5, 2);
    let m = Rational::integer(2) * n - Rational::ONE;
    let eq = EquationParams::new(1.0, 1.0, 1, m, n, 2)?;
    let wave = WaveParams::new(vec![1.0], 1.8)?;
    for f in [FamilyId::CnGeneral, FamilyId::SnGeneral] {
        match make_profile(f, &eq, &wave, Extras::default()) {
            Ok(p) => show(&p),
            Err(e) => println!("{f}: {e}"),
        }
    }
    Ok(())
}
