//! Rebuild compactons from ∫ dV/√Φ(V) and compare with the closed forms.

use compacton_lab::quadrature::{half_width, invert_profile};
use compacton_lab::*;

fn main() -> Result<()> {
    let two = Rational::integer(2);
    let eq = EquationParams::new(1.0, 1.0, 1, two, two, 2)?;
    let wave = WaveParams::new(vec![1.0], 1.75)?;
    let cos = make_profile(FamilyId::CosCompacton, &eq, &wave, Extras::default())?;

    let eq2 = EquationParams::new(1.2, 0.7, 1, Rational::integer(3), Rational::new(3, 2), 2)?;
    let line = WaveParams::new(vec![1.0], 1.0)?;
    let cn = make_profile(FamilyId::CnZeroKappa, &eq2, &line, Extras::with_alpha(1.3))?;

    for p in [&cos, &cn] {
        let spec = PotentialSpec::from_profile(p)?;
        let hw = half_width(&spec)?;
        let num = invert_profile(&spec, 400)?;
        println!(
            "{:<12} E {:.3} C {:.3} B {:.3} A {:.3}",
            p.family.name(),
            spec.rc.e,
            spec.rc.c,
            spec.rc.b,
            spec.rc.a
        );
        println!(
            "  vmax {:.10}  L {:.12} (closed {:.12})  sup|dev| {:.2e}",
            hw.vmax,
            hw.value,
            p.half_width,
            num.sup_deviation(p)
        );
    }

    // E ≠ 0 still gives a finite width, but no compacton
    let spec = PotentialSpec::from_coefficients(1.0, 0.0, 0.0, 1.0, two, two);
    let hw = half_width(&spec)?;
    println!("E = 1: L {:.10} (pi/2 = {:.10}), flagged {}", hw.value, std::f64::consts::FRAC_PI_2, hw.e_nonzero);
    Ok(())
}
