//! Boundary terms A₀..A₃ at the cutoffs: all vanish for compactons, A₁
//! survives for weak compactons.

use compacton_lab::verify::{asymptotic_limits, singular_terms};
use compacton_lab::*;

fn main() -> Result<()> {
    let two = Rational::integer(2);
    let eq = EquationParams::new(1.0, 1.0, 1, two, two, 2)?;
    for (f, nu) in [(FamilyId::CosCompacton, 1.75), (FamilyId::LinCos, 1.0), (FamilyId::LinSin, 1.0)] {
        let p = make_profile(f, &eq, &WaveParams::new(vec![1.0], nu)?, Extras::default())?;
        let st = singular_terms(&p)?;
        println!("{f}: pn {}", p.pn().unwrap());
        println!("  +L limits  {:?}", st.plus.limits);
        println!("  +L numeric {:?}", st.plus.numeric);
        println!("  -L limits  {:?}", st.minus.limits);
        println!("  vanish {}  weak pattern {}  consistent {}", st.all_vanish(), st.weak_pattern(), st.consistent());
    }

    // U ~ d^p with pn = 0.9: the first derivative term blows up
    let lim = asymptotic_limits(1.0, Rational::new(9, 20), &eq, 1.0, 1.0);
    println!("pn = 0.9: {lim:?}");
    Ok(())
}
