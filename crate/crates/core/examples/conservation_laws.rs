//! Conserved densities along travelling waves: first integrals and the
//! divergence identity at random space-time points.

use compacton_lab::verify::{divergence_check, first_integral_check, ConsLawId};
use compacton_lab::*;

fn main() -> Result<()> {
    let two = Rational::integer(2);
    let eq = EquationParams::new(1.0, 1.0, 1, two, two, 3)?;
    let profiles = [
        make_profile(FamilyId::LinCos, &eq, &WaveParams::new(vec![0.6, 0.8], 1.0)?, Extras::default())?,
        make_profile(FamilyId::CosCompacton, &eq, &WaveParams::new(vec![0.6, 0.8], 1.75)?, Extras::default())?,
    ];
    for p in &profiles {
        println!("{}", p.family);
        for law in ConsLawId::ALL {
            match first_integral_check(p, law, 401) {
                Ok(fi) => {
                    let dv = divergence_check(p, law, 100, 0)?;
                    println!("  {law:<18} first integral {fi:.2e}  divergence {dv:.2e}");
                }
                Err(e) => println!("  {law:<18} {e}"),
            }
        }
    }
    Ok(())
}
