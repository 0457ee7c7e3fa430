//! Families admitted by one set of equation and wave parameters.
//!
//! ```text
//! cargo run --example catalog
//! ```

use compacton_lab::*;

fn main() -> Result<()> {
    for f in FamilyId::ALL {
        println!("{:<16} {:?}", f.name(), f.expected_class());
    }
    println!();

    let two = Rational::integer(2);
    let eq = EquationParams::new(1.0, 1.0, 1, two, two, 2)?;
    for nu in [1.0, 1.75] {
        let wave = WaveParams::new(vec![1.0], nu)?;
        println!("nu = {nu}");
        for ad in catalog_admissible(&eq, &wave) {
            match ad.parity_obstruction {
                Some(why) => println!("  {:<14} blocked: {why}", ad.family),
                None => println!("  {:<14} extras: {}", ad.family, ad.extras),
            }
        }
    }
    Ok(())
}
