//! Log-log fits of |U| against the distance to the cutoff.

use compacton_lab::sampling::random_instance;
use compacton_lab::verify::estimate_cutoff_power;
use compacton_lab::*;
use rand::SeedableRng;

fn main() -> Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for f in FamilyId::ALL.into_iter().filter(|f| !f.is_solitary()) {
        let p = random_instance(f, &mut rng)?;
        let fit = estimate_cutoff_power(&p)?;
        let exact = p.p.unwrap();
        println!("{:<14} p {:<6} fitted {:.5}  r² {:.8}", f.name(), exact.to_string(), fit.slope, fit.r_squared);
    }
    Ok(())
}
