//! Draw random valid instances of every family and run the whole suite.
//! Weak compactons are expected to fail only `weakform4`.
//!
//! ```text
//! cargo run --release --example random_sweep -- 5
//! ```

use compacton_lab::sampling::random_instance;
use compacton_lab::verify::{run_suite, SuiteOptions};
use compacton_lab::*;
use rand::SeedableRng;

fn main() -> Result<()> {
    let draws: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for f in FamilyId::ALL {
        let mut failed: Vec<String> = vec![];
        for _ in 0..draws {
            let p = random_instance(f, &mut rng)?;
            let rep = run_suite(&p, &SuiteOptions::default())?;
            failed.extend(rep.entries.iter().filter(|e| !e.pass).map(|e| e.check_name.clone()));
        }
        failed.sort();
        failed.dedup();
        println!("{:<16} {:<14} failing: {}", f.name(), format!("{:?}", f.expected_class()), if failed.is_empty() { "-".into() } else { failed.join(",") });
    }
    Ok(())
}
