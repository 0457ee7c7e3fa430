//! Full verification suite on a strong and a weak compacton.

use compacton_lab::verify::{run_suite, SuiteOptions};
use compacton_lab::*;

fn main() -> Result<()> {
    let two = Rational::integer(2);
    let eq = EquationParams::new(1.0, 1.0, 1, two, two, 2)?;
    let cases = [(FamilyId::CosCompacton, 1.75), (FamilyId::LinCos, 1.0)];
    for (f, nu) in cases {
        let p = make_profile(f, &eq, &WaveParams::new(vec![1.0], nu)?, Extras::default())?;
        let rep = run_suite(&p, &SuiteOptions::default())?;
        println!("{f} ({})", classify_profile(&p)?);
        for e in &rep.entries {
            println!("  {} {:<40} {:.2e} <= {:.1e}", if e.pass { "ok  " } else { "FAIL" }, e.check_name, e.measured, e.tolerance);
        }
    }
    Ok(())
}
