//! Weak-form residuals for bumps inside the support and across the cutoff.

use compacton_lab::verify::{straddling_tests, weak_form_single, TestFunction, WeakOrder};
use compacton_lab::*;

fn main() -> Result<()> {
    let two = Rational::integer(2);
    let eq = EquationParams::new(1.0, 1.0, 1, two, two, 2)?;
    let weak = make_profile(FamilyId::LinCos, &eq, &WaveParams::new(vec![1.0], 1.0)?, Extras::default())?;
    let strong = make_profile(FamilyId::CosCompacton, &eq, &WaveParams::new(vec![1.0], 1.75)?, Extras::default())?;

    for p in [&strong, &weak] {
        let l = p.half_width;
        let mut tests = vec![TestFunction::bump(0.0, 0.5 * l), TestFunction::bump(0.6 * l, 0.3 * l)];
        tests.extend(straddling_tests(p));
        println!("{} (L = {l:.4})", p.family);
        for t in &tests {
            let (lo, hi) = t.support();
            let w2 = weak_form_single(p, t, WeakOrder::Second)?;
            let w4 = weak_form_single(p, t, WeakOrder::Fourth)?;
            println!("  supp [{lo:>7.3}, {hi:>7.3}]  second {w2:.2e}  fourth {w4:.2e}");
        }
    }
    Ok(())
}
