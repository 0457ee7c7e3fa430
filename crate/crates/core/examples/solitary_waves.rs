//! Solitary and heavy-tail waves, with the first-order ODE solved by
//! quadrature alongside the closed forms.

use compacton_lab::families::equation_for_solitary;
use compacton_lab::quadrature::solitary_profile;
use compacton_lab::verify::estimate_decay_exponent;
use compacton_lab::*;

fn main() -> Result<()> {
    // heavy tail, m = 9/5, A = 1/2, B = 2
    let m = Rational::new(9, 5);
    let n = Rational::integer(2) - m;
    let (eq, w) = equation_for_solitary(0.5, 2.0, m, n)?;
    let heavy = make_profile(FamilyId::HeavyTailHi, &eq, &w, Extras::default())?;
    let fit = estimate_decay_exponent(&heavy, 1e2, 1e4)?;
    println!("HeavyTailHi U(0) {:.10}  4^(5/4) {:.10}", heavy.evaluate(0.0), 4f64.powf(1.25));
    println!("  decay exponent {:.5} (2/(m-1) = 2.5)", fit.slope);

    let num = solitary_profile(0.5, 2.0, m, n, 8.0, 161)?;
    let worst = (0..=80).map(|i| 0.1 * i as f64).map(|x| (num.evaluate(x) - heavy.evaluate(x)).abs()).fold(0.0, f64::max);
    println!("  quadrature vs closed form: {worst:.2e}");

    // sub-linear sech, m = n = 1/3, A = −3/2, B = −1
    let m = Rational::new(1, 3);
    let (eq, w) = equation_for_solitary(-1.5, -1.0, m, m)?;
    let sub = make_profile(FamilyId::SolitarySechSub, &eq, &w, Extras::default())?;
    println!("SolitarySechSub U(0) {:.12}  |A/B|^(3/2) {:.12}", sub.evaluate(0.0), 1.5f64.powf(1.5));

    for x in [0.0, 1.0, 2.0, 4.0, 8.0] {
        println!("{x:>5} {:>12.6e} {:>12.6e}", heavy.evaluate(x), sub.evaluate(x));
    }
    Ok(())
}
