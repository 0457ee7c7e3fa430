//! Pointwise classification of U ~ U₀ (L ∓ ξ)^p and the quadrature cases.

use compacton_lab::*;

fn main() -> Result<()> {
    let two = Rational::integer(2);
    let eq = EquationParams::new(1.0, 1.0, 1, two, two, 2)?;
    let wave = WaveParams::new(vec![1.0], 1.75)?;

    for p in ["1/2", "3/4", "1", "3/2", "2", "5"] {
        let p: Rational = p.parse()?;
        let rep = compacton_lab::classify::pointwise_report(p, &eq, &wave)?;
        println!("p = {p:<4} pn = {:<5} cases {:?}  -> {}", rep.pn, rep.cases, rep.class);
    }
    println!();

    for (c2, c3) in [(0.0, 0.0), (0.1, 0.0), (0.0, 0.2), (-0.1, 0.0)] {
        let rc = reduced_constants(&eq, &wave, c2, c3)?;
        let case = quadrature_case(&rc, &eq)?;
        println!(
            "C2 {c2:>5} C3 {c3:>4}: {:?}, pn {:?}, vmax {:?} -> {}",
            case.quadrature_case,
            case.pn,
            case.vmax,
            case.class()
        );
        for n in &case.notes {
            println!("    {n}");
        }
    }
    Ok(())
}
