//! Weak compactons on the line κ = 0, including the mixed family built on
//! the roots of z = tan z.

use compacton_lab::specfun::tan_fixed_points;
use compacton_lab::*;

fn main() -> Result<()> {
    let three = Rational::integer(3);
    let eq = EquationParams::new(2.0, 0.5, 1, three, three, 2)?;
    let wave = WaveParams::new(vec![0.5], 0.25)?;

    for f in [FamilyId::LinCos, FamilyId::LinSin] {
        let p = make_profile(f, &eq, &wave, Extras::with_alpha(1.0))?;
        println!("{f:<8} L {:.6}  C2 {:.6}  class {}", p.half_width, p.c2, classify_profile(&p)?);
    }

    let roots = tan_fixed_points(3);
    for j in 1..=3 {
        let mut ex = Extras::with_alpha(1.0);
        ex.root_index = Some(j);
        let p = make_profile(FamilyId::LinMixed, &eq, &wave, ex)?;
        let nodes: Vec<String> = p.nodes().iter().map(|x| format!("{x:.4}")).collect();
        println!(
            "LinMixed z{j} = {:.10}  L {:.6}  C1 {:.4}  nodes [{}]",
            roots[j - 1],
            p.half_width,
            p.c1,
            nodes.join(", ")
        );
    }

    // even n has no real sign-changing root
    let two = Rational::integer(2);
    let eq2 = EquationParams::new(1.0, 1.0, 1, two, two, 2)?;
    let w2 = WaveParams::new(vec![1.0], 1.0)?;
    if let Err(e) = make_profile(FamilyId::LinMixed, &eq2, &w2, Extras::default()) {
        println!("n = 2: {e}");
    }
    Ok(())
}
