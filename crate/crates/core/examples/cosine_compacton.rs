//! The cosine compacton u = cos²(ξ/4) of K(2,2) with κ = 3/4.

use compacton_lab::*;

fn main() -> Result<()> {
    let two = Rational::integer(2);
    let eq = EquationParams::new(1.0, 1.0, 1, two, two, 2)?;
    let wave = WaveParams::new(vec![1.0], 1.75)?;
    let p = make_profile(FamilyId::CosCompacton, &eq, &wave, Extras::default())?;

    let k = p.kinematics();
    println!("{}", p.family.formula());
    println!("alpha {:.6}  L {:.6}  p {}  sign {:?}", p.alpha, p.half_width, p.p.unwrap(), p.sign_class);
    println!("kappa {:.4}  speed {:.4}  theta {:.4}", k.kappa, k.speed, k.theta);

    for i in 0..=12 {
        let xi = -1.2 * p.half_width + 2.4 * p.half_width * i as f64 / 12.0;
        println!("{xi:>9.4} {:>10.6}", p.evaluate(xi));
    }
    // same wave seen in (t, x, y)
    println!("u(t=1, x=2, y=0.5) = {:.6}", p.evaluate_field(1.0, 2.0, &[0.5])?);
    Ok(())
}
