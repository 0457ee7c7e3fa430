//! Elliptic functions, roots of z = tan z and sign-aware rational powers.

use compacton_lab::specfun::*;
use compacton_lab::*;
use std::f64::consts::FRAC_1_SQRT_2;

fn main() -> Result<()> {
    let k = elliptic_k(FRAC_1_SQRT_2)?;
    let ki = elliptic_k_imag(1.0)?;
    println!("K(1/sqrt2) = {k:.12}");
    println!("K(i)       = {ki:.12}   first zero of sn(., i) = {:.12}", 2.0 * ki);

    for i in 0..=4 {
        let u = k * i as f64 / 4.0;
        let (sn, cn, dn) = jacobi(u, FRAC_1_SQRT_2)?;
        let (si, ci, di) = jacobi_imag(u, 1.0)?;
        println!("u {u:.4}  sn {sn:.6} cn {cn:.6} dn {dn:.6}  | imag: sn {si:.6} cn {ci:.6} dn {di:.6}");
    }

    for (j, z) in tan_fixed_points(4).iter().enumerate() {
        println!("z{} = {z:.10}  tan z - z = {:.1e}", j + 1, z.tan() - z);
    }

    for (x, r) in [(-8.0, "1/3"), (-2.0, "2/3"), (-2.0, "1/2"), (-2.0, "3")] {
        let r: Rational = r.parse()?;
        match signed_pow(x, r) {
            Ok(y) => println!("({x})^({r}) = {y:.6}"),
            Err(e) => println!("({x})^({r}): {e}"),
        }
    }
    Ok(())
}
