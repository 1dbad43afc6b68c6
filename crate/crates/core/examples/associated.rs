//! Associated polynomials and the two identities linking them to the family.

use even_christoffel::associated::{associated, beardon_residual, extension_residual};
use even_christoffel::{mp_family, Scalar};

fn main() -> even_christoffel::Result<()> {
    let prec = 256;
    let family = mp_family(Scalar::parse("1.25", prec)?, Scalar::parse("1.1", prec)?)?;
    let x = Scalar::parse("0.3", prec)?;

    for m in 0..=3 {
        println!("S_{m}^(8) at x = 0.3: {:.15}", associated(&family, 8, m)?.eval(&x));
    }
    for (n, m) in [(6, 2), (10, 5), (12, 12)] {
        println!("bridging   n={n:2} m={m:2}: residual {:.3}", beardon_residual(&family, n, m, &x)?);
    }
    for (n, m) in [(1, 3), (5, 5), (9, 7)] {
        println!("extension  n={n:2} m={m:2}: residual {:.3}", extension_residual(&family, n, m, &x)?);
    }
    Ok(())
}
