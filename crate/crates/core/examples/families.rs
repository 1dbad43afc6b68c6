//! Recurrence coefficients and the first few monic polynomials of both families.

use even_christoffel::{mp_family, pj_family, Scalar};

fn main() -> even_christoffel::Result<()> {
    let prec = 256;
    let mp = mp_family(Scalar::parse("0.5", prec)?, Scalar::parse("0.9", prec)?)?;
    let pj = pj_family(Scalar::parse("-10", prec)?, Scalar::parse("8", prec)?)?;

    for family in [&mp, &pj] {
        println!("{}", family.describe());
        for n in 1..=4 {
            println!("  C_{n} = {:.12}   lambda_{n} = {:.12}", family.c(n), family.lambda(n));
        }
        let p3 = family.generate(3)?;
        let coeffs: Vec<String> = p3.coeffs().iter().map(|c| c.to_fixed(8)).collect();
        println!("  p_3 coefficients (ascending): [{}]", coeffs.join(", "));
    }

    // a = -10 only supports degrees below 10
    match pj.check_degree(10) {
        Ok(()) => println!("degree 10 accepted"),
        Err(e) => println!("degree 10 rejected: {e}"),
    }
    Ok(())
}
