//! The Christoffel determinant against the parameter-shifted family.

use even_christoffel::christoffel_transform;
use even_christoffel::{mp_family, pj_family, Scalar};

fn main() -> even_christoffel::Result<()> {
    let prec = 256;
    let mp = mp_family(Scalar::parse("0.7", prec)?, Scalar::parse("2.1", prec)?)?;
    let pj = pj_family(Scalar::parse("-20.5", prec)?, Scalar::parse("1", prec)?)?;

    for (family, ks) in [(&mp, &[1usize, 2, 3][..]), (&pj, &[1][..])] {
        println!("{}", family.describe());
        for &k in ks {
            let modifier = family.even_modifier(k)?;
            let shifted = family.shifted(k)?;
            for deg in [2, 5, 8] {
                let g = christoffel_transform(family, &modifier, deg)?;
                let reference = shifted.generate(deg)?;
                let dev = (&g - &reference).norm_inf() / reference.norm_inf();
                println!("  k={k} deg={deg}: max coefficient deviation {dev:.3}");
            }
        }
    }

    // (1+x^2)^2 has repeated nodes; the determinant route refuses it
    match pj.even_modifier(2) {
        Ok(_) => println!("unexpected: distinct nodes"),
        Err(e) => println!("pj k=2: {e}"),
    }
    Ok(())
}
