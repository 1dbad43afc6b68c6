//! Connection decomposition c_2k g = a p_n - G p_{n-1} and the degree law.

use even_christoffel::{connection_decompose, mp_family, theorem1_degree_law, Scalar};

fn main() -> even_christoffel::Result<()> {
    let prec = 256;
    let family = mp_family(Scalar::parse("0.5", prec)?, Scalar::parse("0.9", prec)?)?;
    let n = 8;
    println!(" m  k | deg a (law) | deg G (law) | residual");
    for m in 2..=4 {
        for k in 0..=m + 1 {
            let dec = connection_decompose(&family, &family.modifier(k)?, n, m)?;
            let law = theorem1_degree_law(k, m);
            println!(
                "{m:2} {k:2} | {:>5} ({:>2})  | {:>5} ({:>2})  | {:.2}",
                dec.deg_a().map_or("-inf".into(), |d| d.to_string()),
                law.deg_a,
                dec.deg_g().map_or("-inf".into(), |d| d.to_string()),
                law.deg_g,
                dec.residual
            );
        }
    }

    let dec = connection_decompose(&family, &family.modifier(1)?, 5, 2)?;
    if let Some(b) = &dec.b {
        println!("n=5, m=2, k=1: G is linear with root B = {b:.15}");
    }
    Ok(())
}
