//! Zeros by Golub-Welsch, Gauss weights, inner bounds and the interlacing verdicts.

use even_christoffel::zeros::{stieltjes_check, StieltjesVerdict};
use even_christoffel::{bound_separation, gauss_rule, interlace_strict, pj_family, zeros_golub_welsch};
use even_christoffel::{mp_family, Scalar, TolerancePolicy};

fn main() -> even_christoffel::Result<()> {
    let prec = 256;
    let tol = TolerancePolicy::new(prec)?;
    let family = mp_family(Scalar::parse("0.5", prec)?, Scalar::parse("0.9", prec)?)?;

    let rule = gauss_rule(&family, 6)?;
    for (x, w) in rule.nodes.values.iter().zip(&rule.weights) {
        println!("node {x:>+.12}  weight {w:.12}");
    }

    let inner = zeros_golub_welsch(&family, 5)?;
    let outer = zeros_golub_welsch(&family, 6)?;
    println!("zeros of p_5 and p_6: {:?}", interlace_strict(&inner, &outer, &tol)?);

    let report = bound_separation(&family, 10)?;
    println!("n=10: x_min {:.6}, x_max {:.6}", report.x_min, report.x_max);
    for (k, b) in report.bounds.iter().enumerate() {
        println!("  B_10({k}) = {b:.8} inside: {}", report.separated[k]);
    }
    println!("  ordering as predicted: {}", report.ordering_ok);

    let symmetric = pj_family(Scalar::parse("-5.5", prec)?, Scalar::zero(prec))?;
    match stieltjes_check(&symmetric, 1, 5, &tol)? {
        StieltjesVerdict::CommonZero { zero, outer_index } => {
            println!("b = 0: common zero {zero:.3} at index {outer_index}")
        }
        other => println!("b = 0: {other:?}"),
    }
    Ok(())
}
