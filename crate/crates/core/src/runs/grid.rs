use crate::christoffel::{connection_decompose_with, theorem1_degree_law, ConnectionDecomposition, CrossCheck};
use crate::config::{FamilyChoice, RunConfig};
use crate::error::Result;
use crate::families::RecurrenceFamily;
use crate::report::{Report, Row, Verdict};
use crate::scalar::TolerancePolicy;
use crate::zeros::{product_interlacing, zeros_golub_welsch, ProductVerdict};

/// Default family and degree range of the degree-law grid.
pub const GRID_FAMILY: (&str, &str) = ("0.5", "0.9");
pub const GRID_DEGREES: std::ops::RangeInclusive<usize> = 4..=12;

/// Interlacing of the zeros of `G g_{n-2,k}` with those of `p_n` (`m = 2` only).
pub fn product_verdict(
    family: &RecurrenceFamily,
    dec: &ConnectionDecomposition,
    tol: &TolerancePolicy,
) -> Result<ProductVerdict> {
    let n = dec.n;
    let outer = zeros_golub_welsch(family, n)?;
    let shifted = family.shifted(dec.k)?;
    let inner = if n > dec.m { zeros_golub_welsch(&shifted, n - dec.m)?.values } else { Vec::new() };
    product_interlacing(&dec.g_poly, &inner, &outer.values, tol)
}

fn verdict_text(v: &ProductVerdict) -> String {
    match v {
        ProductVerdict::Interlaces => "interlaces".into(),
        ProductVerdict::NonRealZeros(c) => format!("fails ({c} non-real zeros of G)"),
        ProductVerdict::CountMismatch { have, need } => format!("fails ({have} zeros against {need} gaps)"),
        ProductVerdict::NoInterlacing(detail) => format!("fails ({detail:?})"),
    }
}

/// One grid cell: measured degrees against the law and, for `m = 2`, the interlacing verdict.
pub fn grid_cell(family: &RecurrenceFamily, choice: &FamilyChoice, n: usize, m: usize, k: usize, tol: &TolerancePolicy) -> Row {
    let mut inputs = choice.fields();
    inputs.extend([("n".into(), n.to_string()), ("m".into(), m.to_string()), ("k".into(), k.to_string())]);
    let law = theorem1_degree_law(k, m);
    let mut row = Row::new(inputs);

    let outcome = family
        .modifier(k)
        .and_then(|modifier| connection_decompose_with(family, &modifier, n, m, tol));
    let dec = match outcome {
        Ok(dec) => dec,
        Err(e) => return row.computed("error", e.to_string()).verdict(Verdict::Fail),
    };
    let deg = |d: Option<usize>| d.map_or("-inf".to_string(), |d| d.to_string());
    let linear = m == 2 && dec.deg_g() == Some(1);
    let degrees_ok = dec.deg_a() == Some(law.deg_a) && dec.deg_g() == Some(law.deg_g);
    let m_minus_one_ok = k > m || dec.deg_g() == Some(m - 1);
    row = row
        .computed("deg_a", deg(dec.deg_a()))
        .computed("deg_g", deg(dec.deg_g()))
        .computed("linear_g", linear.to_string())
        .computed("cross_check", match dec.cross_check {
            CrossCheck::Agreed => "agreed",
            CrossCheck::NotUnique => "not unique",
        })
        .computed("residual", dec.residual.to_sci(3));

    let mut ok = degrees_ok && m_minus_one_ok && linear == law.linear_g;
    let mut expected_interlacing = "not asserted";
    if m == 2 {
        let verdict = product_verdict(family, &dec, tol);
        let text = match &verdict {
            Ok(v) => verdict_text(v),
            Err(e) => format!("error: {e}"),
        };
        let interlaces = matches!(verdict, Ok(ProductVerdict::Interlaces));
        if k <= 2 {
            expected_interlacing = "interlaces";
            ok &= interlaces;
        } else if k == 3 {
            expected_interlacing = "fails";
            ok &= verdict.is_ok() && !interlaces;
        }
        row = row.computed("interlacing", text);
        if let Some(b) = &dec.b {
            row = row.computed("B", b.to_sci(15));
        }
    }
    row.expected("deg_a", law.deg_a.to_string())
        .expected("deg_g", law.deg_g.to_string())
        .expected("linear_g", law.linear_g.to_string())
        .expected("interlacing", expected_interlacing)
        .verdict(Verdict::from_bool(ok))
}

/// The degree-law grid: `n` in 4..=12, `m` in 2..=n, `k` in 0..=m+2, each
/// narrowed to a single value when the config sets it.
pub fn run_grid(config: &RunConfig) -> Result<Report> {
    let choice = config.family.clone().unwrap_or_else(|| FamilyChoice::mp(GRID_FAMILY.0, GRID_FAMILY.1));
    let family = choice.build(config.prec())?;
    let degrees: Vec<usize> = match config.n {
        Some(n) => vec![n],
        None => GRID_DEGREES.collect(),
    };
    let mut report = Report::new("grid", config);
    for &n in &degrees {
        for m in (2..=n).filter(|&m| config.m.is_none_or(|want| want == m)) {
            for k in (0..=m + 2).filter(|&k| config.k.is_none_or(|want| want == k)) {
                family.check_degree(n.max(n - m + 2 * k))?;
                report.push(grid_cell(&family, &choice, n, m, k, &config.tol));
            }
        }
    }
    Ok(report)
}
