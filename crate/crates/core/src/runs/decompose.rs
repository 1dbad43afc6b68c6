use crate::christoffel::{connection_decompose_with, theorem1_degree_law, CrossCheck, ModifiedRoute};
use crate::config::RunConfig;
use crate::error::Result;
use crate::poly::Polynomial;
use crate::report::{Report, Row, Verdict};

fn coeff_list(p: &Polynomial) -> String {
    p.coeffs().iter().map(|c| c.to_sci(15)).collect::<Vec<_>>().join(" ")
}

/// Decomposes `c_2k g_{n-m,k} = a p_n - G p_{n-1}` for the configured family and indices.
pub fn run_decompose(config: &RunConfig) -> Result<Report> {
    let choice = config
        .family
        .clone()
        .ok_or_else(|| crate::error::Error::Config("--decompose needs --family".into()))?;
    let family = choice.build(config.prec())?;
    let n = config.require(config.n, "n")?;
    let m = config.require(config.m, "m")?;
    let k = config.require(config.k, "k")?;
    family.check_degree(n.max((n + 2 * k).saturating_sub(m)))?;
    let modifier = family.modifier(k)?;
    let dec = connection_decompose_with(&family, &modifier, n, m, &config.tol)?;
    let law = theorem1_degree_law(k, m);

    let mut inputs = choice.fields();
    inputs.extend([("n".into(), n.to_string()), ("m".into(), m.to_string()), ("k".into(), k.to_string())]);
    let deg = |d: Option<usize>| d.map_or("-inf".to_string(), |d| d.to_string());
    let ok = dec.deg_a() == Some(law.deg_a) && dec.deg_g() == Some(law.deg_g) && dec.residual <= config.tol.rel_tol;
    let mut row = Row::new(inputs)
        .computed("deg_a", deg(dec.deg_a()))
        .computed("deg_g", deg(dec.deg_g()))
        .computed("a_coeffs", coeff_list(&dec.a_poly))
        .computed("g_coeffs", coeff_list(&dec.g_poly))
        .computed("modifier_coeffs", coeff_list(&modifier.c))
        .computed("expansion", dec.work.iter().map(|d| d.to_sci(15)).collect::<Vec<_>>().join(" "))
        .computed("scale", dec.scale.to_sci(15))
        .computed("B", dec.b.as_ref().map_or(String::new(), |b| b.to_sci(15)))
        .computed("route", match dec.route {
            ModifiedRoute::Determinant => "determinant",
            ModifiedRoute::ParameterShift => "parameter shift",
        })
        .computed("cross_check", match dec.cross_check {
            CrossCheck::Agreed => "agreed",
            CrossCheck::NotUnique => "not unique",
        })
        .expected("deg_a", law.deg_a.to_string())
        .expected("deg_g", law.deg_g.to_string())
        .expected("linear_g", law.linear_g.to_string())
        .deviation("residual", dec.residual.to_sci(3));
    row = row.verdict(Verdict::from_bool(ok));
    let mut report = Report::new("decompose", config);
    report.push(row);
    Ok(report)
}
