use rug::{Integer, Rational};

use super::fixtures::{fixture, flag_for, printed_tolerance, TableFamily, TableFixture};
use crate::config::{FamilyChoice, RunConfig};
use crate::error::{Error, Result};
use crate::report::{Report, Row, Verdict};
use crate::scalar::Scalar;
use crate::zeros::{family_bound, mp_bound_pochhammer, zeros_golub_welsch};

/// Exact rational value of a decimal literal such as `-5.0001`.
pub fn decimal_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int}{frac}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(text.to_string()));
    }
    let num = Integer::from_str_radix(&digits, 10).map_err(|_| Error::Parse(text.to_string()))?;
    let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
    let r = Rational::from((num, den));
    Ok(if neg { -r } else { r })
}

/// Exact Pseudo-Jacobi bound `B_n(k)` from decimal parameters.
pub fn pj_bound_exact(a: &str, b: &str, n: usize, k: usize) -> Result<Rational> {
    let a = decimal_rational(a)?;
    let b = decimal_rational(b)?;
    let n = Rational::from(n as i64);
    let one = Rational::from(1);
    let value = match k {
        0 => {
            let a_n = Rational::from(&a + &n);
            let den = Rational::from(&a_n - &one) * &a_n;
            -(a * b) / den
        }
        1 => -b / Rational::from(&a + &n),
        2 => -b / (a + one),
        _ => return Err(Error::ParameterOutOfRange(format!("k = {k} must be 0, 1 or 2"))),
    };
    Ok(value)
}

fn choice_for(table: &TableFixture, p1: &str, p2: &str) -> FamilyChoice {
    match table.family {
        TableFamily::MeixnerPollaczek => FamilyChoice::mp(p1, p2),
        TableFamily::PseudoJacobi => FamilyChoice::pj(p1, p2),
    }
}

/// Independent evaluation of a bound column, if one exists, and whether the
/// library value agrees with it to `rel_tol`.
fn independent_bound(
    choice: &FamilyChoice,
    n: usize,
    k: usize,
    computed: &Scalar,
    config: &RunConfig,
) -> Result<(Scalar, bool)> {
    let prec = config.prec();
    let reference = match choice {
        FamilyChoice::MeixnerPollaczek { lambda, phi } => {
            mp_bound_pochhammer(&Scalar::parse(lambda, prec)?, &Scalar::parse(phi, prec)?, n, k)
        }
        FamilyChoice::PseudoJacobi { a, b } => {
            let exact = pj_bound_exact(a, b, n, k)?;
            Scalar::from_rational(&exact, prec)
        }
    };
    let scale = reference.abs().max_of(&Scalar::pow2(-(prec as i32) / 4, prec));
    let ok = (computed - &reference).abs() <= &config.tol.rel_tol * &scale;
    Ok((reference, ok))
}

/// Recomputes every cell of table `id` (1, 2 or 3) and compares it with the printed value.
pub fn run_table(id: u8, config: &RunConfig) -> Result<Report> {
    let table = fixture(id).ok_or_else(|| Error::Config(format!("no table {id}; choose 1, 2 or 3")))?;
    let mut report = Report::new(&format!("table {id}"), config);
    let prec = config.prec();
    for &(p1, p2, printed_row) in table.rows {
        let choice = choice_for(table, p1, p2);
        let family = choice.build(prec)?;
        family.check_degree(table.n)?;
        let zeros = zeros_golub_welsch(&family, table.n)?;
        for (&column, &printed) in table.columns.iter().zip(printed_row) {
            let (value, bound_k) = match column {
                "x_min" => (zeros.min().expect("n >= 1").clone(), None),
                "x_max" => (zeros.max().expect("n >= 1").clone(), None),
                b => {
                    let k: usize = b[1..].parse().expect("bound column");
                    (family_bound(&family, table.n, k)?, Some(k))
                }
            };
            let expected = Scalar::parse(printed, prec)?;
            let deviation = (&value - &expected).abs();
            let tolerance = printed_tolerance(printed);
            let within = deviation <= tolerance;

            let mut inputs = vec![("table".to_string(), id.to_string())];
            inputs.extend(choice.fields());
            inputs.push(("n".into(), table.n.to_string()));
            inputs.push(("quantity".into(), column.to_string()));
            let mut row = Row::new(inputs)
                .computed("value", value.to_fixed(12))
                .expected("printed", printed)
                .expected("tolerance", format!("{tolerance:e}"));

            let mut independent_ok = true;
            if let Some(k) = bound_k {
                let (reference, ok) = independent_bound(&choice, table.n, k, &value, config)?;
                independent_ok = ok;
                row = row.computed("independent", reference.to_fixed(12));
            }
            row = row.deviation("abs", deviation.to_sci(3));
            let verdict = match flag_for(id, (p1, p2), column) {
                Some(flag) => {
                    row = row.deviation("note", flag.note);
                    if independent_ok {
                        Verdict::Flagged
                    } else {
                        Verdict::Fail
                    }
                }
                None => Verdict::from_bool(within && independent_ok),
            };
            report.push(row.verdict(verdict));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(decimal_rational("-5.0001").unwrap(), Rational::from((-50001, 10000)));
        assert_eq!(decimal_rational("8").unwrap(), Rational::from(8));
        assert!(decimal_rational("1e3").is_err());
    }

    #[test]
    fn exact_pj_bounds() {
        assert_eq!(pj_bound_exact("-10", "8", 5, 0).unwrap(), Rational::from((80, 30)));
        assert_eq!(pj_bound_exact("-10", "8", 5, 1).unwrap(), Rational::from((8, 5)));
        assert_eq!(pj_bound_exact("-55", "5", 25, 2).unwrap(), Rational::from((5, 54)));
        assert_eq!(pj_bound_exact("-35", "1", 25, 0).unwrap(), Rational::from((35, 110)));
    }
}
