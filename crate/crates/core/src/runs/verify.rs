//! Randomized verification suites. Each suite draws parameter sets from a
//! seeded generator, checks one identity or property per instance, and keeps
//! the worst relative defect.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::product_verdict;
use crate::associated::AssociatedCache;
use crate::christoffel::{christoffel_transform, connection_decompose_with};
use crate::config::{FamilyChoice, RunConfig};
use crate::error::Result;
use crate::families::{mp_reflected, RecurrenceFamily};
use crate::poly::Polynomial;
use crate::report::{Report, Row, Verdict};
use crate::residual::Residual;
use crate::scalar::{Scalar, TolerancePolicy};
use crate::zeros::{
    bound_separation, gauss_rule, interlace_strict, stieltjes_check, zeros_golub_welsch, ProductVerdict,
    StieltjesVerdict,
};

/// Family kinds the suites draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Mp,
    Pj,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::Mp => "mp",
            Kind::Pj => "pj",
        }
    }
}

/// Suite names in execution order.
pub const SUITES: &[&str] = &[
    "recurrence",
    "bridging",
    "extension",
    "symmetry",
    "decomposition",
    "oracle",
    "stieltjes",
    "common-zero",
    "remark-k3",
    "gauss",
    "zeros",
    "bounds",
    "zero-symmetry",
];

/// Worst defect of one suite over all its instances.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub family: Kind,
    pub instances: usize,
    pub failures: usize,
    /// Largest relative defect seen (zero for purely boolean suites).
    pub worst: Scalar,
    pub worst_case: String,
    pub threshold: Scalar,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(suite: &'static str, family: Kind, threshold: &Scalar) -> Self {
        SuiteResult {
            suite,
            family,
            instances: 0,
            failures: 0,
            worst: Scalar::zero(threshold.prec()),
            worst_case: String::new(),
            threshold: threshold.clone(),
            first_failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }

    /// Records a relative defect for `case`.
    fn defect(&mut self, value: Scalar, case: impl Fn() -> String) {
        self.instances += 1;
        if value > self.worst || self.worst_case.is_empty() {
            self.worst = value.clone();
            self.worst_case = case();
        }
        if !(value <= self.threshold) {
            self.fail(case());
        }
    }

    /// Records a boolean outcome for `case`.
    fn check(&mut self, ok: bool, case: impl Fn() -> String) {
        self.instances += 1;
        if !ok {
            self.fail(case());
        }
    }

    fn fail(&mut self, case: String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(case);
        }
    }

    fn error(&mut self, case: String, err: crate::error::Error) {
        self.instances += 1;
        self.fail(format!("{case}: {err}"));
    }

    pub fn to_row(&self, config: &RunConfig) -> Row {
        let inputs = vec![
            ("suite".to_string(), self.suite.to_string()),
            ("family".to_string(), self.family.tag().to_string()),
            ("draws".to_string(), config.draws.to_string()),
            ("points".to_string(), config.points.to_string()),
            ("seed".to_string(), config.seed.to_string()),
        ];
        let mut row = Row::new(inputs)
            .computed("instances", self.instances.to_string())
            .computed("failures", self.failures.to_string())
            .computed("worst", self.worst.to_sci(3))
            .expected("threshold", self.threshold.to_sci(3))
            .deviation("worst_case", self.worst_case.clone());
        if let Some(f) = &self.first_failure {
            row = row.deviation("first_failure", f.clone());
        }
        row.verdict(Verdict::from_bool(self.passed()))
    }
}

/// One random family instance.
pub struct Draw {
    pub choice: FamilyChoice,
    pub family: RecurrenceFamily,
}

impl Draw {
    fn label(&self) -> String {
        self.choice.fields().iter().skip(1).map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    }
}

/// Random family valid up to degree `top`. Meixner-Pollaczek draws
/// `lambda` in (0.1, 20) and `phi` in (0.05, pi - 0.05); Pseudo-Jacobi
/// draws `b` in (-10, 10) and `a` below `-top`.
pub fn draw_family(kind: Kind, rng: &mut ChaCha8Rng, top: usize, prec: u32) -> Result<Draw> {
    let choice = match kind {
        Kind::Mp => {
            let lambda = rng.gen_range(0.1..20.0);
            let phi = rng.gen_range(0.05..std::f64::consts::PI - 0.05);
            FamilyChoice::mp(&format!("{lambda:.6}"), &format!("{phi:.6}"))
        }
        Kind::Pj => {
            let a = -(top as f64) - rng.gen_range(0.01..40.0);
            let b = rng.gen_range(-10.0..10.0);
            FamilyChoice::pj(&format!("{a:.6}"), &format!("{b:.6}"))
        }
    };
    let family = choice.build(prec)?;
    family.check_degree(top)?;
    Ok(Draw { choice, family })
}

/// Evaluation points spread over the range where `p_n` oscillates.
pub fn sample_points(family: &RecurrenceFamily, n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let prec = family.prec();
    let j = n.max(2);
    let centre = family.c(j).to_f64();
    let spread = 1.0 + 2.0 * family.lambda(j).abs().sqrt().to_f64();
    (0..count)
        .map(|_| Scalar::from_f64(centre + spread * rng.gen_range(-1.5..1.5), prec))
        .collect()
}

fn rng_for(config: &RunConfig, suite: usize, kind: Kind) -> ChaCha8Rng {
    let stream = (suite as u64) * 2 + matches!(kind, Kind::Pj) as u64;
    ChaCha8Rng::seed_from_u64(config.seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn suite_recurrence(config: &RunConfig, kind: Kind, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(2..=config.max_degree);
        let draw = match draw_family(kind, rng, n, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let ps = draw.family.generate_all(n).expect("valid degree");
        for x in sample_points(&draw.family, n, config.points, rng) {
            let r = Residual::of_terms(&[
                ps[n].eval(&x),
                -((&x - &draw.family.c(n)) * ps[n - 1].eval(&x)),
                draw.family.lambda(n) * ps[n - 2].eval(&x),
            ]);
            out.defect(r.relative(), || format!("{} n={n} x={}", draw.label(), x.to_sci(6)));
        }
    }
}

fn suite_bridging(config: &RunConfig, kind: Kind, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(2..=config.max_degree);
        let m = rng.gen_range(2..=n);
        let draw = match draw_family(kind, rng, n, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let mut cache = AssociatedCache::new(&draw.family, n).expect("valid degree");
        for x in sample_points(&draw.family, n, config.points, rng) {
            match cache.beardon(n, m, &x) {
                Ok(r) => out.defect(r.relative(), || format!("{} n={n} m={m} x={}", draw.label(), x.to_sci(6))),
                Err(e) => out.error(format!("{} n={n} m={m}", draw.label()), e),
            }
        }
    }
}

fn suite_extension(config: &RunConfig, kind: Kind, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(1..config.max_degree);
        let m = rng.gen_range(0..=config.max_degree - n);
        let draw = match draw_family(kind, rng, n + m, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let mut cache = AssociatedCache::new(&draw.family, n + m).expect("valid degree");
        for x in sample_points(&draw.family, n + m, config.points, rng) {
            match cache.extension(n, m, &x) {
                Ok(r) => out.defect(r.relative(), || format!("{} n={n} m={m} x={}", draw.label(), x.to_sci(6))),
                Err(e) => out.error(format!("{} n={n} m={m}", draw.label()), e),
            }
        }
    }
}

/// `P_n(x; phi) = (-1)^n P_n(-x; -phi)`: coefficient form on the left,
/// pointwise recurrence of the reflected family on the right.
fn suite_symmetry(config: &RunConfig, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(1..=config.max_degree);
        let draw = match draw_family(Kind::Mp, rng, n, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let p = draw.family.generate(n).expect("valid degree");
        let reflected = mp_reflected(&draw.family).expect("mp family");
        for x in sample_points(&draw.family, n, config.points, rng) {
            let mut rhs = reflected.eval_all(n, &-&x).pop().expect("nonempty");
            if n % 2 == 0 {
                rhs = -rhs;
            }
            let r = Residual::of_terms(&[p.eval(&x), rhs]);
            out.defect(r.relative(), || format!("{} n={n} x={}", draw.label(), x.to_sci(6)));
        }
    }
}

fn suite_decomposition(config: &RunConfig, kind: Kind, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(2..=config.max_degree);
        let m = rng.gen_range(2..=n.min(6));
        let k = rng.gen_range(0..=(m + 2).min(4));
        let top = n.max(n - m + 2 * k);
        let draw = match draw_family(kind, rng, top, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let case = format!("{} n={n} m={m} k={k}", draw.label());
        let dec = match draw
            .family
            .modifier(k)
            .and_then(|c| connection_decompose_with(&draw.family, &c, n, m, &config.tol).map(|d| (c, d)))
        {
            Ok(v) => v,
            Err(e) => {
                out.error(case, e);
                continue;
            }
        };
        let (modifier, dec) = dec;
        let ps = draw.family.generate_all(n).expect("valid degree");
        for x in sample_points(&draw.family, n, config.points, rng) {
            let r = Residual::of_terms(&[
                modifier.c.eval(&x) * dec.modified.eval(&x),
                -(dec.a_poly.eval(&x) * ps[n].eval(&x)),
                dec.g_poly.eval(&x) * ps[n - 1].eval(&x),
            ]);
            out.defect(r.relative(), || format!("{case} x={}", x.to_sci(6)));
        }
    }
}

/// Largest coefficient difference relative to the largest reference coefficient.
pub fn coefficient_deviation(p: &Polynomial, reference: &Polynomial) -> Scalar {
    let scale = reference.norm_inf();
    let diff = (p - reference).norm_inf();
    if scale.is_zero() {
        diff
    } else {
        diff / scale
    }
}

fn suite_oracle(config: &RunConfig, kind: Kind, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    let (ks, max_deg): (&[usize], usize) = match kind {
        Kind::Mp => (&[1, 2, 3], 10),
        Kind::Pj => (&[1], 8),
    };
    for _ in 0..config.draws {
        let top = max_deg + 2 * ks.iter().max().expect("nonempty");
        let draw = match draw_family(kind, rng, top, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        for &k in ks {
            let modifier = draw.family.even_modifier(k).expect("distinct nodes");
            let shifted = draw.family.shifted(k).expect("shift");
            for deg in 0..=max_deg {
                let case = || format!("{} k={k} deg={deg}", draw.label());
                match christoffel_transform(&draw.family, &modifier, deg) {
                    Ok(g) => {
                        let reference = shifted.generate(deg).expect("valid degree");
                        out.defect(coefficient_deviation(&g, &reference), case);
                    }
                    Err(e) => out.error(case(), e),
                }
            }
        }
    }
}

fn suite_stieltjes(config: &RunConfig, kind: Kind, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(3..=config.max_degree);
        let k = rng.gen_range(0..=2);
        let draw = match draw_family(kind, rng, n, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let case = || format!("{} n={n} k={k}", draw.label());
        match stieltjes_check(&draw.family, k, n, &config.tol) {
            Ok(v) => out.check(v.holds(), || format!("{} {v:?}", case())),
            Err(e) => out.error(case(), e),
        }
    }
}

/// Symmetric instances: Pseudo-Jacobi with `b = 0` and Meixner-Pollaczek with
/// `phi = pi/2`. Odd `n` must take the common-zero branch with the shared zero
/// `0 = B_n(k)` in the interior; even `n` the co-prime branch.
fn suite_common_zero(config: &RunConfig, kind: Kind, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    let prec = config.prec();
    for _ in 0..config.draws {
        let n = rng.gen_range(3..=config.max_degree);
        let k = rng.gen_range(0..=2);
        let family = match kind {
            Kind::Mp => {
                let lambda = Scalar::from_f64(rng.gen_range(0.1..20.0), prec);
                let phi = Scalar::pi(prec) * Scalar::pow2(-1, prec);
                RecurrenceFamily::meixner_pollaczek(lambda, phi)
            }
            Kind::Pj => {
                let a = Scalar::from_f64(-(n as f64) - rng.gen_range(0.01..40.0), prec);
                RecurrenceFamily::pseudo_jacobi(a, Scalar::zero(prec))
            }
        };
        let family = match family {
            Ok(f) => f,
            Err(e) => return out.error("draw".into(), e),
        };
        let case = || format!("{} n={n} k={k}", family.describe());
        match stieltjes_check(&family, k, n, &config.tol) {
            Ok(StieltjesVerdict::CommonZero { zero, outer_index }) => {
                let ok = n % 2 == 1 && zero.abs() <= config.tol.abs_tol && outer_index == n / 2;
                out.check(ok, || format!("{} common zero {} at {outer_index}", case(), zero.to_sci(3)));
            }
            Ok(StieltjesVerdict::CoPrime { bound }) => {
                out.check(n % 2 == 0 && bound.is_zero(), || format!("{} co-prime with B={}", case(), bound.to_sci(3)));
            }
            Ok(v) => out.check(false, || format!("{} {v:?}", case())),
            Err(e) => out.error(case(), e),
        }
    }
}

/// `k = 3`, `m = 2`: `G` is cubic and the zeros of `G g_{n-2,3}` must fail to interlace.
fn suite_remark(config: &RunConfig, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(4..=config.max_degree.min(12));
        let draw = match draw_family(Kind::Mp, rng, n + 4, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let case = || format!("{} n={n}", draw.label());
        let result = draw
            .family
            .modifier(3)
            .and_then(|c| connection_decompose_with(&draw.family, &c, n, 2, &config.tol))
            .and_then(|dec| Ok((dec.deg_g(), product_verdict(&draw.family, &dec, &config.tol)?)));
        match result {
            Ok((deg_g, verdict)) => out.check(
                deg_g == Some(3) && verdict != ProductVerdict::Interlaces,
                || format!("{} deg G={deg_g:?} {verdict:?}", case()),
            ),
            Err(e) => out.error(case(), e),
        }
    }
}

/// `max |sum_i w_i p_j(x_i) p_l(x_i)|` over `j != l`, `j + l <= 2n - 1`,
/// divided by `sqrt(h_j h_l)` when `relative`.
pub fn gauss_defect(family: &RecurrenceFamily, n: usize, relative: bool) -> Result<Scalar> {
    let rule = gauss_rule(family, n)?;
    let prec = family.prec();
    let values: Vec<Vec<Scalar>> = rule.nodes.values.iter().map(|x| family.eval_all(2 * n - 1, x)).collect();
    let inner = |j: usize, l: usize| {
        rule.weights
            .iter()
            .zip(&values)
            .fold(Scalar::zero(prec), |acc, (w, v)| acc + w * &v[j] * &v[l])
    };
    // squared norms of the monic p_j for unit total mass: lambda_2 ... lambda_{j+1}
    let h = |i: usize| (2..=i + 1).fold(Scalar::one(prec), |acc, t| acc * family.lambda(t));
    let mut worst = Scalar::zero(prec);
    for j in 0..2 * n {
        for l in 0..j {
            if j + l > 2 * n - 1 {
                continue;
            }
            let mut v = inner(j, l).abs();
            if relative {
                v = v / (h(j) * h(l)).sqrt();
            }
            worst = worst.max_of(&v);
        }
    }
    Ok(worst)
}

fn suite_gauss(config: &RunConfig, kind: Kind, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(1..=config.max_degree.min(15));
        let draw = match draw_family(kind, rng, 2 * n, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let case = || format!("{} n={n}", draw.label());
        match gauss_defect(&draw.family, n, true) {
            Ok(v) => out.defect(v, case),
            Err(e) => out.error(case(), e),
        }
    }
}

/// Newton agreement, simplicity and consecutive interlacing for `n <= 30`.
fn suite_zeros(config: &RunConfig, kind: Kind, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(2..=30);
        let draw = match draw_family(kind, rng, n, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let case = || format!("{} n={n}", draw.label());
        let outcome = (|| {
            let outer = zeros_golub_welsch(&draw.family, n)?;
            let inner = zeros_golub_welsch(&draw.family, n - 1)?;
            let p = draw.family.generate(n)?;
            let newton = outer
                .values
                .iter()
                .fold(Scalar::zero(config.prec()), |m, z| m.max_of(&(p.eval(z).abs() / p.magnitude_at(z))));
            let gap_ok = outer.min_gap().is_none_or(|g| g > config.tol.abs_tol);
            let interlaced = interlace_strict(&inner, &outer, &config.tol)?.is_strict();
            Ok::<_, crate::error::Error>((newton, gap_ok && interlaced))
        })();
        match outcome {
            Ok((newton, ok)) => {
                out.defect(newton, case);
                out.check(ok, || format!("{} simplicity or interlacing", case()));
            }
            Err(e) => out.error(case(), e),
        }
    }
}

fn suite_bounds(config: &RunConfig, kind: Kind, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(2..=30);
        let draw = match draw_family(kind, rng, n, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let case = || format!("{} n={n}", draw.label());
        match bound_separation(&draw.family, n) {
            Ok(r) => out.check(r.separated.iter().all(|&s| s) && r.ordering_ok, || format!("{} {r:?}", case())),
            Err(e) => out.error(case(), e),
        }
    }
}

/// Zeros of `mp(lambda, phi)` against the negated, reversed zeros of the
/// reflected family.
fn suite_zero_symmetry(config: &RunConfig, rng: &mut ChaCha8Rng, out: &mut SuiteResult) {
    for _ in 0..config.draws {
        let n = rng.gen_range(1..=config.max_degree);
        let draw = match draw_family(Kind::Mp, rng, n, config.prec()) {
            Ok(d) => d,
            Err(e) => return out.error("draw".into(), e),
        };
        let case = || format!("{} n={n}", draw.label());
        let outcome = (|| {
            let a = zeros_golub_welsch(&draw.family, n)?;
            let b = zeros_golub_welsch(&mp_reflected(&draw.family)?, n)?;
            let scale = a.values.iter().fold(Scalar::one(config.prec()), |m, v| m.max_of(&v.abs()));
            let worst = a
                .values
                .iter()
                .zip(b.values.iter().rev())
                .fold(Scalar::zero(config.prec()), |m, (x, y)| m.max_of(&(x + y).abs()));
            Ok::<_, crate::error::Error>(worst / scale)
        })();
        match outcome {
            Ok(v) => out.defect(v, case),
            Err(e) => out.error(case(), e),
        }
    }
}

/// Runs one suite for one family.
pub fn run_suite(name: &str, kind: Kind, config: &RunConfig) -> Option<SuiteResult> {
    let index = SUITES.iter().position(|s| *s == name)?;
    let mp_only = matches!(name, "symmetry" | "remark-k3" | "zero-symmetry");
    if mp_only && kind == Kind::Pj {
        return None;
    }
    let threshold = threshold_for(name, &config.tol);
    let mut out = SuiteResult::new(SUITES[index], kind, &threshold);
    let mut rng = rng_for(config, index, kind);
    let rng = &mut rng;
    match name {
        "recurrence" => suite_recurrence(config, kind, rng, &mut out),
        "bridging" => suite_bridging(config, kind, rng, &mut out),
        "extension" => suite_extension(config, kind, rng, &mut out),
        "symmetry" => suite_symmetry(config, rng, &mut out),
        "decomposition" => suite_decomposition(config, kind, rng, &mut out),
        "oracle" => suite_oracle(config, kind, rng, &mut out),
        "stieltjes" => suite_stieltjes(config, kind, rng, &mut out),
        "common-zero" => suite_common_zero(config, kind, rng, &mut out),
        "remark-k3" => suite_remark(config, rng, &mut out),
        "gauss" => suite_gauss(config, kind, rng, &mut out),
        "zeros" => suite_zeros(config, kind, rng, &mut out),
        "bounds" => suite_bounds(config, kind, rng, &mut out),
        "zero-symmetry" => suite_zero_symmetry(config, rng, &mut out),
        _ => unreachable!("listed in SUITES"),
    }
    Some(out)
}

fn threshold_for(_suite: &str, tol: &TolerancePolicy) -> Scalar {
    tol.rel_tol.clone()
}

/// Every suite for the configured family kind, or for both kinds.
pub fn run_suites(config: &RunConfig) -> Vec<SuiteResult> {
    let kinds: Vec<Kind> = match &config.family {
        Some(FamilyChoice::MeixnerPollaczek { .. }) => vec![Kind::Mp],
        Some(FamilyChoice::PseudoJacobi { .. }) => vec![Kind::Pj],
        None => vec![Kind::Mp, Kind::Pj],
    };
    SUITES
        .iter()
        .flat_map(|name| kinds.iter().filter_map(move |&kind| run_suite(name, kind, config)))
        .collect()
}

pub fn run_verify(config: &RunConfig) -> Result<Report> {
    if config.max_degree < 4 {
        return Err(crate::error::Error::Config("verification needs a maximum degree of at least 4".into()));
    }
    if let Some(choice) = &config.family {
        let family = choice.build(config.prec())?;
        if let Some(n) = config.n {
            family.check_degree(n)?;
        }
    }
    let mut report = Report::new("verify", config);
    report.extend(run_suites(config).iter().map(|s| s.to_row(config)));
    Ok(report)
}
