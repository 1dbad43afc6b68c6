//! Run configuration shared by the CLI, the examples and the acceptance suite.

use crate::error::{Error, Result};
use crate::families::{mp_family, pj_family, RecurrenceFamily};
use crate::scalar::{Scalar, TolerancePolicy, DEFAULT_PRECISION};

/// Environment variable that overrides the default working precision.
pub const PRECISION_ENV: &str = "CHRISTOFFEL_PRECISION_BITS";

/// Family parameters kept as the decimal strings the user typed, so they can
/// be re-parsed exactly at any precision and echoed verbatim in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyChoice {
    MeixnerPollaczek { lambda: String, phi: String },
    PseudoJacobi { a: String, b: String },
}

impl FamilyChoice {
    pub fn mp(lambda: &str, phi: &str) -> Self {
        FamilyChoice::MeixnerPollaczek { lambda: lambda.into(), phi: phi.into() }
    }

    pub fn pj(a: &str, b: &str) -> Self {
        FamilyChoice::PseudoJacobi { a: a.into(), b: b.into() }
    }

    /// Builds the family at `prec` bits.
    pub fn build(&self, prec: u32) -> Result<RecurrenceFamily> {
        match self {
            FamilyChoice::MeixnerPollaczek { lambda, phi } => {
                mp_family(Scalar::parse(lambda, prec)?, Scalar::parse(phi, prec)?)
            }
            FamilyChoice::PseudoJacobi { a, b } => pj_family(Scalar::parse(a, prec)?, Scalar::parse(b, prec)?),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilyChoice::MeixnerPollaczek { .. } => "mp",
            FamilyChoice::PseudoJacobi { .. } => "pj",
        }
    }

    /// Ordered `(name, value)` pairs for report inputs.
    pub fn fields(&self) -> Vec<(String, String)> {
        let pairs = match self {
            FamilyChoice::MeixnerPollaczek { lambda, phi } => [("lambda", lambda), ("phi", phi)],
            FamilyChoice::PseudoJacobi { a, b } => [("a", a), ("b", b)],
        };
        std::iter::once(("family".to_string(), self.tag().to_string()))
            .chain(pairs.into_iter().map(|(k, v)| (k.to_string(), v.clone())))
            .collect()
    }
}

/// Everything a run needs besides the command itself.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub family: Option<FamilyChoice>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub tol: TolerancePolicy,
    pub seed: u64,
    /// Random parameter draws per family in the verification suites.
    pub draws: usize,
    /// Random evaluation points per instance.
    pub points: usize,
    /// Largest degree used by the random suites.
    pub max_degree: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: None,
            n: None,
            m: None,
            k: None,
            tol: TolerancePolicy::default(),
            seed: 20240601,
            draws: 50,
            points: 10,
            max_degree: 20,
        }
    }
}

impl RunConfig {
    /// Default configuration at `bits` of precision.
    pub fn with_precision(bits: u32) -> Result<Self> {
        Ok(RunConfig { tol: TolerancePolicy::new(bits)?, ..RunConfig::default() })
    }

    pub fn prec(&self) -> u32 {
        self.tol.prec()
    }

    /// The configured family, or an error naming the missing flag.
    pub fn family(&self) -> Result<RecurrenceFamily> {
        self.family
            .as_ref()
            .ok_or_else(|| Error::Config("a family is required (--family mp|pj)".into()))?
            .build(self.prec())
    }

    pub fn require(&self, value: Option<usize>, flag: &str) -> Result<usize> {
        value.ok_or_else(|| Error::Config(format!("--{flag} is required for this command")))
    }
}

/// Precision from `CHRISTOFFEL_PRECISION_BITS`, falling back to the default.
pub fn precision_from_env() -> Result<u32> {
    match std::env::var(PRECISION_ENV) {
        Ok(text) => text
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::Config(format!("{PRECISION_ENV}={text:?} is not a bit count"))),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

impl Error {
    /// Errors caused by the request rather than by the computation.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::Parse(_)
                | Error::ParameterOutOfRange(_)
                | Error::DegreeOutOfRange { .. }
                | Error::PrecisionTooLow(_)
                | Error::IndexOutOfRange(_)
                | Error::Unsupported(_)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pj_at_the_validity_edge_is_a_config_error() {
        let cfg = RunConfig { family: Some(FamilyChoice::pj("-5", "1")), ..RunConfig::default() };
        let family = cfg.family().unwrap();
        let err = family.check_degree(5).unwrap_err();
        assert!(err.is_config());
    }

    #[test]
    fn missing_family_is_reported() {
        let err = RunConfig::default().family().unwrap_err();
        assert!(err.is_config());
    }

    #[test]
    fn fields_are_ordered() {
        let f = FamilyChoice::mp("0.5", "0.9").fields();
        let keys: Vec<&str> = f.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["family", "lambda", "phi"]);
    }
}
