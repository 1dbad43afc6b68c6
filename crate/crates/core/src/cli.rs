//! Command-line front end. Exit codes: 0 all rows pass (flags allowed),
//! 1 a row failed or a computation broke down, 2 the request was invalid.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::config::{FamilyChoice, RunConfig, PRECISION_ENV};
use crate::error::{Error, Result};
use crate::report::Format;
use crate::runs::{run, Command};
use crate::scalar::{TolerancePolicy, DEFAULT_PRECISION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Mp,
    Pj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "even-christoffel",
    version,
    about = "Connection formulae, zeros and inner bounds under even Christoffel modifications",
    allow_negative_numbers = true
)]
pub struct Cli {
    /// Reproduce bound table 1, 2 or 3
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3), group = "command")]
    pub table: Option<u8>,
    /// Run the degree-law grid
    #[arg(long, group = "command")]
    pub grid: bool,
    /// Run the randomized verification suites
    #[arg(long, group = "command")]
    pub verify: bool,
    /// Decompose one (n, m, k) cell for the given family
    #[arg(long, group = "command")]
    pub decompose: bool,

    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,

    /// Working precision in bits
    #[arg(long, env = PRECISION_ENV, default_value_t = DEFAULT_PRECISION)]
    pub precision_bits: u32,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,

    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Seed for the verification suites
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random parameter draws per family
    #[arg(long)]
    pub draws: Option<usize>,
    /// Evaluation points per instance
    #[arg(long)]
    pub points: Option<usize>,
    /// Largest degree in the verification suites
    #[arg(long)]
    pub max_degree: Option<usize>,
}

impl Cli {
    pub fn command(&self) -> Result<Command> {
        match (self.table, self.grid, self.verify, self.decompose) {
            (Some(id), ..) => Ok(Command::Table(id)),
            (None, true, _, _) => Ok(Command::Grid),
            (None, _, true, _) => Ok(Command::Verify),
            (None, _, _, true) => Ok(Command::Decompose),
            _ => Err(Error::Config("choose one of --table, --grid, --verify, --decompose".into())),
        }
    }

    fn family_choice(&self) -> Result<Option<FamilyChoice>> {
        let need = |v: &Option<String>, flag: &str| {
            v.clone().ok_or_else(|| Error::Config(format!("--{flag} is required with this family")))
        };
        match self.family {
            None => {
                if [&self.lambda, &self.phi, &self.a, &self.b].iter().any(|v| v.is_some()) {
                    return Err(Error::Config("family parameters given without --family".into()));
                }
                Ok(None)
            }
            Some(FamilyArg::Mp) => Ok(Some(FamilyChoice::MeixnerPollaczek {
                lambda: need(&self.lambda, "lambda")?,
                phi: need(&self.phi, "phi")?,
            })),
            Some(FamilyArg::Pj) => Ok(Some(FamilyChoice::PseudoJacobi { a: need(&self.a, "a")?, b: need(&self.b, "b")? })),
        }
    }

    pub fn config(&self) -> Result<RunConfig> {
        let tol = TolerancePolicy::new(self.precision_bits)?.with_overrides(self.rel_tol, self.abs_tol)?;
        let defaults = RunConfig::default();
        let config = RunConfig {
            family: self.family_choice()?,
            n: self.n,
            m: self.m,
            k: self.k,
            tol,
            seed: self.seed.unwrap_or(defaults.seed),
            draws: self.draws.unwrap_or(defaults.draws),
            points: self.points.unwrap_or(defaults.points),
            max_degree: self.max_degree.unwrap_or(defaults.max_degree),
        };
        if let Some(family) = &config.family {
            // reject invalid parameters and degrees before any work starts
            let built = family.build(config.prec())?;
            if let Some(n) = config.n {
                built.check_degree(n)?;
            }
        }
        Ok(config)
    }

    pub fn format(&self) -> Format {
        match self.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

/// Parses `args`, runs the command, writes the report; returns the exit code.
pub fn run_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                2
            } else {
                1
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let command = cli.command()?;
    let config = cli.config()?;
    let report = run(command, &config)?;
    report.write(cli.format(), cli.out.as_deref())?;
    let s = report.summary();
    eprintln!("{} rows: {} pass, {} fail, {} flagged", s.rows, s.pass, s.fail, s.flagged);
    Ok(report.exit_code())
}

pub fn main() -> i32 {
    run_with_args(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("even-christoffel").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn negative_parameters_parse() {
        let cli = parse(&["--decompose", "--family", "pj", "--a", "-10", "--b", "8", "--n", "5", "--m", "2", "--k", "1"]);
        assert_eq!(cli.command().unwrap(), Command::Decompose);
        let cfg = cli.config().unwrap();
        assert_eq!(cfg.family, Some(FamilyChoice::pj("-10", "8")));
    }

    #[test]
    fn invalid_requests_are_config_errors() {
        let cli = parse(&["--verify", "--family", "pj", "--a", "-5", "--b", "1", "--n", "5"]);
        assert!(cli.config().unwrap_err().is_config());
        let cli = parse(&["--grid", "--precision-bits", "32"]);
        assert!(cli.config().unwrap_err().is_config());
        assert!(parse(&[]).command().unwrap_err().is_config());
        assert_eq!(run_with_args(["even-christoffel", "--table", "4"]), 2);
        assert_eq!(run_with_args(["even-christoffel", "--grid", "--verify"]), 2);
        assert_eq!(
            run_with_args(["even-christoffel", "--verify", "--family", "pj", "--a", "-5", "--b", "1", "--n", "5"]),
            2
        );
    }
}
