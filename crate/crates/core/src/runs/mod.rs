//! Batch runs behind the command-line interface: table reproduction, the
//! degree-law grid, randomized verification and single decompositions.

mod decompose;
pub mod fixtures;
mod grid;
mod tables;
pub mod verify;

pub use decompose::run_decompose;
pub use grid::{grid_cell, product_verdict, run_grid, GRID_DEGREES, GRID_FAMILY};
pub use tables::{decimal_rational, pj_bound_exact, run_table};
pub use verify::{gauss_defect, run_suite, run_suites, run_verify, Kind, SuiteResult, SUITES};

use crate::config::RunConfig;
use crate::error::Result;
use crate::report::Report;

/// What to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Table(u8),
    Grid,
    Verify,
    Decompose,
}

pub fn run(command: Command, config: &RunConfig) -> Result<Report> {
    match command {
        Command::Table(id) => run_table(id, config),
        Command::Grid => run_grid(config),
        Command::Verify => run_verify(config),
        Command::Decompose => run_decompose(config),
    }
}
