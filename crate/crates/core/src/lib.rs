//! Orthogonal polynomials under even Christoffel modifications.
//!
//! Families are given by a monic three-term recurrence. Multiplying the
//! weight by an even polynomial `c_2k` produces a new monic sequence `g_{n,k}`,
//! and every `c_2k g_{n-m,k}` decomposes as `a p_n - G p_{n-1}`. When `G` is
//! linear its root is an inner bound for the extreme zeros of `p_n`.
//!
//! All arithmetic runs on MPFR floats at a configurable precision (256 bits
//! by default); tolerances follow the precision through [`TolerancePolicy`].

pub mod associated;
pub mod christoffel;
pub mod cli;
pub mod config;
pub mod error;
pub mod families;
mod linalg;
pub mod poly;
pub mod report;
pub mod residual;
pub mod runs;
pub mod scalar;
pub mod zeros;

pub use christoffel::{
    christoffel_transform, connection_decompose, theorem1_degree_law, ConnectionDecomposition, DegreeLaw,
};
pub use config::{FamilyChoice, RunConfig};
pub use error::{Error, Result};
pub use families::{mp_family, pj_family, ModifierSpec, RecurrenceFamily};
pub use poly::Polynomial;
pub use scalar::{Complex, Scalar, TolerancePolicy};
pub use zeros::{bound_separation, gauss_rule, interlace_strict, mp_bound, pj_bound, zeros_golub_welsch, ZeroSet};
