use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precision mismatch: {left} bits vs {right} bits")]
    PrecisionMismatch { left: u32, right: u32 },

    #[error("precision of {0} bits is below the 64-bit minimum")]
    PrecisionTooLow(u32),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("cannot parse {0:?} as a real number")]
    Parse(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("degree {n} exceeds the largest valid degree {max}")]
    DegreeOutOfRange { n: usize, max: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("division leaves a remainder of relative size {remainder:e}")]
    NotDivisible { remainder: f64 },

    #[error("imaginary residue of relative size {0:e} after real-ification")]
    ImaginaryResidue(f64),

    #[error("modifier has repeated nodes; the determinant form needs distinct nodes")]
    RepeatedNodes,

    #[error("degenerate system: {0}")]
    Degenerate(String),

    #[error("residual {residual:e} exceeds tolerance {tolerance:e} in {context}")]
    Residual {
        context: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("zero sets have sizes {inner} and {outer}; expected outer = inner + 1")]
    SizeMismatch { inner: usize, outer: usize },

    #[error("operation not available for this family: {0}")]
    Unsupported(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
