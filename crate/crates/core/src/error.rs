//! Error type shared by all kernel operations.
//!
//! Every fallible operation returns `Result<_, Error>`. Errors are values,
//! never panics: the CLI and the checkers both need to report and replay
//! them.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("depth mismatch: expected {expected}, found {found}")]
    DepthMismatch { expected: usize, found: usize },

    #[error("convex level {level} out of range for depth {depth}")]
    LevelOutOfRange { level: usize, depth: usize },

    #[error("integer argument must be nonzero")]
    ZeroInteger,

    #[error("division by zero series")]
    DivisionByZero,

    #[error("leading term unknown at current precision")]
    IndeterminateLeading,

    #[error("sign unknown: series vanishes at current precision but is not exactly zero")]
    IndeterminateSign,

    #[error("coefficient at exponent {exponent} not determined at current precision")]
    IndeterminateCoefficient { exponent: String },

    #[error("inverse of an exact multi-term series needs a target precision")]
    InverseNeedsPrecision,

    #[error(
        "geometric expansion does not terminate: correction value {epsilon_val} lies in a \
         strictly finer archimedean class than the target {target}"
    )]
    NonArchimedeanExpansion { epsilon_val: String, target: String },

    #[error("negative support not fully known: precision {prec} lies below the zero exponent")]
    NegativeSupportUnknown { prec: String },

    #[error("floor undefined: tail sign at the integer boundary is not determined")]
    IndeterminateTailSign,

    #[error("element lies outside the coarse valuation ring: coarse value {value} < 0")]
    OutsideValuationRing { value: String },

    #[error("support of the input is not contained in the required chain level")]
    SupportOutsideLevel,

    #[error("support is not fully known (input must be exact)")]
    SupportNotExact,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomial is not integral: coefficient of degree {degree} has negative value")]
    NotIntegral { degree: usize },

    #[error("residue polynomial does not vanish at {root}")]
    ResidueNotRoot { root: String },

    #[error("residue root {root} is not simple")]
    ResidueRootNotSimple { root: String },

    #[error("coefficient precision too coarse to certify the requested target {target}")]
    PrecisionExhausted { target: String },

    #[error(
        "target {target} lies in a strictly coarser archimedean class than the first Newton \
         correction {first}"
    )]
    CrossClassTarget { target: String, first: String },

    #[error("not a 1-unit: value must be 0 with residue 1")]
    NotOneUnit,

    #[error("parse error at {line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("in {path}: {source}")]
    Eval {
        path: String,
        #[source]
        source: Box<Error>,
    },

    #[error("type error: {0}")]
    Type(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Wraps an error with the expression path it occurred under.
    pub fn in_path(self, path: &str) -> Error {
        Error::Eval {
            path: path.to_string(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
