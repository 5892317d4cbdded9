use thiserror::Error;

use crate::bigraded::BiDegree;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cell {cell} has 2w - p = {k} < -1, outside the D_2 cell formula")]
    OutOfFormulaRange { cell: BiDegree, k: i64 },

    #[error("tensor product of truncated sums is unsound: {0}")]
    TruncationUnsound(String),

    #[error("{0} is a power of two; use the wreath-product step")]
    PowerOfTwo(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("the zero homomorphism does not define a grading")]
    ZeroHomomorphism,

    #[error(
        "cell {cell} is not in the closure class at slope {slope}: condition {condition} fails"
    )]
    NotInClass {
        cell: BiDegree,
        slope: String,
        condition: u8,
    },

    #[error("E_{i}: factor {factor} violates condition {condition} at slope {slope}")]
    SMembershipViolation {
        i: u64,
        factor: BiDegree,
        condition: u8,
        slope: String,
    },

    #[error("series division produced a negative coefficient in degree {degree}")]
    NegativeCoefficient { degree: i64 },

    #[error("structure is not connected: {0}")]
    NotConnected(String),

    #[error("phi is not surjective in degree {degree}")]
    NotSurjective { degree: i64 },

    #[error("phi is not a map of comodule algebras in degree {degree}: {what}")]
    NotComoduleAlgebraMap { degree: i64, what: String },

    #[error("theta is not an isomorphism in degree {degree}")]
    SplitFailed { degree: i64 },

    #[error("hypothesis ({which}) failed: {detail}")]
    HypothesisFailed { which: u8, detail: String },

    #[error("M -> W (x)_R Gamma is not an isomorphism in degree {degree}")]
    IsoFailed { degree: i64 },

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("rewriting exceeded the bound of {0} rule applications")]
    TerminationBound(usize),

    #[error("fixture error: {0}")]
    Fixture(String),
}
