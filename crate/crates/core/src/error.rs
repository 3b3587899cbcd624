//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the series, exponential-sum and cusp routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot invert the zero series")]
    ZeroSeries,
    #[error("leading coefficient {0} is not invertible")]
    NonInvertibleLeadingCoefficient(String),
    #[error("unknown conjugacy class label `{0}`")]
    UnknownClassLabel(String),
    #[error("zeta band {band} is too narrow; the result needs exponents up to {needed}")]
    BandTooNarrow { band: String, needed: String },
    #[error("series has the fractional zeta exponent {0}")]
    FractionalZExponent(String),
    #[error("argument {0} must be odd")]
    EvenArgument(i64),
    #[error("{a} and {c} are not coprime")]
    NotCoprime { a: i64, c: i64 },
    #[error("matrix [[{a},{b}],[{c},{d}]] is not admissible: {reason}")]
    InvalidMatrix {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        reason: &'static str,
    },
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("no closed form for G({a},{b},{c})")]
    UnhandledCase { a: i64, b: i64, c: i64 },
    #[error("r = {0} must be odd")]
    EvenR(i64),
    #[error("(1 - D')/8 is not an integer for D' = {0}")]
    ParityViolation(i64),
    #[error("cusp {cusp} is not a cusp of Gamma0({level})")]
    CuspLevelMismatch { cusp: String, level: u64 },
    #[error("quasi-modular anomaly did not cancel (residue {0})")]
    AnomalyResidue(String),
    #[error("argument {0} must be positive")]
    NonpositiveArgument(String),
    #[error("imaginary part {0} exceeds the tolerance for a real coefficient")]
    NonRealResult(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
