use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no solution: target is not in the image")]
    NoSolution,
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociative(String, String, String),
    #[error("unit is not a two-sided identity on basis element {0}")]
    UnitFailure(String),
    #[error("product {0}*{1} leaves the expected degree")]
    DegreeViolation(String, String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("coring mismatch: {0}")]
    CoringMismatch(String),
    #[error("coring axiom fails: {0}")]
    CoassociativityFailure(String),
    #[error("constructed algebra is not associative: {0}")]
    AssociativityFailure(String),
    #[error("not a subalgebra: {0}")]
    NotASubalgebra(String),
    #[error("trace-form radical is not valid in characteristic {0} for dimension {1}")]
    UnsupportedCharacteristic(u64, usize),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("d^2 != 0 at cohomological degree {0}")]
    NotAComplex(i32),
    #[error("resolution depth cap {0} exceeded")]
    DepthCapExceeded(usize),
    #[error("truncation depth {0} unavailable")]
    DepthUnavailable(usize),
    #[error("stabilization failure at (i={i}, n={n}): depth {depth} gives {a}, depth+1 gives {b}")]
    StabilizationFailure { i: i32, n: i32, depth: usize, a: usize, b: usize },
    #[error("setup not verified: {0}")]
    SetupNotVerified(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
