use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("incompatible representations: {0}")]
    Mismatch(String),
    #[error("d = {d} is out of range for r = {r}")]
    BadD { r: usize, d: usize },
    #[error("m = {m} is out of range for r = {r}")]
    BadM { r: usize, m: usize },
    #[error("{0}")]
    BadRange(String),
    #[error("guard exceeded: {what} needs {needed}, limit {limit}")]
    GuardExceeded { what: String, needed: u128, limit: u128 },
    #[error("matrix is singular")]
    Singular,
    #[error("functionals are not in general position")]
    NotGeneralPosition,
    #[error("representation is not a member: {0}")]
    NotAMember(String),
    #[error("representation fails the equal-kernels test: {0}")]
    NotEkp(String),
    #[error("no membership evidence for the equal-kernels property: {0}")]
    NotEkpEvidence(String),
    #[error("representation is not a brick (endomorphism dimension {0})")]
    NotBrick(usize),
    #[error("expected a one-dimensional Ext space, found dimension {0}")]
    ExtDimUnexpected(usize),
    #[error("restriction does not decompose into preprojectives: {0}")]
    InconsistentRestriction(String),
    #[error("search exhausted after {0} draws")]
    SearchExhausted(usize),
    #[error("no such bundle: {0}")]
    Impossible(String),
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("could not certify: {0}")]
    Uncertified(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
