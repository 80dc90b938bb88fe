use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` already exists in the ring")]
    NameCollision(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("generators do not all have the same degree")]
    DegreeMismatch,
    #[error("rational map has only zero components")]
    ZeroMap,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("ambient dimensions differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("class has a non-integer coefficient")]
    NonIntegerClass,
    #[error("no generic hyperplane found after {attempts} attempts")]
    GenericityFailure { attempts: usize },
    #[error("every partial derivative vanishes identically")]
    VanishingJacobian,
    #[error("the zero ideal does not define a proper subscheme")]
    ZeroIdeal,
    #[error("image of slice {slice} has dimension {found}, expected {expected}")]
    UnexpectedImageDimension { slice: usize, expected: i64, found: i64 },
    #[error("Groebner basis certificate failed: {0}")]
    CertificateFailure(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
