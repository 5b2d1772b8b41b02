use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // algebra
    #[error("{0} is not a prime greater than 3")]
    NotPrime(u64),
    #[error("modulus polynomial is reducible over Z_p")]
    ReducibleModulus,
    #[error("modulus polynomial must be monic")]
    NonMonicModulus,
    #[error("modulus has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate evaluation point x = {0}")]
    DuplicateX(u64),
    #[error("evaluation point x = 0 is not allowed")]
    ZeroX,
    #[error("bad dimensions: {0}")]
    BadDims(String),
    #[error("matrix is singular")]
    Singular,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("operands belong to different fields")]
    FieldMismatch,

    // curve
    #[error("curve discriminant is zero")]
    SingularCurve,
    #[error("point is not on the curve")]
    OffCurveInput,
    #[error("the l-torsion is not rational over the working field")]
    TorsionNotRational,
    #[error("coordinate point was built under a different torsion basis")]
    BasisMismatch,

    // pairing
    #[error("point is not l-torsion")]
    NotTorsion,
    #[error("Miller loop kept hitting a zero or pole")]
    DegenerateEvaluation,
    #[error("distortion map needs a curve of the form y^2 = x^3 + Ax")]
    UnsupportedCurveForm,
    #[error("distortion unit does not square to -1")]
    BadDistortionUnit,
    #[error("modified pairing of a point with itself is trivial")]
    NonPrimitiveSelfValue,
    #[error("mask index {0} is 0 mod l")]
    DegenerateIndex(u64),
    #[error("point at infinity is not allowed here")]
    IdentityPoint,

    // sharing
    #[error("threshold must be at least 2")]
    ThresholdTooSmall,
    #[error("expected {expected} shares, got {got}")]
    WrongShareCount { expected: usize, got: usize },
    #[error("too many secrets: {0}")]
    TooManySecrets(String),
    #[error("bad threshold: {0}")]
    BadThreshold(String),
    #[error("no participant is assigned x = {0}")]
    UnknownParticipant(u64),
    #[error("need {needed} shares, got {got}")]
    NotEnoughShares { needed: usize, got: usize },
    #[error("cheaters detected: {0:?}")]
    CheaterDetected(Vec<u32>),
    #[error("reconstructed secret point does not match V0")]
    InconsistentShares,
    #[error("dealer state does not match bulletin")]
    StateMismatch,

    // bulletin
    #[error("malformed document at line {line}: {msg}")]
    MalformedDocument { line: usize, msg: String },
    #[error("unknown scheme or version: {0}")]
    UnknownSchemeVersion(String),
    #[error("operation not defined for this scheme")]
    WrongScheme,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn malformed(line: usize, msg: impl Into<String>) -> Self {
        Error::MalformedDocument { line, msg: msg.into() }
    }
}
