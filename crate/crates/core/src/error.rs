use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is zero up to its truncation; degree undecidable")]
    ZeroOrTruncated,
    #[error("not a polynomial at this truncation")]
    NotPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("truncation leaves no certified terms")]
    TruncationUnderflow,
    #[error("leading coefficient vanishes at n = {0}")]
    LeadingCoefficientVanishes(i64),
    #[error("ramification error: {0}")]
    RamificationError(String),
    #[error("operator is not regular-singular")]
    NotRegularSingular,
    #[error("{0} is not a slope of the Newton polygon")]
    NotASlope(String),
    #[error("slope sets do not partition the Newton polygon slopes")]
    SlopesNotPartition,
    #[error("operator is not monic")]
    NotMonic,
    #[error("slim-part factors are not coprime")]
    FactorsNotCoprime,
    #[error("slim part does not equal the given product")]
    SlimPartMismatch,
    #[error("eigenvalues are resonant; use the resonant WKB solver")]
    ResonantEigenvalues,
    #[error("eigenvalue ratio is a power of q")]
    Resonant,
    #[error("eigenvalue leading coefficient is not rational")]
    IrrationalEigenvalue,
    #[error("evaluation at n = {0} is below the convergence threshold")]
    EvaluationBelowThreshold(i64),
    #[error("truncated linear system is singular")]
    SingularMatch,
    #[error("no quasi-polynomial fits within the given bounds")]
    NoFit,
    #[error("no linear recurrence within the probed order bound")]
    NoRecurrence,
    #[error("window too small")]
    WindowTooSmall,
    #[error("competing branches tie beyond tracked precision")]
    InconclusiveTruncation,
    #[error("degree data does not cover the required range")]
    RangeTooShort,
    #[error("no operator in the requested degree box")]
    NoOperatorInBox,
    #[error("verification fails at n = {0}")]
    FailsAt(i64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
