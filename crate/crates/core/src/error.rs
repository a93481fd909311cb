use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("negative power of non-invertible generator `{0}`")]
    NegativePowerOfNonInvertible(String),
    #[error("reduction budget of {0} rule applications exceeded")]
    ReductionBudgetExceeded(u64),
    #[error("operand is not parity-homogeneous")]
    NonHomogeneousOperand,
    #[error("no image given for symbol `{0}`")]
    MissingImage(String),
    #[error("inverse of `{0}` is not registered")]
    UnregisteredInverse(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("graded Jacobi identity fails on {0} basis triple(s)")]
    JacobiFailed(usize),
    #[error("sigma-normality check failed: {0}")]
    SigmaNormalityFailed(String),
    #[error("confluence check failed: {0}")]
    ConfluenceFailed(String),
    #[error("inverse symbols survive the clearing recipe: {0}")]
    RecipeDidNotClear(String),
    #[error("unknown or unverified identity `{0}`")]
    UnknownIdentityReference(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("generator pair ({0}, {1}) has no relation-graph shape")]
    UnclassifiablePair(String, String),
    #[error("monomial bases are only defined for presentations without inverses")]
    LocalizedPresentationUnsupported,
    #[error("cannot invert: {0}")]
    NotInvertible(String),
    #[error("{0}")]
    Unsupported(String),
}
