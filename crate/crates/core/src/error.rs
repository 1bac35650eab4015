use thiserror::Error;

/// Parser failures; positions are byte offsets into the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier '{name}' at {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("non-integer exponent at {pos}")]
    NonIntegerExponent { pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("variable '{0}' has no conjugate partner")]
    NoConjugate(String),
    #[error("not expandable at the origin: {0}")]
    NotExpandable(String),
    #[error("Levi-degenerate at the origin: {0}")]
    LeviDegenerate(String),
    #[error("defining function is not real: {0}")]
    NotReal(String),
    #[error("matrix is not in the Borel subalgebra")]
    NotInBorel,
    #[error("not invertible: {0}")]
    NonInvertible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// True for failures of a mathematical precondition, as opposed to malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotExpandable(_)
                | Error::LeviDegenerate(_)
                | Error::NotReal(_)
                | Error::NotInBorel
                | Error::NonInvertible(_)
                | Error::Precondition(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
