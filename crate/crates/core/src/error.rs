use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands live over different alphabets ({left} vs {right})")]
    AlphabetMismatch { left: String, right: String },

    #[error("{op} requires a series without constant term, found {constant}")]
    ConstantTerm { op: &'static str, constant: String },

    #[error("expected a homogeneous series of degree {expected}: {found}")]
    Degree { expected: i32, found: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("alphabet must contain at least one and at most 255 generators")]
    AlphabetSize,

    #[error("expected {expected} generator images, got {found}")]
    ImageCount { expected: usize, found: usize },

    #[error("not a Maurer-Cartan element: first nonzero residual term {residual}")]
    NotMaurerCartan { residual: String },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
