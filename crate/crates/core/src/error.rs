use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("pole at h=0: substituting h=0 into a term with h^{exponent}")]
    PoleAtHbarZero { exponent: i32 },

    #[error("coefficient of order {requested} requested from a series truncated at order {order}")]
    BeyondTruncation { requested: i64, order: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("algebra spec error: {0}")]
    SpecError(String),

    #[error("odd generators are not supported by the enveloping/vertex engines (presets are even)")]
    UnsupportedOddGenerator,

    #[error("truncation breach: result weight {weight} exceeds cutoff {cutoff}")]
    TruncationBreach { weight: i64, cutoff: i64 },

    #[error("undecided at cutoff: {0}")]
    UndecidedAtCutoff(String),

    #[error("module action data missing for degree-0 word `{0}`")]
    MissingActionWord(String),

    #[error("module depth breach: degree {degree} outside [{min}, {max}]")]
    DepthBreach { degree: i64, min: i64, max: i64 },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
