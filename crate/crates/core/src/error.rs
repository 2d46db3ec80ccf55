use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("quiver parse error at line {line}: {msg}")]
    QuiverParse { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("not projective: {0}")]
    NotProjective(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("morphisms are not composable: {0}")]
    NotComposable(String),

    #[error("orbit morphism has no degree-zero lift: {0}")]
    NoLift(String),

    #[error("window certification failed: {0}")]
    Window(String),

    #[error("setup check failed: {0}")]
    Setup(String),

    #[error("endomorphism identification failed: {0}")]
    EndIdentification(String),

    #[error("quiver is not of Dynkin type: {0}")]
    NotDynkin(String),

    /// A runtime assertion of one of the construction's hypotheses failed.
    #[error("certification failed [{check}]: {detail}")]
    Certification { check: String, detail: String },
}

impl Error {
    pub fn cert(check: impl Into<String>, detail: impl Into<String>) -> Error {
        Error::Certification { check: check.into(), detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
