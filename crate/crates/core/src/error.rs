use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate form: {0}")]
    Degenerate(String),
    #[error("form is not definite: {0}")]
    NotDefinite(String),
    #[error("invalid enumeration bound: {0}")]
    InvalidBound(String),
    #[error("invalid ADE type: {0}")]
    InvalidType(String),
    #[error("not a Dynkin diagram of ADE type: {0}")]
    NotAde(String),
    #[error("unknown Niemeier label {label:?}; valid labels: {valid}")]
    UnknownLabel { label: String, valid: String },
    #[error("glue data for {label} failed {check}: {detail}")]
    GlueData { label: String, check: &'static str, detail: String },
    #[error("{module}: consistency check {check} failed: {detail}")]
    Consistency { module: &'static str, check: &'static str, detail: String },
    #[error("class is not an element of the discriminant group: {0}")]
    NotInGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported file: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl LatticeError {
    pub(crate) fn consistency(
        module: &'static str,
        check: &'static str,
        detail: impl Into<String>,
    ) -> Self {
        LatticeError::Consistency { module, check, detail: detail.into() }
    }
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;
