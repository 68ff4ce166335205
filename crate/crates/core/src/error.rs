use thiserror::Error;

/// Errors produced by the relation calculus, the theorem harness and the file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("vector is not in the domain of the relation (residual {residual:.3e})")]
    NotInDomain { residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("infeasible generator constraints: {0}")]
    Generator(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("field mismatch: relations over different scalar fields cannot be combined")]
    FieldMismatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
