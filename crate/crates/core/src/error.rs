use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator {0} is missing from the assignment")]
    MissingGenerator(usize),

    #[error("matrix failed unitary certification: |U*U - 1|_op = {0:e}")]
    NotUnitary(f64),

    #[error("matrix is not skew-hermitian: |X + X*|_op = {0:e}")]
    NotSkewHermitian(f64),

    #[error("linear algebra routine failed: {0}")]
    LinAlg(String),

    #[error("least-squares solver did not converge after {iterations} iterations (residual {residual:e})")]
    SolverNonConvergence { iterations: usize, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("almost-representations live on different presentations ({0} vs {1})")]
    PresentationMismatch(String, String),

    #[error("candidate is not a homomorphism: defect {0:e}")]
    NotHomomorphism(f64),

    #[error("witness does not reduce to the relator")]
    WitnessMismatch,

    #[error("cochain and lift are defined on different windows")]
    WindowMismatch,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by user input rather than numerics.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::InvalidArgument(_)
                | Error::PresentationMismatch(..)
                | Error::MissingGenerator(_)
        )
    }
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::LinAlg(e.to_string())
    }
}
