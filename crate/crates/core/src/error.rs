use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular matrix")]
    Singular,
    #[error("matrix is not symplectic mod {0}")]
    NotSymplectic(String),
    #[error("not semistable over degree R(n)^(t+1): (gamma^R(n) - 1)^2 != 0")]
    NotSemistable,
    #[error("not potentially good: gamma^R(n) != 1")]
    NotPotentiallyGood,
    #[error("scenario file error at line {line}: {message}")]
    Scenario { line: usize, message: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
