use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("denominator enclosure contains zero; the functional is unbounded for this candidate")]
    ZeroDenominator,
    #[error("g(0) = (integral of p)^2 is zero; candidate is not admissible")]
    GZeroNotPositive,
    #[error("{name} out of range: {detail}")]
    OutOfRange { name: &'static str, detail: String },
    #[error("configuration infeasible at alpha = {witness}: {reason}")]
    Infeasible { witness: String, reason: String },
    #[error("every optimizer start ended at an infeasible candidate")]
    NoFeasibleCandidate,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange { name, detail: detail.into() }
    }
}
