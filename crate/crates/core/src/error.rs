use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument lies on a pole of the gamma function.
    #[error("gamma function pole at {0}")]
    GammaPole(i64),
    /// Argument outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A series or iteration did not settle within its budget.
    #[error("{what} did not converge within {budget} steps")]
    Convergence { what: &'static str, budget: usize },
    /// A quadrature needs more nodes than its budget allows.
    #[error("quadrature needs {needed} nodes, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    /// The integrand produced NaN or infinity.
    #[error("non-finite integrand sample at node {index} (u = {node})")]
    NonFinite { index: i64, node: f64 },
    /// Caller violated a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
