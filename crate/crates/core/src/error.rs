use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("Gram matrix of the functional is singular (min eigenvalue {min_eigenvalue:.3e}); representation is not faithful")]
    SingularGram { min_eigenvalue: f64 },

    #[error("Haar invariance system has no normalizable solution")]
    NoSolution,

    #[error("Haar invariance system has a {dim}-dimensional solution space, expected 1")]
    NonUnique { dim: usize },

    #[error("computed Haar functional is not positive (min Gram eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("supplied Haar functional differs from the computed one by {residual:.3e}")]
    HaarMismatch { residual: f64 },

    #[error("quantum group is not of Kac type: {0}")]
    NotKac(String),

    #[error("calculus admits no covariant lift of the coaction (residual {residual:.3e}): {reason}")]
    NotCovariant { reason: String, residual: f64 },

    #[error("averaged inner product fails {check} (residual {residual:.3e})")]
    InvariantViolation { check: String, residual: f64 },

    #[error("coaction has no finite-group provenance")]
    NotClassical,

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a group action: {0}")]
    NotAnAction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
