use thiserror::Error;

/// Errors raised by the inequality checks and the matrix calculus under them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument left the domain of a function (e.g. `log` of a non-positive value).
    #[error("domain error: {0}")]
    Domain(String),

    /// The inputs do not satisfy the hypotheses of the inequality being checked.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (deviation {deviation:e} > {bound:e})")]
    NotHermitian { deviation: f64, bound: f64 },

    #[error("matrices do not commute (commutator {commutator:e} > {bound:e})")]
    NonCommuting { commutator: f64, bound: f64 },

    #[error("matrix is singular (min eigenvalue {min_eigenvalue:e} < floor {floor:e})")]
    Singular { min_eigenvalue: f64, floor: f64 },

    #[error("matrix has negative spectrum (min eigenvalue {min_eigenvalue:e})")]
    NegativeSpectrum { min_eigenvalue: f64 },

    #[error("matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    /// Support of the first state is not contained in the support of the second.
    #[error("support violation: relative entropy is +infinity")]
    Support,

    /// The eigensolver hit its sweep cap.
    #[error(
        "eigensolver did not converge after {sweeps} sweeps \
         (off-diagonal norm {off_norm:e}, Frobenius norm {frobenius:e}, n = {dim})"
    )]
    NonConvergence {
        sweeps: usize,
        off_norm: f64,
        frobenius: f64,
        dim: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// True for failures of the numerics themselves rather than of the inputs.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
