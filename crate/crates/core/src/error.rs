use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Fock truncation n_max = {0} is too small (need n_max >= 2)")]
    TruncationTooSmall(usize),

    #[error("Fock level {m} is outside the truncated basis (n_max = {n_max})")]
    FockOutOfRange { m: usize, n_max: usize },

    #[error("{0} is undefined for these parameters")]
    Undefined(&'static str),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("expected a {expected} frame state, got {got}")]
    FrameMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("wrong regime: {0}")]
    WrongRegime(String),

    #[error("norm drift {drift:.3e} at t = {t:.6} exceeds tolerance {tol:.1e}")]
    NormDrift { t: f64, drift: f64, tol: f64 },

    #[error(
        "truncation tail {tail:.3e} at t = {t:.6} exceeds {limit:.1e}; increase n_max (currently {n_max})"
    )]
    TruncationTail {
        t: f64,
        tail: f64,
        limit: f64,
        n_max: usize,
    },

    #[error("slow-flow tail {tail:.3e} at t = {t:.6} exceeds {limit:.1e}; increase m_max (currently {m_max})")]
    FlowTail {
        t: f64,
        tail: f64,
        limit: f64,
        m_max: usize,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
