use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),
    #[error("invalid quantum state: {0}")]
    InvalidState(String),
    #[error("singular matrix in linear solve")]
    Singular,
    #[error("χ = {chi} is within the guard band of the π/2 singularity")]
    ChiSingular { chi: f64 },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("time {t} outside schedule [0, {tau}]")]
    TimeOutOfRange { t: f64, tau: f64 },
    #[error("negative decay rate {0}")]
    NegativeRate(f64),
    #[error("grid too coarse: step-halving discrepancy {0:e}")]
    GridTooCoarse(f64),
    #[error("discontinuous path samples at index {0}")]
    DiscontinuousPath(usize),
    #[error("coordinate singularity near a pole at t = {0}")]
    PoleSingularity(f64),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("sweep of {cells} cells exceeds budget {budget}")]
    BudgetExceeded { cells: usize, budget: usize },
    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
