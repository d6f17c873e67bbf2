use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spacetime index {0} out of range (expected 0..=3)")]
    IndexOutOfRange(usize),

    #[error("direction vector must be non-zero")]
    ZeroDirection,

    #[error("mass must be finite and non-negative, got {0}")]
    InvalidMass(f64),

    #[error("system requires m > 0 (got m = {0}); use the massless split instead")]
    MasslessNotAllowed(f64),

    #[error("CFL condition violated: dt = {dt} exceeds the admissible dt = h/√3 = {max_dt}")]
    Cfl { dt: f64, max_dt: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
