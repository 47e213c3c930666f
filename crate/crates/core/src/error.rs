use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("singular pencil: condition estimate {condition:e} exceeds {limit:e}")]
    SingularPencil { condition: f64, limit: f64 },

    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("index {index} out of range {range}")]
    IndexOutOfRange { index: usize, range: &'static str },

    #[error("invalid equation spec: {0}")]
    InvalidSpec(String),

    #[error("equation family {0} is an overdetermined system, not a square pencil; use solution_space")]
    NotSquarePencil(&'static str),

    #[error("operator has an empty kernel at E = {energy}: point is off shell")]
    OffShell { energy: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("CFL violation: c*dt/dx = {courant} exceeds {limit}")]
    Cfl { courant: f64, limit: f64 },

    #[error("wave vector component {component} = {value} is not a multiple of 2*pi/L")]
    Incommensurate { component: usize, value: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("config: {0}")]
    Config(String),

    #[error("snapshot: {0}")]
    Snapshot(String),
}

pub type Result<T> = std::result::Result<T, Error>;
