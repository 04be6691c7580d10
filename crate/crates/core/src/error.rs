use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph order {0} exceeds the maximum of {max}", max = crate::graph::MAX_ORDER)]
    OrderTooLarge(usize),

    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid family parameters for {family}: {reason}")]
    InvalidFamily { family: String, reason: String },

    #[error("malformed graph6 input: {0}")]
    Graph6(String),

    #[error("invalid forbidden pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid edit: {0}")]
    InvalidEdit(String),

    #[error("invalid rotation move: {0}")]
    InvalidMove(String),

    #[error("w-split precondition violated: {0}")]
    WSplit(String),

    #[error("power iteration did not converge after {iterations} iterations (best residual {best_residual:e})")]
    NonConvergence { iterations: usize, best_residual: f64 },

    #[error("no equitable partition registered for {0}")]
    NoQuotient(String),

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("enumeration guard: m = {m} exceeds the limit {limit} (override to proceed)")]
    ResourceGuard { m: usize, limit: usize },

    #[error("no feasible starting graph: {0}")]
    NoFeasibleStart(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("record store: {0}")]
    Store(String),
}
