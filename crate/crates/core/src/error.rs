use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("duplicate vertex {0} in subset")]
    DuplicateVertex(usize),

    #[error("{what}: size {size} exceeds guard {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("materialization cap exceeded: {requested} vertices requested, cap is {cap}; reduce n")]
    CapExceeded { requested: u128, cap: usize },

    #[error("g-join needs one part per vertex: got {got} parts for {expected} vertices")]
    MissingPart { expected: usize, got: usize },

    #[error("vertex subset must be nonempty")]
    EmptySubset,

    #[error("automorphism sampler: {0}")]
    Sampler(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix does not fit the graph at ({row}, {col}): {reason}")]
    FitViolation {
        row: usize,
        col: usize,
        reason: &'static str,
    },

    #[error("unknown fixture ({param}, {graph})")]
    UnknownFixture { param: String, graph: String },

    #[error("solver did not converge after {iterations} iterations (primal {primal:.9}, dual {dual:.9})")]
    NotConverged {
        iterations: usize,
        primal: f64,
        dual: f64,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("degenerate convex corner: {0}")]
    DegenerateCorner(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
