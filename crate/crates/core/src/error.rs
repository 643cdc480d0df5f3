use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised by graph construction and the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("edge ({u}, {v}) references missing vertex {missing}")]
    MissingEndpoint {
        u: VertexId,
        v: VertexId,
        missing: VertexId,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("repeated edge ({0}, {1})")]
    RepeatedEdge(VertexId, VertexId),
    #[error("vertex {id}: measure must be positive and finite, got {value}")]
    NonPositiveMeasure { id: VertexId, value: f64 },
    #[error("edge ({u}, {v}): weight must be positive and finite, got {value}")]
    NonPositiveWeight { u: VertexId, v: VertexId, value: f64 },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex set contains {0} twice")]
    DuplicateInSet(VertexId),
    #[error("graph file line {line}: {message}")]
    GraphFile { line: usize, message: String },

    #[error("value at vertex {0} is outside the function support")]
    OutsideSupport(VertexId),
    #[error("Laplacian power {k} at vertex {vertex} needs the ball of radius {k} inside the support; vertex {missing} is missing")]
    InsufficientSupport {
        vertex: VertexId,
        k: u32,
        missing: VertexId,
    },

    #[error("Dirichlet spectrum not strictly positive: component containing vertex {0} has empty vertex boundary")]
    NoBoundary(VertexId),
    #[error("Dirichlet set is empty")]
    EmptyDomain,
    #[error("matrix is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("vertex {0} is outside the closure of the Dirichlet set")]
    OutsideClosure(VertexId),
    #[error("quadrature step must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("bump exponent must be a positive integer")]
    InvalidBeta,
    #[error("derivative order {requested} exceeds table depth {depth}; rebuild with K_max >= {requested}")]
    TableTooShallow { requested: u32, depth: u32 },
    #[error("equation order must be at least 2, got {0}")]
    InvalidOrder(u32),
    #[error("growth ratio requires eps > 0, got {0}")]
    NonPositiveEps(f64),
    #[error("growth ratio requires beta > 2/eps (beta = {beta}, eps = {eps})")]
    BetaTooSmall { beta: u32, eps: f64 },
    #[error("growth ratio requires x >= 2, got {0}")]
    GrowthPointTooSmall(i64),

    #[error("interval must satisfy b > a (a = {a}, b = {b})")]
    EmptyInterval { a: f64, b: f64 },
    #[error("Ore constant K(i, n) needs 1 <= i <= n (i = {i}, n = {n})")]
    InvalidOreIndex { i: u32, n: u32 },
    #[error("growth exponent A1 = {a1} outside [0, 2 - alpha] with alpha = {alpha}")]
    ExponentOutOfRange { a1: f64, alpha: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
