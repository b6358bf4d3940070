use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("topology error: {0}")]
    Topology(String),
    #[error("unknown builtin surface `{0}`")]
    UnknownBuiltin(String),
    #[error("boundary hit on triangle {tri}, edge {edge}")]
    BoundaryHit { tri: usize, edge: usize },
    #[error("start point lies on a cone point")]
    StartOnCone,
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("path escapes the developed region: {0}")]
    Escape(String),
    #[error("target not reachable within radius {0}")]
    Unreachable(f64),
    #[error("word error: {0}")]
    Word(String),
    #[error("iteration cap exceeded after {0} iterations")]
    IterationCap(usize),
    #[error("infeasible constraint: {0}")]
    Infeasible(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
