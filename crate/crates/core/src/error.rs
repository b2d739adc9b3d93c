use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("graph is not planar")]
    NonPlanar,
    #[error("rotation system is not a planar embedding: {0}")]
    InvalidRotation(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not bipartite; odd cycle through vertices {cycle:?}")]
    OddCycle { cycle: Vec<usize> },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("grid graph carries diagonal edges")]
    HasDiagonals,
    #[error("block at ({0}, {1}) is missing boundary edges")]
    IncompleteBlock(usize, usize),
    #[error("edge sequence is not a simple cycle: {0}")]
    NotACycle(String),
    #[error("not a one-row almost-grid graph: {0}")]
    NotOneRowAlmostGrid(String),
    #[error("matching is not perfect")]
    NotPerfect,
    #[error("edge path {0} is matched inconsistently")]
    InconsistentPath(usize),
    #[error("auxiliary edge-adjacency graph is not bipartite")]
    AuxiliaryNotBipartite,
    #[error("promise violated: coefficient of x^{exponent} is {coefficient}")]
    PromiseViolation { exponent: i64, coefficient: String },
    #[error("determinant {0} is not a perfect square")]
    NonSquareDeterminant(String),
    #[error("weight scaling overflowed")]
    WeightOverflow,
    #[error("instance too large for the oracle: {size} > {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("outerplanar edges ({0}, {1}) and ({2}, {3}) cross")]
    Crossing(usize, usize, usize, usize),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
