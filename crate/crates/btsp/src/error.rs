use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point set is not a valid instance source: {0}")]
    InvalidPoints(String),

    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("matrix entry ({i}, {j}) is not finite")]
    NotFinite { i: usize, j: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("sequence is not a permutation of 1..={n}")]
    NotAPermutation { n: usize },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("masked entry in delta at ({i}, {j})")]
    MaskedEntry { i: usize, j: usize },

    #[error("masked entry in condition check at ({i}, {j})")]
    MaskedEntryInCheck { i: usize, j: usize },

    #[error("solver requires even-odd coloring")]
    RequiresEvenOdd,

    #[error("city count must be even, got {n}")]
    OddCityCount { n: usize },

    #[error("city count must be at least {min}, got {n}")]
    TooFewCities { n: usize, min: usize },

    #[error("no feasible bipartite pyramidal tour exists")]
    NoFeasiblePyramidalTour,

    #[error("tour is not a feasible bipartite tour for the given coloring")]
    InfeasibleTour,

    #[error("tour is already pyramidal; no improvement step applies")]
    AlreadyPyramidal,

    #[error("instance too large for brute force (k = {k}, cap = {cap})")]
    BruteForceCap { k: usize, cap: usize },

    #[error("not a permutation of 1..={k}")]
    InvalidPermutation { k: usize },

    #[error("graph edge ({i}, {j}) out of range for k = {k}")]
    InvalidEdge { i: usize, j: usize, k: usize },
}
