use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebras differ: expected {expected} even variables, found {found}")]
    MismatchedAlgebra { expected: usize, found: usize },
    #[error("monomial x^({0:?}/2) has no square root on the half-integer grid")]
    NonRepresentableRoot(Vec<i32>),
    #[error("cannot parse expression: {0}")]
    Parse(String),
    #[error("theta id {0} is not a variable of this algebra")]
    UnknownTheta(usize),
    #[error("polygon needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} is outside 0..{v}")]
    OutOfRangeVertex { vertex: usize, v: usize },
    #[error("arc ({0},{1}) is a boundary segment or degenerate")]
    BoundaryArc(usize, usize),
    #[error("arc ({0},{1}) appears twice")]
    DuplicateArc(usize, usize),
    #[error("arcs ({0},{1}) and ({2},{3}) cross")]
    CrossingArcs(usize, usize, usize, usize),
    #[error("expected {expected} arcs for a maximal triangulation, got {found}")]
    NotMaximal { expected: usize, found: usize },
    #[error("triangle {0:?} has no boundary edge")]
    InternalTriangle([usize; 3]),
    #[error("({0},{1}) is not the longest arc of the triangulation")]
    NotLongestArc(usize, usize),
    #[error("arc ({0},{1}) belongs to the triangulation")]
    ArcInTriangulation(usize, usize),
    #[error("tile {0} cannot be twisted in the requested direction")]
    NotTwistable(usize),
    #[error("malformed cover: {0}")]
    MalformedCover(String),
    #[error("covers or multigraphs live on different snake graphs")]
    MismatchedGraphs,
    #[error("snake multigraph is not good")]
    NotGood,
    #[error("snake multigraph is not connected")]
    Disconnected,
    #[error("invalid rank vector: {0}")]
    InvalidRankVector(String),
    #[error("quadrilateral sides are not all in the triangulation or boundary")]
    NonMonomialConfiguration,
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
