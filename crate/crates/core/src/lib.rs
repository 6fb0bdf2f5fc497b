//! Exact super lambda lengths of arcs in triangulated polygons.
//!
//! Two independent routes are provided: double dimer covers of snake graphs
//! ([`snake`]) and a super cluster character over induced modules ([`cc`]),
//! linked by an explicit lattice bijection ([`bridge`]).

pub mod bridge;
pub mod cc;
pub mod error;
pub mod io;
mod linalg;
pub mod polygon;
pub mod repr;
pub mod snake;
pub mod superring;

pub use bridge::{LoopyString, SnakeMultigraph};
pub use cc::{CCObject, super_cc};
pub use error::{Error, Result};
pub use io::TriangulationFile;
pub use polygon::{validate, EdgeLabel, OrientedTriangulation, ThetaOrder, Triangulation, Vertex};
pub use repr::{Quiver, SubmoduleRank};
pub use snake::{super_lambda_dimer, Cover, CoverLattice, Dir, Side, SnakeGraph};
pub use superring::{Algebra, HalfMonomial, SuperExpr, SuperTerm};
