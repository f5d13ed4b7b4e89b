//! Exact rational polyhedral geometry in dimensions one to three.

pub mod cells;
pub mod convex;
mod error;
pub mod linalg;
pub mod polytope;
mod rat;
pub mod region;

pub use cells::CellComplex;
pub use convex::{ConvexSet, LinearConstraint, Relation};
pub use error::GeomError;
pub use linalg::{Covector, Point};
pub use polytope::{affine_hull_dim, convex_hull, minkowski_sum, Mode, Polytope};
pub use rat::Rat;
pub use region::{ConvexityVerdict, Region, Term};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 3;
