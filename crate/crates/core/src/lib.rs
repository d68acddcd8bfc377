//! Finite models of m-cluster categories of linearly oriented type A quivers.
//!
//! The crate builds, from a rank `n` and orbit parameter `m`, a fully
//! computable model of the orbit category of the bounded derived category of
//! the path algebra of `1 → 2 → ⋯ → n` under `τ⁻¹[m]`: objects, graded Hom
//! spaces, composition, triangles. On top of that sit cluster-tilting
//! subcategories, the functor to finitely presented modules over them,
//! minimal projective resolutions, factorization ideals, and named
//! verification suites relating projective dimensions to ideal vanishing.

pub mod cluster;
pub mod derived;
pub mod field;
pub mod ideals;
pub mod matrix;
pub mod polygon;
pub mod quiver;
pub mod report;
pub mod suites;
pub mod tilting;



pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use matrix::Matrix;
pub use quiver::{Interval, Representation};
