//! Automorphisms whose cohomology action is known exactly.

pub mod file;
pub mod isometry;
pub mod product;
pub mod torus;

pub use file::{Catalog, Instance, DEFAULT_CATALOG};
pub use isometry::{coxeter_e10, isometry_action, LatticeIsometry};
pub use product::{product_automorphism, ProductAutomorphism};
pub use torus::{gauss_matrix, torus_from_matrix, TorusAutomorphism};
