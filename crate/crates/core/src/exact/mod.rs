//! Exact arithmetic over `Z[i]`, `Q(i)` and `Q[x]`.

pub mod charpoly;
pub mod gauss;
pub mod matrix;
pub mod poly;

pub use charpoly::{char_poly, faddeev_leverrier, CharPoly};
pub use gauss::{GaussInt, GaussRat};
pub use matrix::CMatrix;
pub use poly::Poly;
