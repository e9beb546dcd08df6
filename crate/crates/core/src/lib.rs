//! Cohomological invariants of automorphisms and an exact laboratory for
//! exponential mixing on torus automorphisms.
//!
//! - [`cohomology`]: dynamical degrees, hypothesis checks, Künneth products,
//!   projector convergence rates and admissible mixing rates.
//! - [`catalog`]: automorphisms with exactly known cohomology actions.
//! - [`mixing`]: exact and Monte Carlo correlations, Hölder-norm bookkeeping,
//!   bound fitting.

pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod exact;
pub mod mixing;

pub use error::{Error, Result};
