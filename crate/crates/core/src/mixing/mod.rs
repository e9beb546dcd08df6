//! Correlation decay of torus automorphisms against Haar measure.

pub mod bound;
pub mod correlation;
pub mod report;
pub mod testfn;

pub use bound::{fit_and_check, theorem_bound, BoundReport, Rate, TheoremBound};
pub use correlation::{correlation_exact, correlation_montecarlo, CorrelationSeries, Entry, Method};
pub use report::{bound_json, correlation_svg, series_csv, to_json, SCHEMA};
pub use testfn::{make_holder_function, Frequency, TestFunction};
