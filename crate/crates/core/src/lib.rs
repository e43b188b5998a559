//! Local invariants of polarized metrized graphs.
//!
//! Exact rational and `f64` backends share one generic implementation via
//! [`Scalar`]. The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod admissible;
pub mod closed_forms;
pub mod complex_pairing;
pub mod conjectures;
pub mod graph;
pub mod poly;
pub mod resistance;
pub mod root_numbers;
pub mod scalar;

pub use graph::{GraphBuilder, GraphPoint, PolarizedGraph};
pub use scalar::{rat, Rational, Scalar};
