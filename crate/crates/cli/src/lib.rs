//! File formats, reports and the command-line driver for
//! `admissible-core`.

pub mod app;
pub mod complex_file;
pub mod graph_file;
pub mod places;
pub mod report;

pub use app::run;
