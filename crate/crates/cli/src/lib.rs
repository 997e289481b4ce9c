//! Front end for `rdtm-core`: JSON problem descriptors, error tables,
//! CSV surfaces, convergence reports and coefficient listings.

pub mod descriptor;
pub mod error;
pub mod report;

pub use descriptor::{Axis, Grid, Problem, ProblemDescriptor};
pub use error::CliError;
pub use report::Format;
