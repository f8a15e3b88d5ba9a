//! Command-line front-end for the sigma-arm analysis library.
//!
//! All numeric output is printed with six significant digits so repeated runs
//! diff cleanly; angles are degrees at this boundary, radians inside the
//! library.

pub mod fmt;
pub mod report;

mod app;

pub use app::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
