//! File formats, reports and the `zloc` command-line front end for
//! [`zloc_core`].

pub mod cli;
pub mod format;
pub mod report;

pub use cli::{run, CommandOutcome};
pub use format::parse_tensor;
