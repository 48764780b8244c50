//! File formats and command line front end for `uidim-core`.

pub mod cli;
pub mod format;
pub mod report;
