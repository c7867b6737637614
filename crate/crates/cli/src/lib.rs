//! Command-line front end for `rft-core`: argument definitions, the
//! function file format and the command implementations behind `rft`.

pub mod args;
pub mod commands;
pub mod error;
pub mod file;
