//! JSON formats, a threaded boundary search and the `charpoly-forge` command
//! line on top of `charpoly-forge-core`.

pub mod cli;
pub mod json;
pub mod search;

pub use cli::run;
