//! IO companion to `talbot-core`: CSV/JSON emission, thread-pool drivers,
//! and the `talbot` command-line tool.

pub mod cli;
pub mod emit;
pub mod parallel;

pub use cli::{run, Cli};
