//! Library side of the command-line tool: configuration and benchmarking.

pub mod bench;
pub mod config;
