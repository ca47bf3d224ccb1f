//! Verification runs, JSON reports and the command-line front end for
//! [`qaffine_core`].
//!
//! Reports use 1-based indices, matching the mathematical notation. JSON
//! objects are emitted with sorted keys so that equal runs give equal bytes.

pub mod cli;
pub mod report;
pub mod run;

pub use run::{thread_count, verify_parallel};
