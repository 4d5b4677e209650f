//! Library surface of the `simnoise` command-line tool.
//!
//! The binary is a thin argument parser over these modules; integration
//! tests drive them directly.

pub mod analysis;
pub mod error;
pub mod export;
pub mod manifest;
pub mod plan;
pub mod report;
pub mod trace;
