//! Library surface of the command-line front end, split out so the
//! commands and formats are testable without spawning the binary.

#![forbid(unsafe_code)]

pub mod commands;
pub mod explore;
pub mod format;
pub mod report;
