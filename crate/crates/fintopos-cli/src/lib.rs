//! Workspace parsing, command dispatch, and report emission for the
//! `fintopos` binary.
//!
//! The library side exists so integration tests can drive commands without
//! spawning the binary; `main.rs` is a thin argument-parsing shell.

#![forbid(unsafe_code)]

pub mod commands;
pub mod dsl;
pub mod report;
pub mod workspace;
