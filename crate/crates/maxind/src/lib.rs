//! Std companion of `maxind-core`: group-spec parsing, reports and the
//! corpus runner behind the `maxind` command.

pub mod commands;
pub mod corpus;
pub mod engine;
pub mod report;
pub mod spec;

pub use maxind_core as core;
