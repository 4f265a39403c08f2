//! Group input, a catalog of named groups, and job orchestration for the
//! `scott` command line tool.

pub mod catalog;
pub mod job;
pub mod text;
