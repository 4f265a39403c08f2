//! Scott modules, Brauer constructions and fusion systems of finite
//! permutation groups over finite fields, with an engine that checks
//! Brauer indecomposability of Scott modules both through local criteria
//! and by direct computation.

pub mod algstruct;
pub mod error;
pub mod fusion;
pub mod gflinalg;
pub mod modrep;
pub mod permgroup;
pub mod verdict;

pub use error::{Error, Result};
