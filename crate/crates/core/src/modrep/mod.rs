//! Modules over group algebras: permutation modules and their summands,
//! restriction, fixed points, relative traces, the Brauer construction,
//! decomposition into indecomposables, Scott modules and vertices.

mod brauer;
mod endo;
mod gset;
mod module;
mod scott;

pub use brauer::{brauer_dim, brauer_quotient, brauer_quotient_with, trace_sum, BrauerMethod, BrauerResult};
pub use endo::{
    decompose, decompose_with, endo_algebra, endo_from_orbital, hom_space, is_indecomposable,
    split_pair, EndoAlgebra, OrbitalAlgebra,
};
pub use gset::{coset_gset, GSet};
pub use module::{perm_module, GModule, MatRep, Provenance};
pub use scott::{scott_module, vertex};
