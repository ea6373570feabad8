//! Finite posets, down-sets and lattices.

pub mod catalog;
mod lattice;
mod poset;

pub use lattice::{down_sets, DownSetLattice, IntervalView, JoinSemilattice, SubmoduleLattice};
pub use poset::{DownSet, FinitePoset};
