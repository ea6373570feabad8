//! Finite combinatorial models of relative spectra of submodule lattices.
//!
//! The crate works entirely with finite posets and finite lattices:
//!
//! * [`order`] holds finite posets, down-set lattices, join-semilattices and
//!   the catalog generators used by the property suites.
//! * [`spectrum`] computes primes, the spectrum with its generated topology,
//!   support data, the universal map and the classification of submodules.
//! * [`datum`] models an action of a base space's closed subsets on a
//!   submodule lattice, the morphism to the base and its fibers.
//! * [`geometry`] builds the worked geometric instances (perfect complexes,
//!   Severi–Brauer curves, Koszul fibers).
//!
//! Orientation convention used throughout: `x ≤ y` means `x` is a
//! specialization of `y`, i.e. `x` lies in the closure of `{y}`. Closed sets
//! of a finite space are then exactly the down-sets.

pub mod bitset;
pub mod datum;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod limits;
pub mod order;
pub mod spectrum;
pub mod sweep;
pub mod topology;

pub use bitset::IdSet;
pub use error::{Error, Result};
pub use exec::Exec;
pub use limits::Limits;
pub use order::{DownSet, FinitePoset, IntervalView, JoinSemilattice, SubmoduleLattice};
pub use spectrum::{SpectrumSpace, SupportDatum};
