//! Primes of a finite semilattice, the spectrum with its generated topology,
//! support data and the classification of submodules by supports.

mod classify;
mod ind;
mod prime;
mod space;
mod support;

pub use classify::{classify, prime_decomposition, supp};
pub use ind::{ind_completion, principal, IndObject};
pub use prime::{has_unique_cover, is_quasi_s_prime, is_s_prime, is_s_prime_ind};
pub use space::{spectrum, spectrum_with, SpectrumSpace};
pub use support::{
    check_support_datum, support_data_enumerate, support_data_maps, universal_map, Axiom,
    SupportDatum, SupportReport, UniversalMap,
};
