//! An action of the closed subsets of a base poset on a submodule lattice,
//! the morphism from the spectrum to the base, fibers, quotients and the
//! gluing check for submodule lattices.

mod model;
mod morphism;
mod quotient;

pub use model::{validate_admissible, AdmissibilityReport, Condition, LatticeDatum, Violation};
pub use morphism::{
    base_point_of_prime, fiber, fin_topology, pi_by_annihilator, pi_by_smallest_member, pi_map,
    Fiber, FinTopology, IntervalComparison,
};
pub use quotient::{
    check_sheaf_on_action_image, check_sub_sheaf, quotient_spectrum, spectrum_decomposition,
    Decomposition, QuotientSpectrum, SheafReport,
};
