//! The worked geometric examples as finite lattice data.

mod koszul;
mod perf;
mod sb;

pub use koszul::{
    coh_sing_spaces, koszul_fiber, projective_model, random_scheme_model, CohSing, KoszulFiber,
    PointAttrs, SchemeModel,
};
pub use perf::{classified_by_subset, perf_model, perf_over, roundtrip_check, RoundTrip};
pub use sb::{
    p1_model, sb_datum, sb_is_admissible, sb_submodule_lattice, FiberDescriptor, SbClosure,
    SbLattice, SbModel, YPoint,
};
