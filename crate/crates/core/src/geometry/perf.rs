use crate::datum::LatticeDatum;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::order::{down_sets, FinitePoset};
use crate::spectrum::spectrum;
use crate::topology::{is_homeomorphism, preimage, ClosedSets};

/// Down-sets of `x` acted on by the closed sets of `x` themselves.
pub fn perf_model(x: &FinitePoset, limits: &Limits) -> Result<LatticeDatum> {
    let d = down_sets(x, limits)?;
    let sub = d.lattice().clone();
    LatticeDatum::new(
        sub,
        x.clone(),
        |z| d.element_of(z).expect("closed sets are down-sets"),
        limits,
    )
}

/// Down-sets of `total` acted on by the closed sets of `base` through their
/// preimages under the monotone map `over`.
pub fn perf_over(
    total: &FinitePoset,
    base: &FinitePoset,
    over: &[usize],
    limits: &Limits,
) -> Result<LatticeDatum> {
    if over.len() != total.len() {
        return Err(Error::InvalidDatum(format!(
            "{} images for {} points",
            over.len(),
            total.len()
        )));
    }
    for &y in over {
        base.check_point(y)?;
    }
    for (a, b) in total.hasse_edges() {
        if !base.leq(over[a], over[b]) {
            return Err(Error::InvalidDatum(format!(
                "`{}` < `{}` but their images are not ordered",
                total.label(a),
                total.label(b)
            )));
        }
    }
    let d = down_sets(total, limits)?;
    let sub = d.lattice().clone();
    LatticeDatum::new(
        sub,
        base.clone(),
        |z| {
            d.element_of(preimage(over, z))
                .expect("preimage of a down-set")
        },
        limits,
    )
}

/// Submodules classified by the specialization-closed subsets of `space`.
pub fn classified_by_subset(space: &FinitePoset, limits: &Limits) -> Result<LatticeDatum> {
    perf_model(space, limits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    /// Spectrum point of `P_x = X ∖ ↑x` for every `x`, when it is prime.
    pub map: Vec<Option<usize>>,
    pub order_isomorphic: bool,
    pub homeomorphic: bool,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.order_isomorphic && self.homeomorphic
    }
}

/// Compares `spectrum(down_sets(x))` with `x` through `x ↦ X ∖ ↑x`.
pub fn roundtrip_check(x: &FinitePoset, limits: &Limits) -> Result<RoundTrip> {
    let d = down_sets(x, limits)?;
    let s = spectrum(&d, limits)?;
    let map: Vec<Option<usize>> = (0..x.len())
        .map(|y| {
            d.element_of(x.points().difference(x.up(y)))
                .and_then(|e| s.point_of(e))
        })
        .collect();
    let total: Option<Vec<usize>> = map.iter().copied().collect();
    let (order_isomorphic, homeomorphic) = match &total {
        Some(f) if s.len() == x.len() => (
            x.is_isomorphism(s.order(), f),
            is_homeomorphism(f, &ClosedSets::of_poset(x, limits)?, s.closed_sets()),
        ),
        _ => (false, false),
    };
    Ok(RoundTrip {
        map,
        order_isomorphic,
        homeomorphic,
    })
}
