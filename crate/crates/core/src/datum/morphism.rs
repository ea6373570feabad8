use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::limits::Limits;
use crate::order::{FinitePoset, IntervalView};
use crate::spectrum::{is_s_prime, spectrum, SpectrumSpace};
use crate::topology::{continuity_violation, is_homeomorphism, ClosedSets};

use super::model::LatticeDatum;

fn check_prime(dat: &LatticeDatum, p: usize) -> Result<()> {
    if !is_s_prime(dat.sub(), p)? {
        return Err(Error::NotPrime(dat.sub().label(p).to_string()));
    }
    Ok(())
}

/// The base point of a prime `P`, read off the smallest closed set whose
/// action is not contained in `P`.
///
/// The closed sets `Z` with `action(Z) ≰ P` must be closed under
/// intersection; their smallest member must be the closure of one point.
pub fn pi_by_smallest_member(dat: &LatticeDatum, p: usize) -> Result<usize> {
    check_prime(dat, p)?;
    let sub = dat.sub();
    let base = dat.base();
    let family: Vec<IdSet> = dat
        .entries()
        .filter(|&(_, a)| !sub.leq(a, p))
        .map(|(z, _)| z)
        .collect();
    let lookup: std::collections::HashSet<IdSet> = family.iter().copied().collect();
    for (i, &z) in family.iter().enumerate() {
        for &w in &family[i + 1..] {
            if !lookup.contains(&z.intersection(w)) {
                return Err(Error::AdmissibilityViolated(format!(
                    "{} and {} act outside `{}` but their intersection does not",
                    base.format_set(z),
                    base.format_set(w),
                    sub.label(p)
                )));
            }
        }
    }
    let smallest = family
        .iter()
        .copied()
        .reduce(IdSet::intersection)
        .ok_or_else(|| {
            Error::AdmissibilityViolated(format!("no closed set acts outside `{}`", sub.label(p)))
        })?;
    let top_of_smallest: Vec<usize> = smallest
        .iter()
        .filter(|&z| smallest.iter().all(|w| w == z || !base.lt(z, w)))
        .collect();
    match top_of_smallest.as_slice() {
        [z0] if base.down(*z0) == smallest => Ok(*z0),
        _ => Err(Error::AdmissibilityViolated(format!(
            "smallest closed set {} acting outside `{}` is not a point closure",
            base.format_set(smallest),
            sub.label(p)
        ))),
    }
}

/// The base point of a prime `P`, read off the largest closed set acting
/// inside `P`: it must be the complement of `↑z`.
pub fn pi_by_annihilator(dat: &LatticeDatum, p: usize) -> Result<usize> {
    check_prime(dat, p)?;
    let sub = dat.sub();
    let base = dat.base();
    let inside = dat
        .entries()
        .filter(|&(_, a)| sub.leq(a, p))
        .fold(IdSet::EMPTY, |acc, (z, _)| acc.union(z));
    let outside = base.points().difference(inside);
    let minimal: Vec<usize> = outside
        .iter()
        .filter(|&z| outside.iter().all(|w| w == z || !base.lt(w, z)))
        .collect();
    match minimal.as_slice() {
        [z] if base.up(*z) == outside => Ok(*z),
        _ => Err(Error::AdmissibilityViolated(format!(
            "closed sets acting inside `{}` cover {}, not the complement of a point's generalizations",
            sub.label(p),
            base.format_set(inside)
        ))),
    }
}

/// Both readings of the base point, cross-checked.
pub fn base_point_of_prime(dat: &LatticeDatum, p: usize) -> Result<usize> {
    let a = pi_by_smallest_member(dat, p)?;
    let b = pi_by_annihilator(dat, p)?;
    if a != b {
        return Err(Error::VerificationFailed(format!(
            "base point of `{}`: smallest member gives `{}`, annihilator gives `{}`",
            dat.sub().label(p),
            dat.base().label(a),
            dat.base().label(b)
        )));
    }
    Ok(a)
}

/// The base point of every point of `space`.
pub fn pi_map(dat: &LatticeDatum, space: &SpectrumSpace, exec: Exec) -> Result<Vec<usize>> {
    exec.for_len(space.len())
        .map(space.primes(), |&p| base_point_of_prime(dat, p))
        .into_iter()
        .collect()
}

/// The spectrum topology refined by the supports of the acted submodules.
#[derive(Clone, Debug)]
pub struct FinTopology {
    pub closed: ClosedSets,
    /// `Supp(action(Z))` for every closed `Z` of the base, in the datum's
    /// closed-set order.
    pub extra: Vec<IdSet>,
}

impl FinTopology {
    /// Whether the extra generators changed anything.
    pub fn refines_strictly(&self, space: &SpectrumSpace) -> bool {
        self.closed != *space.closed_sets()
    }

    /// A closed base set whose preimage under `pi` is not closed here.
    pub fn continuity_violation(&self, dat: &LatticeDatum, pi: &[usize]) -> Option<IdSet> {
        let base_closed =
            ClosedSets::from_sets(dat.base().len(), dat.closed_sets().iter().copied());
        continuity_violation(pi, &self.closed, &base_closed)
    }
}

pub fn fin_topology(
    dat: &LatticeDatum,
    space: &SpectrumSpace,
    limits: &Limits,
) -> Result<FinTopology> {
    let extra: Vec<IdSet> = dat
        .entries()
        .map(|(_, a)| space.supp(a))
        .collect::<Result<_>>()?;
    let closed = ClosedSets::generated(
        space.len(),
        space
            .closed_sets()
            .sets()
            .iter()
            .chain(extra.iter())
            .copied(),
        limits.max_closed_sets,
    )?;
    Ok(FinTopology { closed, extra })
}

/// Comparison of a fiber with the spectrum of the interval
/// `[action(↓y ∖ {y}), action(↓y)]` via `P ↦ P ∧ action(↓y)`.
#[derive(Clone, Debug)]
pub struct IntervalComparison {
    pub lower: usize,
    pub upper: usize,
    /// The spectrum of the interval; its points are interval element ids,
    /// translated to `sub` ids by `members`.
    pub space: SpectrumSpace,
    pub members: Vec<usize>,
    /// Interval point hit by each fiber point, if the image is prime.
    pub map: Vec<Option<usize>>,
    pub bijective: bool,
    pub continuous: bool,
    pub homeomorphism: bool,
}

/// The primes over a base point with the subspace topology.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub point: usize,
    /// Spectrum points in the fiber.
    pub primes: IdSet,
    pub order: FinitePoset,
    pub closed: ClosedSets,
    pub comparison: IntervalComparison,
}

pub fn fiber(
    dat: &LatticeDatum,
    space: &SpectrumSpace,
    pi: &[usize],
    y: usize,
    limits: &Limits,
) -> Result<Fiber> {
    dat.base().check_point(y)?;
    let primes: IdSet = (0..space.len()).filter(|&q| pi[q] == y).collect();
    let (order, _) = space.order().induced(primes);
    let closed = space.closed_sets().subspace(primes);

    let sub = dat.sub();
    let whole = dat.base().down(y);
    let upper = dat.action(whole)?;
    let lower = dat.action(whole.difference(IdSet::singleton(y)))?;
    let (interval, members) = IntervalView::between(lower, upper).materialize(sub)?;
    let ispace = spectrum(&interval, limits)?;
    let map: Vec<Option<usize>> = primes
        .iter()
        .map(|q| {
            let image = sub.meet(space.prime(q), upper);
            members
                .iter()
                .position(|&m| m == image)
                .and_then(|i| ispace.point_of(i))
        })
        .collect();
    let total: Option<Vec<usize>> = map.iter().copied().collect();
    let (bijective, continuous, homeomorphism) = match &total {
        Some(f) => {
            let image: IdSet = f.iter().copied().collect();
            let bijective = f.len() == ispace.len() && image.len() == f.len();
            let continuous = continuity_violation(f, &closed, ispace.closed_sets()).is_none();
            let homeo =
                bijective && continuous && is_homeomorphism(f, &closed, ispace.closed_sets());
            (bijective, continuous, homeo)
        }
        None => (false, false, false),
    };
    Ok(Fiber {
        point: y,
        primes,
        order,
        closed,
        comparison: IntervalComparison {
            lower,
            upper,
            space: ispace,
            members,
            map,
            bijective,
            continuous,
            homeomorphism,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::model::fixtures::*;
    use crate::order::{down_sets, SubmoduleLattice};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn identity_datum_maps_p_x_to_x() {
        let x = FinitePoset::from_labeled(&["s", "eta"], &[("s", "eta")]).unwrap();
        let dat = identity(&x);
        let space = spectrum(dat.sub(), &limits()).unwrap();
        let d = down_sets(&x, &limits()).unwrap();
        let pi = pi_map(&dat, &space, Exec::Sequential).unwrap();
        for (q, &y) in pi.iter().enumerate() {
            // P_y is the complement of the generalizations of y
            assert_eq!(d.carrier(space.prime(q)), x.points().difference(x.up(y)));
        }
        let fin = fin_topology(&dat, &space, &limits()).unwrap();
        assert!(!fin.refines_strictly(&space));
        assert_eq!(fin.continuity_violation(&dat, &pi), None);
        for y in 0..x.len() {
            let f = fiber(&dat, &space, &pi, y, &limits()).unwrap();
            assert_eq!(f.primes.len(), 1);
            assert!(f.comparison.homeomorphism);
        }
    }

    #[test]
    fn product_datum_projects() {
        // X = 2-chain, Y = 2-antichain, points (i, j) with id 2i + j
        let labels: Vec<String> = (0..4).map(|k| format!("x{}y{}", k / 2, k % 2)).collect();
        let pairs: Vec<(usize, usize)> = (0..2).map(|j| (j, 2 + j)).collect();
        let prod = FinitePoset::from_pairs(labels, &pairs).unwrap();
        let y = FinitePoset::from_labeled(&["y0", "y1"], &[]).unwrap();
        let d = down_sets(&prod, &limits()).unwrap();
        let sub: SubmoduleLattice = d.lattice().clone();
        let dat = LatticeDatum::new(
            sub,
            y,
            |z| {
                let pre: IdSet = (0..4).filter(|k| z.contains(k % 2)).collect();
                d.element_of(pre).unwrap()
            },
            &limits(),
        )
        .unwrap();
        let space = spectrum(dat.sub(), &limits()).unwrap();
        assert_eq!(space.len(), 4);
        let pi = pi_map(&dat, &space, Exec::Sequential).unwrap();
        for (q, &b) in pi.iter().enumerate() {
            // the prime P_(i,j) misses exactly the generalizations of (i, j)
            let missing = prod.points().difference(d.carrier(space.prime(q)));
            let gen = missing.iter().find(|&k| prod.up(k) == missing).unwrap();
            assert_eq!(gen % 2, b);
        }
    }

    #[test]
    fn collapsing_datum_breaks_the_smallest_member() {
        let dat = collapsing();
        let space = spectrum(dat.sub(), &limits()).unwrap();
        let r = pi_by_smallest_member(&dat, space.prime(0));
        assert!(matches!(r, Err(Error::AdmissibilityViolated(_))));
    }

    #[test]
    fn non_prime_is_rejected() {
        let x = FinitePoset::antichain(2);
        let dat = identity(&x);
        let top = dat.sub().top();
        assert!(matches!(
            base_point_of_prime(&dat, top),
            Err(Error::NotPrime(_))
        ));
    }
}
