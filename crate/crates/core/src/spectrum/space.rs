use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::limits::Limits;
use crate::order::{FinitePoset, JoinSemilattice};
use crate::spectrum::prime::is_s_prime;
use crate::topology::ClosedSets;

/// The primes of a finite semilattice with the topology generated by the
/// supports `Supp(e) = { P | e ≰ P }`.
///
/// Points are numbered `0..len()` in increasing element-id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumSpace {
    primes: Vec<usize>,
    order: FinitePoset,
    closed: ClosedSets,
    supports: Vec<IdSet>,
}

pub fn spectrum(l: &JoinSemilattice, limits: &Limits) -> Result<SpectrumSpace> {
    spectrum_with(l, limits, Exec::default())
}

pub fn spectrum_with(l: &JoinSemilattice, limits: &Limits, exec: Exec) -> Result<SpectrumSpace> {
    let n = l.len();
    let exec = exec.for_len(n);
    let flags = exec.map_range(n, |e| is_s_prime(l, e).expect("element in range"));
    let primes: Vec<usize> = (0..n).filter(|&e| flags[e]).collect();
    Limits::check("primes", primes.len(), IdSet::CAPACITY)?;

    let labels = primes.iter().map(|&p| l.label(p).to_string()).collect();
    let down = primes
        .iter()
        .map(|&p| (0..primes.len()).filter(|&q| l.leq(primes[q], p)).collect())
        .collect();
    let order = FinitePoset::from_down_sets(labels, down)?;
    let supports = exec.map_range(n, |e| {
        (0..primes.len())
            .filter(|&q| !l.leq(e, primes[q]))
            .collect::<IdSet>()
    });
    let closed = ClosedSets::generated(
        primes.len(),
        supports.iter().copied(),
        limits.max_closed_sets,
    )?;
    Ok(SpectrumSpace {
        primes,
        order,
        closed,
        supports,
    })
}

impl SpectrumSpace {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn all(&self) -> IdSet {
        IdSet::full(self.len())
    }

    /// Lattice element of each point.
    pub fn primes(&self) -> &[usize] {
        &self.primes
    }

    pub fn prime(&self, point: usize) -> usize {
        self.primes[point]
    }

    /// The point standing for lattice element `e`, if `e` is prime.
    pub fn point_of(&self, e: usize) -> Option<usize> {
        self.primes.binary_search(&e).ok()
    }

    pub fn labels(&self) -> &[String] {
        self.order.labels()
    }

    pub fn label(&self, point: usize) -> &str {
        self.order.label(point)
    }

    /// Specialization order: `Q ≤ P` iff `Q ⊆ P`.
    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn closed_sets(&self) -> &ClosedSets {
        &self.closed
    }

    pub fn supp(&self, e: usize) -> Result<IdSet> {
        self.supports
            .get(e)
            .copied()
            .ok_or(Error::UnknownElement(e))
    }

    /// `Supp(e)` for every element of the lattice, by element id.
    pub fn supports(&self) -> &[IdSet] {
        &self.supports
    }

    pub fn format_set(&self, s: IdSet) -> String {
        self.order.format_set(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{down_sets, SubmoduleLattice};

    #[test]
    fn one_element_lattice_has_empty_spectrum() {
        let l = JoinSemilattice::from_leq(vec!["0".into()], |_, _| true).unwrap();
        let s = spectrum(&l, &Limits::default()).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.closed_sets().len(), 1);
    }

    #[test]
    fn two_chain_has_one_prime() {
        let l = SubmoduleLattice::from_leq(vec!["0".into(), "1".into()], |a, b| a <= b).unwrap();
        let s = spectrum(&l, &Limits::default()).unwrap();
        assert_eq!(s.primes(), &[0]);
        assert_eq!(s.supp(0).unwrap(), IdSet::EMPTY);
        assert_eq!(s.supp(1).unwrap(), s.all());
    }

    #[test]
    fn antichain_spectrum_is_discrete() {
        let x = FinitePoset::antichain(2);
        let d = down_sets(&x, &Limits::default()).unwrap();
        let s = spectrum(&d, &Limits::default()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.closed_sets().len(), 4);
        // primes are {0} and {1}, the complements of the up-sets
        let carriers: Vec<IdSet> = s.primes().iter().map(|&p| d.carrier(p)).collect();
        assert!(carriers.contains(&IdSet::singleton(0)));
        assert!(carriers.contains(&IdSet::singleton(1)));
    }

    #[test]
    fn dvr_supports() {
        // chain s < eta: down-sets {}, {s}, {s,eta}; primes {} = P_s and {s} = P_eta
        let x = FinitePoset::from_labeled(&["s", "eta"], &[("s", "eta")]).unwrap();
        let d = down_sets(&x, &Limits::default()).unwrap();
        let s = spectrum(&d, &Limits::default()).unwrap();
        let p_s = s.point_of(d.element_of(IdSet::EMPTY).unwrap()).unwrap();
        let p_eta = s
            .point_of(d.element_of(IdSet::singleton(0)).unwrap())
            .unwrap();
        let e_s = d.element_of(IdSet::singleton(0)).unwrap();
        assert_eq!(s.supp(e_s).unwrap(), IdSet::singleton(p_s));
        assert_eq!(s.supp(d.top()).unwrap(), IdSet::from_iter([p_s, p_eta]));
        assert!(s.order().leq(p_s, p_eta));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let x = FinitePoset::chain(3)
            .disjoint_union(&FinitePoset::antichain(3))
            .unwrap();
        let d = down_sets(&x, &Limits::default()).unwrap();
        let a = spectrum_with(&d, &Limits::default(), Exec::Sequential).unwrap();
        let b = spectrum_with(&d, &Limits::default(), Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
