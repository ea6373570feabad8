//! Three independent readings of primality. On finite lattices they agree;
//! the property suites check exactly that.

use crate::bitset::IdSet;
use crate::error::Result;
use crate::order::{JoinSemilattice, SubmoduleLattice};
use crate::spectrum::ind::IndObject;

/// `p` is prime when the intersection of all ideals strictly above `↓p` is
/// still strictly above `↓p`. The empty family intersects to the whole
/// lattice, which equals `↓⊤`, so the top is never prime.
///
/// Works on bare join-semilattices: an element `d` lies in that intersection
/// iff it is below every `a > p`.
pub fn is_s_prime(l: &JoinSemilattice, p: usize) -> Result<bool> {
    l.check(p)?;
    Ok((0..l.len()).any(|d| !l.leq(d, p) && l.strictly_above(p).all(|a| l.leq(d, a))))
}

/// The definition read literally on an explicit ind-completion: `ambient`
/// is the carrier of the whole lattice.
pub fn is_s_prime_ind(ind: &[IndObject], p: IndObject, ambient: IdSet) -> bool {
    let p = p.carrier();
    let meet = ind
        .iter()
        .map(|o| o.carrier())
        .filter(|&s| p.is_subset(s) && s != p)
        .fold(ambient, IdSet::intersection);
    p.is_subset(meet) && meet != p
}

/// Pairwise version: any two strict over-elements meet strictly above `p`.
/// Vacuous at the top, which is excluded by convention.
pub fn is_quasi_s_prime(sub: &SubmoduleLattice, p: usize) -> Result<bool> {
    sub.check(p)?;
    if p == sub.top() {
        return Ok(false);
    }
    let above: Vec<usize> = sub.strictly_above(p).collect();
    Ok(above
        .iter()
        .all(|&a| above.iter().all(|&b| sub.meet(a, b) != p)))
}

pub fn has_unique_cover(l: &JoinSemilattice, p: usize) -> Result<bool> {
    Ok(l.covers(p)?.len() == 1)
}
