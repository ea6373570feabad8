use crate::bitset::IdSet;
use crate::error::Result;
use crate::limits::Limits;
use crate::order::JoinSemilattice;

/// A nonempty, down-closed, join-closed set of elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndObject(IdSet);

impl IndObject {
    pub fn carrier(self) -> IdSet {
        self.0
    }

    /// The largest member, if there is one.
    pub fn maximum(self, l: &JoinSemilattice) -> Option<usize> {
        self.0.iter().find(|&m| self.0.iter().all(|x| l.leq(x, m)))
    }

    pub fn is_valid(s: IdSet, l: &JoinSemilattice) -> bool {
        !s.is_empty()
            && s.iter().all(|x| l.down_set(x).all(|y| s.contains(y)))
            && s.iter().all(|a| s.iter().all(|b| s.contains(l.join(a, b))))
    }
}

/// `↓e` as an ind-object.
pub fn principal(l: &JoinSemilattice, e: usize) -> Result<IndObject> {
    l.check(e)?;
    Limits::check("lattice elements", l.len(), IdSet::CAPACITY)?;
    Ok(IndObject(l.down_set(e).collect()))
}

/// Every ind-object of `l`, found by filtering all down-sets of the
/// underlying order. Sorted by size, then bit pattern.
pub fn ind_completion(l: &JoinSemilattice, limits: &Limits) -> Result<Vec<IndObject>> {
    Limits::check("enumerated lattice", l.len(), limits.max_enumerated_lattice)?;
    let poset = l.as_poset()?;
    let mut out = Vec::new();
    poset.for_each_down_set(limits.max_closed_sets, |s| {
        if IndObject::is_valid(s, l) {
            out.push(IndObject(s));
        }
    })?;
    out.sort_by_key(|o| (o.0.len(), o.0.bits()));
    Ok(out)
}
