//! Finite topologies given by explicit families of closed sets.

use std::collections::HashSet;

use crate::bitset::IdSet;
use crate::error::Result;
use crate::limits::Limits;
use crate::order::FinitePoset;

/// The closed sets of a topology on the points `0..n`.
#[derive(Clone, Debug)]
pub struct ClosedSets {
    n: usize,
    sets: Vec<IdSet>,
    lookup: HashSet<IdSet>,
}

impl PartialEq for ClosedSets {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sets == other.sets
    }
}

impl Eq for ClosedSets {}

fn sorted(mut sets: Vec<IdSet>) -> Vec<IdSet> {
    sets.sort_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    sets
}

impl ClosedSets {
    /// The family generated by `generators` under finite unions and finite
    /// intersections (so it contains `∅` and the whole space).
    pub fn generated(
        n: usize,
        generators: impl IntoIterator<Item = IdSet>,
        limit: usize,
    ) -> Result<ClosedSets> {
        let full = IdSet::full(n);
        let gens: Vec<IdSet> = {
            let g: HashSet<IdSet> = generators
                .into_iter()
                .map(|g| g.intersection(full))
                .collect();
            g.into_iter().collect()
        };

        // Intersections first; unions of those are then intersection-closed
        // by distributivity.
        let mut meets: HashSet<IdSet> = HashSet::from([full]);
        let mut work = vec![full];
        while let Some(s) = work.pop() {
            for &g in &gens {
                let t = s.intersection(g);
                if meets.insert(t) {
                    work.push(t);
                }
            }
            Limits::check("closed sets", meets.len(), limit)?;
        }
        let meets: Vec<IdSet> = meets.into_iter().collect();
        let mut all: HashSet<IdSet> = meets.iter().copied().collect();
        all.insert(IdSet::EMPTY);
        let mut work: Vec<IdSet> = all.iter().copied().collect();
        while let Some(s) = work.pop() {
            for &m in &meets {
                let t = s.union(m);
                if all.insert(t) {
                    work.push(t);
                }
            }
            Limits::check("closed sets", all.len(), limit)?;
        }
        Ok(Self::from_sets(n, all))
    }

    /// Take a family verbatim (no closure is applied).
    pub fn from_sets(n: usize, sets: impl IntoIterator<Item = IdSet>) -> ClosedSets {
        let sets = sorted(sets.into_iter().collect());
        let lookup = sets.iter().copied().collect();
        ClosedSets { n, sets, lookup }
    }

    /// The Alexandrov topology of a poset: closed sets are the down-sets.
    pub fn of_poset(p: &FinitePoset, limits: &Limits) -> Result<ClosedSets> {
        let mut sets = Vec::new();
        p.for_each_down_set(limits.max_closed_sets, |s| sets.push(s))?;
        Ok(Self::from_sets(p.len(), sets))
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[IdSet] {
        &self.sets
    }

    pub fn contains(&self, s: IdSet) -> bool {
        self.lookup.contains(&s)
    }

    /// Smallest closed set containing `s` (intersection of all closed
    /// supersets; the whole space if there are none).
    pub fn closure(&self, s: IdSet) -> IdSet {
        self.sets
            .iter()
            .filter(|c| s.is_subset(**c))
            .fold(IdSet::full(self.n), |acc, &c| acc.intersection(c))
    }

    /// A pair of distinct points no closed set separates, if any.
    pub fn t0_violation(&self) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in x + 1..self.n {
                let separated = self.sets.iter().any(|c| c.contains(x) != c.contains(y));
                if !separated {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Specialization order: `x ≤ y` iff `x ∈ closure{y}`.
    pub fn specialization_order(&self, labels: Vec<String>) -> Result<FinitePoset> {
        let down = (0..self.n)
            .map(|y| self.closure(IdSet::singleton(y)))
            .collect();
        FinitePoset::from_down_sets(labels, down)
    }

    /// Traces `c ∩ subset`, re-indexed onto `0..|subset|` in id order.
    pub fn subspace(&self, subset: IdSet) -> ClosedSets {
        let map: Vec<usize> = subset.iter().collect();
        let mut inv = vec![usize::MAX; self.n];
        for (i, &x) in map.iter().enumerate() {
            inv[x] = i;
        }
        Self::from_sets(
            map.len(),
            self.sets
                .iter()
                .map(|c| c.intersection(subset).map(|x| inv[x])),
        )
    }

    /// Whether every member of `other` is closed here.
    pub fn refines(&self, other: &ClosedSets) -> bool {
        self.n == other.n && other.sets.iter().all(|c| self.contains(*c))
    }
}

/// `{ x | map[x] ∈ target }`.
pub fn preimage(map: &[usize], target: IdSet) -> IdSet {
    map.iter()
        .enumerate()
        .filter(|(_, &y)| target.contains(y))
        .map(|(x, _)| x)
        .collect()
}

/// Image of a set under a point map.
pub fn image(map: &[usize], source: IdSet) -> IdSet {
    source.iter().map(|x| map[x]).collect()
}

/// A target-closed set whose preimage is not source-closed, if any.
pub fn continuity_violation(
    map: &[usize],
    source: &ClosedSets,
    target: &ClosedSets,
) -> Option<IdSet> {
    target
        .sets()
        .iter()
        .copied()
        .find(|&c| !source.contains(preimage(map, c)))
}

/// Whether a bijection `map` carries the closed sets of `source` exactly
/// onto those of `target`.
pub fn is_homeomorphism(map: &[usize], source: &ClosedSets, target: &ClosedSets) -> bool {
    let n = source.points();
    let img: IdSet = map.iter().copied().collect();
    map.len() == n
        && target.points() == n
        && img == IdSet::full(n)
        && source.len() == target.len()
        && source
            .sets()
            .iter()
            .all(|&c| target.contains(image(map, c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_closes_under_both_operations() {
        let a = IdSet::from_bits(0b011);
        let b = IdSet::from_bits(0b110);
        let c = ClosedSets::generated(3, [a, b], 1 << 10).unwrap();
        let expect: Vec<IdSet> = [0b000, 0b010, 0b011, 0b110, 0b111]
            .into_iter()
            .map(IdSet::from_bits)
            .collect();
        let mut got = c.sets().to_vec();
        got.sort();
        assert_eq!(got, expect);
        assert_eq!(c.closure(IdSet::singleton(0)), a);
        assert_eq!(c.t0_violation(), None);
    }

    #[test]
    fn t0_failure_is_reported() {
        let c = ClosedSets::generated(2, [IdSet::full(2)], 16).unwrap();
        assert_eq!(c.t0_violation(), Some((0, 1)));
    }

    #[test]
    fn poset_topology_round_trips_through_specialization() {
        let p = FinitePoset::from_labeled(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let c = ClosedSets::of_poset(&p, &Limits::default()).unwrap();
        let q = c.specialization_order(p.labels().to_vec()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn continuity_of_a_constant_map() {
        let src = ClosedSets::generated(2, [IdSet::singleton(0)], 16).unwrap();
        let tgt = ClosedSets::generated(1, [], 16).unwrap();
        assert_eq!(continuity_violation(&[0, 0], &src, &tgt), None);
        let discrete =
            ClosedSets::generated(2, [IdSet::singleton(0), IdSet::singleton(1)], 16).unwrap();
        assert_eq!(
            continuity_violation(&[0, 1], &src, &discrete),
            Some(IdSet::singleton(1))
        );
    }
}
