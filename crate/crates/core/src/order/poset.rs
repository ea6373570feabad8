use std::collections::HashMap;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A finite partial order on at most 128 points.
///
/// `leq(x, y)` reads "x is a specialization of y": `x` lies in the closure of
/// `{y}`. Closed subsets of the associated finite T0 space are the down-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `down[x] = { y | y ≤ x }`
    down: Vec<IdSet>,
    /// `up[x] = { y | x ≤ y }`
    up: Vec<IdSet>,
}

/// A specialization-closed subset of a [`FinitePoset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DownSet(IdSet);

impl DownSet {
    pub fn carrier(self) -> IdSet {
        self.0
    }
}

impl From<DownSet> for IdSet {
    fn from(d: DownSet) -> IdSet {
        d.0
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl FinitePoset {
    pub fn empty() -> Self {
        FinitePoset {
            labels: Vec::new(),
            down: Vec::new(),
            up: Vec::new(),
        }
    }

    /// Points `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(default_labels(n), &pairs).expect("chain is a valid poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_pairs(default_labels(n), &[]).expect("antichain is a valid poset")
    }

    /// Reflexive-transitive closure of the generating pairs `(a, b)`, read
    /// `a ≤ b`. Fails on duplicate labels, out-of-range ids or cycles.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > IdSet::CAPACITY {
            return Err(Error::SizeGuard {
                what: "poset points",
                actual: n,
                limit: IdSet::CAPACITY,
            });
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::InvalidPoset(format!(
                    "duplicate point `{l}` (ids {j} and {i})"
                )));
            }
        }
        let mut down: Vec<IdSet> = (0..n).map(IdSet::singleton).collect();
        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::UnknownPoint(a));
            }
            if b >= n {
                return Err(Error::UnknownPoint(b));
            }
            down[b].insert(a);
        }
        // Warshall on rows
        for k in 0..n {
            for x in 0..n {
                if down[x].contains(k) {
                    down[x] = down[x].union(down[k]);
                }
            }
        }
        Self::from_down_sets(labels, down)
    }

    /// Build from labels and `(lower, upper)` label pairs.
    pub fn from_labeled(labels: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let look = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let pairs = pairs
            .iter()
            .map(|(a, b)| Ok((look(a)?, look(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(labels.iter().map(|l| l.to_string()).collect(), &pairs)
    }

    /// Build from explicit principal down-sets, validating the partial order
    /// axioms.
    pub fn from_down_sets(labels: Vec<String>, down: Vec<IdSet>) -> Result<Self> {
        let n = labels.len();
        if down.len() != n {
            return Err(Error::InvalidPoset(
                "row count differs from point count".into(),
            ));
        }
        let all = IdSet::full(n);
        for (x, row) in down.iter().enumerate() {
            if !row.is_subset(all) {
                return Err(Error::InvalidPoset(format!(
                    "row {x} references unknown points"
                )));
            }
            if !row.contains(x) {
                return Err(Error::InvalidPoset(format!(
                    "not reflexive at `{}`",
                    labels[x]
                )));
            }
            for y in row.iter() {
                if !down[y].is_subset(*row) {
                    return Err(Error::InvalidPoset(format!(
                        "not transitive at `{}` ≤ `{}`",
                        labels[y], labels[x]
                    )));
                }
                if y != x && down[y].contains(x) {
                    return Err(Error::InvalidPoset(format!(
                        "`{}` and `{}` are mutually related (not T0)",
                        labels[x], labels[y]
                    )));
                }
            }
        }
        let mut up = vec![IdSet::EMPTY; n];
        for (x, row) in down.iter().enumerate() {
            for y in row.iter() {
                up[y].insert(x);
            }
        }
        Ok(FinitePoset { labels, down, up })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidPoset(
                "label count differs from point count".into(),
            ));
        }
        let down = std::mem::take(&mut self.down);
        Self::from_down_sets(labels, down)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn points(&self) -> IdSet {
        IdSet::full(self.len())
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownPoint(x))
        }
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `↓x`, the closure of `{x}`.
    #[inline]
    pub fn down(&self, x: usize) -> IdSet {
        self.down[x]
    }

    /// `↑x`, the generalizations of `x`.
    #[inline]
    pub fn up(&self, x: usize) -> IdSet {
        self.up[x]
    }

    pub fn is_down_set(&self, s: IdSet) -> bool {
        s.is_subset(self.points()) && s.iter().all(|x| self.down[x].is_subset(s))
    }

    pub fn is_up_set(&self, s: IdSet) -> bool {
        s.is_subset(self.points()) && s.iter().all(|x| self.up[x].is_subset(s))
    }

    pub fn down_set(&self, s: IdSet) -> Result<DownSet> {
        if let Some(bad) = s.difference(self.points()).first() {
            return Err(Error::UnknownPoint(bad));
        }
        if !self.is_down_set(s) {
            return Err(Error::InvalidPoset(format!(
                "{} is not specialization-closed",
                self.format_set(s)
            )));
        }
        Ok(DownSet(s))
    }

    /// Smallest down-set containing `w`.
    pub fn down_closure(&self, w: IdSet) -> Result<DownSet> {
        if let Some(bad) = w.difference(self.points()).first() {
            return Err(Error::UnknownPoint(bad));
        }
        Ok(DownSet(self.closure_unchecked(w)))
    }

    pub(crate) fn closure_unchecked(&self, w: IdSet) -> IdSet {
        w.iter()
            .fold(IdSet::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    pub fn up_closure(&self, w: IdSet) -> IdSet {
        w.iter().fold(IdSet::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    pub fn minimal_points(&self) -> IdSet {
        (0..self.len())
            .filter(|&x| self.down[x].len() == 1)
            .collect()
    }

    pub fn maximal_points(&self) -> IdSet {
        (0..self.len()).filter(|&x| self.up[x].len() == 1).collect()
    }

    /// Cover relations `(lower, upper)` in lexicographic order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for upper in 0..self.len() {
            let strict = self.down[upper].difference(IdSet::singleton(upper));
            for lower in strict.iter() {
                let between = self.up[lower]
                    .intersection(strict)
                    .difference(IdSet::singleton(lower));
                if between.is_empty() {
                    edges.push((lower, upper));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Points ordered so that every point comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        // |↓x| strictly grows along strict chains
        order.sort_by_key(|&x| (self.down[x].len(), x));
        order
    }

    /// Length in edges of the longest chain, `-1` for the empty poset.
    pub fn krull_dimension(&self) -> i64 {
        let mut height = vec![0i64; self.len()];
        let mut best = -1;
        for x in self.linear_extension() {
            let h = self.down[x]
                .iter()
                .filter(|&y| y != x)
                .map(|y| height[y] + 1)
                .max()
                .unwrap_or(0);
            height[x] = h;
            best = best.max(h);
        }
        best
    }

    /// A unique closed point that every point generalizes.
    pub fn is_local(&self) -> bool {
        let n = self.len();
        n > 0 && (0..n).any(|s| self.up[s] == self.points())
    }

    /// Visit every down-set once. Aborts with a size-guard error when more
    /// than `limit` down-sets would be produced.
    pub fn for_each_down_set(&self, limit: usize, mut f: impl FnMut(IdSet)) -> Result<usize> {
        let order = self.linear_extension();
        let strict_down: Vec<IdSet> = (0..self.len())
            .map(|x| self.down[x].difference(IdSet::singleton(x)))
            .collect();
        let mut count = 0usize;
        let mut stack: Vec<(usize, IdSet)> = vec![(0, IdSet::EMPTY)];
        while let Some((i, cur)) = stack.pop() {
            if i == order.len() {
                count += 1;
                if count > limit {
                    return Err(Error::SizeGuard {
                        what: "down-sets",
                        actual: count,
                        limit,
                    });
                }
                f(cur);
                continue;
            }
            let x = order[i];
            if strict_down[x].is_subset(cur) {
                stack.push((i + 1, cur.with(x)));
            }
            stack.push((i + 1, cur));
        }
        Ok(count)
    }

    /// All down-sets, sorted by size and then by bit pattern.
    pub fn down_sets(&self, limits: &Limits) -> Result<Vec<IdSet>> {
        Limits::check("poset points", self.len(), limits.max_points)?;
        let mut out = Vec::new();
        self.for_each_down_set(limits.max_elements.max(limits.max_closed_sets), |s| {
            out.push(s)
        })?;
        out.sort_by_key(|s| (s.len(), s.bits()));
        Ok(out)
    }

    /// Subposet on `subset`; the returned vector maps new ids to old ids.
    pub fn induced(&self, subset: IdSet) -> (FinitePoset, Vec<usize>) {
        let map: Vec<usize> = subset.iter().collect();
        let mut inv = vec![usize::MAX; self.len()];
        for (i, &x) in map.iter().enumerate() {
            inv[x] = i;
        }
        let labels = map.iter().map(|&x| self.labels[x].clone()).collect();
        let down = map
            .iter()
            .map(|&x| self.down[x].intersection(subset).map(|y| inv[y]))
            .collect();
        let p =
            FinitePoset::from_down_sets(labels, down).expect("induced order is a partial order");
        (p, map)
    }

    /// Disjoint union, `other`'s points shifted after `self`'s.
    pub fn disjoint_union(&self, other: &FinitePoset) -> Result<FinitePoset> {
        let shift = self.len();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut down = self.down.clone();
        down.extend(other.down.iter().map(|d| d.map(|y| y + shift)));
        FinitePoset::from_down_sets(labels, down)
    }

    /// Add relations `(a, b)` meaning `a ≤ b` and re-close transitively.
    pub fn with_relations(&self, pairs: &[(usize, usize)]) -> Result<FinitePoset> {
        let mut all: Vec<(usize, usize)> = Vec::new();
        for x in 0..self.len() {
            for y in self.down[x].iter() {
                all.push((y, x));
            }
        }
        all.extend_from_slice(pairs);
        FinitePoset::from_pairs(self.labels.clone(), &all)
    }

    /// An order isomorphism `self → other`, if one exists. Backtracking with
    /// up/down-degree pruning.
    pub fn isomorphism_to(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |p: &FinitePoset, x: usize| (p.down[x].len(), p.up[x].len());
        let mut a_sigs: Vec<_> = (0..n).map(|x| sig(self, x)).collect();
        let mut b_sigs: Vec<_> = (0..n).map(|x| sig(other, x)).collect();
        a_sigs.sort_unstable();
        b_sigs.sort_unstable();
        if a_sigs != b_sigs {
            return None;
        }
        let order = self.linear_extension();
        let mut map = vec![usize::MAX; n];
        let mut used = IdSet::EMPTY;
        fn go(
            a: &FinitePoset,
            b: &FinitePoset,
            order: &[usize],
            i: usize,
            map: &mut [usize],
            used: &mut IdSet,
        ) -> bool {
            if i == order.len() {
                return true;
            }
            let x = order[i];
            for y in 0..b.len() {
                if used.contains(y)
                    || a.down[x].len() != b.down[y].len()
                    || a.up[x].len() != b.up[y].len()
                {
                    continue;
                }
                let ok = order[..i]
                    .iter()
                    .all(|&z| a.leq(z, x) == b.leq(map[z], y) && a.leq(x, z) == b.leq(y, map[z]));
                if ok {
                    map[x] = y;
                    used.insert(y);
                    if go(a, b, order, i + 1, map, used) {
                        return true;
                    }
                    used.remove(y);
                    map[x] = usize::MAX;
                }
            }
            false
        }
        go(self, other, &order, 0, &mut map, &mut used).then_some(map)
    }

    /// Whether `map` (indexed by `self`'s points) is an order isomorphism.
    pub fn is_isomorphism(&self, other: &FinitePoset, map: &[usize]) -> bool {
        let n = self.len();
        if other.len() != n || map.len() != n {
            return false;
        }
        let image: IdSet = map.iter().copied().filter(|&y| y < n).collect();
        image.len() == n
            && (0..n).all(|x| (0..n).all(|y| self.leq(x, y) == other.leq(map[x], map[y])))
    }

    /// Renders `{a,b}` with labels in id order.
    pub fn format_set(&self, s: IdSet) -> String {
        let names: Vec<&str> = s.iter().map(|x| self.labels[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}
