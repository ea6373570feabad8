use std::collections::HashMap;
use std::ops::Deref;

use fixedbitset::FixedBitSet;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::limits::Limits;
use crate::order::poset::FinitePoset;

const NONE: u32 = u32::MAX;

/// A finite join-semilattice with materialized join (and, when every pair
/// has an infimum, meet) tables.
///
/// Elements are the ids `0..len()`. Finite join-semilattices always have a
/// top; a bottom exists exactly when meets do.
#[derive(Clone, Debug)]
pub struct JoinSemilattice {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    join: Vec<u32>,
    meet: Option<Vec<u32>>,
    covers: Vec<Vec<usize>>,
    top: usize,
}

fn row(n: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for m in members {
        b.insert(m);
    }
    b
}

/// Least element of an up-closed set `u`, i.e. the `m ∈ u` with `↑m = u`.
fn least_of(u: &FixedBitSet, up_count: &[usize]) -> Option<usize> {
    let size = u.count_ones(..);
    u.ones().find(|&m| up_count[m] == size)
}

impl JoinSemilattice {
    /// Build from labels and an order predicate `leq(a, b)`. Validates the
    /// partial-order axioms and the existence of all binary joins; meets are
    /// tabulated when they all exist.
    pub fn from_leq(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidLattice(
                "a semilattice needs at least one element".into(),
            ));
        }
        let up: Vec<FixedBitSet> = (0..n)
            .map(|a| row(n, (0..n).filter(|&b| leq(a, b))))
            .collect();
        Self::from_up_rows(labels, up)
    }

    fn from_up_rows(labels: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self> {
        let n = labels.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, r) in up.iter().enumerate() {
            if !r.contains(a) {
                return Err(Error::InvalidLattice(format!(
                    "order not reflexive at `{}`",
                    labels[a]
                )));
            }
            for b in r.ones() {
                down[b].insert(a);
                if b != a && up[b].contains(a) {
                    return Err(Error::InvalidLattice(format!(
                        "`{}` and `{}` are mutually related",
                        labels[a], labels[b]
                    )));
                }
                if !up[b].is_subset(r) {
                    return Err(Error::InvalidLattice(format!(
                        "order not transitive through `{}`",
                        labels[b]
                    )));
                }
            }
        }
        let up_count: Vec<usize> = up.iter().map(|r| r.count_ones(..)).collect();
        let down_count: Vec<usize> = down.iter().map(|r| r.count_ones(..)).collect();
        let exec = Exec::default().for_len(n);

        let join_rows: Vec<Vec<u32>> = exec.map_range(n, |a| {
            (0..n)
                .map(|b| {
                    let mut u = up[a].clone();
                    u.intersect_with(&up[b]);
                    least_of(&u, &up_count).map_or(NONE, |m| m as u32)
                })
                .collect()
        });
        let join: Vec<u32> = join_rows.into_iter().flatten().collect();
        if let Some(pos) = join.iter().position(|&j| j == NONE) {
            return Err(Error::InvalidLattice(format!(
                "`{}` and `{}` have no least upper bound",
                labels[pos / n],
                labels[pos % n]
            )));
        }

        let meet_rows: Vec<Vec<u32>> = exec.map_range(n, |a| {
            (0..n)
                .map(|b| {
                    let mut d = down[a].clone();
                    d.intersect_with(&down[b]);
                    least_of(&d, &down_count).map_or(NONE, |m| m as u32)
                })
                .collect()
        });
        let meet: Vec<u32> = meet_rows.into_iter().flatten().collect();
        let meet = (!meet.contains(&NONE)).then_some(meet);

        Ok(Self::assemble(labels, up, down, join, meet))
    }

    /// Build from precomputed, trusted tables.
    fn assemble(
        labels: Vec<String>,
        up: Vec<FixedBitSet>,
        down: Vec<FixedBitSet>,
        join: Vec<u32>,
        meet: Option<Vec<u32>>,
    ) -> Self {
        let n = labels.len();
        let exec = Exec::default().for_len(n);
        let covers = exec.map_range(n, |e| {
            up[e]
                .ones()
                .filter(|&c| {
                    if c == e {
                        return false;
                    }
                    let mut between = up[e].clone();
                    between.intersect_with(&down[c]);
                    between.count_ones(..) == 2
                })
                .collect()
        });
        let top = (0..n)
            .find(|&e| up[e].count_ones(..) == 1)
            .expect("finite join-semilattice has a top");
        JoinSemilattice {
            labels,
            up,
            down,
            join,
            meet,
            covers,
            top,
        }
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

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn check(&self, e: usize) -> Result<()> {
        if e < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(e))
        }
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    /// Join of a nonempty family; `None` for the empty family.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> Option<usize> {
        items.into_iter().reduce(|a, b| self.join(a, b))
    }

    pub fn has_meets(&self) -> bool {
        self.meet.is_some()
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet.as_ref().map(|m| m[a * self.len() + b] as usize)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// The least element, which exists when meets exist.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&e| self.up[e].count_ones(..) == self.len())
    }

    /// Upper covers of `e`: the `c > e` with nothing strictly between.
    pub fn covers(&self, e: usize) -> Result<&[usize]> {
        self.check(e)?;
        Ok(&self.covers[e])
    }

    /// Elements `≥ e`.
    pub fn up_set(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[e].ones()
    }

    /// Elements `≤ e`.
    pub fn down_set(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        self.down[e].ones()
    }

    pub fn strictly_above(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[e].ones().filter(move |&c| c != e)
    }

    /// Hasse edges `(lower, upper)`, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = (0..self.len())
            .flat_map(|e| self.covers[e].iter().map(move |&c| (e, c)))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// The underlying order as a [`FinitePoset`] (needs at most 128 elements).
    pub fn as_poset(&self) -> Result<FinitePoset> {
        Limits::check("lattice elements", self.len(), IdSet::CAPACITY)?;
        let down = self
            .down
            .iter()
            .map(|r| r.ones().collect::<IdSet>())
            .collect();
        FinitePoset::from_down_sets(self.labels.clone(), down)
    }

    /// Sub-semilattice on `members` (which must be closed under join, and
    /// under meet when meets exist). The returned map sends new ids to
    /// parent ids.
    pub fn restrict(&self, members: &[usize]) -> Result<(JoinSemilattice, Vec<usize>)> {
        let mut inv = vec![NONE; self.len()];
        for (i, &m) in members.iter().enumerate() {
            self.check(m)?;
            inv[m] = i as u32;
        }
        let k = members.len();
        if k == 0 {
            return Err(Error::InvalidLattice("empty restriction".into()));
        }
        let mut join = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                let j = inv[self.join(a, b)];
                if j == NONE {
                    return Err(Error::InvalidLattice(format!(
                        "join of `{}` and `{}` leaves the subset",
                        self.label(a),
                        self.label(b)
                    )));
                }
                join.push(j);
            }
        }
        let meet = match &self.meet {
            Some(_) => {
                let mut meet = Vec::with_capacity(k * k);
                for &a in members {
                    for &b in members {
                        let m = inv[self.meet(a, b).expect("has meets")];
                        if m == NONE {
                            return Err(Error::InvalidLattice(format!(
                                "meet of `{}` and `{}` leaves the subset",
                                self.label(a),
                                self.label(b)
                            )));
                        }
                        meet.push(m);
                    }
                }
                Some(meet)
            }
            None => None,
        };
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        let up = members
            .iter()
            .map(|&m| {
                row(
                    k,
                    self.up[m]
                        .ones()
                        .filter(|&x| inv[x] != NONE)
                        .map(|x| inv[x] as usize),
                )
            })
            .collect();
        let down = members
            .iter()
            .map(|&m| {
                row(
                    k,
                    self.down[m]
                        .ones()
                        .filter(|&x| inv[x] != NONE)
                        .map(|x| inv[x] as usize),
                )
            })
            .collect();
        Ok((
            Self::assemble(labels, up, down, join, meet),
            members.to_vec(),
        ))
    }
}

/// A finite lattice closed under binary meets: the model of a lattice of
/// submodules.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    inner: JoinSemilattice,
    bottom: usize,
}

impl Deref for SubmoduleLattice {
    type Target = JoinSemilattice;

    fn deref(&self) -> &JoinSemilattice {
        &self.inner
    }
}

impl SubmoduleLattice {
    pub fn new(inner: JoinSemilattice) -> Result<Self> {
        if !inner.has_meets() {
            return Err(Error::InvalidLattice(
                "not closed under binary meets".into(),
            ));
        }
        let bottom = inner
            .bottom()
            .expect("finite lattice with meets has a bottom");
        Ok(SubmoduleLattice { inner, bottom })
    }

    pub fn from_leq(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::new(JoinSemilattice::from_leq(labels, leq)?)
    }

    pub fn semilattice(&self) -> &JoinSemilattice {
        &self.inner
    }

    pub fn into_semilattice(self) -> JoinSemilattice {
        self.inner
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.inner.meet(a, b).expect("submodule lattice has meets")
    }

    /// Meet of a family; the empty family meets to the top.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top(), |a, b| self.meet(a, b))
    }

    /// Join of a family; the empty family joins to the bottom.
    pub fn join_or_bottom(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |a, b| self.join(a, b))
    }

    pub fn restrict(&self, members: &[usize]) -> Result<(SubmoduleLattice, Vec<usize>)> {
        let (l, map) = self.inner.restrict(members)?;
        Ok((SubmoduleLattice::new(l)?, map))
    }
}

/// The upward interval `{ e | bottom ≤ e ≤ top }` of a lattice. With `top`
/// left at the lattice top this models submodules of a quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalView {
    pub bottom: usize,
    pub top: Option<usize>,
}

impl IntervalView {
    pub fn above(bottom: usize) -> Self {
        IntervalView { bottom, top: None }
    }

    pub fn between(bottom: usize, top: usize) -> Self {
        IntervalView {
            bottom,
            top: Some(top),
        }
    }

    pub fn members(&self, parent: &JoinSemilattice) -> Result<Vec<usize>> {
        parent.check(self.bottom)?;
        let top = self.top.unwrap_or(parent.top());
        parent.check(top)?;
        if !parent.leq(self.bottom, top) {
            return Err(Error::InvalidLattice(format!(
                "empty interval [`{}`, `{}`]",
                parent.label(self.bottom),
                parent.label(top)
            )));
        }
        Ok(parent
            .up_set(self.bottom)
            .filter(|&e| parent.leq(e, top))
            .collect())
    }

    /// The interval as a lattice of its own; the map sends interval ids to
    /// parent ids.
    pub fn materialize(&self, parent: &SubmoduleLattice) -> Result<(SubmoduleLattice, Vec<usize>)> {
        parent.restrict(&self.members(parent)?)
    }
}

/// The lattice of down-sets of a finite poset, ordered by inclusion, with
/// the carrier of each element kept alongside.
#[derive(Clone, Debug)]
pub struct DownSetLattice {
    lattice: SubmoduleLattice,
    sets: Vec<IdSet>,
    index: HashMap<IdSet, usize>,
}

impl Deref for DownSetLattice {
    type Target = SubmoduleLattice;

    fn deref(&self) -> &SubmoduleLattice {
        &self.lattice
    }
}

impl DownSetLattice {
    pub fn lattice(&self) -> &SubmoduleLattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> SubmoduleLattice {
        self.lattice
    }

    /// The down-set that element `e` stands for.
    pub fn carrier(&self, e: usize) -> IdSet {
        self.sets[e]
    }

    pub fn carriers(&self) -> &[IdSet] {
        &self.sets
    }

    pub fn element_of(&self, set: IdSet) -> Option<usize> {
        self.index.get(&set).copied()
    }
}

/// All down-sets of `x` ordered by inclusion; join is union and meet is
/// intersection.
pub fn down_sets(x: &FinitePoset, limits: &Limits) -> Result<DownSetLattice> {
    Limits::check("poset points", x.len(), limits.max_points)?;
    let mut sets = Vec::new();
    x.for_each_down_set(limits.max_elements, |s| sets.push(s))?;
    sets.sort_by_key(|s| (s.len(), s.bits()));
    let index: HashMap<IdSet, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let n = sets.len();
    let exec = Exec::default().for_len(n);

    let rows: Vec<(FixedBitSet, FixedBitSet, Vec<u32>, Vec<u32>)> = exec.map_range(n, |a| {
        let sa = sets[a];
        let mut up = FixedBitSet::with_capacity(n);
        let mut down = FixedBitSet::with_capacity(n);
        let mut join = Vec::with_capacity(n);
        let mut meet = Vec::with_capacity(n);
        for (b, &sb) in sets.iter().enumerate() {
            if sa.is_subset(sb) {
                up.insert(b);
            }
            if sb.is_subset(sa) {
                down.insert(b);
            }
            join.push(index[&sa.union(sb)] as u32);
            meet.push(index[&sa.intersection(sb)] as u32);
        }
        (up, down, join, meet)
    });
    let mut up = Vec::with_capacity(n);
    let mut down = Vec::with_capacity(n);
    let mut join = Vec::with_capacity(n * n);
    let mut meet = Vec::with_capacity(n * n);
    for (u, d, j, m) in rows {
        up.push(u);
        down.push(d);
        join.extend(j);
        meet.extend(m);
    }
    let labels = sets.iter().map(|&s| x.format_set(s)).collect();
    let inner = JoinSemilattice::assemble(labels, up, down, join, Some(meet));
    let lattice = SubmoduleLattice::new(inner)?;
    Ok(DownSetLattice {
        lattice,
        sets,
        index,
    })
}
