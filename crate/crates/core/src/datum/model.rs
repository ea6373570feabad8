use std::collections::HashMap;
use std::fmt;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::limits::Limits;
use crate::order::{FinitePoset, SubmoduleLattice};

/// A submodule lattice `sub`, a base poset, and for every closed (down-)set
/// `Z` of the base the submodule `action(Z)` it generates.
#[derive(Clone, Debug)]
pub struct LatticeDatum {
    sub: SubmoduleLattice,
    base: FinitePoset,
    closed: Vec<IdSet>,
    index: HashMap<IdSet, usize>,
    action: Vec<usize>,
}

impl LatticeDatum {
    pub fn new(
        sub: SubmoduleLattice,
        base: FinitePoset,
        mut action: impl FnMut(IdSet) -> usize,
        limits: &Limits,
    ) -> Result<Self> {
        if base.is_empty() && sub.len() != 1 {
            return Err(Error::InvalidDatum(
                "an empty base only carries the one-element lattice".into(),
            ));
        }
        let closed = base.down_sets(limits)?;
        let index = closed.iter().enumerate().map(|(i, &z)| (z, i)).collect();
        let action: Vec<usize> = closed.iter().map(|&z| action(z)).collect();
        if let Some(&e) = action.iter().find(|&&e| e >= sub.len()) {
            return Err(Error::UnknownElement(e));
        }
        Ok(LatticeDatum {
            sub,
            base,
            closed,
            index,
            action,
        })
    }

    /// Builds the action from explicit entries. Closed sets without an entry
    /// get the join of the entries of their principal pieces `↓z`; `∅`
    /// defaults to the bottom.
    pub fn from_entries(
        sub: SubmoduleLattice,
        base: FinitePoset,
        entries: &[(IdSet, usize)],
        limits: &Limits,
    ) -> Result<Self> {
        let mut given: HashMap<IdSet, usize> = HashMap::new();
        for &(z, e) in entries {
            if !z.is_subset(base.points()) || !base.is_down_set(z) {
                return Err(Error::InvalidDatum(format!(
                    "{} is not a closed subset of the base",
                    base.format_set(z)
                )));
            }
            sub.check(e)?;
            if given.insert(z, e).is_some_and(|old| old != e) {
                return Err(Error::InvalidDatum(format!(
                    "two actions given for {}",
                    base.format_set(z)
                )));
            }
        }
        let mut missing = None;
        let bottom = sub.bottom();
        let dat = Self::new(
            sub.clone(),
            base.clone(),
            |z| {
                if let Some(&e) = given.get(&z) {
                    return e;
                }
                if z.is_empty() {
                    return bottom;
                }
                z.iter()
                    .fold(bottom, |acc, y| match given.get(&base.down(y)) {
                        Some(&e) => sub.join(acc, e),
                        None => {
                            missing.get_or_insert(y);
                            acc
                        }
                    })
            },
            limits,
        )?;
        if let Some(y) = missing {
            return Err(Error::InvalidDatum(format!(
                "no action given for the closure of `{}`",
                base.label(y)
            )));
        }
        Ok(dat)
    }

    pub fn sub(&self) -> &SubmoduleLattice {
        &self.sub
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    /// Closed subsets of the base, sorted by size then bit pattern.
    pub fn closed_sets(&self) -> &[IdSet] {
        &self.closed
    }

    pub fn action(&self, z: IdSet) -> Result<usize> {
        self.index.get(&z).map(|&i| self.action[i]).ok_or_else(|| {
            Error::InvalidDatum(format!("{} is not closed", self.base.format_set(z)))
        })
    }

    /// `(Z, action(Z))` pairs in the order of [`Self::closed_sets`].
    pub fn entries(&self) -> impl Iterator<Item = (IdSet, usize)> + '_ {
        self.closed.iter().copied().zip(self.action.iter().copied())
    }

    fn act(&self, z: IdSet) -> usize {
        self.action[self.index[&z]]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `action(∅) = ⊥`.
    EmptyIsBottom,
    /// `action(Z ∩ W) = action(Z) ∧ action(W)`.
    Meets,
    /// `action(Z ∪ W) = action(Z) ∨ action(W)`.
    Joins,
    /// `P ∨ action(Z ∩ W) = (P ∨ action(Z)) ∧ (P ∨ action(W))`.
    Composability,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::EmptyIsBottom => "empty set acts as bottom",
            Condition::Meets => "preserves intersections",
            Condition::Joins => "preserves unions",
            Condition::Composability => "composability",
        })
    }
}

/// A failed admissibility condition with its witnesses, already rendered
/// with labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub p: Option<String>,
    pub z: String,
    pub w: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibilityReport {
    Admissible,
    Violated(Violation),
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        matches!(self, AdmissibilityReport::Admissible)
    }
}

/// Checks the conditions exhaustively, in the order of [`Condition`], and
/// reports the first failure.
pub fn validate_admissible(dat: &LatticeDatum, exec: Exec) -> AdmissibilityReport {
    let sub = &dat.sub;
    let base = &dat.base;
    let lbl = |e: usize| sub.label(e).to_string();
    let empty = dat.act(IdSet::EMPTY);
    if empty != sub.bottom() {
        return AdmissibilityReport::Violated(Violation {
            condition: Condition::EmptyIsBottom,
            p: None,
            z: "{}".into(),
            w: "{}".into(),
            detail: format!(
                "action({{}}) = {} but bottom is {}",
                lbl(empty),
                lbl(sub.bottom())
            ),
        });
    }
    let pairs: Vec<(IdSet, IdSet)> = dat
        .closed
        .iter()
        .enumerate()
        .flat_map(|(i, &z)| dat.closed[i..].iter().map(move |&w| (z, w)))
        .collect();
    for &(z, w) in &pairs {
        let (az, aw) = (dat.act(z), dat.act(w));
        let lhs = dat.act(z.intersection(w));
        if lhs != sub.meet(az, aw) {
            return AdmissibilityReport::Violated(Violation {
                condition: Condition::Meets,
                p: None,
                z: base.format_set(z),
                w: base.format_set(w),
                detail: format!(
                    "action(Z ∩ W) = {} but action(Z) ∧ action(W) = {}",
                    lbl(lhs),
                    lbl(sub.meet(az, aw))
                ),
            });
        }
    }
    for &(z, w) in &pairs {
        let (az, aw) = (dat.act(z), dat.act(w));
        let lhs = dat.act(z.union(w));
        if lhs != sub.join(az, aw) {
            return AdmissibilityReport::Violated(Violation {
                condition: Condition::Joins,
                p: None,
                z: base.format_set(z),
                w: base.format_set(w),
                detail: format!(
                    "action(Z ∪ W) = {} but action(Z) ∨ action(W) = {}",
                    lbl(lhs),
                    lbl(sub.join(az, aw))
                ),
            });
        }
    }
    let found = exec.for_len(sub.len()).find_map_first(sub.len(), |p| {
        pairs.iter().find_map(|&(z, w)| {
            let lhs = sub.join(p, dat.act(z.intersection(w)));
            let rhs = sub.meet(sub.join(p, dat.act(z)), sub.join(p, dat.act(w)));
            (lhs != rhs).then_some((p, z, w, lhs, rhs))
        })
    });
    if let Some((p, z, w, lhs, rhs)) = found {
        return AdmissibilityReport::Violated(Violation {
            condition: Condition::Composability,
            p: Some(lbl(p)),
            z: base.format_set(z),
            w: base.format_set(w),
            detail: format!(
                "P ∨ action(Z ∩ W) = {} but (P ∨ action(Z)) ∧ (P ∨ action(W)) = {}",
                lbl(lhs),
                lbl(rhs)
            ),
        });
    }
    AdmissibilityReport::Admissible
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::order::down_sets;

    pub fn identity(x: &FinitePoset) -> LatticeDatum {
        let d = down_sets(x, &Limits::default()).unwrap();
        let sub = d.lattice().clone();
        LatticeDatum::new(
            sub,
            x.clone(),
            |z| d.element_of(z).unwrap(),
            &Limits::default(),
        )
        .unwrap()
    }

    /// Every nonempty closed set acts as the top.
    pub fn collapsing() -> LatticeDatum {
        let x = FinitePoset::from_labeled(&["a", "b"], &[]).unwrap();
        let d = down_sets(&x, &Limits::default()).unwrap();
        let (bot, top) = (d.bottom(), d.top());
        LatticeDatum::new(
            d.lattice().clone(),
            x,
            |z| if z.is_empty() { bot } else { top },
            &Limits::default(),
        )
        .unwrap()
    }

    pub fn m3() -> SubmoduleLattice {
        SubmoduleLattice::from_leq(
            ["bot", "a", "b", "c", "top"].map(String::from).to_vec(),
            |x, y| x == y || x == 0 || y == 4,
        )
        .unwrap()
    }

    /// M3 over a two-point discrete base: meets and joins are preserved but
    /// composability fails at `P = c`.
    pub fn m3_datum() -> LatticeDatum {
        let x = FinitePoset::from_labeled(&["p", "q"], &[]).unwrap();
        LatticeDatum::from_entries(
            m3(),
            x,
            &[
                (IdSet::singleton(0), 1),
                (IdSet::singleton(1), 2),
                (IdSet::from_bits(0b11), 4),
            ],
            &Limits::default(),
        )
        .unwrap()
    }
}
