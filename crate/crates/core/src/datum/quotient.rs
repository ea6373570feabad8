use std::collections::HashMap;

use crate::bitset::IdSet;
use crate::error::Result;
use crate::limits::Limits;
use crate::order::{IntervalView, SubmoduleLattice};
use crate::spectrum::{spectrum, SpectrumSpace};

use super::model::LatticeDatum;

/// The spectrum of the interval `[I, ⊤]` and its embedding into the ambient
/// spectrum.
#[derive(Clone, Debug)]
pub struct QuotientSpectrum {
    pub interval: SubmoduleLattice,
    /// Ambient element of every interval element.
    pub members: Vec<usize>,
    pub space: SpectrumSpace,
}

impl QuotientSpectrum {
    /// The ambient point of every interval point; `None` where an interval
    /// prime is not prime in the ambient lattice.
    pub fn embedding(&self, ambient: &SpectrumSpace) -> Vec<Option<usize>> {
        self.space
            .primes()
            .iter()
            .map(|&p| ambient.point_of(self.members[p]))
            .collect()
    }
}

pub fn quotient_spectrum(
    sub: &SubmoduleLattice,
    i: usize,
    limits: &Limits,
) -> Result<QuotientSpectrum> {
    let (interval, members) = IntervalView::above(i).materialize(sub)?;
    let space = spectrum(&interval, limits)?;
    Ok(QuotientSpectrum {
        interval,
        members,
        space,
    })
}

/// `Spc = Supp(I) ⊔ Spc([I, ⊤])` with the checks that make it so.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub support: IdSet,
    /// Image of the interval spectrum in the ambient one.
    pub open: IdSet,
    /// Every interval prime is an ambient prime and the embedding is
    /// injective.
    pub embeds: bool,
    pub disjoint: bool,
    pub covers: bool,
    /// Interval closed sets are exactly the traces of ambient closed sets.
    pub subspace_topology: bool,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.embeds && self.disjoint && self.covers && self.subspace_topology
    }
}

pub fn spectrum_decomposition(
    sub: &SubmoduleLattice,
    space: &SpectrumSpace,
    i: usize,
    limits: &Limits,
) -> Result<Decomposition> {
    let support = space.supp(i)?;
    let q = quotient_spectrum(sub, i, limits)?;
    let emb = q.embedding(space);
    let image: IdSet = emb.iter().flatten().copied().collect();
    let embeds = emb.iter().all(Option::is_some) && image.len() == emb.len();
    let mut subspace_topology = false;
    if embeds {
        // carry interval closed sets into ambient point ids
        let emb: Vec<usize> = emb.into_iter().flatten().collect();
        let carried: std::collections::HashSet<IdSet> = q
            .space
            .closed_sets()
            .sets()
            .iter()
            .map(|c| c.map(|x| emb[x]))
            .collect();
        let traces: std::collections::HashSet<IdSet> = space
            .closed_sets()
            .sets()
            .iter()
            .map(|c| c.intersection(image))
            .collect();
        subspace_topology = carried == traces;
    }
    Ok(Decomposition {
        support,
        open: image,
        embeds,
        disjoint: support.is_disjoint(image),
        covers: support.union(image) == space.all(),
        subspace_topology,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheafReport {
    Cartesian,
    /// Two elements of `[I ∧ J, ⊤]` with the same image pair.
    NotInjective {
        k1: String,
        k2: String,
        image: (String, String),
    },
    /// A compatible pair `(A, B)` hit by nothing.
    NotSurjective {
        a: String,
        b: String,
    },
}

impl SheafReport {
    pub fn is_cartesian(&self) -> bool {
        matches!(self, SheafReport::Cartesian)
    }
}

/// Whether `K ↦ (K ∨ I, K ∨ J)` is a bijection from `[I ∧ J, ⊤]` onto the
/// pairs `(A, B) ∈ [I, ⊤] × [J, ⊤]` with `A ∨ J = B ∨ I`.
pub fn check_sub_sheaf(sub: &SubmoduleLattice, i: usize, j: usize) -> Result<SheafReport> {
    sub.check(i)?;
    sub.check(j)?;
    let lbl = |e: usize| sub.label(e).to_string();
    let lower = sub.meet(i, j);
    let mut hit: HashMap<(usize, usize), usize> = HashMap::new();
    for k in sub.up_set(lower) {
        let image = (sub.join(k, i), sub.join(k, j));
        if let Some(&k1) = hit.get(&image) {
            return Ok(SheafReport::NotInjective {
                k1: lbl(k1),
                k2: lbl(k),
                image: (lbl(image.0), lbl(image.1)),
            });
        }
        hit.insert(image, k);
    }
    for a in sub.up_set(i) {
        for b in sub.up_set(j) {
            if sub.join(a, j) == sub.join(b, i) && !hit.contains_key(&(a, b)) {
                return Ok(SheafReport::NotSurjective {
                    a: lbl(a),
                    b: lbl(b),
                });
            }
        }
    }
    Ok(SheafReport::Cartesian)
}

/// [`check_sub_sheaf`] over every pair of acted submodules; the first
/// failure is returned with the closed sets involved.
pub fn check_sheaf_on_action_image(
    dat: &LatticeDatum,
) -> Result<Option<(IdSet, IdSet, SheafReport)>> {
    let entries: Vec<(IdSet, usize)> = dat.entries().collect();
    for (n, &(z, i)) in entries.iter().enumerate() {
        for &(w, j) in &entries[n..] {
            let r = check_sub_sheaf(dat.sub(), i, j)?;
            if !r.is_cartesian() {
                return Ok(Some((z, w, r)));
            }
        }
    }
    Ok(None)
}
