//! Severi–Brauer curves over a finite base: submodules of the total space
//! are described fiber by fiber.
//!
//! The total space is `Y ⊔ K × X`: the fibers `Y_x` over the base points
//! plus `|K|` copies of the base (a finite truncation of the integers). It
//! is ordered componentwise: each `Y_x` by its own order, each copy by the
//! order of `X`, plus any explicitly supplied relations inside `Y`.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::IdSet;
use crate::datum::LatticeDatum;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::order::{FinitePoset, SubmoduleLattice};

/// The fiber of a realized subset over one base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberDescriptor {
    /// Empty.
    A,
    /// `W ⊔` every copy, with `W` a nonempty down-set of `Y_x`.
    B(IdSet),
    /// All of `Y_x` and every copy except copy `n`.
    C(usize),
}

#[derive(Clone, Debug)]
pub struct SbModel {
    base: FinitePoset,
    fibers: Vec<FinitePoset>,
    copies: usize,
    total: FinitePoset,
    /// First total id of each fiber.
    offsets: Vec<usize>,
}

/// The Y-model of a projective line: a generic point `eta` above `n` closed
/// points `c1..cn`.
pub fn p1_model(n: usize) -> FinitePoset {
    let mut labels = vec!["eta".to_string()];
    labels.extend((1..=n).map(|i| format!("c{i}")));
    let pairs: Vec<(usize, usize)> = (1..=n).map(|i| (i, 0)).collect();
    FinitePoset::from_pairs(labels, &pairs).expect("a star is a poset")
}

/// A Y-point, as `(base point, fiber point)`.
pub type YPoint = (usize, usize);

impl SbModel {
    /// `cross` lists extra relations `(lower, upper)` between Y-points, each
    /// given as `(base point, fiber point)`.
    pub fn new(
        base: FinitePoset,
        fibers: Vec<FinitePoset>,
        copies: usize,
        cross: &[(YPoint, YPoint)],
    ) -> Result<Self> {
        if fibers.len() != base.len() {
            return Err(Error::InvalidDatum(format!(
                "{} fibers for {} base points",
                fibers.len(),
                base.len()
            )));
        }
        if let Some(x) = fibers.iter().position(FinitePoset::is_empty) {
            return Err(Error::InvalidDatum(format!(
                "empty fiber over `{}`",
                base.label(x)
            )));
        }
        let mut offsets = Vec::with_capacity(fibers.len());
        let mut labels = Vec::new();
        let mut pairs = Vec::new();
        for (x, f) in fibers.iter().enumerate() {
            let off = labels.len();
            offsets.push(off);
            labels.extend(
                f.labels()
                    .iter()
                    .map(|y| format!("{}/{}", base.label(x), y)),
            );
            pairs.extend(f.hasse_edges().into_iter().map(|(a, b)| (off + a, off + b)));
        }
        let y_len = labels.len();
        for k in 0..copies {
            labels.extend(base.labels().iter().map(|x| format!("{x}#{k}")));
            let off = y_len + k * base.len();
            pairs.extend(
                base.hasse_edges()
                    .into_iter()
                    .map(|(a, b)| (off + a, off + b)),
            );
        }
        Limits::check("total points", labels.len(), IdSet::CAPACITY)?;
        for &((x, a), (x2, b)) in cross {
            base.check_point(x)?;
            base.check_point(x2)?;
            fibers[x].check_point(a)?;
            fibers[x2].check_point(b)?;
            pairs.push((offsets[x] + a, offsets[x2] + b));
        }
        let total = FinitePoset::from_pairs(labels, &pairs)?;
        Ok(SbModel {
            base,
            fibers,
            copies,
            total,
            offsets,
        })
    }

    /// One base point, fiber `p1_model(n)`, `copies` copies.
    pub fn over_point(n: usize, copies: usize) -> Self {
        let base = FinitePoset::from_labeled(&["pt"], &[]).expect("point");
        Self::new(base, vec![p1_model(n)], copies, &[]).expect("valid model")
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn fibers(&self) -> &[FinitePoset] {
        &self.fibers
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn total(&self) -> &FinitePoset {
        &self.total
    }

    fn y_len(&self) -> usize {
        self.fibers.iter().map(FinitePoset::len).sum()
    }

    fn copy_point(&self, k: usize, x: usize) -> usize {
        self.y_len() + k * self.base.len() + x
    }

    fn shift(&self, x: usize, w: IdSet) -> IdSet {
        w.map(|y| self.offsets[x] + y)
    }

    /// The subset of the total space a descriptor choice stands for.
    pub fn realize(&self, z: &[FiberDescriptor]) -> Result<IdSet> {
        if z.len() != self.base.len() {
            return Err(Error::MalformedDescriptor(format!(
                "{} descriptors for {} base points",
                z.len(),
                self.base.len()
            )));
        }
        let mut out = IdSet::EMPTY;
        for (x, d) in z.iter().enumerate() {
            let fiber = &self.fibers[x];
            match *d {
                FiberDescriptor::A => {}
                FiberDescriptor::B(w) => {
                    if w.is_empty() {
                        return Err(Error::MalformedDescriptor(format!(
                            "kind B over `{}` needs a nonempty W",
                            self.base.label(x)
                        )));
                    }
                    if !w.is_subset(fiber.points()) {
                        return Err(Error::MalformedDescriptor(format!(
                            "W over `{}` names unknown fiber points",
                            self.base.label(x)
                        )));
                    }
                    out = out.union(self.shift(x, w));
                    for k in 0..self.copies {
                        out.insert(self.copy_point(k, x));
                    }
                }
                FiberDescriptor::C(n) => {
                    if n >= self.copies {
                        return Err(Error::MalformedDescriptor(format!(
                            "copy index {n} outside 0..{}",
                            self.copies
                        )));
                    }
                    out = out.union(self.shift(x, fiber.points()));
                    for k in (0..self.copies).filter(|&k| k != n) {
                        out.insert(self.copy_point(k, x));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn describe(&self, z: &[FiberDescriptor]) -> String {
        let one = |x: usize, d: &FiberDescriptor| match *d {
            FiberDescriptor::A => "A".to_string(),
            FiberDescriptor::B(w) => format!("B{}", self.fibers[x].format_set(w)),
            FiberDescriptor::C(n) => format!("C{n}"),
        };
        if self.base.len() == 1 {
            return one(0, &z[0]);
        }
        let parts: Vec<String> = z
            .iter()
            .enumerate()
            .map(|(x, d)| format!("{}:{}", self.base.label(x), one(x, d)))
            .collect();
        parts.join(",")
    }
}

impl fmt::Display for FiberDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberDescriptor::A => write!(f, "A"),
            FiberDescriptor::B(w) => write!(f, "B{w:?}"),
            FiberDescriptor::C(n) => write!(f, "C{n}"),
        }
    }
}

/// Whether a descriptor choice is a submodule: every kind-B `W` is a
/// down-set of its fiber and the realized subset is specialization-closed
/// in the total space.
pub fn sb_is_admissible(model: &SbModel, z: &[FiberDescriptor]) -> Result<bool> {
    let realized = model.realize(z)?;
    let fibers_ok = z.iter().enumerate().all(|(x, d)| match *d {
        FiberDescriptor::B(w) => model.fibers[x].is_down_set(w),
        _ => true,
    });
    Ok(fibers_ok && model.total.is_down_set(realized))
}

/// How the admissible family behaves under set operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SbClosure {
    pub union_closed: bool,
    pub intersection_closed: bool,
    /// Two elements whose setwise intersection is not admissible.
    pub intersection_witness: Option<(String, String)>,
}

/// The submodule lattice of an SB model: every admissible choice, ordered
/// by inclusion of realized subsets.
///
/// Joins are unions. Setwise intersections can leave the family (two kind-C
/// fibers with different excluded copies), so the meet is the largest
/// admissible subset of the intersection; [`SbClosure`] records this.
#[derive(Clone, Debug)]
pub struct SbLattice {
    pub lattice: SubmoduleLattice,
    pub choices: Vec<Vec<FiberDescriptor>>,
    pub realized: Vec<IdSet>,
    pub closure: SbClosure,
}

impl SbLattice {
    pub fn element_of(&self, set: IdSet) -> Option<usize> {
        self.realized.iter().position(|&r| r == set)
    }
}

fn fiber_options(model: &SbModel, x: usize, limits: &Limits) -> Result<Vec<FiberDescriptor>> {
    let mut out = vec![FiberDescriptor::A];
    for w in model.fibers[x].down_sets(limits)? {
        if !w.is_empty() {
            out.push(FiberDescriptor::B(w));
        }
    }
    out.extend((0..model.copies).map(FiberDescriptor::C));
    Ok(out)
}

pub fn sb_submodule_lattice(model: &SbModel, limits: &Limits) -> Result<SbLattice> {
    let options: Vec<Vec<FiberDescriptor>> = (0..model.base.len())
        .map(|x| fiber_options(model, x, limits))
        .collect::<Result<_>>()?;
    let product = options
        .iter()
        .try_fold(1usize, |acc, o| acc.checked_mul(o.len()))
        .unwrap_or(usize::MAX);
    Limits::check("descriptor choices", product, limits.max_closed_sets)?;

    let mut choices = Vec::new();
    let mut current = vec![FiberDescriptor::A; model.base.len()];
    let mut idx = vec![0usize; model.base.len()];
    loop {
        for (x, &i) in idx.iter().enumerate() {
            current[x] = options[x][i];
        }
        if sb_is_admissible(model, &current)? {
            choices.push(current.clone());
            Limits::check("submodules", choices.len(), limits.max_elements)?;
        }
        let mut x = 0;
        loop {
            if x == idx.len() {
                break;
            }
            idx[x] += 1;
            if idx[x] < options[x].len() {
                break;
            }
            idx[x] = 0;
            x += 1;
        }
        if x == idx.len() {
            break;
        }
    }
    let realized: Vec<IdSet> = choices
        .iter()
        .map(|z| model.realize(z))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..choices.len()).collect();
    order.sort_by_key(|&i| (realized[i].len(), realized[i].bits()));
    let choices: Vec<Vec<FiberDescriptor>> = order.iter().map(|&i| choices[i].clone()).collect();
    let realized: Vec<IdSet> = order.iter().map(|&i| realized[i]).collect();
    let index: HashMap<IdSet, usize> = realized.iter().enumerate().map(|(i, &r)| (r, i)).collect();

    let labels: Vec<String> = choices.iter().map(|z| model.describe(z)).collect();
    let mut intersection_witness = None;
    for a in 0..realized.len() {
        for b in a + 1..realized.len() {
            if !index.contains_key(&realized[a].union(realized[b])) {
                return Err(Error::DescriptorEscape(format!(
                    "union of {} and {} is not admissible",
                    labels[a], labels[b]
                )));
            }
            if intersection_witness.is_none()
                && !index.contains_key(&realized[a].intersection(realized[b]))
            {
                intersection_witness = Some((labels[a].clone(), labels[b].clone()));
            }
        }
    }
    let lattice = SubmoduleLattice::from_leq(labels, |a, b| realized[a].is_subset(realized[b]))?;
    // joins are unions: the lattice join must agree with the setwise one
    for a in 0..realized.len() {
        for b in a + 1..realized.len() {
            debug_assert_eq!(realized[lattice.join(a, b)], realized[a].union(realized[b]));
        }
    }
    Ok(SbLattice {
        lattice,
        choices,
        realized,
        closure: SbClosure {
            union_closed: true,
            intersection_closed: intersection_witness.is_none(),
            intersection_witness,
        },
    })
}

/// The SB lattice acted on by the base: a closed `Z ⊆ X` acts as its full
/// preimage (kind B with `W = Y_x` over `Z`, kind A elsewhere).
pub fn sb_datum(model: &SbModel, limits: &Limits) -> Result<(SbLattice, LatticeDatum)> {
    let sb = sb_submodule_lattice(model, limits)?;
    let mut missing = None;
    let pre = |z: IdSet| -> Vec<FiberDescriptor> {
        (0..model.base.len())
            .map(|x| {
                if z.contains(x) {
                    FiberDescriptor::B(model.fibers[x].points())
                } else {
                    FiberDescriptor::A
                }
            })
            .collect()
    };
    let dat = LatticeDatum::new(
        sb.lattice.clone(),
        model.base.clone(),
        |z| match sb.choices.iter().position(|c| *c == pre(z)) {
            Some(e) => e,
            None => {
                missing.get_or_insert(z);
                0
            }
        },
        limits,
    )?;
    if let Some(z) = missing {
        return Err(Error::DescriptorEscape(format!(
            "preimage of {} is not admissible",
            model.base.format_set(z)
        )));
    }
    Ok((sb, dat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{has_unique_cover, spectrum};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn all_a_is_admissible() {
        let m = SbModel::over_point(2, 2);
        assert!(sb_is_admissible(&m, &[FiberDescriptor::A]).unwrap());
    }

    #[test]
    fn empty_w_is_malformed() {
        let m = SbModel::over_point(2, 2);
        assert!(matches!(
            sb_is_admissible(&m, &[FiberDescriptor::B(IdSet::EMPTY)]),
            Err(Error::MalformedDescriptor(_))
        ));
        assert!(matches!(
            sb_is_admissible(&m, &[FiberDescriptor::C(2)]),
            Err(Error::MalformedDescriptor(_))
        ));
    }

    #[test]
    fn two_closed_points_two_copies() {
        let m = SbModel::over_point(2, 2);
        let sb = sb_submodule_lattice(&m, &limits()).unwrap();
        assert_eq!(sb.lattice.len(), 7);
        let kinds =
            |f: fn(&FiberDescriptor) -> bool| sb.choices.iter().filter(|z| f(&z[0])).count();
        assert_eq!(kinds(|d| matches!(d, FiberDescriptor::A)), 1);
        assert_eq!(kinds(|d| matches!(d, FiberDescriptor::B(_))), 4);
        assert_eq!(kinds(|d| matches!(d, FiberDescriptor::C(_))), 2);
        let primes = (0..7)
            .filter(|&e| has_unique_cover(&sb.lattice, e).unwrap())
            .count();
        assert_eq!(primes, 5);
        assert_eq!(spectrum(&sb.lattice, &limits()).unwrap().len(), 5);
        assert_eq!(sb.choices[sb.lattice.bottom()], vec![FiberDescriptor::A]);
        assert_eq!(
            sb.choices[sb.lattice.top()],
            vec![FiberDescriptor::B(m.fibers()[0].points())]
        );
        assert!(!sb.closure.intersection_closed);
    }

    #[test]
    fn no_copies_gives_fiber_down_sets() {
        let m = SbModel::over_point(3, 0);
        let sb = sb_submodule_lattice(&m, &limits()).unwrap();
        assert_eq!(
            sb.lattice.len(),
            p1_model(3).down_sets(&limits()).unwrap().len()
        );
        assert!(sb.closure.intersection_closed);
    }

    #[test]
    fn datum_over_a_point_is_admissible() {
        let m = SbModel::over_point(2, 2);
        let (_, dat) = sb_datum(&m, &limits()).unwrap();
        assert!(
            crate::datum::validate_admissible(&dat, crate::exec::Exec::Sequential).is_admissible()
        );
    }
}
