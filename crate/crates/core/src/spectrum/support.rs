use std::collections::HashMap;
use std::fmt;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::order::{FinitePoset, JoinSemilattice};
use crate::spectrum::ind::{ind_completion, IndObject};
use crate::spectrum::prime::is_s_prime_ind;
use crate::spectrum::space::{spectrum, SpectrumSpace};
use crate::topology::{continuity_violation, preimage, ClosedSets};

/// A finite space with an assignment of a subset to every lattice element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportDatum {
    labels: Vec<String>,
    closed: ClosedSets,
    supp: Vec<IdSet>,
}

impl SupportDatum {
    /// Takes the closed-set family verbatim; nothing is validated.
    pub fn new(labels: Vec<String>, closed: ClosedSets, supp: Vec<IdSet>) -> Self {
        SupportDatum {
            labels,
            closed,
            supp,
        }
    }

    /// Topology generated by the supports.
    pub fn generated(labels: Vec<String>, supp: Vec<IdSet>, limits: &Limits) -> Result<Self> {
        let closed =
            ClosedSets::generated(labels.len(), supp.iter().copied(), limits.max_closed_sets)?;
        Ok(Self::new(labels, closed, supp))
    }

    /// Topology of down-sets of `space`.
    pub fn on_poset(space: &FinitePoset, supp: Vec<IdSet>, limits: &Limits) -> Result<Self> {
        let closed = ClosedSets::of_poset(space, limits)?;
        Ok(Self::new(space.labels().to_vec(), closed, supp))
    }

    pub fn from_spectrum(space: &SpectrumSpace) -> Self {
        Self::new(
            space.labels().to_vec(),
            space.closed_sets().clone(),
            space.supports().to_vec(),
        )
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

    pub fn closed_sets(&self) -> &ClosedSets {
        &self.closed
    }

    pub fn supp(&self, e: usize) -> Result<IdSet> {
        self.supp.get(e).copied().ok_or(Error::UnknownElement(e))
    }

    pub fn supports(&self) -> &[IdSet] {
        &self.supp
    }

    /// `{ l | y ∉ Supp(l) }`, the ideal a point remembers.
    pub fn ideal_of(&self, y: usize) -> IdSet {
        (0..self.supp.len())
            .filter(|&l| !self.supp[l].contains(y))
            .collect()
    }

    fn format_set(&self, s: IdSet) -> String {
        let names: Vec<&str> = s.iter().map(|x| self.labels[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Domain,
    SemilatticeMap,
    Distinguishability,
    Topology,
    T0,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Domain => "domain",
            Axiom::SemilatticeMap => "semilattice map",
            Axiom::Distinguishability => "distinguishability",
            Axiom::Topology => "topology",
            Axiom::T0 => "T0",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportReport {
    Pass,
    Fail { axiom: Axiom, witness: String },
}

impl SupportReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, SupportReport::Pass)
    }
}

fn fail(axiom: Axiom, witness: String) -> SupportReport {
    SupportReport::Fail { axiom, witness }
}

/// Checks the axioms in order and reports the first one that fails.
pub fn check_support_datum(
    l: &JoinSemilattice,
    y: &SupportDatum,
    limits: &Limits,
) -> SupportReport {
    let n = l.len();
    let full = IdSet::full(y.len());
    if y.supp.len() != n {
        return fail(
            Axiom::Domain,
            format!("{} supports for {} elements", y.supp.len(), n),
        );
    }
    if y.closed.points() != y.len() {
        return fail(
            Axiom::Domain,
            "closed sets live on a different point set".into(),
        );
    }
    if let Some(e) = (0..n).find(|&e| !y.supp[e].is_subset(full)) {
        return fail(
            Axiom::Domain,
            format!("Supp({}) names unknown points", l.label(e)),
        );
    }
    for a in 0..n {
        for b in a + 1..n {
            if y.supp[l.join(a, b)] != y.supp[a].union(y.supp[b]) {
                return fail(
                    Axiom::SemilatticeMap,
                    format!(
                        "Supp({} ∨ {}) ≠ Supp({}) ∪ Supp({})",
                        l.label(a),
                        l.label(b),
                        l.label(a),
                        l.label(b)
                    ),
                );
            }
        }
    }
    // ind-objects of a finite semilattice are principal; the induced support
    // of ↓e is the union over it
    let mut seen: HashMap<IdSet, usize> = HashMap::new();
    for e in 0..n {
        let s = l
            .down_set(e)
            .fold(IdSet::EMPTY, |acc, d| acc.union(y.supp[d]));
        if let Some(&other) = seen.get(&s) {
            return fail(
                Axiom::Distinguishability,
                format!(
                    "↓{} and ↓{} both have support {}",
                    l.label(other),
                    l.label(e),
                    y.format_set(s)
                ),
            );
        }
        seen.insert(s, e);
    }
    match ClosedSets::generated(y.len(), y.supp.iter().copied(), limits.max_closed_sets) {
        Ok(generated) if generated == y.closed => {}
        Ok(generated) => {
            let witness = generated
                .sets()
                .iter()
                .find(|c| !y.closed.contains(**c))
                .map(|c| format!("generated closed set {} is missing", y.format_set(*c)))
                .or_else(|| {
                    y.closed
                        .sets()
                        .iter()
                        .find(|c| !generated.contains(**c))
                        .map(|c| {
                            format!(
                                "closed set {} is not generated by supports",
                                y.format_set(*c)
                            )
                        })
                })
                .unwrap_or_default();
            return fail(Axiom::Topology, witness);
        }
        Err(e) => return fail(Axiom::Topology, e.to_string()),
    }
    if let Some((a, b)) = y.closed.t0_violation() {
        return fail(
            Axiom::T0,
            format!(
                "points {} and {} are not separated",
                y.labels[a], y.labels[b]
            ),
        );
    }
    SupportReport::Pass
}

/// The comparison map from the spectrum to a support datum together with the
/// spectrum it starts from.
#[derive(Clone, Debug)]
pub struct UniversalMap {
    pub source: SpectrumSpace,
    /// Point of the target for every point of the source.
    pub map: Vec<usize>,
}

/// The unique map of support data from the spectrum of `l` to `y`.
///
/// For a prime `P` with `P̄` the intersection of the strictly larger ideals,
/// the candidates are `Supp_Y(P̄) ∖ Supp_Y(P)`; the point chosen is the one
/// whose ideal `{ l | y ∉ Supp_Y(l) }` is exactly `P`. The pullback identity
/// is verified before returning.
pub fn universal_map(
    l: &JoinSemilattice,
    y: &SupportDatum,
    limits: &Limits,
) -> Result<UniversalMap> {
    if let SupportReport::Fail { axiom, witness } = check_support_datum(l, y, limits) {
        return Err(Error::NotSupportDatum(format!("{axiom}: {witness}")));
    }
    let x = spectrum(l, limits)?;
    let induced = |ideal: IdSet| {
        ideal
            .iter()
            .fold(IdSet::EMPTY, |acc, d| acc.union(y.supp[d]))
    };
    let mut map = Vec::with_capacity(x.len());
    for pt in 0..x.len() {
        let p = x.prime(pt);
        let below_p: IdSet = l.down_set(p).collect();
        let closure: IdSet = (0..l.len())
            .filter(|&d| l.strictly_above(p).all(|a| l.leq(d, a)))
            .collect();
        let candidates = induced(closure).difference(induced(below_p));
        let compatible: Vec<usize> = candidates
            .iter()
            .filter(|&c| y.ideal_of(c) == below_p)
            .collect();
        match compatible.as_slice() {
            [c] => map.push(*c),
            [] => {
                return Err(Error::VerificationFailed(format!(
                    "no candidate in {} is compatible with prime `{}`",
                    y.format_set(candidates),
                    x.label(pt)
                )))
            }
            many => {
                return Err(Error::AmbiguousChoice {
                    prime: x.label(pt).to_string(),
                    candidates: many.iter().map(|&c| y.labels[c].clone()).collect(),
                })
            }
        }
    }
    for e in 0..l.len() {
        if preimage(&map, y.supp[e]) != x.supp(e)? {
            return Err(Error::VerificationFailed(format!(
                "pullback of Supp_Y({}) differs from Supp({})",
                l.label(e),
                l.label(e)
            )));
        }
    }
    Ok(UniversalMap { source: x, map })
}

/// Every map of support data `x → y`, by brute force over all point maps.
pub fn support_data_maps(
    x: &SupportDatum,
    y: &SupportDatum,
    limits: &Limits,
) -> Result<Vec<Vec<usize>>> {
    let (n, m) = (x.len(), y.len());
    let total = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    Limits::check(
        "candidate maps",
        usize::try_from(total).unwrap_or(usize::MAX),
        limits.max_closed_sets,
    )?;
    if x.supp.len() != y.supp.len() {
        return Err(Error::InvalidDatum(
            "support data of different lattices".into(),
        ));
    }
    let mut out = Vec::new();
    if m == 0 && n > 0 {
        return Ok(out);
    }
    let mut f = vec![0usize; n];
    loop {
        let pulls_back = (0..x.supp.len()).all(|e| preimage(&f, y.supp[e]) == x.supp[e]);
        if pulls_back && continuity_violation(&f, &x.closed, &y.closed).is_none() {
            out.push(f.clone());
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// One support datum per set of ideals `S` with `X_L ⊆ S ⊆ Ind(L) ∪ {∅}`:
/// the points are the members of `S`, and `Supp(l)` is the set of points
/// not containing `l`.
pub fn support_data_enumerate(l: &JoinSemilattice, limits: &Limits) -> Result<Vec<SupportDatum>> {
    let ind = ind_completion(l, limits)?;
    let ambient = IdSet::full(l.len());
    let (primes, rest): (Vec<IndObject>, Vec<IndObject>) =
        ind.iter().partition(|&&o| is_s_prime_ind(&ind, o, ambient));
    let name = |s: IdSet| -> String {
        if s.is_empty() {
            "∅".to_string()
        } else {
            let o = ind
                .iter()
                .find(|o| o.carrier() == s)
                .expect("listed ind-object");
            l.label(o.maximum(l).expect("finite ind-objects are principal"))
                .to_string()
        }
    };
    let mut extras: Vec<IdSet> = vec![IdSet::EMPTY];
    extras.extend(rest.iter().map(|o| o.carrier()));
    Limits::check("optional support points", extras.len(), 20)?;
    let count = 1usize << extras.len();
    Limits::check("support data", count, limits.max_closed_sets)?;

    let mut out = Vec::with_capacity(count);
    for mask in 0..count {
        let mut points: Vec<IdSet> = primes.iter().map(|o| o.carrier()).collect();
        points.extend(
            (0..extras.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| extras[i]),
        );
        points.sort_by_key(|s| (s.len(), s.bits()));
        let labels = points.iter().map(|&s| name(s)).collect();
        let supp = (0..l.len())
            .map(|e| {
                (0..points.len())
                    .filter(|&i| !points[i].contains(e))
                    .collect()
            })
            .collect();
        out.push(SupportDatum::generated(labels, supp, limits)?);
    }
    Ok(out)
}
