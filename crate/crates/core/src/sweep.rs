//! Batch drivers over catalogs and seeded random instances. Each takes an
//! [`Exec`] so the sequential and parallel paths can be compared.

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{roundtrip_check, RoundTrip};
use crate::limits::Limits;
use crate::order::catalog::{poset_catalog_with, random_closure_lattice, rng};
use crate::order::{down_sets, DownSetLattice, FinitePoset, JoinSemilattice, SubmoduleLattice};
use crate::spectrum::{
    has_unique_cover, ind_completion, is_quasi_s_prime, is_s_prime, is_s_prime_ind, principal,
    support_data_enumerate, universal_map,
};

/// Down-set lattices of every poset with at most `max_points` points.
pub fn catalog_lattices(
    max_points: usize,
    limits: &Limits,
    exec: Exec,
) -> Result<Vec<DownSetLattice>> {
    let posets = poset_catalog_with(max_points, exec);
    collect(
        exec.for_len(posets.len())
            .map(&posets, |p| down_sets(p, limits)),
    )
}

/// `count` seeded random meet-closed lattices with at most `max_elements`
/// elements.
pub fn random_lattices(seed: u64, count: usize, max_elements: usize) -> Vec<SubmoduleLattice> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_closure_lattice(&mut r, max_elements))
        .collect()
}

/// First element where the Ind-object definition, the pairwise definition,
/// the meet-of-over-elements form and the cover count disagree.
pub fn prime_disagreement(l: &SubmoduleLattice, limits: &Limits) -> Result<Option<usize>> {
    let ind = ind_completion(l, limits)?;
    let ambient = IdSet::full(l.len());
    for e in 0..l.len() {
        let by_ind = is_s_prime_ind(&ind, principal(l, e)?, ambient);
        let answers = [
            by_ind,
            is_quasi_s_prime(l, e)?,
            has_unique_cover(l, e)?,
            is_s_prime(l, e)?,
        ];
        if answers.iter().any(|&a| a != by_ind) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

pub fn prime_disagreements(
    lattices: &[SubmoduleLattice],
    limits: &Limits,
    exec: Exec,
) -> Result<Vec<Option<usize>>> {
    collect(
        exec.for_len(lattices.len())
            .map(lattices, |l| prime_disagreement(l, limits)),
    )
}

pub fn roundtrips(posets: &[FinitePoset], limits: &Limits, exec: Exec) -> Result<Vec<RoundTrip>> {
    collect(
        exec.for_len(posets.len())
            .map(posets, |p| roundtrip_check(p, limits)),
    )
}

/// Runs the universal map into every enumerated support datum of every
/// lattice; returns how many maps were built.
pub fn universal_maps(lattices: &[JoinSemilattice], limits: &Limits, exec: Exec) -> Result<usize> {
    let counts = collect(exec.for_len(lattices.len()).map(lattices, |l| {
        let data = support_data_enumerate(l, limits)?;
        for y in &data {
            universal_map(l, y, limits)?;
        }
        Ok(data.len())
    }))?;
    Ok(counts.into_iter().sum())
}

fn collect<T>(items: Vec<Result<T, Error>>) -> Result<Vec<T>> {
    items.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sweeps_agree_across_strategies() {
        let limits = Limits::default();
        let seq = catalog_lattices(4, &limits, Exec::Sequential).unwrap();
        let par = catalog_lattices(4, &limits, Exec::Parallel).unwrap();
        assert_eq!(seq.len(), par.len());
        let subs: Vec<SubmoduleLattice> = seq.iter().map(|d| d.lattice().clone()).collect();
        let a = prime_disagreements(&subs, &limits, Exec::Sequential).unwrap();
        let b = prime_disagreements(&subs, &limits, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(Option::is_none));
    }

    #[test]
    fn random_lattices_are_reproducible() {
        let a = random_lattices(3, 10, 20);
        let b = random_lattices(3, 10, 20);
        assert!(a.iter().zip(&b).all(|(x, y)| x.labels() == y.labels()));
    }
}
