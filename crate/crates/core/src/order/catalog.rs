//! Exhaustive catalogs and seeded random generators of posets and lattices.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::IdSet;
use crate::exec::Exec;
use crate::order::lattice::{JoinSemilattice, SubmoduleLattice};
use crate::order::poset::FinitePoset;

pub type SeededRng = ChaCha8Rng;

/// Default seed of the randomized suites.
pub const DEFAULT_SEED: u64 = 0x5eed_5bec;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest poset size the permutation-based canonical form accepts.
pub const MAX_CANONICAL_POINTS: usize = 8;

fn relation_code(p: &FinitePoset, perm: &[usize]) -> u64 {
    // bit (perm[x], perm[y]) set when x < y
    let n = p.len();
    let mut code = 0u64;
    for x in 0..n {
        for y in p.up(x).iter() {
            if y != x {
                code |= 1 << (perm[x] * n + perm[y]);
            }
        }
    }
    code
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    // Heap's algorithm
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Isomorphism-invariant code of a poset with at most
/// [`MAX_CANONICAL_POINTS`] points: the least relation bitmask over all
/// relabelings.
pub fn canonical_form(p: &FinitePoset) -> (usize, u64) {
    let n = p.len();
    assert!(
        n <= MAX_CANONICAL_POINTS,
        "canonical form limited to {MAX_CANONICAL_POINTS} points"
    );
    let mut best = u64::MAX;
    for_each_permutation(n, |perm| {
        best = best.min(relation_code(p, perm));
    });
    (n, if n == 0 { 0 } else { best })
}

/// One representative of every isomorphism class of posets with at most
/// `max_points` points, by size and then by canonical code.
///
/// Each poset on `k + 1` points arises from one on `k` points by adding a
/// maximal point above some down-set.
pub fn poset_catalog(max_points: usize) -> Vec<FinitePoset> {
    poset_catalog_with(max_points, Exec::default())
}

pub fn poset_catalog_with(max_points: usize, exec: Exec) -> Vec<FinitePoset> {
    assert!(max_points <= MAX_CANONICAL_POINTS);
    let mut all = vec![FinitePoset::empty()];
    let mut level = vec![FinitePoset::empty()];
    for k in 0..max_points {
        let extensions: Vec<Vec<((usize, u64), FinitePoset)>> =
            exec.for_len(level.len()).map(&level, |p| {
                let mut out = Vec::new();
                p.for_each_down_set(usize::MAX, |d| {
                    let mut down: Vec<IdSet> = (0..k).map(|x| p.down(x)).collect();
                    down.push(d.with(k));
                    let labels = (0..=k).map(|i| i.to_string()).collect();
                    let q =
                        FinitePoset::from_down_sets(labels, down).expect("extension is a poset");
                    out.push((canonical_form(&q), q));
                })
                .expect("no limit");
                out
            });
        let mut seen = HashSet::new();
        let mut next: Vec<((usize, u64), FinitePoset)> = extensions
            .into_iter()
            .flatten()
            .filter(|(code, _)| seen.insert(*code))
            .collect();
        next.sort_by_key(|(code, _)| *code);
        level = next.into_iter().map(|(_, q)| q).collect();
        all.extend(level.iter().cloned());
    }
    all
}

/// Every join-semilattice with `1..=max_elements` elements, up to
/// isomorphism.
pub fn join_semilattice_catalog(max_elements: usize) -> Vec<JoinSemilattice> {
    poset_catalog(max_elements)
        .into_iter()
        .filter(|p| !p.is_empty())
        .filter_map(|p| {
            let labels = (0..p.len()).map(|i| format!("l{i}")).collect();
            JoinSemilattice::from_leq(labels, |a, b| p.leq(a, b)).ok()
        })
        .collect()
}

/// Random poset on `n` points: each pair of a random linear order is related
/// with probability `density`, then closed transitively.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> FinitePoset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FinitePoset::from_pairs(labels, &pairs).expect("random DAG closure is a poset")
}

/// Random meet-closed lattice: the intersection closure of random subsets of
/// a small ground set, together with the ground set. Retries until the
/// family has at most `max_elements` members.
pub fn random_closure_lattice(rng: &mut impl Rng, max_elements: usize) -> SubmoduleLattice {
    loop {
        let ground = rng.gen_range(2..=6usize);
        let gens = rng.gen_range(1..=7usize);
        let full = IdSet::full(ground);
        let mut family: HashSet<IdSet> = HashSet::from([full]);
        for _ in 0..gens {
            let s = IdSet::from_bits(rng.gen::<u128>()).intersection(full);
            family.insert(s);
        }
        loop {
            let current: Vec<IdSet> = family.iter().copied().collect();
            let before = family.len();
            for &a in &current {
                for &b in &current {
                    family.insert(a.intersection(b));
                }
            }
            if family.len() == before {
                break;
            }
        }
        if family.len() > max_elements {
            continue;
        }
        let mut sets: Vec<IdSet> = family.into_iter().collect();
        sets.sort_by_key(|s| (s.len(), s.bits()));
        let labels = sets
            .iter()
            .map(|s| {
                let names: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                format!("[{}]", names.join(""))
            })
            .collect();
        return SubmoduleLattice::from_leq(labels, |a, b| sets[a].is_subset(sets[b]))
            .expect("closure system is a lattice");
    }
}
