//! Brute-force oracles that share no code with the library beyond the
//! input types: every answer is recomputed from the raw order relation.
#![allow(dead_code)]

use ttg_core::order::JoinSemilattice;
use ttg_core::FinitePoset;

/// Order relation as a matrix, read once from the library type.
pub fn leq_matrix_poset(p: &FinitePoset) -> Vec<Vec<bool>> {
    (0..p.len())
        .map(|a| (0..p.len()).map(|b| p.leq(a, b)).collect())
        .collect()
}

pub fn leq_matrix(l: &JoinSemilattice) -> Vec<Vec<bool>> {
    (0..l.len())
        .map(|a| (0..l.len()).map(|b| l.leq(a, b)).collect())
        .collect()
}

/// All down-closed subsets, as bitmasks, by scanning every subset.
pub fn down_sets(leq: &[Vec<bool>]) -> Vec<u64> {
    let n = leq.len();
    assert!(n < 20);
    (0u64..1 << n)
        .filter(|&s| {
            (0..n).all(|x| s >> x & 1 == 0 || (0..n).all(|y| !leq[y][x] || s >> y & 1 == 1))
        })
        .collect()
}

pub fn is_sub(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Greatest lower bound by search, if it exists.
pub fn glb(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
    lower
        .iter()
        .copied()
        .find(|&m| lower.iter().all(|&c| leq[c][m]))
}

pub fn lub(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let upper: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
    upper
        .iter()
        .copied()
        .find(|&m| upper.iter().all(|&c| leq[m][c]))
}

/// The definition of a prime read over every nonempty family of strict
/// over-elements: each family must meet strictly above `p`. The top, whose
/// only family is empty, is excluded.
pub fn is_prime_by_families(leq: &[Vec<bool>], p: usize) -> bool {
    let n = leq.len();
    let above: Vec<usize> = (0..n).filter(|&a| a != p && leq[p][a]).collect();
    if above.is_empty() {
        return false;
    }
    assert!(above.len() < 20);
    (1u32..1 << above.len()).all(|mask| {
        let fam: Vec<usize> = (0..above.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| above[i])
            .collect();
        let m = fam[1..]
            .iter()
            .try_fold(fam[0], |acc, &x| glb(leq, acc, x))
            .expect("meets exist");
        m != p
    })
}

/// Nonempty, down-closed, join-closed subsets, by scanning every subset.
pub fn ind_objects(leq: &[Vec<bool>]) -> Vec<u64> {
    let n = leq.len();
    down_sets(leq)
        .into_iter()
        .filter(|&s| s != 0)
        .filter(|&s| {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    s >> a & 1 == 0 || s >> b & 1 == 0 || {
                        let j = lub(leq, a, b).expect("joins exist");
                        s >> j & 1 == 1
                    }
                })
            })
        })
        .collect()
}

/// Pairwise form of the prime condition: any two strict over-elements meet
/// strictly above `p`. Agrees with the family form on finite lattices.
pub fn is_prime_pairwise(leq: &[Vec<bool>], p: usize) -> bool {
    let n = leq.len();
    let above: Vec<usize> = (0..n).filter(|&a| a != p && leq[p][a]).collect();
    !above.is_empty()
        && above.iter().all(|&a| {
            above
                .iter()
                .all(|&b| glb(leq, a, b).expect("meets exist") != p)
        })
}
