use crate::bitset::IdSet;
use crate::error::Result;
use crate::order::SubmoduleLattice;
use crate::spectrum::space::SpectrumSpace;

/// `Supp(e)`.
pub fn supp(space: &SpectrumSpace, e: usize) -> Result<IdSet> {
    space.supp(e)
}

/// The join of every element supported inside `z`: the left inverse of
/// `Supp`.
pub fn classify(sub: &SubmoduleLattice, space: &SpectrumSpace, z: IdSet) -> usize {
    sub.join_or_bottom(
        space
            .supports()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_subset(z))
            .map(|(e, _)| e),
    )
}

/// The primes above `i`. Their meet is `i` (the empty family meets to the
/// top).
pub fn prime_decomposition(
    sub: &SubmoduleLattice,
    space: &SpectrumSpace,
    i: usize,
) -> Result<IdSet> {
    sub.check(i)?;
    Ok((0..space.len())
        .filter(|&q| sub.leq(i, space.prime(q)))
        .collect())
}
