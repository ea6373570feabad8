//! Coherent and singularity spectra of a scheme described pointwise by its
//! embedding codimension.
//!
//! Over a point with embedding codimension `c` the singularity fiber is a
//! finite model of `P^{c-1}` and the coherent fiber adds one point `x`, the
//! image of the closed embedding of the scheme. At complete-intersection
//! points `x` is the cone point, a specialization of the whole fiber, so
//! the coherent fiber is local of Krull dimension `c`; elsewhere `x` is
//! left isolated, and the fiber is not local.

use rand::Rng;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::order::FinitePoset;

/// Finite model of `P^m`: a chain `p0 < … < pm` plus `extra` further closed
/// points below `p1` (isolated when `m = 0`). `m = -1` gives the empty
/// poset. Local exactly when `extra = 0`.
pub fn projective_model(m: i64, extra: usize) -> FinitePoset {
    if m < 0 {
        return FinitePoset::empty();
    }
    let m = m as usize;
    let mut labels: Vec<String> = (0..=m).map(|i| format!("p{i}")).collect();
    labels.extend((1..=extra).map(|i| format!("q{i}")));
    let mut pairs: Vec<(usize, usize)> = (0..m).map(|i| (i, i + 1)).collect();
    if m >= 1 {
        pairs.extend((0..extra).map(|i| (m + 1 + i, 1)));
    }
    FinitePoset::from_pairs(labels, &pairs).expect("projective model is a poset")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulFiber {
    pub coh: FinitePoset,
    pub sing: FinitePoset,
    /// The point of `coh` not in `sing`.
    pub apex: usize,
}

/// Fibers over a point with embedding codimension `c` and projective model
/// `proj` (of Krull dimension `c - 1`).
pub fn koszul_fiber(
    c: u32,
    proj: &FinitePoset,
    complete_intersection: bool,
) -> Result<KoszulFiber> {
    let expected = c as i64 - 1;
    let actual = proj.krull_dimension();
    if actual != expected {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    let n = proj.len();
    let mut labels = proj.labels().to_vec();
    labels.push("x".into());
    let mut pairs = proj.hasse_edges();
    if complete_intersection {
        pairs.extend((0..n).map(|p| (n, p)));
    }
    let coh = FinitePoset::from_pairs(labels, &pairs)?;
    Ok(KoszulFiber {
        coh,
        sing: proj.clone(),
        apex: n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointAttrs {
    pub regular: bool,
    pub complete_intersection: bool,
    pub ecodim: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeModel {
    space: FinitePoset,
    attrs: Vec<PointAttrs>,
}

impl SchemeModel {
    /// Rejects attribute tables that no local ring has: regular exactly
    /// when `ecodim = 0`, and `ecodim ≤ 1` forces a complete intersection.
    pub fn new(space: FinitePoset, attrs: Vec<PointAttrs>) -> Result<Self> {
        if attrs.len() != space.len() {
            return Err(Error::InvalidDatum(format!(
                "{} attribute rows for {} points",
                attrs.len(),
                space.len()
            )));
        }
        for (x, a) in attrs.iter().enumerate() {
            let bad = |reason: &str| Error::InconsistentEcodim {
                point: space.label(x).to_string(),
                reason: reason.to_string(),
            };
            if a.regular != (a.ecodim == 0) {
                return Err(bad("regular exactly when the embedding codimension is 0"));
            }
            if a.ecodim <= 1 && !a.complete_intersection {
                return Err(bad("embedding codimension at most 1 is a hypersurface"));
            }
        }
        Ok(SchemeModel { space, attrs })
    }

    pub fn space(&self) -> &FinitePoset {
        &self.space
    }

    pub fn attrs(&self) -> &[PointAttrs] {
        &self.attrs
    }

    pub fn singular_locus(&self) -> IdSet {
        (0..self.space.len())
            .filter(|&x| !self.attrs[x].regular)
            .collect()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.attrs.iter().all(|a| a.ecodim <= 1)
    }
}

#[derive(Clone, Debug)]
pub struct CohSing {
    pub coh: FinitePoset,
    pub sing: FinitePoset,
    /// Base point under every point of `coh`.
    pub fiber_of: Vec<usize>,
    /// The closed copy of the scheme inside `coh`.
    pub copy: IdSet,
    /// Point of `coh` for every point of `sing`.
    pub sing_in_coh: Vec<usize>,
}

impl CohSing {
    pub fn coh_fiber(&self, x: usize) -> FinitePoset {
        self.coh.induced(self.fiber_set(x)).0
    }

    pub fn sing_fiber(&self, x: usize) -> FinitePoset {
        self.coh.induced(self.fiber_set(x).difference(self.copy)).0
    }

    fn fiber_set(&self, x: usize) -> IdSet {
        (0..self.coh.len())
            .filter(|&p| self.fiber_of[p] == x)
            .collect()
    }
}

/// Glues the Koszul fibers over all points.
///
/// Across fibers: the copy of the scheme carries the scheme's order, and for
/// `x' < x` the maximal points of the model over `x` lie above the whole
/// model over `x'`. `cross` adds relations between `coh` labels.
pub fn coh_sing_spaces(
    model: &SchemeModel,
    proj_models: &[FinitePoset],
    cross: &[(String, String)],
) -> Result<CohSing> {
    let space = &model.space;
    if proj_models.len() != space.len() {
        return Err(Error::InvalidDatum(format!(
            "{} projective models for {} points",
            proj_models.len(),
            space.len()
        )));
    }
    let mut labels = Vec::new();
    let mut fiber_of = Vec::new();
    let mut pairs = Vec::new();
    let mut proj_ids: Vec<Vec<usize>> = Vec::with_capacity(space.len());
    let mut copy_id = vec![0usize; space.len()];
    for (x, proj) in proj_models.iter().enumerate() {
        let a = model.attrs[x];
        let f = koszul_fiber(a.ecodim, proj, a.complete_intersection).map_err(|e| {
            Error::InconsistentEcodim {
                point: space.label(x).to_string(),
                reason: e.to_string(),
            }
        })?;
        let off = labels.len();
        labels.extend(
            proj.labels()
                .iter()
                .map(|p| format!("{}:{}", space.label(x), p)),
        );
        labels.push(space.label(x).to_string());
        fiber_of.extend(std::iter::repeat_n(x, f.coh.len()));
        pairs.extend(
            f.coh
                .hasse_edges()
                .into_iter()
                .map(|(a, b)| (off + a, off + b)),
        );
        proj_ids.push((off..off + proj.len()).collect());
        copy_id[x] = off + f.apex;
    }
    Limits::check("coherent points", labels.len(), IdSet::CAPACITY)?;
    for (lo, hi) in space.hasse_edges() {
        pairs.push((copy_id[lo], copy_id[hi]));
    }
    // every strict pair, since the models over points in between may be empty
    let strict = (0..space.len()).flat_map(|hi| {
        space
            .down(hi)
            .iter()
            .filter(move |&lo| lo != hi)
            .map(move |lo| (lo, hi))
    });
    for (lo, hi) in strict {
        let tops: Vec<usize> = proj_models[hi]
            .maximal_points()
            .iter()
            .map(|p| proj_ids[hi][p])
            .collect();
        for &q in &proj_ids[lo] {
            pairs.extend(tops.iter().map(|&t| (q, t)));
        }
    }
    for (a, b) in cross {
        let find = |l: &String| {
            labels
                .iter()
                .position(|m| m == l)
                .ok_or_else(|| Error::UnknownLabel(l.clone()))
        };
        pairs.push((find(a)?, find(b)?));
    }
    let coh = FinitePoset::from_pairs(labels, &pairs)?;
    let copy: IdSet = copy_id.iter().copied().collect();
    let (sing, sing_in_coh) = coh.induced(coh.points().difference(copy));
    Ok(CohSing {
        coh,
        sing,
        fiber_of,
        copy,
        sing_in_coh,
    })
}

/// A random scheme model on a random poset with `n` points, with projective
/// models that are local exactly at complete-intersection points.
pub fn random_scheme_model(rng: &mut impl Rng, n: usize) -> (SchemeModel, Vec<FinitePoset>) {
    let space = crate::order::catalog::random_poset(rng, n, 0.4);
    let mut attrs = Vec::with_capacity(n);
    let mut projs = Vec::with_capacity(n);
    for _ in 0..n {
        let ecodim: u32 = rng.gen_range(0..=3);
        let ci = ecodim <= 1 || rng.gen_bool(0.5);
        attrs.push(PointAttrs {
            regular: ecodim == 0,
            complete_intersection: ci,
            ecodim,
        });
        let extra = if ci { 0 } else { rng.gen_range(1..=2) };
        projs.push(projective_model(ecodim as i64 - 1, extra));
    }
    (
        SchemeModel::new(space, attrs).expect("consistent by construction"),
        projs,
    )
}
