//! Model documents: the serializable description of an input and its
//! resolution into library values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use ttg_core::datum::LatticeDatum;
use ttg_core::geometry::{
    coh_sing_spaces, perf_model, perf_over, projective_model, sb_datum, CohSing, PointAttrs,
    SbLattice, SbModel, SchemeModel,
};
use ttg_core::order::{down_sets, DownSetLattice};
use ttg_core::{Error, FinitePoset, IdSet, Limits, SubmoduleLattice};

/// One `closed set -> element` entry of an action table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub closed: Vec<String>,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    tag = "kind",
    rename_all = "kebab-case",
    rename_all_fields = "kebab-case"
)]
pub enum Model {
    /// A finite spectral space; its datum is the perfect-complex model.
    Poset {
        points: Vec<String>,
        #[serde(default)]
        order: Vec<(String, String)>,
    },
    Lattice {
        elements: Vec<String>,
        #[serde(default)]
        order: Vec<(String, String)>,
    },
    Datum {
        elements: Vec<String>,
        #[serde(default)]
        order: Vec<(String, String)>,
        base_points: Vec<String>,
        #[serde(default)]
        base_order: Vec<(String, String)>,
        #[serde(default)]
        action: Vec<ActionEntry>,
    },
    /// Relative dimension one Severi–Brauer model over a point.
    Sb { n: usize, copies: usize },
    Koszul {
        points: Vec<String>,
        #[serde(default)]
        order: Vec<(String, String)>,
        ecodim: BTreeMap<String, u32>,
        #[serde(default)]
        non_ci: Vec<String>,
        #[serde(default)]
        extra: BTreeMap<String, usize>,
    },
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Poset { .. } => "poset",
            Model::Lattice { .. } => "lattice",
            Model::Datum { .. } => "datum",
            Model::Sb { .. } => "sb",
            Model::Koszul { .. } => "koszul",
        }
    }

    /// Build the library values the commands run on.
    pub fn resolve(&self, limits: &Limits) -> Result<Subject, Error> {
        Ok(match self {
            Model::Poset { points, order } => {
                let x = poset(points, order)?;
                let datum = perf_model(&x, limits)?;
                let down = down_sets(&x, limits)?;
                Subject::Poset { x, down, datum }
            }
            Model::Lattice { elements, order } => Subject::Lattice(lattice(elements, order)?),
            Model::Datum {
                elements,
                order,
                base_points,
                base_order,
                action,
            } => {
                let sub = lattice(elements, order)?;
                let base = poset(base_points, base_order)?;
                let mut entries = Vec::with_capacity(action.len());
                for a in action {
                    let mut z = IdSet::EMPTY;
                    for p in &a.closed {
                        z.insert(index(&base, p)?);
                    }
                    let e = sub
                        .index_of(&a.element)
                        .ok_or_else(|| Error::UnknownLabel(a.element.clone()))?;
                    entries.push((z, e));
                }
                Subject::Datum(LatticeDatum::from_entries(sub, base, &entries, limits)?)
            }
            Model::Sb { n, copies } => {
                let model = SbModel::over_point(*n, *copies);
                let (lattice, datum) = sb_datum(&model, limits)?;
                Subject::Sb {
                    model,
                    lattice,
                    datum,
                }
            }
            Model::Koszul {
                points,
                order,
                ecodim,
                non_ci,
                extra,
            } => {
                let x = poset(points, order)?;
                for label in ecodim.keys().chain(non_ci).chain(extra.keys()) {
                    index(&x, label)?;
                }
                let mut attrs = Vec::with_capacity(x.len());
                let mut projs = Vec::with_capacity(x.len());
                for label in x.labels() {
                    let e = *ecodim
                        .get(label)
                        .ok_or_else(|| Error::InvalidDatum(format!("no ecodim for `{label}`")))?;
                    attrs.push(PointAttrs {
                        regular: e == 0,
                        complete_intersection: !non_ci.contains(label),
                        ecodim: e,
                    });
                    projs.push(projective_model(
                        i64::from(e) - 1,
                        extra.get(label).copied().unwrap_or(0),
                    ));
                }
                let scheme = SchemeModel::new(x.clone(), attrs)?;
                let spaces = coh_sing_spaces(&scheme, &projs, &[])?;
                let datum = perf_over(&spaces.coh, &x, &spaces.fiber_of, limits)?;
                Subject::Koszul {
                    scheme,
                    spaces,
                    datum,
                }
            }
        })
    }
}

/// A resolved model.
pub enum Subject {
    Poset {
        x: FinitePoset,
        down: DownSetLattice,
        datum: LatticeDatum,
    },
    Lattice(SubmoduleLattice),
    Datum(LatticeDatum),
    Sb {
        model: SbModel,
        lattice: SbLattice,
        datum: LatticeDatum,
    },
    Koszul {
        scheme: SchemeModel,
        spaces: CohSing,
        datum: LatticeDatum,
    },
}

impl Subject {
    pub fn lattice(&self) -> &SubmoduleLattice {
        match self {
            Subject::Poset { down, .. } => down,
            Subject::Lattice(l) => l,
            Subject::Datum(d) | Subject::Sb { datum: d, .. } | Subject::Koszul { datum: d, .. } => {
                d.sub()
            }
        }
    }

    pub fn datum(&self) -> Option<&LatticeDatum> {
        match self {
            Subject::Lattice(_) => None,
            Subject::Poset { datum, .. }
            | Subject::Sb { datum, .. }
            | Subject::Koszul { datum, .. } => Some(datum),
            Subject::Datum(d) => Some(d),
        }
    }
}

fn index(p: &FinitePoset, label: &str) -> Result<usize, Error> {
    p.index_of(label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

fn relations(
    p_labels: &[String],
    order: &[(String, String)],
) -> Result<Vec<(usize, usize)>, Error> {
    let find = |l: &String| {
        p_labels
            .iter()
            .position(|m| m == l)
            .ok_or_else(|| Error::UnknownLabel(l.clone()))
    };
    order
        .iter()
        .map(|(a, b)| Ok((find(a)?, find(b)?)))
        .collect()
}

pub fn poset(points: &[String], order: &[(String, String)]) -> Result<FinitePoset, Error> {
    FinitePoset::from_pairs(points.to_vec(), &relations(points, order)?)
}

pub fn lattice(elements: &[String], order: &[(String, String)]) -> Result<SubmoduleLattice, Error> {
    let p = poset(elements, order)?;
    SubmoduleLattice::from_leq(elements.to_vec(), |a, b| p.leq(a, b))
}

/// The Hasse edges of a poset as label pairs, in id order.
pub fn hasse_labels(p: &FinitePoset) -> Vec<(String, String)> {
    p.hasse_edges()
        .into_iter()
        .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
        .collect()
}
