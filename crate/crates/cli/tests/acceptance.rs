//! The acceptance suite: ten exact checks, one report line each.
//!
//! Run with `cargo test -p ttg-cli --test acceptance`. The process exits
//! non-zero if any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use ttg_core::datum::*;
use ttg_core::geometry::*;
use ttg_core::order::catalog::{
    join_semilattice_catalog, poset_catalog, random_poset, rng, DEFAULT_SEED,
};
use ttg_core::order::{JoinSemilattice, SubmoduleLattice};
use ttg_core::spectrum::*;
use ttg_core::topology::{continuity_violation, ClosedSets};
use ttg_core::{sweep, Exec, FinitePoset, IdSet, Limits};

type Verdict = Result<String, String>;

fn lim() -> Limits {
    Limits::default()
}

fn ok<T>(r: ttg_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog(max_points: usize) -> Result<Vec<SubmoduleLattice>, String> {
    Ok(
        ok(sweep::catalog_lattices(max_points, &lim(), Exec::default()))?
            .into_iter()
            .map(|d| d.into_lattice())
            .collect(),
    )
}

fn random_lattices() -> Vec<SubmoduleLattice> {
    sweep::random_lattices(DEFAULT_SEED, 500, 20)
}

/// Pairwise prime test read straight off the order relation: some element
/// lies strictly above `p`, and any two such elements have a lower bound
/// strictly above `p`.
fn pairwise_prime(l: &JoinSemilattice, p: usize) -> bool {
    let n = l.len();
    let above: Vec<usize> = (0..n).filter(|&a| a != p && l.leq(p, a)).collect();
    !above.is_empty()
        && above.iter().all(|&a| {
            above
                .iter()
                .all(|&b| above.iter().any(|&c| l.leq(c, a) && l.leq(c, b)))
        })
}

fn prime_coincidence() -> Verdict {
    let mut lattices = catalog(4)?;
    let from_catalog = lattices.len();
    lattices.extend(random_lattices());
    let verdicts = ok(sweep::prime_disagreements(
        &lattices,
        &lim(),
        Exec::default(),
    ))?;
    for (i, (l, v)) in lattices.iter().zip(&verdicts).enumerate() {
        if let Some(e) = v {
            return Err(format!(
                "lattice #{i}: definitions disagree at `{}`",
                l.label(*e)
            ));
        }
        for e in 0..l.len() {
            let by_def = ok(is_s_prime(l, e))?;
            ensure(by_def == pairwise_prime(l, e), || {
                format!(
                    "lattice #{i}: pairwise oracle disagrees at `{}`",
                    l.label(e)
                )
            })?;
        }
    }
    Ok(format!(
        "{from_catalog} catalog lattices and {} random lattices agree",
        lattices.len() - from_catalog
    ))
}

fn classification() -> Verdict {
    let mut lattices = catalog(5)?;
    lattices.extend(random_lattices());
    let mut checked = 0;
    for (i, l) in lattices.iter().enumerate() {
        let s = ok(spectrum(l, &lim()))?;
        let mut seen = std::collections::HashMap::new();
        for e in 0..l.len() {
            let z = ok(s.supp(e))?;
            ensure(classify(l, &s, z) == e, || {
                format!("lattice #{i}: classify(supp({})) differs", l.label(e))
            })?;
            if let Some(prev) = seen.insert(z, e) {
                return Err(format!(
                    "lattice #{i}: `{}` and `{}` share a support",
                    l.label(prev),
                    l.label(e)
                ));
            }
            let above = ok(prime_decomposition(l, &s, e))?;
            let meet = l.meet_all(above.iter().map(|q| s.prime(q)));
            ensure(meet == e, || {
                format!("lattice #{i}: primes above `{}` meet elsewhere", l.label(e))
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} submodules over {} lattices",
        lattices.len()
    ))
}

fn empty_spectrum() -> Verdict {
    let mut lattices: Vec<JoinSemilattice> = catalog(5)?
        .into_iter()
        .map(SubmoduleLattice::into_semilattice)
        .collect();
    lattices.extend(join_semilattice_catalog(6));
    lattices.extend(random_lattices().into_iter().map(|l| l.into_semilattice()));
    let mut trivial = 0;
    for (i, l) in lattices.iter().enumerate() {
        let empty = ok(spectrum(l, &lim()))?.is_empty();
        ensure(empty == (l.len() == 1), || {
            format!("lattice #{i} with {} elements: empty = {empty}", l.len())
        })?;
        trivial += usize::from(empty);
    }
    Ok(format!(
        "{} lattices, {trivial} with empty spectrum, all trivial",
        lattices.len()
    ))
}

fn universality() -> Verdict {
    let lattices = join_semilattice_catalog(6);
    let (mut data, mut exhausted) = (0, 0);
    for (i, l) in lattices.iter().enumerate() {
        let ind = ok(ind_completion(l, &lim()))?;
        ensure(ind.len() <= 6, || {
            format!("lattice #{i}: |Ind| = {}", ind.len())
        })?;
        let s = ok(spectrum(l, &lim()))?;
        let source = SupportDatum::from_spectrum(&s);
        for y in ok(support_data_enumerate(l, &lim()))? {
            let u = ok(universal_map(l, &y, &lim()))?;
            for e in 0..l.len() {
                let pulled: IdSet = (0..s.len())
                    .filter(|&q| y.supports()[e].contains(u.map[q]))
                    .collect();
                ensure(pulled == ok(s.supp(e))?, || {
                    format!("lattice #{i}: pullback of Supp({}) differs", l.label(e))
                })?;
            }
            if s.len() <= 5 {
                let maps = ok(support_data_maps(&source, &y, &lim()))?;
                ensure(maps == vec![u.map.clone()], || {
                    format!("lattice #{i}: {} maps of support data", maps.len())
                })?;
                exhausted += 1;
            }
            data += 1;
        }
    }
    Ok(format!(
        "{data} support data over {} lattices, uniqueness by exhaustion on {exhausted}",
        lattices.len()
    ))
}

fn random_posets(count: usize, max_points: usize) -> Vec<FinitePoset> {
    let mut r = rng(DEFAULT_SEED);
    (0..count)
        .map(|i| {
            let density = 0.1 + 0.1 * (i % 6) as f64;
            random_poset(&mut r, i % (max_points + 1), density)
        })
        .collect()
}

fn round_trip() -> Verdict {
    let mut posets = poset_catalog(4);
    let from_catalog = posets.len();
    posets.extend(random_posets(200, 10));
    let trips = ok(sweep::roundtrips(&posets, &lim(), Exec::default()))?;
    for (i, (x, t)) in posets.iter().zip(&trips).enumerate() {
        ensure(t.holds(), || {
            format!(
                "poset #{i} on {} points: order {} homeo {}",
                x.len(),
                t.order_isomorphic,
                t.homeomorphic
            )
        })?;
    }
    Ok(format!(
        "{from_catalog} catalog posets and {} random posets",
        posets.len() - from_catalog
    ))
}

fn product_datum() -> Result<LatticeDatum, String> {
    let xs = FinitePoset::chain(2);
    let ys = ok(FinitePoset::from_labeled(&["u", "v", "w"], &[("u", "w")]))?;
    let labels: Vec<String> = (0..6)
        .map(|k| format!("{}{}", k / 3, ys.label(k % 3)))
        .collect();
    let mut pairs = Vec::new();
    for a in 0..6 {
        for b in 0..6 {
            if a != b && xs.leq(a / 3, b / 3) && ys.leq(a % 3, b % 3) {
                pairs.push((a, b));
            }
        }
    }
    let prod = ok(FinitePoset::from_pairs(labels, &pairs))?;
    let over: Vec<usize> = (0..6).map(|k| k % 3).collect();
    ok(perf_over(&prod, &ys, &over, &lim()))
}

fn koszul_datum(model: &SchemeModel, projs: &[FinitePoset]) -> Result<LatticeDatum, String> {
    let cs = ok(coh_sing_spaces(model, projs, &[]))?;
    ok(perf_over(&cs.coh, model.space(), &cs.fiber_of, &lim()))
}

fn check_base_morphism(dat: &LatticeDatum) -> Result<(), String> {
    let s = ok(spectrum(dat.sub(), &lim()))?;
    let pi = ok(pi_map(dat, &s, Exec::Sequential))?;
    for q in 0..s.len() {
        let a = ok(pi_by_smallest_member(dat, s.prime(q)))?;
        let b = ok(pi_by_annihilator(dat, s.prime(q)))?;
        ensure(a == b, || {
            format!("point {}: routes give {a} and {b}", s.label(q))
        })?;
        ensure(a < dat.base().len(), || {
            format!("point {}: no image", s.label(q))
        })?;
    }
    let fin = ok(fin_topology(dat, &s, &lim()))?;
    if let Some(c) = fin.continuity_violation(dat, &pi) {
        return Err(format!("preimage {} not closed in fin", s.format_set(c)));
    }
    let base = ok(ClosedSets::of_poset(dat.base(), &lim()))?;
    if let Some(c) = continuity_violation(&pi, s.closed_sets(), &base) {
        return Err(format!(
            "preimage of {} not closed",
            dat.base().format_set(c)
        ));
    }
    let mut seen = IdSet::EMPTY;
    for y in 0..dat.base().len() {
        let f = ok(fiber(dat, &s, &pi, y, &lim()))?;
        ensure(seen.intersection(f.primes).is_empty(), || {
            format!("fiber over {} overlaps", dat.base().label(y))
        })?;
        seen = seen.union(f.primes);
    }
    ensure(seen == s.all(), || "fibers miss some points".into())
}

fn base_morphism() -> Verdict {
    let mut corpus: Vec<(String, LatticeDatum)> = Vec::new();
    for (i, x) in poset_catalog(4)
        .iter()
        .chain(&random_posets(40, 7))
        .enumerate()
    {
        corpus.push((format!("perf #{i}"), ok(perf_model(x, &lim()))?));
    }
    corpus.push(("product".into(), product_datum()?));
    for n in 1..=3 {
        for k in 0..=3 {
            let (_, d) = ok(sb_datum(&SbModel::over_point(n, k), &lim()))?;
            corpus.push((format!("sb n={n} k={k}"), d));
        }
    }
    let mut r = rng(DEFAULT_SEED);
    for i in 0..40 {
        let (model, projs) = random_scheme_model(&mut r, 1 + i % 3);
        if let Ok(d) = koszul_datum(&model, &projs) {
            corpus.push((format!("koszul #{i}"), d));
        }
    }
    let mut admissible = 0;
    for (name, d) in &corpus {
        if !validate_admissible(d, Exec::Sequential).is_admissible() {
            continue;
        }
        check_base_morphism(d).map_err(|e| format!("{name}: {e}"))?;
        admissible += 1;
    }
    ensure(admissible > 0, || "no admissible data".into())?;
    Ok(format!("{admissible} admissible data of {}", corpus.len()))
}

fn decomposition() -> Verdict {
    let lattices = catalog(5)?;
    let mut checked = 0;
    for (i, l) in lattices.iter().enumerate() {
        let s = ok(spectrum(l, &lim()))?;
        for e in 0..l.len() {
            let d = ok(spectrum_decomposition(l, &s, e, &lim()))?;
            ensure(d.holds(), || {
                format!("lattice #{i} at `{}`: {d:?}", l.label(e))
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} submodules over {} lattices",
        lattices.len()
    ))
}

fn severi_brauer() -> Verdict {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=3usize {
        for k in 0..=3usize {
            let sb = ok(sb_submodule_lattice(&SbModel::over_point(n, k), &lim()))?;
            let l = &sb.lattice;
            let enumerated = sb.choices.len();
            let by_spectrum = ok(spectrum(l, &lim()))?.len();
            let mut by_cover = 0;
            for e in 0..l.len() {
                by_cover += usize::from(ok(has_unique_cover(l, e))?);
            }
            let (want_sub, want_primes) = (1 + (1 << n) + k, n + 1 + k);
            if enumerated != want_sub || by_spectrum != want_primes || by_cover != want_primes {
                failures.push(format!(
                    "n={n} k={k}: {enumerated} submodules (want {want_sub}), primes {by_spectrum} by spectrum and {by_cover} by cover (want {want_primes})"
                ));
            }
            cases += 1;
        }
    }
    if failures.is_empty() {
        Ok(format!("{cases} instances match"))
    } else {
        Err(failures.join("; "))
    }
}

fn hypersurfaces() -> Result<Vec<(SchemeModel, Vec<FinitePoset>)>, String> {
    let shapes: [(&[&str], &[(&str, &str)], &[u32]); 3] = [
        (&["s", "eta"], &[("s", "eta")], &[1, 0]),
        (
            &["a", "b", "eta"],
            &[("a", "eta"), ("b", "eta")],
            &[1, 1, 0],
        ),
        (&["m", "p", "eta"], &[("m", "p"), ("p", "eta")], &[1, 1, 0]),
    ];
    shapes
        .iter()
        .map(|(points, order, ecodims)| {
            let x = ok(FinitePoset::from_labeled(points, order))?;
            let attrs = ecodims
                .iter()
                .map(|&e| PointAttrs {
                    regular: e == 0,
                    complete_intersection: true,
                    ecodim: e,
                })
                .collect();
            let projs = ecodims
                .iter()
                .map(|&e| projective_model(i64::from(e) - 1, 0))
                .collect();
            Ok((ok(SchemeModel::new(x, attrs))?, projs))
        })
        .collect()
}

fn singularity_triad() -> Verdict {
    let mut models = hypersurfaces()?;
    let mut r = rng(DEFAULT_SEED);
    models.extend((0..200).map(|i| random_scheme_model(&mut r, 1 + i % 4)));
    let (mut hyper, mut c2) = (0, 0);
    for (i, (model, projs)) in models.iter().enumerate() {
        let cs = ok(coh_sing_spaces(model, projs, &[]))?;
        for (x, a) in model.attrs().iter().enumerate() {
            let (coh, sing, proj) = (cs.coh_fiber(x), cs.sing_fiber(x), &projs[x]);
            let at = || format!("model #{i} point {}", model.space().label(x));
            ensure(a.regular == (coh.len() == 1), || {
                format!("{}: coh size {}", at(), coh.len())
            })?;
            ensure(a.regular == sing.is_empty(), || {
                format!("{}: sing size {}", at(), sing.len())
            })?;
            if a.ecodim == 2 {
                ensure(sing.krull_dimension() == 1, || {
                    format!("{}: sing dimension {}", at(), sing.krull_dimension())
                })?;
                c2 += 1;
            }
            let local_proj = proj.is_empty() || proj.is_local();
            ensure(coh.is_local() == local_proj, || {
                format!(
                    "{}: coh local {} but proj local {local_proj}",
                    at(),
                    coh.is_local()
                )
            })?;
        }
        if model.is_hypersurface() {
            let (expected, _) = model.space().induced(model.singular_locus());
            ensure(cs.sing.isomorphism_to(&expected).is_some(), || {
                format!("model #{i}: X_sing differs from the singular locus")
            })?;
            hyper += 1;
        }
    }
    Ok(format!(
        "{} models, {hyper} hypersurfaces, {c2} points with c = 2",
        models.len()
    ))
}

const GOLDEN: [(&str, &str, i32); 5] = [
    ("dvr", "spectrum", 0),
    ("antichain2", "classify", 0),
    ("sb_n2_k2", "sb-enumerate", 0),
    ("koszul_c2", "fiber", 0),
    ("m3_failing", "check-datum", 1),
];

fn cli_golden() -> Verdict {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let mut compared = 0;
    for (model, cmd, code) in GOLDEN {
        for (flag, ext) in [("--json", "json"), ("--dot", "dot")] {
            let out = Command::new(env!("CARGO_BIN_EXE_ttg"))
                .current_dir(root)
                .env_remove("TTG_MAX_POINTS")
                .args([cmd, &format!("models/{model}.ttg"), flag])
                .output()
                .map_err(|e| format!("cannot run ttg: {e}"))?;
            let golden = root.join(format!("tests/golden/{model}.{cmd}.{ext}"));
            let want = std::fs::read(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
            ensure(out.status.code() == Some(code), || {
                format!(
                    "{cmd} {model} {flag}: exit {:?}, want {code}",
                    out.status.code()
                )
            })?;
            ensure(out.stdout == want, || {
                format!("{cmd} {model} {flag}: output differs from golden")
            })?;
            compared += 1;
        }
    }
    Ok(format!("{compared} outputs byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("prime notions coincide", prime_coincidence),
        ("classification", classification),
        ("empty spectrum", empty_spectrum),
        ("universality", universality),
        ("scheme round trip", round_trip),
        ("base morphism", base_morphism),
        ("quotient decomposition", decomposition),
        ("Severi-Brauer counts", severi_brauer),
        ("singularity triad", singularity_triad),
        ("CLI golden files", cli_golden),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
