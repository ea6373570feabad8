//! The subcommands: each turns a resolved model into a report with a text,
//! JSON and DOT rendering and a pass/fail verdict.

use std::fmt::Write;

use serde_json::{json, Value};
use ttg_core::datum::{
    check_sheaf_on_action_image, fiber, fin_topology, pi_map, validate_admissible,
    AdmissibilityReport, LatticeDatum, SheafReport,
};
use ttg_core::geometry::roundtrip_check;
use ttg_core::spectrum::{
    classify, has_unique_cover, prime_decomposition, spectrum_with, support_data_enumerate,
    support_data_maps, universal_map, SupportDatum,
};
use ttg_core::topology::{continuity_violation, ClosedSets};
use ttg_core::{Error, Exec, FinitePoset, IdSet, JoinSemilattice, Limits, SpectrumSpace};

use crate::dot::Graph;
use crate::model::{hasse_labels, Model, Subject};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Classify,
    CheckDatum,
    Fiber,
    UniversalMap,
    SbEnumerate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Classify => "classify",
            Command::CheckDatum => "check-datum",
            Command::Fiber => "fiber",
            Command::UniversalMap => "universal-map",
            Command::SbEnumerate => "sb-enumerate",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub limits: Limits,
    pub exec: Exec,
}

/// A finished run.
pub struct Outcome {
    pub pass: bool,
    pub json: Value,
    pub text: String,
    pub dot: String,
}

/// Errors that stop a run before any check: bad input or a refused size.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Errors that mean a mathematical check failed rather than bad input.
fn is_check_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::NotPrime(_)
            | Error::AdmissibilityViolated(_)
            | Error::AmbiguousChoice { .. }
            | Error::VerificationFailed(_)
            | Error::NotSupportDatum(_)
            | Error::DescriptorEscape(_)
    )
}

/// A check failure carried out of a command body.
enum Stop {
    Input(String),
    Check(String),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        if is_check_failure(&e) {
            Stop::Check(e.to_string())
        } else {
            Stop::Input(e.to_string())
        }
    }
}

pub fn run(cmd: Command, model: &Model, opts: &Options) -> Result<Outcome, InputError> {
    let body = || -> Result<Outcome, Stop> {
        let subject = model.resolve(&opts.limits)?;
        match cmd {
            Command::Spectrum => spectrum_cmd(model, &subject, opts),
            Command::Classify => classify_cmd(model, &subject, opts),
            Command::CheckDatum => check_datum_cmd(model, needs_datum(cmd, &subject)?, opts),
            Command::Fiber => fiber_cmd(model, &subject, opts),
            Command::UniversalMap => universal_map_cmd(model, &subject, opts),
            Command::SbEnumerate => sb_cmd(model, &subject, opts),
        }
    };
    match body() {
        Ok(o) => Ok(o),
        Err(Stop::Input(m)) => Err(InputError(m)),
        Err(Stop::Check(m)) => Ok(Outcome {
            pass: false,
            json: json!({ "command": cmd.name(), "model": model, "pass": false, "error": m }),
            text: format!("{}: check failed: {m}\nresult: FAIL\n", cmd.name()),
            dot: {
                let mut g = Graph::new(cmd.name());
                g.caption(format!("check failed: {m}"));
                g.render()
            },
        }),
    }
}

fn needs_datum(cmd: Command, s: &Subject) -> Result<&LatticeDatum, Stop> {
    s.datum().ok_or_else(|| {
        Stop::Input(format!(
            "`{}` needs a model with an action (poset, datum, sb or koszul)",
            cmd.name()
        ))
    })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn pick(labels: &[String], s: IdSet) -> Vec<String> {
    s.iter().map(|i| labels[i].clone()).collect()
}

fn braces(labels: &[String], s: IdSet) -> String {
    format!("{{{}}}", pick(labels, s).join(", "))
}

fn pairs(v: &[(String, String)]) -> Vec<[String; 2]> {
    v.iter().map(|(a, b)| [a.clone(), b.clone()]).collect()
}

fn lattice_hasse(l: &JoinSemilattice) -> Vec<(String, String)> {
    l.hasse_edges()
        .into_iter()
        .map(|(a, b)| (l.label(a).to_string(), l.label(b).to_string()))
        .collect()
}

fn order_line(v: &[(String, String)]) -> String {
    if v.is_empty() {
        "(discrete)".into()
    } else {
        v.iter()
            .map(|(a, b)| format!("{a} < {b}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Spectrum points named by the point `x` with prime `X ∖ ↑x` when the
/// lattice is a down-set lattice of a known space, and by their prime
/// otherwise.
fn point_names(subject: &Subject, space: &SpectrumSpace) -> Vec<String> {
    let x = match subject {
        Subject::Poset { x, .. } => x,
        Subject::Koszul { spaces, .. } => &spaces.coh,
        _ => return space.labels().to_vec(),
    };
    let mut out = space.labels().to_vec();
    for y in 0..x.len() {
        let prime = x.format_set(x.points().difference(x.up(y)));
        if let Some(pt) = out.iter().position(|l| *l == prime) {
            out[pt] = x.label(y).to_string();
        }
    }
    out
}

fn plural(n: usize, what: &str) -> String {
    format!("{n} {what}{}", if n == 1 { "" } else { "s" })
}

fn renamed(order: &FinitePoset, names: &[String]) -> FinitePoset {
    order
        .clone()
        .with_labels(names.to_vec())
        .expect("names are distinct")
}

fn spectrum_cmd(model: &Model, subject: &Subject, opts: &Options) -> Result<Outcome, Stop> {
    let l = subject.lattice();
    let space = spectrum_with(l, &opts.limits, opts.exec)?;
    let names = point_names(subject, &space);
    let order = renamed(space.order(), &names);
    let hasse = hasse_labels(&order);
    let closed: Vec<Vec<String>> = space
        .closed_sets()
        .sets()
        .iter()
        .map(|&c| pick(&names, c))
        .collect();
    let roundtrip = match subject {
        Subject::Poset { x, .. } => Some(roundtrip_check(x, &opts.limits)?),
        _ => None,
    };
    let pass = roundtrip.as_ref().is_none_or(|r| r.holds());

    let json = json!({
        "command": "spectrum",
        "model": model,
        "lattice": { "elements": l.labels(), "hasse": pairs(&lattice_hasse(l)) },
        "spectrum": {
            "points": (0..space.len()).map(|p| json!({ "name": names[p], "prime": space.label(p) })).collect::<Vec<_>>(),
            "hasse": pairs(&hasse),
            "closed_sets": closed,
            "krull_dimension": space.order().krull_dimension(),
            "local": space.order().is_local(),
        },
        "supports": (0..l.len()).map(|e| json!({ "element": l.label(e), "supp": pick(&names, space.supports()[e]) })).collect::<Vec<_>>(),
        "roundtrip": roundtrip.as_ref().map(|r| json!({ "order_isomorphic": r.order_isomorphic, "homeomorphic": r.homeomorphic })),
        "pass": pass,
    });

    let mut text = String::new();
    writeln!(
        text,
        "model: {} ({})",
        model.kind(),
        plural(l.len(), "element")
    )
    .unwrap();
    writeln!(
        text,
        "spectrum: {}, krull dimension {}{}",
        plural(space.len(), "point"),
        space.order().krull_dimension(),
        if space.order().is_local() {
            ", local"
        } else {
            ""
        }
    )
    .unwrap();
    writeln!(text, "{:<16} prime", "point").unwrap();
    for (p, name) in names.iter().enumerate().take(space.len()) {
        writeln!(text, "{:<16} {}", name, space.label(p)).unwrap();
    }
    writeln!(text, "order: {}", order_line(&hasse)).unwrap();
    writeln!(text, "closed sets ({}):", closed.len()).unwrap();
    for &c in space.closed_sets().sets() {
        writeln!(text, "  {}", braces(&names, c)).unwrap();
    }
    if let Some(r) = &roundtrip {
        writeln!(
            text,
            "round trip: order isomorphic {}, homeomorphic {}",
            r.order_isomorphic, r.homeomorphic
        )
        .unwrap();
    }
    writeln!(text, "result: {}", verdict(pass)).unwrap();

    let mut g = Graph::new("spectrum");
    for (p, n) in names.iter().enumerate() {
        g.node(
            n,
            if *n == space.label(p) {
                n.clone()
            } else {
                format!("{n}\n{}", space.label(p))
            },
        );
    }
    for (a, b) in &hasse {
        g.edge(a, b);
    }
    Ok(Outcome {
        pass,
        json,
        text,
        dot: g.render(),
    })
}

fn classify_cmd(model: &Model, subject: &Subject, opts: &Options) -> Result<Outcome, Stop> {
    let l = subject.lattice();
    let space = spectrum_with(l, &opts.limits, opts.exec)?;
    let names = point_names(subject, &space);
    let mut rows = Vec::with_capacity(l.len());
    let mut text = String::new();
    writeln!(
        text,
        "model: {} ({}, {})",
        model.kind(),
        plural(l.len(), "element"),
        plural(space.len(), "prime")
    )
    .unwrap();
    writeln!(
        text,
        "{:<16} {:<20} {:<16} primes above",
        "element", "supp", "classify"
    )
    .unwrap();
    let mut pass = true;
    for e in 0..l.len() {
        let z = space.supports()[e];
        let back = classify(l, &space, z);
        let decomposition = prime_decomposition(l, &space, e)?;
        let meet = l.meet_all(decomposition.iter().map(|q| space.prime(q)));
        let ok = back == e && meet == e;
        pass &= ok;
        writeln!(
            text,
            "{:<16} {:<20} {:<16} {}{}",
            l.label(e),
            braces(&names, z),
            l.label(back),
            braces(&names, decomposition),
            if ok { "" } else { "  <- mismatch" }
        )
        .unwrap();
        rows.push(json!({
            "element": l.label(e),
            "supp": pick(&names, z),
            "classify": l.label(back),
            "primes_above": pick(&names, decomposition),
            "meet_of_primes_above": l.label(meet),
        }));
    }
    let mut distinct = space.supports().to_vec();
    distinct.sort();
    distinct.dedup();
    let injective = distinct.len() == l.len();
    pass &= injective;
    writeln!(text, "supp injective: {injective}").unwrap();
    writeln!(text, "result: {}", verdict(pass)).unwrap();

    let json = json!({
        "command": "classify",
        "model": model,
        "points": names,
        "elements": rows,
        "supp_injective": injective,
        "pass": pass,
    });

    let mut g = Graph::new("classify");
    for e in 0..l.len() {
        g.node(
            l.label(e),
            format!(
                "{}\nsupp {}",
                l.label(e),
                braces(&names, space.supports()[e])
            ),
        );
        if space.point_of(e).is_some() {
            g.attr(l.label(e), "peripheries", "2");
        }
    }
    for (a, b) in lattice_hasse(l) {
        g.edge(&a, &b);
    }
    Ok(Outcome {
        pass,
        json,
        text,
        dot: g.render(),
    })
}

fn sheaf_json(dat: &LatticeDatum, found: &Option<(IdSet, IdSet, SheafReport)>) -> Value {
    let base = dat.base().labels();
    match found {
        None => json!({ "status": "cartesian" }),
        Some((z, w, r)) => {
            let (z, w) = (pick(base, *z), pick(base, *w));
            match r {
                SheafReport::Cartesian => json!({ "status": "cartesian" }),
                SheafReport::NotInjective { k1, k2, image } => json!({
                    "status": "not-injective", "z": z, "w": w, "k1": k1, "k2": k2, "image": [image.0, image.1],
                }),
                SheafReport::NotSurjective { a, b } => json!({
                    "status": "not-surjective", "z": z, "w": w, "a": a, "b": b,
                }),
            }
        }
    }
}

fn sheaf_text(dat: &LatticeDatum, found: &Option<(IdSet, IdSet, SheafReport)>) -> String {
    let base = dat.base().labels();
    match found {
        None | Some((_, _, SheafReport::Cartesian)) => {
            "sheaf condition: holds on the action image".into()
        }
        Some((z, w, r)) => {
            let at = format!("Z = {}, W = {}", braces(base, *z), braces(base, *w));
            match r {
                SheafReport::NotInjective { k1, k2, image } => format!(
                    "sheaf condition: fails at {at}: {k1} and {k2} both map to ({}, {})",
                    image.0, image.1
                ),
                SheafReport::NotSurjective { a, b } => {
                    format!("sheaf condition: fails at {at}: compatible pair ({a}, {b}) is not hit")
                }
                SheafReport::Cartesian => unreachable!(),
            }
        }
    }
}

fn admissibility_json(r: &AdmissibilityReport) -> Value {
    match r {
        AdmissibilityReport::Admissible => Value::Null,
        AdmissibilityReport::Violated(v) => json!({
            "condition": v.condition.to_string(),
            "prime": v.p,
            "z": v.z,
            "w": v.w,
            "detail": v.detail,
        }),
    }
}

fn admissibility_text(r: &AdmissibilityReport, out: &mut String) {
    match r {
        AdmissibilityReport::Admissible => out.push_str("admissible: yes\n"),
        AdmissibilityReport::Violated(v) => {
            writeln!(out, "admissible: no").unwrap();
            writeln!(out, "  condition: {}", v.condition).unwrap();
            if let Some(p) = &v.p {
                writeln!(out, "  prime: {p}").unwrap();
            }
            writeln!(out, "  Z = {}, W = {}", v.z, v.w).unwrap();
            writeln!(out, "  {}", v.detail).unwrap();
        }
    }
}

fn check_datum_cmd(model: &Model, dat: &LatticeDatum, opts: &Options) -> Result<Outcome, Stop> {
    let report = validate_admissible(dat, opts.exec);
    let sheaf = check_sheaf_on_action_image(dat)?;
    let sheaf_ok = sheaf.as_ref().is_none_or(|(_, _, r)| r.is_cartesian());
    let pass = report.is_admissible() && sheaf_ok;
    let sub = dat.sub();
    let base = dat.base().labels();
    let entries: Vec<(IdSet, usize)> = dat.entries().collect();

    let mut text = String::new();
    writeln!(
        text,
        "datum: {} over {} ({})",
        plural(sub.len(), "element"),
        plural(base.len(), "base point"),
        plural(entries.len(), "closed set")
    )
    .unwrap();
    for &(z, e) in &entries {
        writeln!(text, "  {} -> {}", braces(base, z), sub.label(e)).unwrap();
    }
    admissibility_text(&report, &mut text);
    writeln!(text, "{}", sheaf_text(dat, &sheaf)).unwrap();
    writeln!(text, "result: {}", verdict(pass)).unwrap();

    let json = json!({
        "command": "check-datum",
        "model": model,
        "action": entries.iter().map(|&(z, e)| json!({ "closed": pick(base, z), "element": sub.label(e) })).collect::<Vec<_>>(),
        "admissible": report.is_admissible(),
        "violation": admissibility_json(&report),
        "sheaf": sheaf_json(dat, &sheaf),
        "pass": pass,
    });

    let mut g = Graph::new("check-datum");
    for e in 0..sub.len() {
        let acted: Vec<String> = entries
            .iter()
            .filter(|&&(_, f)| f == e)
            .map(|&(z, _)| braces(base, z))
            .collect();
        if acted.is_empty() {
            g.node(sub.label(e), sub.label(e));
        } else {
            g.node(
                sub.label(e),
                format!("{}\n<- {}", sub.label(e), acted.join(" ")),
            );
            g.attr(sub.label(e), "shape", "box");
        }
    }
    for (a, b) in lattice_hasse(sub) {
        g.edge(&a, &b);
    }
    if let AdmissibilityReport::Violated(v) = &report {
        g.caption(format!(
            "{} violated at Z = {}, W = {}",
            v.condition, v.z, v.w
        ));
    }
    Ok(Outcome {
        pass,
        json,
        text,
        dot: g.render(),
    })
}

fn fiber_cmd(model: &Model, subject: &Subject, opts: &Options) -> Result<Outcome, Stop> {
    let dat = needs_datum(Command::Fiber, subject)?;
    let report = validate_admissible(dat, opts.exec);
    if !report.is_admissible() {
        let mut text = String::from("fibers need an admissible datum\n");
        admissibility_text(&report, &mut text);
        text.push_str("result: FAIL\n");
        return Ok(Outcome {
            pass: false,
            json: json!({ "command": "fiber", "model": model, "admissible": false, "violation": admissibility_json(&report), "pass": false }),
            text,
            dot: Graph::new("fiber").render(),
        });
    }
    let space = spectrum_with(dat.sub(), &opts.limits, opts.exec)?;
    let names = point_names(subject, &space);
    let base = dat.base();
    let pi = pi_map(dat, &space, opts.exec)?;
    let fin = fin_topology(dat, &space, &opts.limits)?;
    let fin_continuous = fin.continuity_violation(dat, &pi).is_none();
    let base_closed = ClosedSets::of_poset(base, &opts.limits)?;
    let continuous = continuity_violation(&pi, space.closed_sets(), &base_closed).is_none();

    let mut pass = fin_continuous && continuous;
    let mut covered = IdSet::EMPTY;
    let mut fibers = Vec::with_capacity(base.len());
    let mut text = String::new();
    writeln!(
        text,
        "spectrum: {} over {}",
        plural(space.len(), "point"),
        plural(base.len(), "base point")
    )
    .unwrap();
    writeln!(text, "{:<16} base point", "point").unwrap();
    for q in 0..space.len() {
        writeln!(text, "{:<16} {}", names[q], base.label(pi[q])).unwrap();
    }
    writeln!(
        text,
        "pi continuous: {continuous}, in fin topology: {fin_continuous}"
    )
    .unwrap();
    let mut g = Graph::new("fiber");
    for n in &names {
        g.node(n, n.clone());
    }
    for (a, b) in hasse_labels(&renamed(space.order(), &names)) {
        g.edge(&a, &b);
    }
    for y in 0..base.len() {
        let f = fiber(dat, &space, &pi, y, &opts.limits)?;
        pass &= covered.is_disjoint(f.primes);
        covered = covered.union(f.primes);
        let c = &f.comparison;
        pass &= c.bijective && c.continuous;
        let order = renamed(&f.order, &pick(&names, f.primes));
        writeln!(
            text,
            "fiber over {}: {} ({}, krull dimension {}{})",
            base.label(y),
            braces(&names, f.primes),
            plural(f.primes.len(), "point"),
            order.krull_dimension(),
            if order.is_local() { ", local" } else { "" }
        )
        .unwrap();
        writeln!(text, "  order: {}", order_line(&hasse_labels(&order))).unwrap();
        writeln!(
            text,
            "  interval [{}, {}]: {} primes; bijective {}, continuous {}, homeomorphism {}",
            dat.sub().label(c.lower),
            dat.sub().label(c.upper),
            c.space.len(),
            c.bijective,
            c.continuous,
            c.homeomorphism
        )
        .unwrap();
        g.cluster(&format!("over {}", base.label(y)), pick(&names, f.primes));
        fibers.push(json!({
            "base_point": base.label(y),
            "points": pick(&names, f.primes),
            "hasse": pairs(&hasse_labels(&order)),
            "krull_dimension": order.krull_dimension(),
            "local": order.is_local(),
            "interval": {
                "lower": dat.sub().label(c.lower),
                "upper": dat.sub().label(c.upper),
                "primes": c.space.len(),
                "bijective": c.bijective,
                "continuous": c.continuous,
                "homeomorphism": c.homeomorphism,
            },
        }));
    }
    let partition = covered == space.all();
    pass &= partition;
    writeln!(text, "fibers partition the spectrum: {partition}").unwrap();

    let koszul = match subject {
        Subject::Koszul { scheme, spaces, .. } => {
            let mut rows = Vec::new();
            for (x, a) in scheme.attrs().iter().enumerate() {
                let coh = spaces.coh_fiber(x);
                let sing = spaces.sing_fiber(x);
                let triad = a.regular == (coh.len() == 1) && a.regular == sing.is_empty();
                pass &= triad;
                writeln!(
                    text,
                    "koszul {}: ecodim {}, {}; coh fiber {} (krull {}{}), sing fiber {} (krull {}); regularity triad {}",
                    base.label(x),
                    a.ecodim,
                    if a.complete_intersection { "complete intersection" } else { "not a complete intersection" },
                    plural(coh.len(), "point"),
                    coh.krull_dimension(),
                    if coh.is_local() { ", local" } else { "" },
                    plural(sing.len(), "point"),
                    sing.krull_dimension(),
                    if triad { "holds" } else { "FAILS" }
                )
                .unwrap();
                rows.push(json!({
                    "point": base.label(x),
                    "ecodim": a.ecodim,
                    "regular": a.regular,
                    "complete_intersection": a.complete_intersection,
                    "coh_points": coh.len(),
                    "coh_krull_dimension": coh.krull_dimension(),
                    "coh_local": coh.is_local(),
                    "sing_points": sing.len(),
                    "sing_krull_dimension": sing.krull_dimension(),
                    "triad": triad,
                }));
            }
            Some(rows)
        }
        _ => None,
    };
    writeln!(text, "result: {}", verdict(pass)).unwrap();

    let json = json!({
        "command": "fiber",
        "model": model,
        "admissible": true,
        "pi": (0..space.len()).map(|q| json!({ "point": names[q], "prime": space.label(q), "base_point": base.label(pi[q]) })).collect::<Vec<_>>(),
        "pi_continuous": continuous,
        "pi_continuous_fin": fin_continuous,
        "fibers": fibers,
        "partition": partition,
        "koszul": koszul,
        "pass": pass,
    });
    Ok(Outcome {
        pass,
        json,
        text,
        dot: g.render(),
    })
}

/// Above this many spectrum points the exhaustive uniqueness check is
/// skipped.
const MAX_EXHAUSTIVE_SOURCE: usize = 5;

fn universal_map_cmd(model: &Model, subject: &Subject, opts: &Options) -> Result<Outcome, Stop> {
    let l = subject.lattice();
    let space = spectrum_with(l, &opts.limits, opts.exec)?;
    let names = point_names(subject, &space);
    let source = SupportDatum::from_spectrum(&space);
    let data = support_data_enumerate(l, &opts.limits)?;
    let mut pass = true;
    let mut rows = Vec::with_capacity(data.len());
    let mut text = String::new();
    writeln!(
        text,
        "spectrum: {}; {} support data enumerated",
        plural(space.len(), "point"),
        data.len()
    )
    .unwrap();
    let mut g = Graph::new("universal-map");
    for n in &names {
        g.node(&format!("X:{n}"), n.clone());
    }
    g.cluster("spectrum", names.iter().map(|n| format!("X:{n}")).collect());
    for (a, b) in hasse_labels(&renamed(space.order(), &names)) {
        g.edge(&format!("X:{a}"), &format!("X:{b}"));
    }
    for (i, y) in data.iter().enumerate() {
        let u = universal_map(l, y, &opts.limits)?;
        let exhaustive = if space.len() <= MAX_EXHAUSTIVE_SOURCE {
            let all = support_data_maps(&source, y, &opts.limits)?;
            let unique = all.len() == 1 && all[0] == u.map;
            pass &= unique;
            Some(all.len())
        } else {
            None
        };
        let arrows: Vec<[String; 2]> = (0..space.len())
            .map(|q| [names[q].clone(), y.labels()[u.map[q]].clone()])
            .collect();
        writeln!(
            text,
            "datum {i}: points {}; map {}{}",
            braces(y.labels(), IdSet::full(y.len())),
            arrows
                .iter()
                .map(|[a, b]| format!("{a} -> {b}"))
                .collect::<Vec<_>>()
                .join(", "),
            match exhaustive {
                Some(k) => format!("; maps of support data found by exhaustion: {k}"),
                None => String::new(),
            }
        )
        .unwrap();
        rows.push(json!({
            "points": y.labels(),
            "closed_sets": y.closed_sets().len(),
            "map": arrows,
            "maps_by_exhaustion": exhaustive,
        }));
        let id = |p: &str| format!("Y{i}:{p}");
        for p in y.labels() {
            g.node(&id(p), p.clone());
        }
        g.cluster(
            &format!("datum {i}"),
            y.labels().iter().map(|p| id(p)).collect(),
        );
        for [a, b] in &arrows {
            g.styled_edge(&format!("X:{a}"), &id(b), "dashed");
        }
    }
    writeln!(text, "result: {}", verdict(pass)).unwrap();
    let json = json!({
        "command": "universal-map",
        "model": model,
        "points": names,
        "data": rows,
        "pass": pass,
    });
    Ok(Outcome {
        pass,
        json,
        text,
        dot: g.render(),
    })
}

fn sb_cmd(model: &Model, subject: &Subject, opts: &Options) -> Result<Outcome, Stop> {
    let Subject::Sb {
        model: sb, lattice, ..
    } = subject
    else {
        return Err(Stop::Input(format!(
            "`sb-enumerate` needs an sb model, got `{}`",
            model.kind()
        )));
    };
    let l = &lattice.lattice;
    let space = spectrum_with(l, &opts.limits, opts.exec)?;
    let by_cover = (0..l.len())
        .filter(|&e| has_unique_cover(l, e).unwrap_or(false))
        .count();
    let n = sb.fibers()[0].len() - 1;
    let k = sb.copies();
    let expected_submodules = 1 + (1usize << n) + k;
    let expected_primes = n + 1 + k;
    let closure = &lattice.closure;
    let pass = l.len() == expected_submodules
        && space.len() == expected_primes
        && by_cover == space.len()
        && closure.union_closed;
    let total = sb.total().labels();

    let mut text = String::new();
    writeln!(text, "severi-brauer model: n = {n}, copies = {k}").unwrap();
    writeln!(text, "{:<12} {:<6} realized", "descriptor", "prime").unwrap();
    let mut rows = Vec::with_capacity(l.len());
    for e in 0..l.len() {
        let prime = space.point_of(e).is_some();
        writeln!(
            text,
            "{:<12} {:<6} {}",
            l.label(e),
            if prime { "yes" } else { "" },
            braces(total, lattice.realized[e])
        )
        .unwrap();
        rows.push(json!({
            "descriptor": l.label(e),
            "prime": prime,
            "realized": pick(total, lattice.realized[e]),
        }));
    }
    writeln!(
        text,
        "submodules: {} (expected {expected_submodules}); primes: {} by spectrum, {by_cover} by unique cover (expected {expected_primes})",
        l.len(),
        space.len()
    )
    .unwrap();
    writeln!(text, "union closed: {}", closure.union_closed).unwrap();
    match &closure.intersection_witness {
        None => writeln!(text, "intersection closed: true").unwrap(),
        Some((a, b)) => writeln!(
            text,
            "intersection closed: false ({a} and {b}); meets are the largest submodule inside the intersection"
        )
        .unwrap(),
    }
    writeln!(text, "result: {}", verdict(pass)).unwrap();

    let json = json!({
        "command": "sb-enumerate",
        "model": model,
        "total_space": total,
        "submodules": rows,
        "counts": {
            "submodules": l.len(),
            "expected_submodules": expected_submodules,
            "primes": space.len(),
            "primes_by_unique_cover": by_cover,
            "expected_primes": expected_primes,
        },
        "union_closed": closure.union_closed,
        "intersection_closed": closure.intersection_closed,
        "intersection_witness": closure.intersection_witness.as_ref().map(|(a, b)| [a, b]),
        "pass": pass,
    });

    let mut g = Graph::new("sb-enumerate");
    for e in 0..l.len() {
        g.node(l.label(e), l.label(e));
        if space.point_of(e).is_some() {
            g.attr(l.label(e), "peripheries", "2");
        }
    }
    for (a, b) in lattice_hasse(l) {
        g.edge(&a, &b);
    }
    Ok(Outcome {
        pass,
        json,
        text,
        dot: g.render(),
    })
}
