//! The line-oriented model format and its JSON equivalent.
//!
//! ```text
//! # a discrete valuation ring
//! kind: poset
//! points: s eta
//! order: s < eta
//! ```
//!
//! Every non-blank line that does not start with `#` is `key: value`.
//! Keys may repeat; list values accumulate. A document whose first
//! non-blank character is `{` is read as JSON instead.

use std::collections::BTreeMap;
use std::fmt;

use ttg_core::geometry::random_scheme_model;
use ttg_core::order::catalog::{random_poset, rng};

use crate::model::{hasse_labels, ActionEntry, Model};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

type Result<T> = std::result::Result<T, ParseError>;

const KINDS: [&str; 5] = ["poset", "lattice", "datum", "sb", "koszul"];

fn keys_of(kind: &str) -> &'static [&'static str] {
    match kind {
        "poset" => &["points", "order", "random"],
        "lattice" => &["elements", "order"],
        "datum" => &["elements", "order", "base-points", "base-order", "action"],
        "sb" => &["n", "copies"],
        _ => &["points", "order", "ecodim", "non-ci", "extra", "random"],
    }
}

/// Parse a model document, text or JSON. `seed` drives `random:` entries.
pub fn parse_model(src: &str, seed: u64) -> Result<Model> {
    if src.trim_start().starts_with('{') {
        // shape errors inside a tagged enum carry no position; report them
        // against the start of the document
        return serde_json::from_str(src).map_err(|e| ParseError {
            line: e.line().max(1),
            col: e.column().max(1),
            message: e.to_string(),
        });
    }
    Document::read(src)?.into_model(seed)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Comma,
    Less,
    Open,
    Close,
    Arrow,
    Equals,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Less => f.write_str("`<`"),
            Tok::Open => f.write_str("`{`"),
            Tok::Close => f.write_str("`}`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Equals => f.write_str("`=`"),
        }
    }
}

/// A token with its 1-based column.
type Spanned = (Tok, usize);

fn tokenize(value: &str, line: usize, col0: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = value.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        let single = match c {
            ',' => Some(Tok::Comma),
            '<' => Some(Tok::Less),
            '{' => Some(Tok::Open),
            '}' => Some(Tok::Close),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if c.is_whitespace() {
            i += 1;
        } else if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, col));
            i += 2;
        } else if c == '>' {
            return Err(ParseError {
                line,
                col,
                message: "unexpected `>`".into(),
            });
        } else {
            let start = i;
            while i < chars.len()
                && !chars[i].is_whitespace()
                && !",<>{}=".contains(chars[i])
                && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>'))
            {
                i += 1;
            }
            out.push((Tok::Word(chars[start..i].iter().collect()), col));
        }
    }
    Ok(out)
}

/// Cursor over the tokens of one value.
struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Cursor {
    fn err<T>(&self, col: usize, message: impl Into<String>) -> Result<T> {
        Err(ParseError {
            line: self.line,
            col,
            message: message.into(),
        })
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.toks.get(self.pos) {
            Some((got, _)) if *got == t => {
                self.pos += 1;
                Ok(())
            }
            Some((got, col)) => self.err(*col, format!("expected {t}, found {got}")),
            None => self.err(self.end_col, format!("expected {t}, found end of line")),
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, usize)> {
        match self.toks.get(self.pos) {
            Some((Tok::Word(w), col)) => {
                self.pos += 1;
                Ok((w.clone(), *col))
            }
            Some((got, col)) => self.err(*col, format!("expected {what}, found {got}")),
            None => self.err(self.end_col, format!("expected {what}, found end of line")),
        }
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T> {
        let (w, col) = self.word(what)?;
        w.parse()
            .or_else(|_| self.err(col, format!("expected {what}, found `{w}`")))
    }

    fn finish(&self) -> Result<()> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some((t, col)) => self.err(*col, format!("unexpected {t}")),
        }
    }

    /// Labels separated by whitespace or commas.
    fn labels(&mut self) -> Result<Vec<(String, usize)>> {
        let mut out = Vec::new();
        while !self.done() {
            out.push(self.word("a label")?);
            self.eat(&Tok::Comma);
        }
        Ok(out)
    }

    /// Comma-separated `a < b < c` chains, as consecutive pairs.
    fn chains(&mut self) -> Result<Vec<(String, String)>> {
        let mut out = Vec::new();
        while !self.done() {
            let (mut lo, _) = self.word("a label")?;
            self.expect(Tok::Less)?;
            loop {
                let (hi, _) = self.word("a label")?;
                out.push((lo, hi.clone()));
                lo = hi;
                if !self.eat(&Tok::Less) {
                    break;
                }
            }
            if !self.done() {
                self.expect(Tok::Comma)?;
            }
        }
        Ok(out)
    }

    /// Comma-separated `label = n` entries.
    fn assignments<T: std::str::FromStr>(&mut self) -> Result<Vec<(String, usize, T)>> {
        let mut out = Vec::new();
        while !self.done() {
            let (label, col) = self.word("a label")?;
            self.expect(Tok::Equals)?;
            out.push((label, col, self.number("a non-negative integer")?));
            if !self.done() {
                self.expect(Tok::Comma)?;
            }
        }
        Ok(out)
    }
}

#[derive(Default)]
struct Document {
    /// Where each key first appeared.
    seen: BTreeMap<String, (usize, usize)>,
    kind: Option<(String, usize, usize)>,
    points: Vec<(String, usize, usize)>,
    order: Vec<(String, String)>,
    elements: Vec<(String, usize, usize)>,
    base_points: Vec<(String, usize, usize)>,
    base_order: Vec<(String, String)>,
    action: Vec<ActionEntry>,
    n: Option<usize>,
    copies: Option<usize>,
    ecodim: Vec<(String, usize, usize, u32)>,
    non_ci: Vec<String>,
    extra: Vec<(String, usize, usize, usize)>,
    random: Option<(usize, Option<f64>)>,
}

impl Document {
    fn read(src: &str) -> Result<Document> {
        let mut doc = Document::default();
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let indent = raw.chars().count() - trimmed.chars().count();
            let Some(colon) = trimmed.find(':') else {
                return Err(ParseError {
                    line,
                    col: indent + 1,
                    message: "expected `key: value`".into(),
                });
            };
            let key = trimmed[..colon].trim_end().to_string();
            let key_col = indent + 1;
            let value_col = key_col + trimmed[..=colon].chars().count();
            let mut cur = Cursor {
                toks: tokenize(&trimmed[colon + 1..], line, value_col)?,
                pos: 0,
                line,
                end_col: raw.chars().count() + 1,
            };
            doc.seen.entry(key.clone()).or_insert((line, key_col));
            doc.entry(&key, key_col, &mut cur)?;
            cur.finish()?;
        }
        Ok(doc)
    }

    fn entry(&mut self, key: &str, key_col: usize, cur: &mut Cursor) -> Result<()> {
        let line = cur.line;
        let once = |seen: bool| -> Result<()> {
            if seen {
                Err(ParseError {
                    line,
                    col: key_col,
                    message: format!("`{key}` given twice"),
                })
            } else {
                Ok(())
            }
        };
        let located = |v: Vec<(String, usize)>| v.into_iter().map(move |(l, c)| (l, line, c));
        match key {
            "kind" => {
                once(self.kind.is_some())?;
                let (k, col) = cur.word("a model kind")?;
                if !KINDS.contains(&k.as_str()) {
                    return cur.err(
                        col,
                        format!("unknown kind `{k}`; expected one of {}", KINDS.join(", ")),
                    );
                }
                self.kind = Some((k, line, col));
            }
            "points" => self.points.extend(located(cur.labels()?)),
            "elements" => self.elements.extend(located(cur.labels()?)),
            "base-points" => self.base_points.extend(located(cur.labels()?)),
            "order" => self.order.extend(cur.chains()?),
            "base-order" => self.base_order.extend(cur.chains()?),
            "action" => {
                cur.expect(Tok::Open)?;
                let mut closed = Vec::new();
                while !cur.eat(&Tok::Close) {
                    closed.push(cur.word("a base point or `}`")?.0);
                    if cur.peek() != Some(&Tok::Close) {
                        cur.expect(Tok::Comma)?;
                    }
                }
                cur.expect(Tok::Arrow)?;
                let element = cur.word("an element")?.0;
                self.action.push(ActionEntry { closed, element });
            }
            "n" => {
                once(self.n.is_some())?;
                self.n = Some(cur.number("a non-negative integer")?);
            }
            "copies" => {
                once(self.copies.is_some())?;
                self.copies = Some(cur.number("a non-negative integer")?);
            }
            "ecodim" => self.ecodim.extend(
                cur.assignments()?
                    .into_iter()
                    .map(|(l, c, v)| (l, line, c, v)),
            ),
            "extra" => self.extra.extend(
                cur.assignments()?
                    .into_iter()
                    .map(|(l, c, v)| (l, line, c, v)),
            ),
            "non-ci" => self
                .non_ci
                .extend(cur.labels()?.into_iter().map(|(l, _)| l)),
            "random" => {
                once(self.random.is_some())?;
                let size = cur.number("a point count")?;
                let density = if cur.done() {
                    None
                } else {
                    let col = cur.col();
                    let d: f64 = cur.number("a density")?;
                    if !(0.0..=1.0).contains(&d) {
                        return cur.err(col, "density must lie in [0, 1]");
                    }
                    Some(d)
                };
                self.random = Some((size, density));
            }
            _ => {
                return Err(ParseError {
                    line,
                    col: key_col,
                    message: format!("unknown key `{key}`"),
                })
            }
        }
        Ok(())
    }

    fn into_model(self, seed: u64) -> Result<Model> {
        let Some((kind, _, _)) = self.kind.clone() else {
            return Err(ParseError {
                line: 1,
                col: 1,
                message: "missing `kind:`".into(),
            });
        };
        let allowed = keys_of(&kind);
        for (key, &(line, col)) in &self.seen {
            if key != "kind" && !allowed.contains(&key.as_str()) {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("`{key}` does not apply to kind `{kind}`"),
                });
            }
        }
        let missing = |key: &str| ParseError {
            line: self.kind.as_ref().map_or(1, |k| k.1),
            col: 1,
            message: format!("kind `{kind}` requires `{key}:`"),
        };
        let names =
            |v: &[(String, usize, usize)]| v.iter().map(|p| p.0.clone()).collect::<Vec<_>>();
        if let Some((size, density)) = self.random {
            if let Some(key) = ["points", "order", "ecodim", "non-ci", "extra"]
                .into_iter()
                .find(|k| self.seen.contains_key(*k))
            {
                let (line, col) = self.seen[key];
                return Err(ParseError {
                    line,
                    col,
                    message: format!("`{key}` cannot be combined with `random:`"),
                });
            }
            let (line, col) = self.seen["random"];
            if size > 12 {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("random models are limited to 12 points, got {size}"),
                });
            }
            return Ok(if kind == "poset" {
                let x = random_poset(&mut rng(seed), size, density.unwrap_or(0.4));
                Model::Poset {
                    points: x.labels().to_vec(),
                    order: hasse_labels(&x),
                }
            } else {
                if density.is_some() {
                    return Err(ParseError {
                        line,
                        col,
                        message: "koszul `random:` takes only a point count".into(),
                    });
                }
                let (scheme, projs) = random_scheme_model(&mut rng(seed), size);
                let x = scheme.space();
                let label = |i: usize| x.label(i).to_string();
                Model::Koszul {
                    points: x.labels().to_vec(),
                    order: hasse_labels(x),
                    ecodim: (0..x.len())
                        .map(|i| (label(i), scheme.attrs()[i].ecodim))
                        .collect(),
                    non_ci: (0..x.len())
                        .filter(|&i| !scheme.attrs()[i].complete_intersection)
                        .map(label)
                        .collect(),
                    extra: (0..x.len())
                        .map(|i| (label(i), projs[i].len() - scheme.attrs()[i].ecodim as usize))
                        .filter(|&(_, e)| e > 0)
                        .collect(),
                }
            });
        }
        Ok(match kind.as_str() {
            "poset" => Model::Poset {
                points: names(&self.points),
                order: self.order,
            },
            "lattice" => {
                if self.elements.is_empty() {
                    return Err(missing("elements"));
                }
                Model::Lattice {
                    elements: names(&self.elements),
                    order: self.order,
                }
            }
            "datum" => {
                if self.elements.is_empty() {
                    return Err(missing("elements"));
                }
                Model::Datum {
                    elements: names(&self.elements),
                    order: self.order,
                    base_points: names(&self.base_points),
                    base_order: self.base_order,
                    action: self.action,
                }
            }
            "sb" => Model::Sb {
                n: self.n.ok_or_else(|| missing("n"))?,
                copies: self.copies.unwrap_or(0),
            },
            _ => {
                let mut ecodim = BTreeMap::new();
                for (l, line, col, v) in self.ecodim {
                    if ecodim.insert(l.clone(), v).is_some() {
                        return Err(ParseError {
                            line,
                            col,
                            message: format!("ecodim of `{l}` given twice"),
                        });
                    }
                }
                let mut extra = BTreeMap::new();
                for (l, line, col, v) in self.extra {
                    if extra.insert(l.clone(), v).is_some() {
                        return Err(ParseError {
                            line,
                            col,
                            message: format!("extra of `{l}` given twice"),
                        });
                    }
                }
                Model::Koszul {
                    points: names(&self.points),
                    order: self.order,
                    ecodim,
                    non_ci: self.non_ci,
                    extra,
                }
            }
        })
    }
}

fn assign<T: fmt::Display>(m: &BTreeMap<String, T>) -> String {
    m.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn join_labels(v: &[String]) -> String {
    v.join(" ")
}

fn join_order(v: &[(String, String)]) -> String {
    v.iter()
        .map(|(a, b)| format!("{a} < {b}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Render a model in the text format; [`parse_model`] reads it back.
pub fn to_text(model: &Model) -> String {
    let mut out = format!("kind: {}\n", model.kind());
    let mut line = |key: &str, value: String| {
        if !value.is_empty() {
            out.push_str(&format!("{key}: {value}\n"));
        }
    };
    match model {
        Model::Poset { points, order } => {
            line("points", join_labels(points));
            line("order", join_order(order));
        }
        Model::Lattice { elements, order } => {
            line("elements", join_labels(elements));
            line("order", join_order(order));
        }
        Model::Datum {
            elements,
            order,
            base_points,
            base_order,
            action,
        } => {
            line("elements", join_labels(elements));
            line("order", join_order(order));
            line("base-points", join_labels(base_points));
            line("base-order", join_order(base_order));
            for a in action {
                line(
                    "action",
                    format!("{{{}}} -> {}", a.closed.join(", "), a.element),
                );
            }
        }
        Model::Sb { n, copies } => {
            line("n", n.to_string());
            line("copies", copies.to_string());
        }
        Model::Koszul {
            points,
            order,
            ecodim,
            non_ci,
            extra,
        } => {
            line("points", join_labels(points));
            line("order", join_order(order));
            line("ecodim", assign(ecodim));
            line("non-ci", join_labels(non_ci));
            line("extra", assign(extra));
        }
    }
    out
}
