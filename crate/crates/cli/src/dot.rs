//! Graphviz output. Node ids are assigned in label order and edges are
//! sorted, so the text depends only on the graph.

use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Default)]
pub struct Graph {
    name: String,
    caption: Option<String>,
    /// label -> display text and extra attributes
    nodes: BTreeMap<String, (String, Vec<(String, String)>)>,
    edges: Vec<(String, String, Option<String>)>,
    /// cluster caption -> member labels
    clusters: BTreeMap<String, Vec<String>>,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl Graph {
    pub fn new(name: &str) -> Self {
        Graph {
            name: name.to_string(),
            ..Graph::default()
        }
    }

    pub fn caption(&mut self, text: impl Into<String>) {
        self.caption = Some(text.into());
    }

    pub fn node(&mut self, label: &str, text: impl Into<String>) {
        self.nodes
            .entry(label.to_string())
            .or_insert_with(|| (String::new(), Vec::new()))
            .0 = text.into();
    }

    pub fn attr(&mut self, label: &str, key: &str, value: &str) {
        if let Some((_, attrs)) = self.nodes.get_mut(label) {
            attrs.push((key.to_string(), value.to_string()));
        }
    }

    /// An edge drawn from `lower` up to `upper`.
    pub fn edge(&mut self, lower: &str, upper: &str) {
        self.edges
            .push((lower.to_string(), upper.to_string(), None));
    }

    pub fn styled_edge(&mut self, from: &str, to: &str, style: &str) {
        self.edges
            .push((from.to_string(), to.to_string(), Some(style.to_string())));
    }

    pub fn cluster(&mut self, caption: &str, members: Vec<String>) {
        self.clusters.insert(caption.to_string(), members);
    }

    pub fn render(&self) -> String {
        let ids: BTreeMap<&str, usize> = self
            .nodes
            .keys()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut out = String::new();
        writeln!(out, "digraph {} {{", quote(&self.name)).unwrap();
        out.push_str("  rankdir=BT;\n");
        if let Some(c) = &self.caption {
            writeln!(out, "  label={};", quote(c)).unwrap();
        }
        for (label, (text, attrs)) in &self.nodes {
            write!(out, "  n{} [label={}", ids[label.as_str()], quote(text)).unwrap();
            for (k, v) in attrs {
                write!(out, ", {k}={}", quote(v)).unwrap();
            }
            out.push_str("];\n");
        }
        for (i, (caption, members)) in self.clusters.iter().enumerate() {
            writeln!(out, "  subgraph cluster_{i} {{").unwrap();
            writeln!(out, "    label={};", quote(caption)).unwrap();
            let mut m: Vec<usize> = members.iter().map(|l| ids[l.as_str()]).collect();
            m.sort_unstable();
            for id in m {
                writeln!(out, "    n{id};").unwrap();
            }
            out.push_str("  }\n");
        }
        let mut edges: Vec<(usize, usize, &Option<String>)> = self
            .edges
            .iter()
            .map(|(a, b, s)| (ids[a.as_str()], ids[b.as_str()], s))
            .collect();
        edges.sort();
        edges.dedup();
        for (a, b, style) in edges {
            match style {
                Some(s) => writeln!(out, "  n{a} -> n{b} [style={}];", quote(s)).unwrap(),
                None => writeln!(out, "  n{a} -> n{b};").unwrap(),
            }
        }
        out.push_str("}\n");
        out
    }
}
