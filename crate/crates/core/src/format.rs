//! Text, JSON and DOT renderings of subgroup graphs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::SubgroupSet;
use crate::stallings::{Edge, LabeledGraph, StallingsGraph};
use crate::words::{Letter, Word};

/// Structured graph record: `{"rank":2,"base":0,"edges":[[0,"a",1],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub rank: usize,
    pub base: usize,
    pub edges: Vec<(usize, String, usize)>,
}

impl GraphRecord {
    pub fn from_graph(h: &StallingsGraph) -> Self {
        let edges = h.edges().iter().map(|e| (e.source, Letter::positive(e.label).to_string(), e.target)).collect();
        GraphRecord { rank: h.alphabet_rank(), base: h.base(), edges }
    }

    /// Folds the recorded graph; the result is canonical even if the record
    /// was not.
    pub fn to_graph(&self) -> Result<StallingsGraph> {
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut vertex_count = self.base + 1;
        for (source, label, target) in &self.edges {
            let generator = parse_edge_label(label)?;
            edges.push(Edge::new(*source, generator, *target));
            vertex_count = vertex_count.max(source + 1).max(target + 1);
        }
        let graph = LabeledGraph { rank: self.rank, vertex_count, base: self.base, edges };
        crate::stallings::fold(&graph)
    }
}

/// Edge labels are positive generator letters: `a`..`z` or `x27`, `x28`, ...
fn parse_edge_label(label: &str) -> Result<usize> {
    let bad = || Error::Parse(format!("bad edge label {label:?}"));
    let mut chars = label.chars();
    match (chars.next(), chars.as_str()) {
        (Some(c), "") if c.is_ascii_lowercase() => Ok((c as u8 - b'a') as usize),
        (Some('x'), digits) => match digits.parse::<usize>() {
            Ok(n) if n > 26 => Ok(n - 1),
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

pub fn to_json(h: &StallingsGraph) -> String {
    serde_json::to_string(&GraphRecord::from_graph(h)).expect("records serialize")
}

pub fn from_json(text: &str) -> Result<StallingsGraph> {
    let record: GraphRecord = serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph record: {e}")))?;
    record.to_graph()
}

/// A JSON array of graph records.
pub fn set_to_json(set: &SubgroupSet) -> String {
    let records: Vec<GraphRecord> = set.iter().map(GraphRecord::from_graph).collect();
    serde_json::to_string(&records).expect("records serialize")
}

pub fn set_from_json(text: &str) -> Result<SubgroupSet> {
    let records: Vec<GraphRecord> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph records: {e}")))?;
    records.iter().map(GraphRecord::to_graph).collect()
}

/// Words one per line; blank lines and `#` comments are ignored, and a
/// line may hold several comma separated words.
pub fn parse_generator_file(text: &str, rank: usize) -> Result<Vec<Word>> {
    let mut words = Vec::new();
    for line in text.lines() {
        let content = line.split('#').next().unwrap_or("");
        words.extend(crate::words::parse_word_list(content, rank)?);
    }
    Ok(words)
}

pub fn join_words(words: &[Word]) -> String {
    if words.is_empty() {
        return "1".into();
    }
    words.iter().map(Word::to_string).collect::<Vec<_>>().join(", ")
}

/// Multi-line description of one graph.
pub fn describe(h: &StallingsGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "generators: {}", join_words(&h.basis()));
    let _ = writeln!(out, "rank: {}", h.rank());
    let _ = writeln!(out, "vertices: {} (base 0)", h.vertex_count());
    let _ = writeln!(out, "edges:");
    for e in h.edges() {
        let _ = writeln!(out, "  {} -{}-> {}", e.source, Letter::positive(e.label), e.target);
    }
    out
}

/// One row per subgroup, in canonical order.
pub fn table(set: &SubgroupSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} subgroup{}", set.len(), if set.len() == 1 { "" } else { "s" });
    let _ = writeln!(out, "{:>3}  {:>4}  {:>8}  generators", "#", "rank", "vertices");
    for (i, h) in set.iter().enumerate() {
        let _ = writeln!(out, "{:>3}  {:>4}  {:>8}  {}", i, h.rank(), h.vertex_count(), join_words(&h.basis()));
    }
    out
}

/// Graphviz digraph with the base vertex double-circled.
pub fn to_dot(h: &StallingsGraph) -> String {
    let mut out = String::from("digraph stallings {\n  rankdir=LR;\n  node [shape=circle];\n");
    for v in 0..h.vertex_count() {
        let shape = if v == h.base() { " shape=doublecircle" } else { "" };
        let _ = writeln!(out, "  v{v} [label=\"{v}\"{shape}];");
    }
    for e in h.edges() {
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.source, e.target, Letter::positive(e.label));
    }
    out.push_str("}\n");
    out
}
