//! Stallings graphs of finitely generated subgroups.
//!
//! A [`StallingsGraph`] is always folded, trimmed, connected and in
//! canonical form: vertex 0 is the base, the remaining vertices are numbered
//! in breadth-first discovery order (outgoing edges by label, then incoming
//! edges by label) and the edge list is sorted. Two subgroups are equal
//! exactly when their graphs are equal as values.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::union_find::UnionFind;
use crate::words::{Endomorphism, Letter, Word};

const NONE: usize = usize::MAX;

/// A labeled edge `source --label--> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

impl Edge {
    pub const fn new(source: usize, label: usize, target: usize) -> Self {
        Edge { source, label, target }
    }
}

/// A rooted labeled graph with no folding guarantees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub rank: usize,
    pub vertex_count: usize,
    pub base: usize,
    pub edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(rank: usize) -> Self {
        LabeledGraph { rank, vertex_count: 1, base: 0, edges: Vec::new() }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    /// Adds the edge read by `letter` from `from` to `to`.
    pub fn add_letter_edge(&mut self, from: usize, letter: Letter, to: usize) {
        if letter.inverse {
            self.edges.push(Edge::new(to, letter.generator, from));
        } else {
            self.edges.push(Edge::new(from, letter.generator, to));
        }
    }

    /// Attaches a subdivided circle at the base reading `w`.
    pub fn add_petal(&mut self, w: &Word) {
        let n = w.len();
        let mut current = self.base;
        for (i, &l) in w.letters().iter().enumerate() {
            let next = if i + 1 == n { self.base } else { self.add_vertex() };
            self.add_letter_edge(current, l, next);
            current = next;
        }
    }

    /// The bouquet of subdivided circles labeled by `generators`.
    pub fn petals(rank: usize, generators: &[Word]) -> Result<Self> {
        check_alphabet(rank)?;
        let mut g = LabeledGraph::new(rank);
        for w in generators {
            w.check_rank(rank)?;
            g.add_petal(w);
        }
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        check_alphabet(self.rank)?;
        if self.base >= self.vertex_count {
            return Err(Error::Parse(format!("base vertex {} out of range", self.base)));
        }
        for e in &self.edges {
            if e.source >= self.vertex_count || e.target >= self.vertex_count {
                return Err(Error::Parse(format!("edge {e:?} references a missing vertex")));
            }
            if e.label >= self.rank {
                return Err(Error::LetterOutOfRange { generator: e.label, rank: self.rank });
            }
        }
        Ok(())
    }
}

fn check_alphabet(rank: usize) -> Result<()> {
    if rank == 0 {
        Err(Error::InvalidRank(rank))
    } else {
        Ok(())
    }
}

/// Folds `edges` on `vertex_count` vertices after identifying every pair in
/// `merges`, then restricts to the base component, trims and canonicalizes.
fn fold_parts(
    rank: usize,
    vertex_count: usize,
    base: usize,
    edges: &[Edge],
    merges: &[(usize, usize)],
) -> StallingsGraph {
    let n = vertex_count;
    let mut uf = UnionFind::new(n);
    let mut out = vec![NONE; n * rank];
    let mut inc = vec![NONE; n * rank];
    let mut pending: Vec<(usize, usize)> = merges.to_vec();

    for e in edges {
        let o = e.source * rank + e.label;
        if out[o] == NONE {
            out[o] = e.target;
        } else {
            pending.push((out[o], e.target));
        }
        let i = e.target * rank + e.label;
        if inc[i] == NONE {
            inc[i] = e.source;
        } else {
            pending.push((inc[i], e.source));
        }
    }

    while let Some((x, y)) = pending.pop() {
        let Some((keep, gone)) = uf.union(x, y) else { continue };
        for g in 0..rank {
            for table in [&mut out, &mut inc] {
                let moved = table[gone * rank + g];
                if moved == NONE {
                    continue;
                }
                let slot = &mut table[keep * rank + g];
                if *slot == NONE {
                    *slot = moved;
                } else {
                    pending.push((*slot, moved));
                }
            }
        }
    }

    // Compact the surviving classes.
    let mut id = vec![NONE; n];
    let mut m = 0;
    for v in 0..n {
        let r = uf.find(v);
        if id[r] == NONE {
            id[r] = m;
            m += 1;
        }
    }
    let mut cout = vec![NONE; m * rank];
    let mut cinc = vec![NONE; m * rank];
    for v in 0..n {
        if uf.find(v) != v {
            continue;
        }
        for g in 0..rank {
            let t = out[v * rank + g];
            if t != NONE {
                let (s, t) = (id[v], id[uf.find(t)]);
                cout[s * rank + g] = t;
                cinc[t * rank + g] = s;
            }
        }
    }
    let cbase = id[uf.find(base)];
    canonicalize(rank, m, cbase, cout, cinc)
}

/// Restricts a folded adjacency structure to the base component, trims
/// hanging trees and renumbers in canonical order.
fn canonicalize(
    rank: usize,
    n: usize,
    base: usize,
    mut out: Vec<usize>,
    mut inc: Vec<usize>,
) -> StallingsGraph {
    let mut alive = vec![false; n];
    alive[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for g in 0..rank {
            for t in [out[v * rank + g], inc[v * rank + g]] {
                if t != NONE && !alive[t] {
                    alive[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }

    let mut degree = vec![0usize; n];
    for v in (0..n).filter(|&v| alive[v]) {
        for g in 0..rank {
            degree[v] += (out[v * rank + g] != NONE) as usize + (inc[v * rank + g] != NONE) as usize;
        }
    }
    let mut hanging: Vec<usize> = (0..n).filter(|&v| alive[v] && v != base && degree[v] <= 1).collect();
    while let Some(v) = hanging.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for g in 0..rank {
            let t = std::mem::replace(&mut out[v * rank + g], NONE);
            if t != NONE {
                inc[t * rank + g] = NONE;
                degree[t] -= 1;
                if t != base && alive[t] && degree[t] <= 1 {
                    hanging.push(t);
                }
            }
            let s = std::mem::replace(&mut inc[v * rank + g], NONE);
            if s != NONE {
                out[s * rank + g] = NONE;
                degree[s] -= 1;
                if s != base && alive[s] && degree[s] <= 1 {
                    hanging.push(s);
                }
            }
        }
    }

    let mut new_id = vec![NONE; n];
    let mut order = Vec::new();
    new_id[base] = 0;
    order.push(base);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for table in [&out, &inc] {
            for g in 0..rank {
                let t = table[v * rank + g];
                if t != NONE && new_id[t] == NONE {
                    new_id[t] = order.len();
                    order.push(t);
                }
            }
        }
    }
    let mut edges = Vec::new();
    for &v in &order {
        for g in 0..rank {
            let t = out[v * rank + g];
            if t != NONE {
                edges.push(Edge::new(new_id[v], g, new_id[t]));
            }
        }
    }
    StallingsGraph::from_canonical(rank, order.len(), edges)
}

/// Index of a subgroup in the ambient free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    Finite(usize),
    Infinite,
}

/// Folded, trimmed, canonical Stallings graph of a subgroup.
#[derive(Debug, Clone)]
pub struct StallingsGraph {
    rank: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
    out: Vec<usize>,
    inc: Vec<usize>,
}

impl PartialEq for StallingsGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Eq for StallingsGraph {}

impl Hash for StallingsGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.vertex_count.hash(state);
        self.edges.hash(state);
    }
}

impl Ord for StallingsGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank, self.vertex_count, &self.edges).cmp(&(other.rank, other.vertex_count, &other.edges))
    }
}

impl PartialOrd for StallingsGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl StallingsGraph {
    fn from_canonical(rank: usize, vertex_count: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        let mut out = vec![NONE; vertex_count * rank];
        let mut inc = vec![NONE; vertex_count * rank];
        for e in &edges {
            out[e.source * rank + e.label] = e.target;
            inc[e.target * rank + e.label] = e.source;
        }
        StallingsGraph { rank, vertex_count, edges, out, inc }
    }

    /// Graph of `⟨generators⟩`; empty words are ignored.
    pub fn build(rank: usize, generators: &[Word]) -> Result<Self> {
        Ok(LabeledGraph::petals(rank, generators)?.fold())
    }

    /// Parses a comma separated generator list and builds its graph.
    pub fn from_text(rank: usize, generators: &str) -> Result<Self> {
        check_alphabet(rank)?;
        StallingsGraph::build(rank, &crate::words::parse_word_list(generators, rank)?)
    }

    /// The trivial subgroup: one vertex, no edges.
    pub fn trivial(rank: usize) -> Result<Self> {
        check_alphabet(rank)?;
        Ok(StallingsGraph::from_canonical(rank, 1, Vec::new()))
    }

    /// The whole free group: the bouquet of `rank` circles.
    pub fn bouquet(rank: usize) -> Result<Self> {
        check_alphabet(rank)?;
        Ok(StallingsGraph::from_canonical(rank, 1, (0..rank).map(|g| Edge::new(0, g, 0)).collect()))
    }

    /// Builds from an explicit edge list, folding as needed.
    pub fn from_edges(rank: usize, vertex_count: usize, base: usize, edges: Vec<Edge>) -> Result<Self> {
        let g = LabeledGraph { rank, vertex_count, base, edges };
        g.validate()?;
        Ok(g.fold())
    }

    /// Size of the ambient alphabet.
    pub fn alphabet_rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn base(&self) -> usize {
        0
    }

    /// Rank of the subgroup, `E - V + 1`.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    /// True for the one-vertex bouquet with every generator.
    pub fn is_whole_group(&self) -> bool {
        self.vertex_count == 1 && self.edges.len() == self.rank
    }

    pub fn target(&self, v: usize, generator: usize) -> Option<usize> {
        let t = self.out[v * self.rank + generator];
        (t != NONE).then_some(t)
    }

    pub fn source(&self, v: usize, generator: usize) -> Option<usize> {
        let s = self.inc[v * self.rank + generator];
        (s != NONE).then_some(s)
    }

    /// Follows one letter from `v`, crossing edges backwards for inverses.
    pub fn step(&self, v: usize, l: Letter) -> Option<usize> {
        if l.generator >= self.rank {
            return None;
        }
        if l.inverse {
            self.source(v, l.generator)
        } else {
            self.target(v, l.generator)
        }
    }

    /// End vertex of the path reading `w` from `v`, if it exists.
    pub fn read(&self, v: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(v, |v, &l| self.step(v, l))
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.read(0, w) == Some(0)
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.rank)
            .map(|g| self.target(v, g).is_some() as usize + self.source(v, g).is_some() as usize)
            .sum()
    }

    /// Position of the edge leaving `v` with `generator` in [`Self::edges`].
    pub fn edge_index(&self, v: usize, generator: usize) -> Option<usize> {
        let t = self.target(v, generator)?;
        self.edges.binary_search(&Edge::new(v, generator, t)).ok()
    }

    pub fn spanning_tree(&self) -> SpanningTree {
        SpanningTree::new(self)
    }

    /// Free basis read off the breadth-first spanning tree, one word per
    /// non-tree edge in edge-list order.
    pub fn basis(&self) -> Vec<Word> {
        self.spanning_tree().basis(self)
    }

    /// Rewrites `w ∈ H` as a word over the basis letters of [`Self::basis`].
    pub fn express(&self, w: &Word) -> Result<Word> {
        self.spanning_tree().express(self, w)
    }

    pub fn index(&self) -> Index {
        let covers = (0..self.vertex_count)
            .all(|v| (0..self.rank).all(|g| self.target(v, g).is_some() && self.source(v, g).is_some()));
        if covers {
            Index::Finite(self.vertex_count)
        } else {
            Index::Infinite
        }
    }

    /// The inclusion morphism into `other`, present iff `self ≤ other`.
    pub fn leq(&self, other: &StallingsGraph) -> Option<GraphMorphism> {
        if self.rank != other.rank {
            return None;
        }
        let mut map = vec![NONE; self.vertex_count];
        map[0] = 0;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            let image = map[v];
            for g in 0..self.rank {
                let forward = self.target(v, g).map(|t| (t, other.target(image, g)));
                let backward = self.source(v, g).map(|s| (s, other.source(image, g)));
                for (next, next_image) in forward.into_iter().chain(backward) {
                    let next_image = next_image?;
                    if map[next] == NONE {
                        map[next] = next_image;
                        stack.push(next);
                    } else if map[next] != next_image {
                        return None;
                    }
                }
            }
        }
        Some(GraphMorphism { map })
    }

    pub fn is_subgroup_of(&self, other: &StallingsGraph) -> bool {
        self.leq(other).is_some()
    }

    /// Graph of the subgroup obtained by identifying the vertices of each
    /// block and folding.
    pub fn quotient(&self, partition: &VertexPartition) -> Result<StallingsGraph> {
        let merges = partition.merge_pairs();
        if let Some(&(a, b)) = merges.iter().find(|&&(a, b)| a >= self.vertex_count || b >= self.vertex_count) {
            return Err(Error::InvalidPartition(format!("vertex {} out of range", a.max(b))));
        }
        Ok(self.quotient_pairs(&merges))
    }

    pub(crate) fn quotient_pairs(&self, merges: &[(usize, usize)]) -> StallingsGraph {
        fold_parts(self.rank, self.vertex_count, 0, &self.edges, merges)
    }

    /// Graph of `⟨e(b) : b ∈ basis⟩`.
    pub fn image(&self, e: &Endomorphism) -> Result<StallingsGraph> {
        if e.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: e.rank() });
        }
        let images = self.basis().iter().map(|b| e.apply(b)).collect::<Result<Vec<_>>>()?;
        StallingsGraph::build(self.rank, &images)
    }

    /// Disjoint union with bases identified, folded: the join `⟨H ∪ K⟩`.
    pub(crate) fn wedge(&self, other: &StallingsGraph) -> StallingsGraph {
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge::new(e.source + shift, e.label, e.target + shift)));
        fold_parts(self.rank, shift + other.vertex_count, 0, &edges, &[(0, shift)])
    }

    /// Unfolded copy, for feeding back into [`LabeledGraph::fold`].
    pub fn to_labeled(&self) -> LabeledGraph {
        LabeledGraph { rank: self.rank, vertex_count: self.vertex_count, base: 0, edges: self.edges.clone() }
    }
}

impl LabeledGraph {
    /// Identifies equally labeled edges sharing an endpoint until none are
    /// left, keeps the base component and trims hanging trees.
    pub fn fold(&self) -> StallingsGraph {
        fold_parts(self.rank, self.vertex_count, self.base, &self.edges, &[])
    }

    pub fn fold_with_merges(&self, merges: &[(usize, usize)]) -> StallingsGraph {
        fold_parts(self.rank, self.vertex_count, self.base, &self.edges, merges)
    }
}

/// Breadth-first spanning tree of a canonical graph and the basis it induces.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    /// Label of the tree path from the base to each vertex.
    pub prefixes: Vec<Word>,
    /// For each edge (by position), its basis letter or `None` for tree edges.
    pub basis_position: Vec<Option<usize>>,
}

impl SpanningTree {
    fn new(graph: &StallingsGraph) -> Self {
        let n = graph.vertex_count;
        let mut prefixes: Vec<Option<Word>> = vec![None; n];
        let mut tree_edge = vec![false; graph.edges.len()];
        prefixes[0] = Some(Word::identity());
        let mut order = vec![0];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for inverse in [false, true] {
                for g in 0..graph.rank {
                    let l = Letter::new(g, inverse);
                    let Some(t) = graph.step(v, l) else { continue };
                    if prefixes[t].is_some() {
                        continue;
                    }
                    let edge = if inverse { graph.edge_index(t, g) } else { graph.edge_index(v, g) };
                    tree_edge[edge.expect("adjacent edge present")] = true;
                    let p = prefixes[v].as_ref().expect("visited").multiply(&Word::letter(l));
                    prefixes[t] = Some(p);
                    order.push(t);
                }
            }
        }
        let mut next = 0;
        let basis_position = tree_edge
            .iter()
            .map(|&is_tree| {
                (!is_tree).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        SpanningTree { prefixes: prefixes.into_iter().map(|p| p.expect("connected graph")).collect(), basis_position }
    }

    fn basis(&self, graph: &StallingsGraph) -> Vec<Word> {
        graph
            .edges
            .iter()
            .zip(&self.basis_position)
            .filter(|(_, pos)| pos.is_some())
            .map(|(e, _)| {
                let head = self.prefixes[e.source].multiply(&Word::generator(e.label));
                head.multiply(&self.prefixes[e.target].inverse())
            })
            .collect()
    }

    fn express(&self, graph: &StallingsGraph, w: &Word) -> Result<Word> {
        let not_member = || Error::NotMember(w.to_string());
        let mut v = 0;
        let mut letters = Vec::new();
        for &l in w.letters() {
            let next = graph.step(v, l).ok_or_else(not_member)?;
            let edge = if l.inverse { graph.edge_index(next, l.generator) } else { graph.edge_index(v, l.generator) };
            if let Some(pos) = self.basis_position[edge.expect("edge just crossed")] {
                letters.push(Letter::new(pos, l.inverse));
            }
            v = next;
        }
        if v != 0 {
            return Err(not_member());
        }
        Ok(Word::new(letters))
    }
}

/// Label- and base-preserving vertex map between Stallings graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    map: Vec<usize>,
}

impl GraphMorphism {
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.map.len());
        self.map.iter().all(|v| seen.insert(*v))
    }

    /// True when every vertex and edge of `codomain` is hit.
    pub fn is_onto(&self, domain: &StallingsGraph, codomain: &StallingsGraph) -> bool {
        self.image_edges(domain).len() == codomain.edge_count() && {
            let mut hit = vec![false; codomain.vertex_count()];
            self.map.iter().for_each(|&v| hit[v] = true);
            hit.into_iter().all(|h| h)
        }
    }

    fn image_edges(&self, domain: &StallingsGraph) -> Vec<Edge> {
        let mut edges: Vec<Edge> =
            domain.edges.iter().map(|e| Edge::new(self.map[e.source], e.label, self.map[e.target])).collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// The image subgraph, canonicalized.
    pub fn image(&self, domain: &StallingsGraph, codomain: &StallingsGraph) -> StallingsGraph {
        fold_parts(codomain.rank, codomain.vertex_count, 0, &self.image_edges(domain), &[])
    }
}

/// A partition of a graph's vertices; singletons may be omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    /// Blocks must be nonempty and pairwise disjoint.
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in b {
                if !seen.insert(v) {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears in two blocks")));
                }
            }
        }
        Ok(VertexPartition { blocks })
    }

    pub fn pair(a: usize, b: usize) -> Self {
        VertexPartition { blocks: vec![vec![a, b]] }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    fn merge_pairs(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().flat_map(|b| b[1..].iter().map(move |&v| (b[0], v))).collect()
    }
}

/// Builds the graph of `⟨generators⟩` over an alphabet of `rank` letters.
pub fn build(rank: usize, generators: &[Word]) -> Result<StallingsGraph> {
    StallingsGraph::build(rank, generators)
}

pub fn fold(graph: &LabeledGraph) -> Result<StallingsGraph> {
    graph.validate()?;
    Ok(graph.fold())
}

pub fn equal(h: &StallingsGraph, k: &StallingsGraph) -> bool {
    h == k
}

pub fn contains(h: &StallingsGraph, w: &Word) -> bool {
    h.contains(w)
}

pub fn leq(h: &StallingsGraph, k: &StallingsGraph) -> Option<GraphMorphism> {
    h.leq(k)
}

pub fn subgroup_image(e: &Endomorphism, h: &StallingsGraph) -> Result<StallingsGraph> {
    h.image(e)
}

/// A surjective endomorphism of a finitely generated free group is an
/// automorphism, so this doubles as an automorphism test.
pub fn is_surjective_endomorphism(e: &Endomorphism) -> Result<bool> {
    Ok(StallingsGraph::build(e.rank(), e.images())?.is_whole_group())
}
