//! Intersections, joins, fringes and Takahasi factors.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::stallings::{Edge, LabeledGraph, StallingsGraph};
use crate::whitehead::{self, WhiteheadAutomorphism};

/// A deduplicated set of subgroups ordered by (vertex count, edge list).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubgroupSet {
    members: Vec<StallingsGraph>,
}

impl SubgroupSet {
    pub fn new() -> Self {
        SubgroupSet::default()
    }

    pub fn members(&self) -> &[StallingsGraph] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, StallingsGraph> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, h: &StallingsGraph) -> bool {
        self.members.binary_search(h).is_ok()
    }

    pub fn insert(&mut self, h: StallingsGraph) -> bool {
        match self.members.binary_search(&h) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, h);
                true
            }
        }
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        self.iter().filter(|h| other.contains(h)).cloned().collect()
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.iter().all(|h| other.contains(h))
    }

    pub fn into_vec(self) -> Vec<StallingsGraph> {
        self.members
    }
}

impl FromIterator<StallingsGraph> for SubgroupSet {
    fn from_iter<I: IntoIterator<Item = StallingsGraph>>(iter: I) -> Self {
        let set: BTreeSet<StallingsGraph> = iter.into_iter().collect();
        SubgroupSet { members: set.into_iter().collect() }
    }
}

impl IntoIterator for SubgroupSet {
    type Item = StallingsGraph;
    type IntoIter = std::vec::IntoIter<StallingsGraph>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.into_iter()
    }
}

impl<'a> IntoIterator for &'a SubgroupSet {
    type Item = &'a StallingsGraph;
    type IntoIter = std::slice::Iter<'a, StallingsGraph>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

fn same_rank(h: &StallingsGraph, k: &StallingsGraph) -> Result<()> {
    if h.alphabet_rank() != k.alphabet_rank() {
        return Err(Error::RankMismatch { expected: h.alphabet_rank(), found: k.alphabet_rank() });
    }
    Ok(())
}

/// `H ∩ K`: the component of the base pair in the product graph.
pub fn intersect(h: &StallingsGraph, k: &StallingsGraph) -> Result<StallingsGraph> {
    same_rank(h, k)?;
    let rank = h.alphabet_rank();
    let mut ids: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
    let mut pairs = vec![(0, 0)];
    let mut edges = Vec::new();
    let mut head = 0;
    while head < pairs.len() {
        let (u, v) = pairs[head];
        let here = head;
        head += 1;
        for g in 0..rank {
            let forward = h.target(u, g).zip(k.target(v, g));
            let backward = h.source(u, g).zip(k.source(v, g));
            for (next, outgoing) in [(forward, true), (backward, false)] {
                let Some(next) = next else { continue };
                let id = *ids.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                // Each edge is seen from both endpoints; keep the outgoing copy.
                if outgoing {
                    edges.push(Edge::new(here, g, id));
                }
            }
        }
    }
    Ok(LabeledGraph { rank, vertex_count: pairs.len(), base: 0, edges }.fold())
}

/// `⟨H ∪ K⟩`.
pub fn join(h: &StallingsGraph, k: &StallingsGraph) -> Result<StallingsGraph> {
    same_rank(h, k)?;
    Ok(h.wedge(k))
}

/// Every quotient of the graph by a single vertex pair.
pub(crate) fn pair_quotients(h: &StallingsGraph) -> impl Iterator<Item = StallingsGraph> + '_ {
    let n = h.vertex_count();
    (0..n).flat_map(move |v| (v + 1..n).map(move |w| h.quotient_pairs(&[(v, w)])))
}

/// The principal overgroups of `H`: all subgroups whose graph is a quotient
/// of the graph of `H`, including `H` itself.
pub fn fringe(h: &StallingsGraph) -> SubgroupSet {
    let mut seen: HashSet<StallingsGraph> = HashSet::from([h.clone()]);
    let mut pending = vec![h.clone()];
    while let Some(g) = pending.pop() {
        for q in pair_quotients(&g) {
            if !seen.contains(&q) {
                seen.insert(q.clone());
                pending.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// The subgroup whose graph is the image of `H` in the graph of `K`.
pub fn takahasi_factor(h: &StallingsGraph, k: &StallingsGraph) -> Result<StallingsGraph> {
    same_rank(h, k)?;
    let phi = h.leq(k).ok_or(Error::NotSubgroup)?;
    Ok(phi.image(h, k))
}

/// The fringe of `H` relative to the basis `φ(A)`, where `φ` applies `moves`
/// in order: `{ φ(K) : K ∈ fringe(φ⁻¹(H)) }`.
pub fn fringe_in_basis(h: &StallingsGraph, moves: &[WhiteheadAutomorphism]) -> Result<SubgroupSet> {
    let rank = h.alphabet_rank();
    let forward = whitehead::composite(rank, moves)?;
    let backward = whitehead::composite_inverse(rank, moves)?;
    let pulled = h.image(&backward)?;
    fringe(&pulled).iter().map(|k| k.image(&forward)).collect()
}
