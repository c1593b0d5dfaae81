//! Malnormality, purity, e-algebraic closedness and closures over `AE(H)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::algext::{algebraic_extensions, is_ealg_closed, unique_minimum};
use crate::error::{Error, Result};
use crate::lattice::join;
use crate::stallings::StallingsGraph;
use crate::union_find::UnionFind;
use crate::words::{Letter, Word};

/// Default bound on the number of transition-monoid elements explored by
/// [`root_witness`].
pub const DEFAULT_MONOID_CAP: usize = 400_000;

/// A subgroup property with a decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyPredicate {
    Malnormal,
    Pure,
    /// Closed under roots `x` of `x^n ∈ H` with `n` coprime to the prime.
    PPure(u64),
    EalgClosed,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PropertyPredicate {
    pub fn p_pure(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PropertyPredicate::PPure(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    pub fn holds(&self, h: &StallingsGraph) -> Result<bool> {
        match *self {
            PropertyPredicate::Malnormal => Ok(is_malnormal(h)),
            PropertyPredicate::Pure => is_pure(h),
            PropertyPredicate::PPure(p) => is_p_pure(h, p),
            PropertyPredicate::EalgClosed => Ok(is_ealg_closed(h)),
        }
    }
}

impl FromStr for PropertyPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "malnormal" => Ok(PropertyPredicate::Malnormal),
            "pure" => Ok(PropertyPredicate::Pure),
            "ealg" | "ealg-closed" => Ok(PropertyPredicate::EalgClosed),
            _ => {
                let p = s
                    .strip_prefix("p-pure:")
                    .ok_or_else(|| Error::Parse(format!("unknown property {s:?}")))?
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad prime in {s:?}: {e}")))?;
                PropertyPredicate::p_pure(p)
            }
        }
    }
}

impl fmt::Display for PropertyPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyPredicate::Malnormal => write!(f, "malnormal"),
            PropertyPredicate::Pure => write!(f, "pure"),
            PropertyPredicate::PPure(p) => write!(f, "p-pure:{p}"),
            PropertyPredicate::EalgClosed => write!(f, "ealg-closed"),
        }
    }
}

/// `x ∉ H` with `x^exponent ∈ H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootWitness {
    pub x: Word,
    pub exponent: u64,
}

/// Whether `H^g ∩ H = 1` for every `g ∉ H`: every off-diagonal component of
/// the full product of the graph with itself must be a tree.
pub fn is_malnormal(h: &StallingsGraph) -> bool {
    let n = h.vertex_count();
    let pair = |u: usize, v: usize| u * n + v;
    let mut uf = UnionFind::new(n * n);
    let mut product_edges = Vec::new();
    for e in h.edges() {
        for f in h.edges().iter().filter(|f| f.label == e.label) {
            let (a, b) = (pair(e.source, f.source), pair(e.target, f.target));
            uf.union(a, b);
            product_edges.push(a);
        }
    }
    let mut edges_in: HashMap<usize, usize> = HashMap::new();
    for a in product_edges {
        *edges_in.entry(uf.find(a)).or_default() += 1;
    }
    let mut vertices_in: HashMap<usize, usize> = HashMap::new();
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            *vertices_in.entry(uf.find(pair(u, v))).or_default() += 1;
        }
    }
    vertices_in.iter().all(|(root, &vs)| edges_in.get(root).copied().unwrap_or(0) < vs)
}

/// Finds `x ∉ H` and `d ≥ 2` with `x^d ∈ H` (`d` coprime to `coprime_to`
/// when given), or proves none exists.
pub fn root_witness(h: &StallingsGraph, coprime_to: Option<u64>) -> Result<Option<RootWitness>> {
    root_witness_with_cap(h, coprime_to, DEFAULT_MONOID_CAP)
}

/// [`root_witness`] with an explicit bound on the explored monoid.
///
/// Writing a root as `x = u·w·u⁻¹` with `u` leading from the base to `v`,
/// `x^d ∈ H` and `x ∉ H` say exactly that `v` lies on a cycle of length
/// dividing `d`, other than a fixed point, of the partial injection the word
/// `w` induces on the vertices. The search explores every such partial
/// injection with at least two points in its domain (smaller ones cannot
/// carry a cycle and only shrink further under products).
pub fn root_witness_with_cap(h: &StallingsGraph, coprime_to: Option<u64>, cap: usize) -> Result<Option<RootWitness>> {
    let n = h.vertex_count();
    let letters: Vec<Letter> = (0..2 * h.alphabet_rank()).map(Letter::from_index).collect();
    let mut maps: Vec<Box<[u32]>> = Vec::new();
    let mut parent: Vec<(usize, Letter)> = Vec::new();
    let mut index: HashMap<Box<[u32]>, usize> = HashMap::new();
    let identity: Box<[u32]> = (0..n as u32).collect();
    let mut head = usize::MAX;
    let mut current = identity;
    loop {
        for &l in &letters {
            let next: Box<[u32]> = current
                .iter()
                .map(|&v| if v == u32::MAX { u32::MAX } else { h.step(v as usize, l).map_or(u32::MAX, |t| t as u32) })
                .collect();
            if next.iter().filter(|&&v| v != u32::MAX).count() < 2 || index.contains_key(&next) {
                continue;
            }
            if let Some((v0, d)) = qualifying_cycle(&next, coprime_to) {
                let mut w = vec![l];
                let mut at = head;
                while at != usize::MAX {
                    let (up, letter) = parent[at];
                    w.push(letter);
                    at = up;
                }
                w.reverse();
                return witness(h, v0, Word::new(w), d).map(Some);
            }
            if maps.len() >= cap {
                return Err(Error::BudgetExceeded(format!("root search explored {cap} vertex maps")));
            }
            index.insert(next.clone(), maps.len());
            maps.push(next);
            parent.push((head, l));
        }
        head = head.wrapping_add(1);
        match maps.get(head) {
            Some(m) => current = m.clone(),
            None => return Ok(None),
        }
    }
}

/// Smallest vertex on a cycle of length at least two (coprime to `p`).
fn qualifying_cycle(map: &[u32], coprime_to: Option<u64>) -> Option<(usize, u64)> {
    let mut done = vec![false; map.len()];
    for start in 0..map.len() {
        if done[start] {
            continue;
        }
        let mut len = 0u64;
        let mut v = start;
        let closed = loop {
            done[v] = true;
            len += 1;
            match map[v] {
                u32::MAX => break false,
                t if t as usize == start => break true,
                t if done[t as usize] => break false,
                t => v = t as usize,
            }
        };
        if closed && len >= 2 && coprime_to.is_none_or(|p| !len.is_multiple_of(p)) {
            return Some((start, len));
        }
    }
    None
}

fn witness(h: &StallingsGraph, v0: usize, w: Word, d: u64) -> Result<RootWitness> {
    let u = &h.spanning_tree().prefixes[v0];
    let x = u.multiply(&w).multiply(&u.inverse());
    if h.contains(&x) || !h.contains(&x.pow(d as i64)) {
        return Err(Error::InternalInconsistency(format!("root witness ({x}, {d}) failed verification")));
    }
    Ok(RootWitness { x, exponent: d })
}

pub fn is_pure(h: &StallingsGraph) -> Result<bool> {
    Ok(root_witness(h, None)?.is_none())
}

pub fn is_p_pure(h: &StallingsGraph, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(root_witness(h, Some(p))?.is_none())
}

/// The smallest algebraic extension of `H` with property `P`.
pub fn property_closure(h: &StallingsGraph, p: PropertyPredicate) -> Result<StallingsGraph> {
    if p.holds(h)? {
        return Ok(h.clone());
    }
    let mut candidates = Vec::new();
    for k in algebraic_extensions(h)? {
        if p.holds(&k)? {
            candidates.push(k);
        }
    }
    unique_minimum(&candidates, &format!("{p} closure"))
}

/// Adjoins root witnesses until none is left. Returns the closure and the
/// number of roots adjoined.
pub fn pure_closure_iterative(h: &StallingsGraph, coprime_to: Option<u64>) -> Result<(StallingsGraph, usize)> {
    if let Some(p) = coprime_to {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
    }
    let mut current = h.clone();
    let mut steps = 0;
    while let Some(RootWitness { x, .. }) = root_witness(&current, coprime_to)? {
        let cyclic = StallingsGraph::build(h.alphabet_rank(), &[x])?;
        current = join(&current, &cyclic)?;
        steps += 1;
    }
    Ok((current, steps))
}
