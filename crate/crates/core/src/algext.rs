//! Algebraic extensions and the e-algebraic closure.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::{fringe, pair_quotients, SubgroupSet};
use crate::stallings::StallingsGraph;
use crate::whitehead::is_free_factor;

/// `AE(H)`: the members of the fringe of `H` that contain no other fringe
/// member as a proper free factor.
pub fn algebraic_extensions(h: &StallingsGraph) -> Result<SubgroupSet> {
    algebraic_extensions_up_to(h, usize::MAX)
}

/// The members of `AE(H)` of rank at most `max_rank`.
///
/// Candidates are processed by increasing rank. A proper free factor has
/// strictly smaller rank, and any fringe member that is a free factor of `K`
/// contains a member of `AE(H)` as a free factor, so `K` only needs to be
/// tested against the already accepted members of smaller rank.
pub fn algebraic_extensions_up_to(h: &StallingsGraph, max_rank: usize) -> Result<SubgroupSet> {
    let mut candidates: Vec<StallingsGraph> = fringe(h).into_iter().filter(|k| k.rank() <= max_rank).collect();
    candidates.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.cmp(b)));
    let mut accepted: Vec<StallingsGraph> = Vec::new();
    for k in candidates {
        let mut algebraic = true;
        for l in accepted.iter().filter(|l| l.rank() < k.rank()) {
            if l.is_subgroup_of(&k) && is_free_factor(l, &k)? {
                algebraic = false;
                break;
            }
        }
        if algebraic {
            accepted.push(k);
        }
    }
    Ok(accepted.into_iter().collect())
}

/// Whether `K` is an algebraic extension of `H`.
pub fn is_algebraic(h: &StallingsGraph, k: &StallingsGraph) -> Result<bool> {
    if !h.is_subgroup_of(k) {
        return Err(Error::NotSubgroup);
    }
    Ok(algebraic_extensions_up_to(h, k.rank())?.contains(k))
}

/// Inclusion-minimal elements; exactly one is expected.
pub(crate) fn unique_minimum(set: &[StallingsGraph], what: &str) -> Result<StallingsGraph> {
    let minimal: Vec<&StallingsGraph> =
        set.iter().filter(|k| !set.iter().any(|l| l != *k && l.is_subgroup_of(k))).collect();
    match minimal.as_slice() {
        [one] => Ok((*one).clone()),
        _ => Err(Error::InternalInconsistency(format!("{what}: {} minimal candidates", minimal.len()))),
    }
}

pub(crate) fn unique_maximum(set: &[StallingsGraph], what: &str) -> Result<StallingsGraph> {
    let maximal: Vec<&StallingsGraph> =
        set.iter().filter(|k| !set.iter().any(|l| l != *k && k.is_subgroup_of(l))).collect();
    match maximal.as_slice() {
        [one] => Ok((*one).clone()),
        _ => Err(Error::InternalInconsistency(format!("{what}: {} maximal candidates", maximal.len()))),
    }
}

/// `cl_K(H)`: the unique `L` with `H ≤alg L ≤ff K`.
pub fn algebraic_closure(h: &StallingsGraph, k: &StallingsGraph) -> Result<StallingsGraph> {
    if !h.is_subgroup_of(k) {
        return Err(Error::NotSubgroup);
    }
    let mut candidates = Vec::new();
    for l in algebraic_extensions_up_to(h, k.rank())? {
        if l.is_subgroup_of(k) && is_free_factor(&l, k)? {
            candidates.push(l);
        }
    }
    unique_minimum(&candidates, "algebraic closure")
}

/// Single-pair quotients of `L` whose rank does not exceed `rank(L)`.
pub fn elementary_algebraic_successors(l: &StallingsGraph) -> SubgroupSet {
    let r = l.rank();
    pair_quotients(l).filter(|m| m.rank() <= r).collect()
}

fn ealg_reachable(h: &StallingsGraph, mut keep: impl FnMut(&StallingsGraph) -> bool) -> Vec<StallingsGraph> {
    let mut seen: HashSet<StallingsGraph> = HashSet::from([h.clone()]);
    let mut order = vec![h.clone()];
    let mut queue = VecDeque::from([h.clone()]);
    while let Some(l) = queue.pop_front() {
        for m in elementary_algebraic_successors(&l) {
            if keep(&m) && seen.insert(m.clone()) {
                order.push(m.clone());
                queue.push_back(m);
            }
        }
    }
    order
}

/// Whether a chain of elementary algebraic extensions leads from `H` to `K`.
pub fn is_ealg_extension(h: &StallingsGraph, k: &StallingsGraph) -> Result<bool> {
    if !h.is_subgroup_of(k) {
        return Err(Error::NotSubgroup);
    }
    if h == k {
        return Ok(true);
    }
    // Ranks never increase along a chain and every link lies inside K.
    let floor = k.rank();
    let reached = ealg_reachable(h, |m| m.rank() >= floor && m.is_subgroup_of(k));
    Ok(reached.contains(k))
}

/// The greatest e-algebraic extension of `H`.
pub fn ealg_closure(h: &StallingsGraph) -> Result<StallingsGraph> {
    unique_maximum(&ealg_reachable(h, |_| true), "e-algebraic closure")
}

pub fn is_ealg_closed(h: &StallingsGraph) -> bool {
    let r = h.rank();
    pair_quotients(h).all(|m| m.rank() > r)
}

/// Whether no algebraic extension of `H` has smaller rank.
pub fn is_compressed(h: &StallingsGraph) -> Result<bool> {
    match h.rank() {
        0 => Ok(true),
        r => Ok(algebraic_extensions_up_to(h, r - 1)?.is_empty()),
    }
}
