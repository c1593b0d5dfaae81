//! Slow exhaustive reference procedures for cross-checking on small inputs.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{fringe, join, takahasi_factor};
use crate::properties::RootWitness;
use crate::stallings::StallingsGraph;
use crate::whitehead::{
    apply_move, enumerate_whitehead, is_free_factor, is_free_factor_by_minimization, rewrite_basis, total_length,
};
use crate::words::{Letter, Word};

/// Orbit states explored by [`oracle_free_factor`] before giving up.
pub const ORBIT_STATE_CAP: usize = 200_000;

/// Relabels generators in order of first appearance, each made positive at
/// its first occurrence. Two tuples get the same label exactly when a
/// signed permutation carries one to the other.
fn relabel(tuple: &[Word]) -> Vec<Word> {
    let mut map: Vec<Option<Letter>> = Vec::new();
    let mut next = 0;
    tuple
        .iter()
        .map(|w| {
            Word::new(w.letters().iter().map(|&l| {
                if map.len() <= l.generator {
                    map.resize(l.generator + 1, None);
                }
                let image = *map[l.generator].get_or_insert_with(|| {
                    next += 1;
                    Letter::new(next - 1, l.inverse)
                });
                Letter::new(image.generator, image.inverse != l.inverse)
            }))
        })
        .collect()
}

fn is_free_basis(tuple: &[Word]) -> bool {
    let mut seen = HashSet::new();
    tuple.iter().all(|w| w.len() == 1 && seen.insert(w.letters()[0].generator))
}

/// Decides `L ≤ff K` by exploring every tuple reachable from the rewritten
/// basis of `L` under all Whitehead moves without exceeding its length.
pub fn oracle_free_factor(l: &StallingsGraph, k: &StallingsGraph, length_budget: usize) -> Result<bool> {
    let start = rewrite_basis(l, k)?;
    let budget = total_length(&start);
    if budget > length_budget {
        return Err(Error::BudgetExceeded(format!("rewritten basis has total length {budget} > {length_budget}")));
    }
    let moves = enumerate_whitehead(k.rank());
    let mut seen = HashSet::from([relabel(&start)]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        if total_length(&t) == t.len() && is_free_basis(&t) {
            return Ok(true);
        }
        for m in &moves {
            let next = apply_move(m, &t)?;
            if total_length(&next) <= budget && seen.insert(relabel(&next)) {
                if seen.len() > ORBIT_STATE_CAP {
                    return Err(Error::BudgetExceeded(format!("orbit exceeds {ORBIT_STATE_CAP} tuples")));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// Reduced words of length `1..=max_len` over `rank` generators, shortest
/// first and lexicographic by letter index within a length.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut all = Vec::new();
    let mut layer = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..2 * rank {
                let l = Letter::from_index(i);
                if w.last() != Some(l.inv()) {
                    next.push(w.multiply(&Word::letter(l)));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// First `(x, d)` with `|x| ≤ max_len`, `2 ≤ d ≤ max_exp`, `x ∉ H`, `x^d ∈ H`.
/// Finding nothing does not prove purity.
pub fn oracle_root_search(h: &StallingsGraph, max_len: usize, max_exp: u64) -> Option<RootWitness> {
    oracle_root_search_coprime(h, max_len, max_exp, None)
}

/// [`oracle_root_search`] restricted to exponents coprime to `p`.
pub fn oracle_root_search_coprime(
    h: &StallingsGraph,
    max_len: usize,
    max_exp: u64,
    p: Option<u64>,
) -> Option<RootWitness> {
    let exponents: Vec<u64> = (2..=max_exp).filter(|d| p.is_none_or(|p| d % p != 0)).collect();
    reduced_words(h.alphabet_rank(), max_len).into_iter().filter(|x| !h.contains(x)).find_map(|x| {
        exponents.iter().find(|&&d| h.contains(&x.pow(d as i64))).map(|&exponent| RootWitness { x, exponent })
    })
}

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=max_len);
        let w = Word::new((0..len).map(|_| Letter::from_index(rng.gen_range(0..2 * rank))));
        if !w.is_empty() {
            return w;
        }
    }
}

/// Subgroup generated by `1..=max_gens` random nonempty words.
pub fn random_subgroup<R: Rng>(rng: &mut R, rank: usize, max_gens: usize, max_len: usize) -> StallingsGraph {
    let gens: Vec<Word> = (0..rng.gen_range(1..=max_gens)).map(|_| random_word(rng, rank, max_len)).collect();
    StallingsGraph::build(rank, &gens).expect("random words are in rank")
}

/// Joins `H` with random words `trials` times and checks that each Takahasi
/// factor lies in the fringe and is a free factor of the extension.
pub fn oracle_fringe_is_takahasi(h: &StallingsGraph, trials: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = h.alphabet_rank();
    let fr = fringe(h);
    for _ in 0..trials {
        if rank == 0 {
            break;
        }
        let extra = random_subgroup(&mut rng, rank, 2, 5);
        let k = join(h, &extra)?;
        let t = takahasi_factor(h, &k)?;
        if !fr.contains(&t) || !is_free_factor(&t, &k)? || !is_free_factor_by_minimization(&t, &k)? {
            return Ok(false);
        }
    }
    Ok(true)
}
