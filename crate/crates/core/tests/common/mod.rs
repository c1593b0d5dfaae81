#![allow(dead_code)]

use freesub::whitehead::{composite, rewrite_basis, total_length, type_two_moves};
use freesub::{Letter, StallingsGraph, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn g(rank: usize, gens: &str) -> StallingsGraph {
    StallingsGraph::from_text(rank, gens).unwrap()
}

pub fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

pub fn f(rank: usize) -> StallingsGraph {
    StallingsGraph::bouquet(rank).unwrap()
}

/// Substitutes `images[i]` for letter `i` of `word`.
pub fn substitute(word: &Word, images: &[Word]) -> Word {
    Word::new(word.letters().iter().flat_map(|l| {
        let img = if l.inverse { images[l.generator].inverse() } else { images[l.generator].clone() };
        img.letters().to_vec()
    }))
}

/// Pairs `L ≤ K` over rank 2 or 3 with both graphs on at most six vertices,
/// `2 ≤ rank(K) ≤ 4`, and the basis of `L` rewritten over `K` of total
/// length between 2 and 14. Half of the `L` are images of basis subsets
/// under random automorphisms of `K`, half are generated by random words
/// in the basis of `K`.
pub fn free_factor_corpus(seed: u64, count: usize) -> Vec<(StallingsGraph, StallingsGraph)> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    let mut attempt = 0usize;
    while out.len() < count {
        attempt += 1;
        let rank = rng.gen_range(2..=3);
        let k = freesub::oracles::random_subgroup(&mut rng, rank, 4, 4);
        if k.vertex_count() > 6 || !(2..=4).contains(&k.rank()) {
            continue;
        }
        let r = k.rank();
        let tuple: Vec<Word> = if attempt.is_multiple_of(2) {
            let moves: Vec<_> = type_two_moves(r).collect();
            let seq: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| moves.choose(&mut rng).unwrap().clone()).collect();
            let phi = composite(r, &seq).unwrap();
            let take = rng.gen_range(1..=r);
            phi.images()[..take].to_vec()
        } else {
            (0..rng.gen_range(1..=2))
                .map(|_| {
                    let len = rng.gen_range(2..=5);
                    Word::new((0..len).map(|_| Letter::from_index(rng.gen_range(0..2 * r))))
                })
                .filter(|w| !w.is_empty())
                .collect()
        };
        if tuple.is_empty() {
            continue;
        }
        let basis = k.basis();
        let gens: Vec<Word> = tuple.iter().map(|t| substitute(t, &basis)).collect();
        let l = StallingsGraph::build(rank, &gens).unwrap();
        if l.vertex_count() > 6 || l.is_trivial() {
            continue;
        }
        let length = total_length(&rewrite_basis(&l, &k).unwrap());
        if (2..=14).contains(&length) {
            out.push((l, k));
        }
    }
    out
}

/// Random transitive action of `rank` permutations on `n` points.
pub fn random_transitive_action(rng: &mut ChaCha8Rng, rank: usize, n: usize) -> Vec<Vec<usize>> {
    loop {
        let perms: Vec<Vec<usize>> = (0..rank)
            .map(|_| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for p in &perms {
                for next in [p[v], p.iter().position(|&x| x == v).unwrap()] {
                    if !std::mem::replace(&mut seen[next], true) {
                        stack.push(next);
                    }
                }
            }
        }
        if seen.iter().all(|&s| s) {
            return perms;
        }
    }
}

/// Schreier generators of the stabilizer of point 0 under `perms`.
pub fn stabilizer_generators(perms: &[Vec<usize>]) -> Vec<Word> {
    let n = perms.first().map_or(1, Vec::len);
    let mut prefix: Vec<Option<Word>> = vec![None; n];
    prefix[0] = Some(Word::identity());
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for (gen, p) in perms.iter().enumerate() {
            let t = p[v];
            if prefix[t].is_none() {
                prefix[t] = Some(prefix[v].as_ref().unwrap().multiply(&Word::generator(gen)));
                queue.push_back(t);
            }
        }
        for (gen, p) in perms.iter().enumerate() {
            let t = p.iter().position(|&x| x == v).unwrap();
            if prefix[t].is_none() {
                prefix[t] = Some(prefix[v].as_ref().unwrap().multiply(&Word::letter(Letter::new(gen, true))));
                queue.push_back(t);
            }
        }
    }
    let prefix: Vec<Word> = prefix.into_iter().map(Option::unwrap).collect();
    let mut gens = Vec::new();
    for v in 0..n {
        for (gen, p) in perms.iter().enumerate() {
            let s = prefix[v].multiply(&Word::generator(gen)).multiply(&prefix[p[v]].inverse());
            if !s.is_empty() {
                gens.push(s);
            }
        }
    }
    gens
}
