//! Compares `AE(H)` with the intersection of fringes taken in other bases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algext::algebraic_extensions;
use crate::error::Result;
use crate::lattice::{fringe, fringe_in_basis, SubgroupSet};
use crate::stallings::StallingsGraph;
use crate::whitehead::{Action, WhiteheadAutomorphism};
use crate::words::Letter;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreReport {
    /// Move sequences used, each defining a basis `φ(A)`.
    pub sequences: Vec<Vec<WhiteheadAutomorphism>>,
    /// Intersection of `fringe(H)` with every sampled basis fringe.
    pub intersection: SubgroupSet,
    pub algebraic_extensions: SubgroupSet,
    /// `AE(H)` is contained in the intersection. This always holds.
    pub inclusion_holds: bool,
    /// The intersection is strictly larger than `AE(H)`.
    pub proper: bool,
}

/// A uniformly random non-identity type II move, or a signed permutation
/// in rank one where there are none.
pub fn random_move<R: Rng>(rng: &mut R, rank: usize) -> WhiteheadAutomorphism {
    if rank < 2 {
        return WhiteheadAutomorphism::Permutation(vec![Letter::new(0, rng.gen())]);
    }
    let multiplier = Letter::from_index(rng.gen_range(0..2 * rank));
    loop {
        let actions: Vec<Action> = (0..rank)
            .map(|g| if g == multiplier.generator { Action::Fix } else { Action::ALL[rng.gen_range(0..4)] })
            .collect();
        if actions.iter().any(|&a| a != Action::Fix) {
            return WhiteheadAutomorphism::Multiplier { multiplier, actions };
        }
    }
}

/// Random sequences of `move_length` moves, reproducible from `seed`.
pub fn random_sequences(rank: usize, samples: usize, move_length: usize, seed: u64) -> Vec<Vec<WhiteheadAutomorphism>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| (0..move_length).map(|_| random_move(&mut rng, rank)).collect()).collect()
}

pub fn conjecture_explore(h: &StallingsGraph, samples: usize, move_length: usize, seed: u64) -> Result<ExploreReport> {
    explore_sequences(h, random_sequences(h.alphabet_rank(), samples, move_length, seed))
}

/// [`conjecture_explore`] over explicitly chosen bases.
pub fn explore_sequences(h: &StallingsGraph, sequences: Vec<Vec<WhiteheadAutomorphism>>) -> Result<ExploreReport> {
    let mut intersection = fringe(h);
    for moves in &sequences {
        intersection = intersection.intersection(&fringe_in_basis(h, moves)?);
    }
    let ae = algebraic_extensions(h)?;
    let inclusion_holds = ae.is_subset(&intersection);
    let proper = intersection.len() > ae.len();
    Ok(ExploreReport { sequences, intersection, algebraic_extensions: ae, inclusion_holds, proper })
}
