mod common;

use common::{f, random_transitive_action, stabilizer_generators, substitute};
use freesub::algext::{algebraic_extensions, ealg_closure, is_algebraic};
use freesub::format::{from_json, to_json};
use freesub::lattice::{fringe, fringe_in_basis, intersect, join, takahasi_factor};
use freesub::oracles::reduced_words;
use freesub::properties::{is_malnormal, property_closure, PropertyPredicate};
use freesub::stallings::VertexPartition;
use freesub::whitehead::{
    apply_move, composite, composite_inverse, enumerate_whitehead, is_free_factor, minimize_tuple, total_length,
    type_two_moves, WhiteheadAutomorphism,
};
use freesub::words::{apply_endomorphism, cyclic_reduce, invert, multiply};
use freesub::{Endomorphism, Index, LabeledGraph, Letter, StallingsGraph, Word};
use proptest::prelude::*;

fn word_of(indices: &[usize]) -> Word {
    Word::new(indices.iter().map(|&i| Letter::from_index(i)))
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..2 * rank, 0..=max_len).prop_map(|v| word_of(&v))
}

fn words(rank: usize, count: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(prop::collection::vec(0..2 * rank, 1..=max_len), count)
        .prop_map(|ws| ws.iter().map(|v| word_of(v)).collect())
}

/// A rank 2 or 3 subgroup from one to three short generators.
fn small_subgroup() -> impl Strategy<Value = StallingsGraph> {
    (2usize..=3)
        .prop_flat_map(|r| (Just(r), words(r, 1..=3, 3)))
        .prop_map(|(r, gens)| StallingsGraph::build(r, &gens).unwrap())
}

/// Like [`small_subgroup`] but with at most five vertices, which keeps
/// fringe sizes small.
fn tiny_subgroup() -> impl Strategy<Value = StallingsGraph> {
    (2usize..=3)
        .prop_flat_map(|r| (Just(r), words(r, 1..=2, 3)))
        .prop_map(|(r, gens)| StallingsGraph::build(r, &gens).unwrap())
        .prop_filter("non-trivial", |h| !h.is_trivial())
}

fn move_at(rank: usize, index: usize) -> WhiteheadAutomorphism {
    let moves = enumerate_whitehead(rank);
    moves[index % moves.len()].clone()
}

fn conjugate(h: &StallingsGraph, g: &Word) -> StallingsGraph {
    let gens: Vec<Word> = h.basis().iter().map(|b| g.multiply(b).multiply(&g.inverse())).collect();
    StallingsGraph::build(h.alphabet_rank(), &gens).unwrap()
}

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cases(256))]

    #[test]
    fn multiply_is_associative(u in word(3, 8), v in word(3, 8), x in word(3, 8)) {
        prop_assert_eq!(multiply(&multiply(&u, &v), &x), multiply(&u, &multiply(&v, &x)));
    }

    #[test]
    fn inverse_is_an_involution(u in word(3, 10)) {
        prop_assert_eq!(invert(&invert(&u)), u.clone());
        prop_assert!(multiply(&u, &invert(&u)).is_empty());
        prop_assert!(multiply(&invert(&u), &u).is_empty());
    }

    #[test]
    fn words_stay_reduced(raw in prop::collection::vec(0usize..6, 0..20)) {
        let u = word_of(&raw);
        prop_assert!(u.letters().windows(2).all(|p| p[0] != p[1].inv()));
        prop_assert_eq!(Word::parse(&u.to_string()).unwrap(), u);
    }

    #[test]
    fn endomorphisms_are_homomorphisms(images in prop::collection::vec(word(3, 4), 3), u in word(3, 8), v in word(3, 8)) {
        let e = Endomorphism::new(3, images).unwrap();
        let lhs = apply_endomorphism(&e, &multiply(&u, &v)).unwrap();
        let rhs = multiply(&apply_endomorphism(&e, &u).unwrap(), &apply_endomorphism(&e, &v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cyclic_reduction_recomposes(u in word(3, 12)) {
        let (c, core) = cyclic_reduce(&u);
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(c.multiply(&core).multiply(&c.inverse()), u);
    }
}

proptest! {
    #![proptest_config(cases(128))]

    #[test]
    fn folding_is_order_independent(gens in words(3, 1..=4, 5), perm_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed);
        let h = StallingsGraph::build(3, &gens).unwrap();
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        shuffled.push(gens[0].inverse());
        prop_assert_eq!(&StallingsGraph::build(3, &shuffled).unwrap(), &h);

        let petals = LabeledGraph::petals(3, &gens).unwrap();
        let mut order: Vec<usize> = (0..petals.vertex_count).collect();
        order.shuffle(&mut rng);
        let relabeled = LabeledGraph {
            rank: 3,
            vertex_count: petals.vertex_count,
            base: order[petals.base],
            edges: petals.edges.iter().map(|e| freesub::Edge::new(order[e.source], e.label, order[e.target])).collect(),
        };
        prop_assert_eq!(&relabeled.fold(), &h);
        prop_assert_eq!(&h.to_labeled().fold(), &h);
    }

    #[test]
    fn basis_rebuilds_the_subgroup(h in small_subgroup()) {
        let basis = h.basis();
        prop_assert_eq!(basis.len(), h.rank());
        prop_assert_eq!(h.rank() + h.vertex_count(), h.edge_count() + 1);
        prop_assert_eq!(&StallingsGraph::build(h.alphabet_rank(), &basis).unwrap(), &h);
        for (i, b) in basis.iter().enumerate() {
            prop_assert!(h.contains(b));
            prop_assert_eq!(h.express(b).unwrap(), Word::generator(i));
        }
    }

    #[test]
    fn membership_is_closed_under_products(
        h in small_subgroup(),
        picks in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 1..6),
        picks2 in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 1..6),
    ) {
        let basis = h.basis();
        prop_assume!(!basis.is_empty());
        let product = |p: &[(prop::sample::Index, bool)]| {
            p.iter().fold(Word::identity(), |acc, (i, inv)| {
                let b = i.get(&basis);
                acc.multiply(&if *inv { b.inverse() } else { b.clone() })
            })
        };
        let (u, v) = (product(&picks), product(&picks2));
        prop_assert!(h.contains(&u.multiply(&v.inverse())));
        let coords = h.express(&u).unwrap();
        prop_assert_eq!(substitute(&coords, &basis), u);
    }

    #[test]
    fn leq_matches_basis_membership(h in small_subgroup(), extra in words(3, 0..=2, 3)) {
        let r = h.alphabet_rank();
        let extra: Vec<Word> = extra.into_iter().filter(|w| w.check_rank(r).is_ok()).collect();
        let mut gens = h.basis();
        gens.truncate(gens.len().saturating_sub(1));
        gens.extend(extra);
        let k = StallingsGraph::build(r, &gens).unwrap();
        for (a, b) in [(&h, &k), (&k, &h)] {
            let by_basis = a.basis().iter().all(|w| b.contains(w));
            prop_assert_eq!(a.leq(b).is_some(), by_basis);
        }
    }

    #[test]
    fn quotients_contain_the_subgroup(h in small_subgroup(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let n = h.vertex_count();
        let q = h.quotient(&VertexPartition::pair(a.index(n), b.index(n))).unwrap();
        prop_assert!(h.leq(&q).is_some());
    }
}

proptest! {
    #![proptest_config(cases(48))]

    #[test]
    fn finite_index_obeys_schreier(seed in any::<u64>(), rank in 1usize..=3, n in 1usize..=5) {
        let mut rng = common::rng(seed);
        let perms = random_transitive_action(&mut rng, rank, n);
        let h = StallingsGraph::build(rank, &stabilizer_generators(&perms)).unwrap();
        prop_assert_eq!(h.index(), Index::Finite(n));
        prop_assert_eq!(h.rank(), n * (rank - 1) + 1);
    }

    #[test]
    fn finite_index_is_algebraic_in_the_whole_group(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = common::rng(seed);
        let perms = random_transitive_action(&mut rng, 2, n);
        let h = StallingsGraph::build(2, &stabilizer_generators(&perms)).unwrap();
        prop_assert!(is_algebraic(&h, &f(2)).unwrap());
    }

    #[test]
    fn intersection_is_membership_conjunction(h in small_subgroup(), k_gens in words(3, 1..=3, 3), probes in prop::collection::vec(word(3, 6), 8)) {
        let r = h.alphabet_rank();
        let k_gens: Vec<Word> = k_gens.into_iter().filter(|w| w.check_rank(r).is_ok()).collect();
        let k = StallingsGraph::build(r, &k_gens).unwrap();
        let i = intersect(&h, &k).unwrap();
        prop_assert!(i.leq(&h).is_some() && i.leq(&k).is_some());
        let samples = h.basis().into_iter().chain(k.basis()).chain(probes.into_iter().filter(|w| w.check_rank(r).is_ok()));
        for w in samples.chain(i.basis()) {
            prop_assert_eq!(i.contains(&w), h.contains(&w) && k.contains(&w));
        }
        let j = join(&h, &k).unwrap();
        prop_assert!(h.leq(&j).is_some() && k.leq(&j).is_some());
    }

    #[test]
    fn fringe_bounds_and_takahasi(h in tiny_subgroup(), extra in words(3, 1..=2, 3)) {
        let r = h.alphabet_rank();
        let fr = fringe(&h);
        prop_assert!(fr.contains(&h));
        prop_assert!(fr.iter().all(|m| h.leq(m).is_some()));

        let extra: Vec<Word> = extra.into_iter().filter(|w| w.check_rank(r).is_ok()).collect();
        let k = join(&h, &StallingsGraph::build(r, &extra).unwrap()).unwrap();
        let t = takahasi_factor(&h, &k).unwrap();
        prop_assert!(fr.contains(&t));
        prop_assert!(is_free_factor(&t, &k).unwrap());
    }

    #[test]
    fn fringe_in_basis_pulls_back(h in tiny_subgroup(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let r = h.alphabet_rank();
        let all: Vec<_> = type_two_moves(r).collect();
        let moves: Vec<_> = picks.iter().map(|i| i.get(&all).clone()).collect();
        let phi = composite(r, &moves).unwrap();
        let phi_inv = composite_inverse(r, &moves).unwrap();
        let set = fringe_in_basis(&h, &moves).unwrap();
        prop_assert!(set.contains(&h));
        let pulled = fringe(&h.image(&phi_inv).unwrap());
        prop_assert_eq!(set.len(), pulled.len());
        for m in set.iter() {
            let back = m.image(&phi_inv).unwrap();
            prop_assert!(pulled.contains(&back));
            prop_assert_eq!(&back.image(&phi).unwrap(), m);
        }
    }
}

proptest! {
    #![proptest_config(cases(256))]

    #[test]
    fn moves_compose_with_inverses_to_identity(rank in 1usize..=3, index in any::<usize>(), u in word(3, 10)) {
        prop_assume!(u.check_rank(rank).is_ok());
        let m = move_at(rank, index);
        let there = m.apply(&u).unwrap();
        prop_assert_eq!(m.inverse().apply(&there).unwrap(), u);
    }

    #[test]
    fn minimization_descends_and_replays(tuple in words(3, 1..=3, 6)) {
        let out = minimize_tuple(&tuple);
        prop_assert!(out.total_length <= total_length(&tuple));
        prop_assert_eq!(out.total_length, total_length(&out.tuple));
        let mut replay = tuple.clone();
        let mut last = total_length(&replay);
        for m in &out.trace {
            replay = apply_move(m, &replay).unwrap();
            prop_assert!(total_length(&replay) < last);
            last = total_length(&replay);
        }
        prop_assert_eq!(replay, out.tuple);
    }
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn free_factors_of_basis_subsets(
        k in small_subgroup(),
        keep in prop::collection::vec(any::<bool>(), 4),
        inner in prop::collection::vec(any::<bool>(), 4),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3),
    ) {
        let r = k.rank();
        prop_assume!(r >= 1);
        prop_assert!(is_free_factor(&k, &k).unwrap());
        let basis = k.basis();
        let moves: Vec<_> = type_two_moves(r.max(2)).collect();
        let images: Vec<Word> = if r >= 2 {
            let seq: Vec<_> = picks.iter().map(|i| i.get(&moves).clone()).collect();
            composite(r, &seq).unwrap().images().iter().map(|t| substitute(t, &basis)).collect()
        } else {
            basis.clone()
        };
        let outer: Vec<Word> = images.iter().zip(&keep).filter(|(_, &b)| b).map(|(w, _)| w.clone()).collect();
        let middle: Vec<Word> = outer.iter().zip(&inner).filter(|(_, &b)| b).map(|(w, _)| w.clone()).collect();
        let rank = k.alphabet_rank();
        let m = StallingsGraph::build(rank, &outer).unwrap();
        let l = StallingsGraph::build(rank, &middle).unwrap();
        prop_assert!(is_free_factor(&m, &k).unwrap());
        prop_assert!(is_free_factor(&l, &m).unwrap());
        prop_assert!(is_free_factor(&l, &k).unwrap());
    }

    #[test]
    fn json_round_trips(h in small_subgroup()) {
        prop_assert_eq!(from_json(&to_json(&h)).unwrap(), h);
    }
}

proptest! {
    #![proptest_config(cases(32))]

    #[test]
    fn algebraic_extensions_form_a_minimal_takahasi_family(h in tiny_subgroup(), extra in words(3, 1..=2, 3)) {
        let r = h.alphabet_rank();
        let ae = algebraic_extensions(&h).unwrap();
        prop_assert!(ae.contains(&h));
        for a in ae.iter() {
            for b in ae.iter() {
                if a != b && a.leq(b).is_some() {
                    prop_assert!(!is_free_factor(a, b).unwrap());
                }
            }
        }
        let extra: Vec<Word> = extra.into_iter().filter(|w| w.check_rank(r).is_ok()).collect();
        let k = join(&h, &StallingsGraph::build(r, &extra).unwrap()).unwrap();
        let witnesses = ae.iter().filter(|l| l.leq(&k).is_some() && is_free_factor(l, &k).unwrap()).count();
        prop_assert!(witnesses >= 1);
    }

    #[test]
    fn algebraicity_composes(h in tiny_subgroup(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let ae = algebraic_extensions(&h).unwrap();
        let k1 = i.get(ae.members()).clone();
        let k2 = j.get(ae.members()).clone();
        let next = algebraic_extensions(&k1).unwrap();
        let k = j.get(next.members());
        prop_assert!(is_algebraic(&h, k).unwrap());
        prop_assert!(is_algebraic(&h, &join(&k1, &k2).unwrap()).unwrap());
    }

    #[test]
    fn ealg_closure_does_not_raise_rank(h in tiny_subgroup()) {
        let c = ealg_closure(&h).unwrap();
        prop_assert!(c.rank() <= h.rank());
        prop_assert!(h.leq(&c).is_some());
    }

    #[test]
    fn closures_are_extensive_and_idempotent(h in tiny_subgroup(), which in 0usize..3) {
        let p = [PropertyPredicate::Malnormal, PropertyPredicate::Pure, PropertyPredicate::EalgClosed][which];
        let c = property_closure(&h, p).unwrap();
        prop_assert!(h.leq(&c).is_some());
        prop_assert!(p.holds(&c).unwrap());
        prop_assert_eq!(property_closure(&c, p).unwrap(), c);
    }

    #[test]
    fn malnormality_matches_conjugate_search(h in tiny_subgroup()) {
        // A failure is witnessed by g = p_u p_v⁻¹ for spanning tree prefixes,
        // so conjugators up to length 2(V - 1) suffice.
        let r = h.alphabet_rank();
        prop_assume!(h.vertex_count() <= 3);
        let found = reduced_words(r, 4)
            .iter()
            .any(|g| !h.contains(g) && !intersect(&h, &conjugate(&h, g)).unwrap().is_trivial());
        prop_assert_eq!(is_malnormal(&h), !found);
    }
}
