//! Whitehead automorphisms, tuple-length minimization and free-factor tests.
//!
//! Type II moves fix their multiplier `m` and send every other generator
//! `x` to one of `x`, `m·x`, `x·m⁻¹` or `m·x·m⁻¹`. The change in total
//! length caused by such a move is a sum of per-junction terms, each either
//! linear in the "prefix `m`" / "suffix `m⁻¹`" bits of a generator or of the
//! form `|bit − bit|`, so the best move for a given multiplier is a minimum
//! s–t cut. Descent uses that instead of scanning all `4^(rank−1)` action
//! vectors, while still picking the same move a scan in enumeration order
//! would pick.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::stallings::StallingsGraph;
use crate::words::{Endomorphism, Letter, Word};

/// What a type II move does to a non-multiplier generator `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Fix,
    /// `x ↦ m·x`
    Left,
    /// `x ↦ x·m⁻¹`
    Right,
    /// `x ↦ m·x·m⁻¹`
    Conjugate,
}

impl Action {
    pub const ALL: [Action; 4] = [Action::Fix, Action::Left, Action::Right, Action::Conjugate];

    fn bits(self) -> (bool, bool) {
        match self {
            Action::Fix => (false, false),
            Action::Left => (true, false),
            Action::Right => (false, true),
            Action::Conjugate => (true, true),
        }
    }

    fn symbol(self) -> char {
        match self {
            Action::Fix => '.',
            Action::Left => 'L',
            Action::Right => 'R',
            Action::Conjugate => 'C',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        match c {
            '.' => Some(Action::Fix),
            'L' => Some(Action::Left),
            'R' => Some(Action::Right),
            'C' => Some(Action::Conjugate),
            _ => None,
        }
    }
}

/// An elementary automorphism of a free group.
///
/// Text form: `P:bAc` is the signed permutation sending the generators in
/// order to `b`, `a⁻¹`, `c`; `a/.LC` has multiplier `a` and acts on the
/// generators in order by fix, left, conjugate (the multiplier's own slot
/// is always `.`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WhiteheadAutomorphism {
    /// Type I: generator `i` goes to the letter `images[i]`.
    Permutation(Vec<Letter>),
    /// Type II.
    Multiplier { multiplier: Letter, actions: Vec<Action> },
}

impl WhiteheadAutomorphism {
    pub fn permutation(images: Vec<Letter>) -> Result<Self> {
        let rank = images.len();
        let mut seen = vec![false; rank];
        for l in &images {
            if l.generator >= rank || std::mem::replace(&mut seen[l.generator], true) {
                return Err(Error::Parse(format!("not a signed permutation of {rank} generators")));
            }
        }
        Ok(WhiteheadAutomorphism::Permutation(images))
    }

    pub fn multiplier(multiplier: Letter, actions: Vec<Action>) -> Result<Self> {
        if multiplier.generator >= actions.len() {
            return Err(Error::LetterOutOfRange { generator: multiplier.generator, rank: actions.len() });
        }
        if actions[multiplier.generator] != Action::Fix {
            return Err(Error::Parse("a type II move must fix its multiplier".into()));
        }
        Ok(WhiteheadAutomorphism::Multiplier { multiplier, actions })
    }

    pub fn rank(&self) -> usize {
        match self {
            WhiteheadAutomorphism::Permutation(images) => images.len(),
            WhiteheadAutomorphism::Multiplier { actions, .. } => actions.len(),
        }
    }

    pub fn is_type_one(&self) -> bool {
        matches!(self, WhiteheadAutomorphism::Permutation(_))
    }

    pub fn inverse(&self) -> Self {
        match self {
            WhiteheadAutomorphism::Permutation(images) => {
                let mut inv = vec![Letter::positive(0); images.len()];
                for (i, l) in images.iter().enumerate() {
                    inv[l.generator] = Letter::new(i, l.inverse);
                }
                WhiteheadAutomorphism::Permutation(inv)
            }
            WhiteheadAutomorphism::Multiplier { multiplier, actions } => {
                WhiteheadAutomorphism::Multiplier { multiplier: multiplier.inv(), actions: actions.clone() }
            }
        }
    }

    /// Image of a single generator.
    pub fn image_of_generator(&self, g: usize) -> Word {
        match self {
            WhiteheadAutomorphism::Permutation(images) => Word::letter(images[g]),
            WhiteheadAutomorphism::Multiplier { multiplier, actions } => {
                let m = *multiplier;
                let x = Letter::positive(g);
                match actions[g] {
                    Action::Fix => Word::letter(x),
                    Action::Left => Word::new([m, x]),
                    Action::Right => Word::new([x, m.inv()]),
                    Action::Conjugate => Word::new([m, x, m.inv()]),
                }
            }
        }
    }

    pub fn to_endomorphism(&self) -> Endomorphism {
        let images = (0..self.rank()).map(|g| self.image_of_generator(g)).collect();
        Endomorphism::new(self.rank(), images).expect("move images stay in rank")
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.min_rank() > self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: w.min_rank() });
        }
        let mut letters = Vec::with_capacity(w.len() + 2);
        for &l in w.letters() {
            let img = self.image_of_generator(l.generator);
            if l.inverse {
                letters.extend(img.letters().iter().rev().map(|x| x.inv()));
            } else {
                letters.extend_from_slice(img.letters());
            }
        }
        Ok(Word::new(letters))
    }

    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Parse(format!("malformed Whitehead move {text:?}"));
        let mv = if let Some(images) = text.strip_prefix("P:") {
            let letters = images.chars().map(Letter::from_char).collect::<Option<Vec<_>>>().ok_or_else(bad)?;
            WhiteheadAutomorphism::permutation(letters)?
        } else {
            let (m, acts) = text.split_once('/').ok_or_else(bad)?;
            let mut mc = m.chars();
            let multiplier = mc.next().and_then(Letter::from_char).ok_or_else(bad)?;
            if mc.next().is_some() {
                return Err(bad());
            }
            let actions = acts.chars().map(Action::from_symbol).collect::<Option<Vec<_>>>().ok_or_else(bad)?;
            WhiteheadAutomorphism::multiplier(multiplier, actions)?
        };
        if mv.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, found: mv.rank() });
        }
        Ok(mv)
    }
}

impl fmt::Display for WhiteheadAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteheadAutomorphism::Permutation(images) => {
                write!(f, "P:")?;
                images.iter().try_for_each(|l| write!(f, "{l}"))
            }
            WhiteheadAutomorphism::Multiplier { multiplier, actions } => {
                write!(f, "{multiplier}/")?;
                actions.iter().try_for_each(|a| write!(f, "{}", a.symbol()))
            }
        }
    }
}

/// Parses a comma or whitespace separated sequence of moves.
pub fn parse_moves(text: &str, rank: usize) -> Result<Vec<WhiteheadAutomorphism>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| WhiteheadAutomorphism::parse(s, rank))
        .collect()
}

/// The automorphism applying `moves` in order (the first move acts first).
pub fn composite(rank: usize, moves: &[WhiteheadAutomorphism]) -> Result<Endomorphism> {
    moves.iter().try_fold(Endomorphism::identity(rank), |acc, m| {
        if m.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, found: m.rank() });
        }
        m.to_endomorphism().compose(&acc)
    })
}

/// Inverse of [`composite`].
pub fn composite_inverse(rank: usize, moves: &[WhiteheadAutomorphism]) -> Result<Endomorphism> {
    let inverted: Vec<_> = moves.iter().rev().map(WhiteheadAutomorphism::inverse).collect();
    composite(rank, &inverted)
}

/// Type II moves in enumeration order: multipliers `a, A, b, B, …`, then
/// action vectors lexicographically (first generator most significant,
/// `Fix < Left < Right < Conjugate`), skipping the identity.
pub fn type_two_moves(rank: usize) -> impl Iterator<Item = WhiteheadAutomorphism> {
    (0..2 * rank).flat_map(move |mi| {
        let m = Letter::from_index(mi);
        let others = rank - 1;
        let total = 4usize.pow(others as u32);
        (1..total).map(move |code| {
            let mut actions = vec![Action::Fix; rank];
            let mut rest = code;
            for g in (0..rank).rev().filter(|&g| g != m.generator) {
                actions[g] = Action::ALL[rest % 4];
                rest /= 4;
            }
            WhiteheadAutomorphism::Multiplier { multiplier: m, actions }
        })
    })
}

/// Signed permutations in lexicographic order of permutation, then sign mask.
pub fn type_one_moves(rank: usize) -> Vec<WhiteheadAutomorphism> {
    let mut perms = Vec::new();
    let mut current: Vec<usize> = (0..rank).collect();
    permutations(&mut current, 0, &mut perms);
    perms.sort();
    let mut out = Vec::with_capacity(perms.len() << rank);
    for p in perms {
        for mask in 0..(1usize << rank) {
            let images = p.iter().enumerate().map(|(i, &g)| Letter::new(g, mask >> (rank - 1 - i) & 1 == 1)).collect();
            out.push(WhiteheadAutomorphism::Permutation(images));
        }
    }
    out
}

fn permutations(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permutations(current, k + 1, out);
        current.swap(k, i);
    }
}

/// All Whitehead automorphisms of the given rank: type II moves (in
/// [`type_two_moves`] order) followed by the signed permutations. The list
/// grows like `rank!·2^rank`, so this is for small ranks.
pub fn enumerate_whitehead(rank: usize) -> Vec<WhiteheadAutomorphism> {
    let mut all: Vec<_> = type_two_moves(rank).collect();
    all.extend(type_one_moves(rank));
    all
}

pub fn apply_move(m: &WhiteheadAutomorphism, tuple: &[Word]) -> Result<Vec<Word>> {
    tuple.iter().map(|w| m.apply(w)).collect()
}

pub fn total_length(tuple: &[Word]) -> usize {
    tuple.iter().map(Word::len).sum()
}

/// Result of [`minimize_tuple`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimized {
    pub tuple: Vec<Word>,
    pub total_length: usize,
    pub trace: Vec<WhiteheadAutomorphism>,
}

/// Greedy strict descent: while some type II move shortens the tuple, apply
/// the one with the largest decrease (ties go to the earliest move in
/// [`type_two_moves`] order).
pub fn minimize_tuple(tuple: &[Word]) -> Minimized {
    let rank = tuple.iter().map(Word::min_rank).max().unwrap_or(0);
    let mut current = tuple.to_vec();
    let mut trace = Vec::new();
    while let Some((delta, mv)) = steepest_move(&current, rank) {
        let next = apply_move(&mv, &current).expect("move built for this rank");
        debug_assert_eq!(total_length(&next) as i64, total_length(&current) as i64 + delta);
        current = next;
        trace.push(mv);
    }
    let total_length = total_length(&current);
    Minimized { tuple: current, total_length, trace }
}

fn steepest_move(tuple: &[Word], rank: usize) -> Option<(i64, WhiteheadAutomorphism)> {
    let mut best: Option<(i64, Letter, LengthEnergy)> = None;
    for mi in 0..2 * rank {
        let m = Letter::from_index(mi);
        let energy = LengthEnergy::new(tuple, rank, m);
        let delta = energy.minimum(&[]);
        if delta < 0 && best.as_ref().is_none_or(|(b, _, _)| delta < *b) {
            best = Some((delta, m, energy));
        }
    }
    let (delta, m, energy) = best?;
    // Fix actions generator by generator, taking the first action that
    // still attains the optimum.
    let mut forced: Vec<(usize, bool)> = Vec::new();
    let mut actions = vec![Action::Fix; rank];
    for g in (0..rank).filter(|&g| g != m.generator) {
        for action in Action::ALL {
            let (l, r) = action.bits();
            let mut trial = forced.clone();
            trial.push((energy.left_var(g), l));
            trial.push((energy.right_var(g), r));
            if energy.minimum(&trial) == delta {
                forced = trial;
                actions[g] = action;
                break;
            }
        }
    }
    Some((delta, WhiteheadAutomorphism::Multiplier { multiplier: m, actions }))
}

/// Length change of every type II move with a fixed multiplier, as a
/// pseudo-boolean function of the prefix bits `L_x` and suffix bits `R_x`.
struct LengthEnergy {
    multiplier: Letter,
    vars: usize,
    linear: Vec<i64>,
    pairwise: HashMap<(usize, usize), i64>,
}

impl LengthEnergy {
    fn new(tuple: &[Word], rank: usize, multiplier: Letter) -> Self {
        let mut e = LengthEnergy { multiplier, vars: 2 * rank, linear: vec![0; 2 * rank], pairwise: HashMap::new() };
        for w in tuple {
            e.add_word(w);
        }
        e
    }

    fn left_var(&self, g: usize) -> usize {
        2 * g
    }

    fn right_var(&self, g: usize) -> usize {
        2 * g + 1
    }

    /// Variable deciding whether `m` is prepended to the image of `y`.
    fn prefix_var(&self, y: Letter) -> usize {
        if y.inverse {
            self.right_var(y.generator)
        } else {
            self.left_var(y.generator)
        }
    }

    /// Variable deciding whether `m⁻¹` is appended to the image of `y`.
    fn suffix_var(&self, y: Letter) -> usize {
        if y.inverse {
            self.left_var(y.generator)
        } else {
            self.right_var(y.generator)
        }
    }

    fn add_word(&mut self, w: &Word) {
        let m = self.multiplier;
        let mut run = 0i64;
        let mut previous: Option<Letter> = None;
        for &l in w.letters() {
            if l == m {
                run += 1;
            } else if l == m.inv() {
                run -= 1;
            } else {
                self.add_junction(previous, Some(l), run);
                previous = Some(l);
                run = 0;
            }
        }
        if previous.is_some() {
            self.add_junction(previous, None, run);
        }
    }

    /// The run `m^k` between `left` and `right` becomes
    /// `m^(k − s(left) + p(right))`.
    fn add_junction(&mut self, left: Option<Letter>, right: Option<Letter>, k: i64) {
        let sign = k.signum();
        match (left, right) {
            (None, Some(r)) => {
                let p = self.prefix_var(r);
                self.linear[p] += if sign >= 0 { 1 } else { -1 };
            }
            (Some(l), None) => {
                let s = self.suffix_var(l);
                self.linear[s] += if sign <= 0 { 1 } else { -1 };
            }
            (Some(l), Some(r)) => {
                let (p, s) = (self.prefix_var(r), self.suffix_var(l));
                if sign == 0 {
                    if p != s {
                        *self.pairwise.entry((p.min(s), p.max(s))).or_insert(0) += 1;
                    }
                } else {
                    self.linear[p] += sign;
                    self.linear[s] -= sign;
                }
            }
            (None, None) => {}
        }
    }

    /// Minimum over all bit assignments honouring `forced`.
    fn minimum(&self, forced: &[(usize, bool)]) -> i64 {
        // Node layout: variables, then source, then sink. A variable on the
        // sink side is set to 1.
        let n = self.vars + 2;
        let (source, sink) = (self.vars, self.vars + 1);
        let mut cap = vec![vec![0i64; n]; n];
        let mut constant = 0;
        for (v, &c) in self.linear.iter().enumerate() {
            if c > 0 {
                cap[source][v] += c;
            } else if c < 0 {
                constant += c;
                cap[v][sink] -= c;
            }
        }
        for (&(a, b), &w) in &self.pairwise {
            cap[a][b] += w;
            cap[b][a] += w;
        }
        let infinite = 1 + self.linear.iter().map(|c| c.abs()).sum::<i64>() + 2 * self.pairwise.values().sum::<i64>();
        for &(v, one) in forced {
            if one {
                cap[v][sink] += infinite;
            } else {
                cap[source][v] += infinite;
            }
        }
        constant + max_flow(&mut cap, source, sink)
    }
}

fn max_flow(cap: &mut [Vec<i64>], source: usize, sink: usize) -> i64 {
    let n = cap.len();
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return flow;
        }
        let mut bottleneck = i64::MAX;
        let mut v = sink;
        while v != source {
            bottleneck = bottleneck.min(cap[parent[v]][v]);
            v = parent[v];
        }
        let mut v = sink;
        while v != source {
            let u = parent[v];
            cap[u][v] -= bottleneck;
            cap[v][u] += bottleneck;
            v = u;
        }
        flow += bottleneck;
    }
}

/// True when a minimized tuple consists of distinct single generators up
/// to inversion.
pub(crate) fn is_basis_shape(tuple: &[Word]) -> bool {
    let mut seen = std::collections::HashSet::new();
    tuple.iter().all(|w| w.len() == 1 && seen.insert(w.letters()[0].generator))
}

/// Whether `tuple` freely generates a free factor of the free group on
/// the letters it is written in.
pub fn generates_free_factor(tuple: &[Word]) -> bool {
    let min = minimize_tuple(tuple);
    min.total_length == tuple.len() && is_basis_shape(&min.tuple)
}

/// Basis of `L` rewritten over the spanning-tree basis of `K`.
pub fn rewrite_basis(l: &StallingsGraph, k: &StallingsGraph) -> Result<Vec<Word>> {
    if l.leq(k).is_none() {
        return Err(Error::NotSubgroup);
    }
    l.basis().iter().map(|b| k.express(b)).collect()
}

/// Decides `L ≤ff K` by rewriting a basis of `L` over the basis of `K` and
/// minimizing its total length with Whitehead moves.
pub fn is_free_factor(l: &StallingsGraph, k: &StallingsGraph) -> Result<bool> {
    let phi = l.leq(k).ok_or(Error::NotSubgroup)?;
    if phi.is_injective() {
        // The graph of L embeds in the graph of K.
        return Ok(true);
    }
    if l.rank() >= k.rank() {
        // A free factor of equal rank is the whole group.
        return Ok(l == k);
    }
    Ok(generates_free_factor(&rewrite_basis(l, k)?))
}

/// [`is_free_factor`] without the graph shortcuts: always minimizes.
pub fn is_free_factor_by_minimization(l: &StallingsGraph, k: &StallingsGraph) -> Result<bool> {
    Ok(generates_free_factor(&rewrite_basis(l, k)?))
}

/// Whether `⟨w⟩` is a free factor of `K`.
pub fn is_primitive(w: &Word, k: &StallingsGraph) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !k.contains(w) {
        return Err(Error::NotMember(w.to_string()));
    }
    let l = StallingsGraph::build(k.alphabet_rank(), std::slice::from_ref(w))?;
    is_free_factor(&l, k)
}
