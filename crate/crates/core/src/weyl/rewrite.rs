//! Letter-by-letter normal ordering by single adjacent swaps.
//!
//! Rules, for adjacent letters `x y` out of normal order:
//!
//! * `Q_k P_k → P_k Q_k + iℏ`
//! * any other out-of-order pair is swapped with no correction term.
//!
//! Each swap strictly lowers the inversion count of its word and contraction
//! terms are shorter, so rewriting terminates. The choice of redex is left
//! to a [`Strategy`]; confluence means every strategy reaches the same normal
//! form, which the test suite checks by fuzzing.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{NormalMonomial, WeylElement};
use crate::coeff::Coefficient;
use crate::free_algebra::{FreePoly, Generator, Kind, Word};

/// Which redex to rewrite next.
#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Uniformly random redex, seeded.
    Random(u64),
}

/// Position in normal order: `P₁ < Q₁ < P₂ < Q₂ < …`.
fn rank(g: Generator) -> usize {
    2 * (g.dof - 1) + usize::from(g.kind == Kind::Q)
}

/// Positions `n` such that letters `n, n+1` are out of normal order.
pub fn redexes(w: &Word) -> Vec<usize> {
    w.letters()
        .windows(2)
        .enumerate()
        .filter(|(_, pair)| rank(pair[0]) > rank(pair[1]))
        .map(|(n, _)| n)
        .collect()
}

/// Number of out-of-order letter pairs (not necessarily adjacent).
pub fn inversions(w: &Word) -> usize {
    let l = w.letters();
    (0..l.len())
        .map(|i| l[i + 1..].iter().filter(|b| rank(l[i]) > rank(**b)).count())
        .sum()
}

/// Rewrites the redex at `pos`, returning the resulting words with their
/// relative coefficients.
pub fn rewrite_at(w: &Word, pos: usize) -> Vec<(Word, Coefficient)> {
    let l = w.letters();
    let (x, y) = (l[pos], l[pos + 1]);
    debug_assert!(rank(x) > rank(y));
    let mut swapped = l.to_vec();
    swapped.swap(pos, pos + 1);
    let mut out = vec![(Word(swapped), Coefficient::one())];
    if x.kind == Kind::Q && y.kind == Kind::P && x.dof == y.dof {
        let mut contracted = l[..pos].to_vec();
        contracted.extend_from_slice(&l[pos + 2..]);
        out.push((Word(contracted), Coefficient::i_hbar()));
    }
    out
}

/// Normal form of `p` computed purely by rewriting.
pub fn normal_form_by_rewriting(p: &FreePoly, strategy: Strategy) -> WeylElement {
    let f = p.dof();
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pending: BTreeMap<Word, Coefficient> =
        p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut done: Vec<(NormalMonomial, Coefficient)> = Vec::new();
    while let Some((w, c)) = pending.pop_last() {
        let rs = redexes(&w);
        if rs.is_empty() {
            done.push((NormalMonomial::from_sorted_word(f, &w), c));
            continue;
        }
        let pos = match (&strategy, rng.as_mut()) {
            (Strategy::Leftmost, _) => rs[0],
            (Strategy::Rightmost, _) => rs[rs.len() - 1],
            (Strategy::Random(_), Some(r)) => rs[r.gen_range(0..rs.len())],
            (Strategy::Random(_), None) => unreachable!(),
        };
        for (w2, c2) in rewrite_at(&w, pos) {
            let c2 = &c * &c2;
            let slot = pending.entry(w2).or_default();
            *slot += &c2;
        }
        pending.retain(|_, c| !c.is_zero());
    }
    WeylElement::from_terms(f, done).expect("rewriting preserves dimension")
}
