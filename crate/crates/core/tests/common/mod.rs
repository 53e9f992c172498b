//! Independent oracles used by the integration tests.
//!
//! Nothing here calls the library's normal-ordering code: the rewriting
//! oracle below works directly on `(word, coefficient)` lists.

#![allow(dead_code)]

use std::collections::BTreeMap;

use weylalg::{Coefficient, FreePoly, Generator, Kind, NormalMonomial, WeylElement, Word};

/// Position in normal order: `P_1 < Q_1 < P_2 < Q_2 < …`.
fn rank(g: Generator) -> usize {
    2 * (g.dof - 1) + usize::from(g.kind == Kind::Q)
}

/// Normal ordering by repeatedly fixing the first out-of-order adjacent
/// pair: `Q_k P_k → P_k Q_k + iℏ`, every other pair simply swaps.
pub fn oracle_normal_form(p: &FreePoly) -> WeylElement {
    let f = p.dof();
    let mut work: BTreeMap<Vec<Generator>, Coefficient> = BTreeMap::new();
    for (w, c) in p.terms() {
        *work.entry(w.letters().to_vec()).or_default() += c;
    }
    let mut done: BTreeMap<Vec<Generator>, Coefficient> = BTreeMap::new();
    // pending terms are merged by word, so equal words are rewritten once
    while let Some((w, c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        match (0..w.len().saturating_sub(1)).find(|&i| rank(w[i]) > rank(w[i + 1])) {
            None => *done.entry(w).or_default() += &c,
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                *work.entry(swapped).or_default() += &c;
                if a.kind == Kind::Q && b.kind == Kind::P && a.dof == b.dof {
                    let mut shorter = w[..i].to_vec();
                    shorter.extend_from_slice(&w[i + 2..]);
                    *work.entry(shorter).or_default() += &(&c * &Coefficient::i_hbar());
                }
            }
        }
    }
    let terms = done.into_iter().map(|(w, c)| {
        let mut m = NormalMonomial::unit(f);
        for g in w {
            match g.kind {
                Kind::Q => m.q_exp[g.dof - 1] += 1,
                Kind::P => m.p_exp[g.dof - 1] += 1,
            }
        }
        (m, c)
    });
    WeylElement::from_terms(f, terms).unwrap()
}

/// `p'(q)[W]`: each occurrence of `X_l` in `p` becomes `W_l`, every other
/// letter `X_j` becomes `q_j`.
pub fn derivative_at(p: &FreePoly, q: &[FreePoly], w: &[FreePoly]) -> FreePoly {
    let f = q[0].dof();
    let mut out = FreePoly::zero(f);
    for (word, c) in p.terms() {
        let letters = word.letters();
        for n in 0..letters.len() {
            let mut acc = FreePoly::constant(f, c.clone());
            for (i, g) in letters.iter().enumerate() {
                let slot = g.slot(p.dof());
                acc = &acc * if i == n { &w[slot] } else { &q[slot] };
            }
            out = &out + &acc;
        }
    }
    out
}

pub fn word(gs: &[Generator]) -> FreePoly {
    let f = gs.iter().map(|g| g.dof).max().unwrap_or(1);
    FreePoly::monomial(f, Word(gs.to_vec()), Coefficient::one())
}

pub fn int(n: i64) -> Coefficient {
    Coefficient::from_int(n)
}

pub fn q() -> WeylElement {
    WeylElement::q(1, 1)
}

pub fn p() -> WeylElement {
    WeylElement::p(1, 1)
}

pub fn fq() -> FreePoly {
    FreePoly::q(1, 1)
}

pub fn fp() -> FreePoly {
    FreePoly::p(1, 1)
}
