//! The free associative algebra ℂ⟨Q₁..Q_f, P₁..P_f⟩ over ℏ-Laurent
//! coefficients, with the noncommutative occurrence-replacement calculus.
//!
//! A [`FreePoly`] is a finite sum of coefficient-weighted [`Word`]s. No
//! commutation is ever applied here; `QP` and `PQ` are distinct monomials.
//! Quotienting by the canonical commutation relations happens in
//! [`crate::weyl`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Coefficient;
use crate::error::{check_arity, check_dim, Error, Result};

/// Position or momentum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Q,
    P,
}

/// One of the canonical symbols `Q_k` / `P_k`; `dof` is 1-based.
///
/// The derived order is `Q₁ < … < Q_f < P₁ < … < P_f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: Kind,
    pub dof: usize,
}

impl Generator {
    pub const fn q(dof: usize) -> Self {
        Generator { kind: Kind::Q, dof }
    }

    pub const fn p(dof: usize) -> Self {
        Generator { kind: Kind::P, dof }
    }

    /// Index into a `2f` direction vector `(Q₁..Q_f, P₁..P_f)`.
    pub fn slot(self, f: usize) -> usize {
        match self.kind {
            Kind::Q => self.dof - 1,
            Kind::P => f + self.dof - 1,
        }
    }

    pub fn from_slot(f: usize, slot: usize) -> Self {
        if slot < f {
            Generator::q(slot + 1)
        } else {
            Generator::p(slot - f + 1)
        }
    }

    /// All `2f` generators in slot order.
    pub fn all(f: usize) -> impl Iterator<Item = Generator> {
        (0..2 * f).map(move |s| Generator::from_slot(f, s))
    }

    pub fn check(self, f: usize) -> Result<Self> {
        if self.dof >= 1 && self.dof <= f {
            Ok(self)
        } else {
            Err(Error::IndexOutOfRange {
                index: self.dof,
                dof: f,
            })
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            Kind::Q => 'Q',
            Kind::P => 'P',
        };
        write!(f, "{}{}", c, self.dof)
    }
}

/// A monomial: a finite product of generators. The empty word is `1`.
///
/// Ordered graded-lexicographically: by length, then letter by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_dof(&self) -> usize {
        self.0.iter().map(|g| g.dof).max().unwrap_or(0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// An element of the free algebra in `f` degrees of freedom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreePoly {
    f: usize,
    terms: BTreeMap<Word, Coefficient>,
}

impl FreePoly {
    pub fn zero(f: usize) -> Self {
        FreePoly {
            f,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(f: usize) -> Self {
        Self::constant(f, Coefficient::one())
    }

    pub fn constant(f: usize, c: Coefficient) -> Self {
        Self::monomial(f, Word::unit(), c)
    }

    /// A single generator. Panics if its index exceeds `f`.
    pub fn generator(f: usize, g: Generator) -> Self {
        let g = g.check(f).expect("generator out of range");
        Self::monomial(f, Word(vec![g]), Coefficient::one())
    }

    pub fn q(f: usize, dof: usize) -> Self {
        Self::generator(f, Generator::q(dof))
    }

    pub fn p(f: usize, dof: usize) -> Self {
        Self::generator(f, Generator::p(dof))
    }

    pub fn monomial(f: usize, w: Word, c: Coefficient) -> Self {
        assert!(w.max_dof() <= f, "word uses a generator beyond f = {f}");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreePoly { f, terms }
    }

    /// Builds from `(word, coefficient)` pairs, merging repeated words.
    pub fn from_terms<I: IntoIterator<Item = (Word, Coefficient)>>(
        f: usize,
        iter: I,
    ) -> Result<Self> {
        let mut out = FreePoly::zero(f);
        for (w, c) in iter {
            for g in w.letters() {
                g.check(f)?;
            }
            out.add_term(w, &c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn dof(&self) -> usize {
        self.f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Coefficient)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Coefficient {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Maximal word length; `0` for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    /// Re-embeds into a system with `f' ≥` every index used.
    pub fn with_dof(&self, f: usize) -> Result<Self> {
        FreePoly::from_terms(f, self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
    }

    pub fn checked_add(&self, other: &FreePoly) -> Result<Self> {
        check_dim(self.f, other.f)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &FreePoly) -> Result<Self> {
        check_dim(self.f, other.f)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        Ok(out)
    }

    /// Word concatenation with coefficient convolution.
    pub fn checked_mul(&self, other: &FreePoly) -> Result<Self> {
        check_dim(self.f, other.f)?;
        let mut out = FreePoly::zero(self.f);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = FreePoly::zero(self.f);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), &(a * c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(FreePoly::one(self.f), |acc, _| &acc * self)
    }

    /// `ab − ba` in the free algebra.
    pub fn commutator(&self, other: &FreePoly) -> Result<Self> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    /// `∂p/∂g [v]`: every occurrence of `g` is replaced by `v` in turn and
    /// the results summed.
    pub fn partial(&self, g: Generator, v: &FreePoly) -> Result<Self> {
        check_dim(self.f, v.f)?;
        g.check(self.f)?;
        let mut out = FreePoly::zero(self.f);
        for (w, c) in &self.terms {
            for (n, letter) in w.letters().iter().enumerate() {
                if *letter == g {
                    replace_positions(w, c, &[(n, v)], &mut out);
                }
            }
        }
        Ok(out)
    }

    /// `p'[V] = Σ_l ∂p/∂X_l [V_l]` with `dirs` in slot order `(Q₁..Q_f, P₁..P_f)`.
    pub fn derivative(&self, dirs: &[FreePoly]) -> Result<Self> {
        self.check_dirs(dirs)?;
        let mut out = FreePoly::zero(self.f);
        for (w, c) in &self.terms {
            for (n, letter) in w.letters().iter().enumerate() {
                let v = &dirs[letter.slot(self.f)];
                if !v.is_zero() {
                    replace_positions(w, c, &[(n, v)], &mut out);
                }
            }
        }
        Ok(out)
    }

    /// `p''[V, W]`: the derivative of `p'[V]` in direction `W` with the
    /// entries of `V` held fixed. Occurrence pairs `(i, j)`, `i ≠ j`, are
    /// replaced by `V` at `i` and `W` at `j`.
    pub fn second_derivative(&self, v: &[FreePoly], w: &[FreePoly]) -> Result<Self> {
        self.check_dirs(v)?;
        self.check_dirs(w)?;
        let mut out = FreePoly::zero(self.f);
        for (word, c) in &self.terms {
            let letters = word.letters();
            for i in 0..letters.len() {
                let vi = &v[letters[i].slot(self.f)];
                if vi.is_zero() {
                    continue;
                }
                for j in 0..letters.len() {
                    if i == j {
                        continue;
                    }
                    let wj = &w[letters[j].slot(self.f)];
                    if wj.is_zero() {
                        continue;
                    }
                    let mut reps = [(i, vi), (j, wj)];
                    reps.sort_by_key(|r| r.0);
                    replace_positions(word, c, &reps, &mut out);
                }
            }
        }
        Ok(out)
    }

    /// Substitutes `subs[slot]` for every generator. All substitutes must
    /// share one dimension, which becomes the result's.
    pub fn compose(&self, subs: &[FreePoly]) -> Result<Self> {
        check_arity(2 * self.f, subs.len())?;
        let target = subs.first().map_or(self.f, |s| s.f);
        for s in subs {
            check_dim(target, s.f)?;
        }
        let mut out = FreePoly::zero(target);
        for (w, c) in &self.terms {
            let mut acc = FreePoly::constant(target, c.clone());
            for g in w.letters() {
                acc = acc.checked_mul(&subs[g.slot(self.f)])?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }

    fn check_dirs(&self, dirs: &[FreePoly]) -> Result<()> {
        check_arity(2 * self.f, dirs.len())?;
        for d in dirs {
            check_dim(self.f, d.f)?;
        }
        Ok(())
    }
}

/// Adds `c · w` to `out` with each listed position of `w` replaced by the
/// given polynomial. `reps` must be sorted by position.
fn replace_positions(w: &Word, c: &Coefficient, reps: &[(usize, &FreePoly)], out: &mut FreePoly) {
    let letters = w.letters();
    // Partial products: (word so far, coefficient so far).
    let mut partial: Vec<(Vec<Generator>, Coefficient)> = vec![(Vec::new(), c.clone())];
    let mut start = 0;
    for &(pos, poly) in reps {
        let mut next = Vec::with_capacity(partial.len() * poly.len());
        for (prefix, pc) in &partial {
            for (vw, vc) in &poly.terms {
                let mut word = prefix.clone();
                word.extend_from_slice(&letters[start..pos]);
                word.extend_from_slice(vw.letters());
                next.push((word, pc * vc));
            }
        }
        partial = next;
        start = pos + 1;
    }
    for (mut word, pc) in partial {
        word.extend_from_slice(&letters[start..]);
        out.add_term(Word(word), &pc);
    }
}

impl<'a> Add<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    fn add(self, rhs: &FreePoly) -> FreePoly {
        self.checked_add(rhs).expect("FreePoly + FreePoly")
    }
}

impl<'a> Sub<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    fn sub(self, rhs: &FreePoly) -> FreePoly {
        self.checked_sub(rhs).expect("FreePoly - FreePoly")
    }
}

impl<'a> Mul<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    fn mul(self, rhs: &FreePoly) -> FreePoly {
        self.checked_mul(rhs).expect("FreePoly * FreePoly")
    }
}

impl Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        self.scale(&Coefficient::from_int(-1))
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_free(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FreePoly {
        FreePoly::q(1, 1)
    }
    fn p() -> FreePoly {
        FreePoly::p(1, 1)
    }
    fn word(gs: &[Generator]) -> FreePoly {
        FreePoly::monomial(1, Word(gs.to_vec()), Coefficient::one())
    }
    const Q: Generator = Generator::q(1);
    const P: Generator = Generator::p(1);

    #[test]
    fn mul_concatenates_without_commuting() {
        let qp = &q() * &p();
        assert_eq!(qp, word(&[Q, P]));
        assert_ne!(qp, &p() * &q());
        assert!((&qp + &-&qp).is_zero());
    }

    #[test]
    fn commutator_square_expands_by_hand() {
        let c = q().commutator(&p()).unwrap();
        let sq = &c * &c;
        let expected = &(&word(&[Q, P, Q, P]) - &word(&[Q, P, P, Q]))
            - &(&word(&[P, Q, Q, P]) - &word(&[P, Q, P, Q]));
        assert_eq!(sq, expected);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = FreePoly::q(1, 1);
        let b = FreePoly::q(2, 2);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            a.derivative(&[FreePoly::one(1)]),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn partial_of_qpq() {
        let v = FreePoly::constant(1, Coefficient::from_int(7));
        let qpq = word(&[Q, P, Q]);
        // V·P·Q + Q·P·V with V = 7
        let got = qpq.partial(Q, &v).unwrap();
        assert_eq!(
            got,
            &word(&[P, Q]).scale(&Coefficient::from_int(7))
                + &word(&[Q, P]).scale(&Coefficient::from_int(7))
        );
        // with a symbolic-looking direction V = P
        let got = qpq.partial(Q, &p()).unwrap();
        assert_eq!(got, &word(&[P, P, Q]) + &word(&[Q, P, P]));
    }

    #[test]
    fn partial_of_commutator_in_q_direction() {
        let h1 = q().commutator(&p()).unwrap();
        assert_eq!(h1.partial(Q, &q()).unwrap(), h1);
    }

    #[test]
    fn partial_pm_qn_along_unit() {
        for m in 0..5u32 {
            for n in 0..4u32 {
                let a = &p().pow(m) * &q().pow(n);
                let expected = if m == 0 {
                    FreePoly::zero(1)
                } else {
                    (&p().pow(m - 1) * &q().pow(n)).scale(&Coefficient::from_int(m as i64))
                };
                assert_eq!(
                    a.partial(P, &FreePoly::one(1)).unwrap(),
                    expected,
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let p2 = p().pow(2);
        let d = p2
            .derivative(&[FreePoly::zero(1), FreePoly::one(1)])
            .unwrap();
        assert_eq!(d, p().scale(&Coefficient::from_int(2)));

        let pqp = word(&[P, Q, P]);
        let m2q = q().scale(&Coefficient::from_int(-2));
        let d = pqp.derivative(&[FreePoly::zero(1), m2q]).unwrap();
        let expected = (&word(&[Q, Q, P]) + &word(&[P, Q, Q])).scale(&Coefficient::from_int(-2));
        assert_eq!(d, expected);

        let c = FreePoly::constant(1, Coefficient::i_hbar());
        assert!(c.derivative(&[q(), p()]).unwrap().is_zero());
    }

    #[test]
    fn second_derivative_of_qp() {
        let qp = word(&[Q, P]);
        let v = [q(), p()];
        let w = [p(), q()];
        let vw = qp.second_derivative(&v, &w).unwrap();
        let wv = qp.second_derivative(&w, &v).unwrap();
        assert_eq!(vw, &p().pow(2) + &q().pow(2));
        assert_eq!(vw, wv);
        assert!(q().second_derivative(&v, &w).unwrap().is_zero());
    }

    #[test]
    fn compose_substitutes() {
        let x2 = q().pow(2);
        let qp = &q() * &p();
        assert_eq!(x2.compose(&[qp.clone(), p()]).unwrap(), &qp * &qp);
        assert_eq!(q().compose(&[qp.clone(), p()]).unwrap(), qp);
    }

    #[test]
    fn chain_rule_instance() {
        // (p'[q])'[V] = p''[q, V] + p'[q'[V]] for p = X², q = (QP, 0)
        let x2 = q().pow(2);
        let qp = &q() * &p();
        let inner = [qp.clone(), FreePoly::zero(1)];
        let v = [&p() + &FreePoly::one(1), q().scale(&Coefficient::i())];
        let lhs = x2.derivative(&inner).unwrap().derivative(&v).unwrap();
        let inner_dv: Vec<_> = inner.iter().map(|c| c.derivative(&v).unwrap()).collect();
        let rhs = &x2.second_derivative(&inner, &v).unwrap() + &x2.derivative(&inner_dv).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn word_order_is_graded_lex() {
        let mut ws = vec![Word(vec![P]), Word(vec![Q, Q]), Word::unit(), Word(vec![Q])];
        ws.sort();
        assert_eq!(
            ws,
            vec![Word::unit(), Word(vec![Q]), Word(vec![P]), Word(vec![Q, Q])]
        );
        assert!(Generator::q(2) < Generator::p(1));
    }

    #[test]
    fn zero_dof_is_constants_only() {
        let c = FreePoly::constant(0, Coefficient::from_int(3));
        assert_eq!(&c * &c, FreePoly::constant(0, Coefficient::from_int(9)));
        assert!(c.derivative(&[]).unwrap().is_zero());
    }
}
