//! The Weyl algebra ℂ⟨Q,P⟩/𝒥 in normal-ordered form.
//!
//! Every class has a unique representative in which, per degree of freedom
//! `k` (ascending), all `P_k` stand left of all `Q_k`. Products of normal
//! monomials are computed with the closed reordering formula
//!
//! ```text
//! Qⁿ Pᵐ = Σ_{r=0}^{min(n,m)} C(m,r) C(n,r) r! (iℏ)^r P^{m−r} Q^{n−r}
//! ```
//!
//! applied independently per degree of freedom (different indices commute).
//! The single-swap rewriter in [`rewrite`] computes the same normal form
//! letter by letter and serves as its oracle.

pub mod ideal;
pub mod rewrite;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::coeff::Coefficient;
use crate::error::{check_dim, Result};
use crate::free_algebra::{FreePoly, Generator, Kind, Word};

pub use ideal::{ideal_generators, ideal_sample};

/// `∏_k P_k^{p_exp[k]} Q_k^{q_exp[k]}` with `k` ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalMonomial {
    pub p_exp: Vec<u32>,
    pub q_exp: Vec<u32>,
}

impl NormalMonomial {
    pub fn unit(f: usize) -> Self {
        NormalMonomial {
            p_exp: vec![0; f],
            q_exp: vec![0; f],
        }
    }

    pub fn new(p_exp: Vec<u32>, q_exp: Vec<u32>) -> Self {
        assert_eq!(
            p_exp.len(),
            q_exp.len(),
            "exponent vectors differ in length"
        );
        NormalMonomial { p_exp, q_exp }
    }

    /// `g^n` as a normal monomial.
    pub fn power(f: usize, g: Generator, n: u32) -> Self {
        let mut m = Self::unit(f);
        match g.kind {
            Kind::Q => m.q_exp[g.dof - 1] = n,
            Kind::P => m.p_exp[g.dof - 1] = n,
        }
        m
    }

    pub fn dof(&self) -> usize {
        self.p_exp.len()
    }

    pub fn degree(&self) -> u32 {
        self.p_exp.iter().sum::<u32>() + self.q_exp.iter().sum::<u32>()
    }

    pub fn is_unit(&self) -> bool {
        self.degree() == 0
    }

    /// Letters of the normal-ordered word, left to right.
    pub fn letters(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.dof()).flat_map(move |k| {
            let p = std::iter::repeat(Generator::p(k + 1)).take(self.p_exp[k] as usize);
            let q = std::iter::repeat(Generator::q(k + 1)).take(self.q_exp[k] as usize);
            p.chain(q)
        })
    }

    pub fn to_word(&self) -> Word {
        self.letters().collect()
    }

    /// Reads off exponents from a word that is already normal-ordered.
    pub fn from_sorted_word(f: usize, w: &Word) -> Self {
        debug_assert!(rewrite::redexes(w).is_empty(), "word is not normal-ordered");
        let mut m = Self::unit(f);
        for g in w.letters() {
            match g.kind {
                Kind::Q => m.q_exp[g.dof - 1] += 1,
                Kind::P => m.p_exp[g.dof - 1] += 1,
            }
        }
        m
    }
}

impl Ord for NormalMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.letters().cmp(other.letters()))
            .then_with(|| self.dof().cmp(&other.dof()))
    }
}

impl PartialOrd for NormalMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `C(b,r)·C(c,r)·r!`, the number of ways to contract `r` pairs when
/// reordering `Q^b P^c`.
fn contraction_weight(b: u32, c: u32, r: u32) -> BigInt {
    let mut w = binomial(b, r) * binomial(c, r);
    for k in 2..=r {
        w *= k;
    }
    w
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `a·b` for normal monomials: `(monomial, integer weight, total contractions r)`.
/// The product equals `Σ weight · (iℏ)^r · monomial`.
fn mul_monomials(a: &NormalMonomial, b: &NormalMonomial) -> Vec<(NormalMonomial, BigInt, u32)> {
    let f = a.dof();
    let mut acc = vec![(NormalMonomial::unit(f), BigInt::one(), 0u32)];
    for k in 0..f {
        let qa = a.q_exp[k];
        let pb = b.p_exp[k];
        let mut next = Vec::with_capacity(acc.len() * (qa.min(pb) as usize + 1));
        for (m, w, r_tot) in &acc {
            for r in 0..=qa.min(pb) {
                let mut m2 = m.clone();
                m2.p_exp[k] = a.p_exp[k] + pb - r;
                m2.q_exp[k] = qa + b.q_exp[k] - r;
                next.push((m2, w * contraction_weight(qa, pb, r), r_tot + r));
            }
        }
        acc = next;
    }
    acc
}

/// An element of the Weyl algebra in `f` degrees of freedom, stored as its
/// unique normal-ordered expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    f: usize,
    terms: BTreeMap<NormalMonomial, Coefficient>,
}

impl WeylElement {
    pub fn zero(f: usize) -> Self {
        WeylElement {
            f,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(f: usize) -> Self {
        Self::constant(f, Coefficient::one())
    }

    pub fn constant(f: usize, c: Coefficient) -> Self {
        Self::monomial(NormalMonomial::unit(f), c)
    }

    pub fn monomial(m: NormalMonomial, c: Coefficient) -> Self {
        let mut out = WeylElement::zero(m.dof());
        out.add_term(m, &c);
        out
    }

    /// A single generator. Panics if its index exceeds `f`.
    pub fn generator(f: usize, g: Generator) -> Self {
        let g = g.check(f).expect("generator out of range");
        Self::monomial(NormalMonomial::power(f, g, 1), Coefficient::one())
    }

    pub fn q(f: usize, dof: usize) -> Self {
        Self::generator(f, Generator::q(dof))
    }

    pub fn p(f: usize, dof: usize) -> Self {
        Self::generator(f, Generator::p(dof))
    }

    /// Builds from `(monomial, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (NormalMonomial, Coefficient)>>(
        f: usize,
        iter: I,
    ) -> Result<Self> {
        let mut out = WeylElement::zero(f);
        for (m, c) in iter {
            check_dim(f, m.dof())?;
            out.add_term(m, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: NormalMonomial, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
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

    /// Terms in ascending graded-lex order of their normal-ordered words.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&NormalMonomial, &Coefficient)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &NormalMonomial) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree of the normal form; `0` for zero.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(NormalMonomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// The normal-ordered representative in the free algebra.
    pub fn lift(&self) -> FreePoly {
        let mut out = FreePoly::zero(self.f);
        for (m, c) in &self.terms {
            out.add_term(m.to_word(), c);
        }
        out
    }

    pub fn checked_add(&self, other: &WeylElement) -> Result<Self> {
        check_dim(self.f, other.f)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &WeylElement) -> Result<Self> {
        check_dim(self.f, other.f)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &WeylElement) -> Result<Self> {
        check_dim(self.f, other.f)?;
        let mut out = WeylElement::zero(self.f);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let cab = ca * cb;
                for (m, w, r) in mul_monomials(ma, mb) {
                    let c = &(&cab * &Coefficient::from_bigint(w)) * &Coefficient::i_hbar_pow(r);
                    out.add_term(m, &c);
                }
            }
        }
        Ok(out)
    }

    /// `ab − ba`.
    pub fn commutator(&self, other: &WeylElement) -> Result<Self> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = WeylElement::zero(self.f);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &(a * c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(WeylElement::one(self.f), |acc, _| &acc * self)
    }

    /// True iff every coefficient has lowest ℏ-exponent `≥ min_degree`,
    /// i.e. the element is divisible by `ℏ^min_degree` within ℏ-polynomials.
    pub fn hbar_check(&self, min_degree: i32) -> bool {
        self.terms
            .values()
            .all(|c| c.min_hbar_exp().is_none_or(|e| e >= min_degree))
    }

    /// Sets ℏ = 0 in every coefficient. `None` if some coefficient has a
    /// negative ℏ power.
    pub fn at_hbar_zero(&self) -> Option<Self> {
        let zero = crate::coeff::GaussRat::zero();
        let mut out = WeylElement::zero(self.f);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &Coefficient::constant(c.eval(&zero)?));
        }
        Some(out)
    }
}

/// The normal-ordered representative of `p` modulo the commutation ideal.
pub fn normal_form(p: &FreePoly) -> WeylElement {
    let f = p.dof();
    let mut out = WeylElement::zero(f);
    for (w, c) in p.terms() {
        let mut acc = WeylElement::constant(f, c.clone());
        for run in w.letters().chunk_by(|a, b| a == b) {
            let block = NormalMonomial::power(f, run[0], run.len() as u32);
            acc = acc.mul_monomial_right(&block);
        }
        for (m, c) in acc.terms {
            out.add_term(m, &c);
        }
    }
    out
}

impl WeylElement {
    fn mul_monomial_right(&self, b: &NormalMonomial) -> Self {
        let mut out = WeylElement::zero(self.f);
        for (ma, ca) in &self.terms {
            for (m, w, r) in mul_monomials(ma, b) {
                let c = &(ca * &Coefficient::from_bigint(w)) * &Coefficient::i_hbar_pow(r);
                out.add_term(m, &c);
            }
        }
        out
    }
}

/// `Qⁿ Pᵐ − Pᵐ Qⁿ` for one degree of freedom, summed directly from
/// binomials without any rewriting.
pub fn closed_commutator(n: u32, m: u32) -> WeylElement {
    let mut out = WeylElement::zero(1);
    for r in 1..=n.min(m) {
        let mono = NormalMonomial::new(vec![m - r], vec![n - r]);
        let c =
            &Coefficient::from_bigint(contraction_weight(n, m, r)) * &Coefficient::i_hbar_pow(r);
        out.add_term(mono, &c);
    }
    out
}

/// `commutator(a, b)` as a free function.
pub fn commutator(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    a.commutator(b)
}

/// See [`WeylElement::hbar_check`].
pub fn hbar_check(x: &WeylElement, min_degree: i32) -> bool {
    x.hbar_check(min_degree)
}

impl From<&FreePoly> for WeylElement {
    fn from(p: &FreePoly) -> Self {
        normal_form(p)
    }
}

impl<'a> Add<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        self.checked_add(rhs).expect("WeylElement + WeylElement")
    }
}

impl<'a> Sub<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self.checked_sub(rhs).expect("WeylElement - WeylElement")
    }
}

impl<'a> Mul<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.checked_mul(rhs).expect("WeylElement * WeylElement")
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&Coefficient::from_int(-1))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_weyl(self))
    }
}
