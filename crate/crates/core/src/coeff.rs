//! Exact scalars.
//!
//! [`GaussRat`] is a complex number with rational real and imaginary parts.
//! [`Coefficient`] is a Laurent polynomial in the central symbol ℏ with
//! Gaussian-rational coefficients; it is the scalar ring of every polynomial
//! in this crate. Negative powers of ℏ are allowed so that dividing by `iℏ`
//! is always defined.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `re + i·im` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a real number. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        })
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of absolute values of both parts; a cheap exact size measure.
    pub fn l1(&self) -> BigRational {
        self.re.abs() + self.im.abs()
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {}*i", self.re, -self.im.clone())
                } else {
                    write!(f, "{} + {}*i", self.re, self.im)
                }
            }
        }
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -self.clone()
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

/// A Laurent polynomial in ℏ: `Σ_k c_k ℏ^k` with `c_k` Gaussian rational.
///
/// Stored sparsely; a zero `c_k` is never kept, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    terms: BTreeMap<i32, GaussRat>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(0, c)
    }

    /// `c·ℏ^hbar_exp`.
    pub fn monomial(hbar_exp: i32, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(hbar_exp, c);
        }
        Coefficient { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRat::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussRat::ratio(num, den))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::constant(GaussRat::real(BigRational::from_integer(n)))
    }

    pub fn i() -> Self {
        Self::constant(GaussRat::i())
    }

    pub fn hbar() -> Self {
        Self::monomial(1, GaussRat::one())
    }

    pub fn i_hbar() -> Self {
        Self::monomial(1, GaussRat::i())
    }

    /// `i/ℏ`, the prefactor of the Heisenberg equation.
    pub fn i_over_hbar() -> Self {
        Self::monomial(-1, GaussRat::i())
    }

    /// `(iℏ)^r`.
    pub fn i_hbar_pow(r: u32) -> Self {
        Self::monomial(r as i32, GaussRat::i_pow(r as i64))
    }

    /// Builds from `(ℏ-exponent, value)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i32, GaussRat)>>(iter: I) -> Self {
        let mut out = Coefficient::zero();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: i32, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(GaussRat::is_one)
    }

    /// Iterates `(ℏ-exponent, value)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussRat)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Lowest ℏ-exponent present; `None` for zero.
    pub fn min_hbar_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_hbar_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The ℏ-free part, if the coefficient is a plain Gaussian rational.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        Coefficient::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    /// Multiplies by `ℏ^k`.
    pub fn shift_hbar(&self, k: i32) -> Self {
        Coefficient {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Substitutes a number for ℏ. Fails when ℏ = 0 meets a negative power.
    pub fn eval(&self, hbar: &GaussRat) -> Option<GaussRat> {
        let mut acc = GaussRat::zero();
        let inv = hbar.inv();
        for (k, c) in &self.terms {
            let factor = if *k >= 0 {
                hbar.pow(*k as u32)
            } else {
                inv.as_ref()?.pow(k.unsigned_abs())
            };
            acc += &(c * &factor);
        }
        Some(acc)
    }
}

impl From<GaussRat> for Coefficient {
    fn from(c: GaussRat) -> Self {
        Coefficient::constant(c)
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, &-c);
        }
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        for (ka, a) in &self.terms {
            for (kb, b) in &rhs.terms {
                out.add_term(ka + kb, &(a * b));
            }
        }
        out
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}
