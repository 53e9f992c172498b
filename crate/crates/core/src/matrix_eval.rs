//! Evaluation of free polynomials on exact Gaussian-rational matrices.
//!
//! Used for polynomial identity testing: two distinct free polynomials of
//! degree `≤ d` are separated by symmetric matrices of size `⌊d/2⌋ + 1`.
//! ℏ is a central symbol, so it is substituted by a number before
//! evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::coeff::{Coefficient, GaussRat};
use crate::error::{Error, Result};
use crate::free_algebra::{FreePoly, Generator, Word};
use crate::random::Sampler;

/// A square matrix with Gaussian-rational entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<GaussRat>,
    symmetric: bool,
}

impl ExactMatrix {
    pub fn new(n: usize, entries: Vec<GaussRat>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::MatrixDim {
                expected: n * n,
                found: entries.len(),
            });
        }
        let mut m = ExactMatrix {
            n,
            entries,
            symmetric: false,
        };
        m.symmetric = m.compute_symmetric();
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::MatrixDim {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| GaussRat::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn zero(n: usize) -> Self {
        ExactMatrix {
            n,
            entries: vec![GaussRat::zero(); n * n],
            symmetric: true,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, GaussRat::one())
    }

    pub fn scalar(n: usize, c: GaussRat) -> Self {
        let mut m = Self::zero(n);
        for k in 0..n {
            m.entries[k * n + k] = c.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussRat {
        &self.entries[r * self.n + c]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GaussRat]> + '_ {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    /// Whether `A = Aᵀ`, recorded at construction.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    fn compute_symmetric(&self) -> bool {
        (0..self.n).all(|r| (r + 1..self.n).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussRat::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        ExactMatrix {
            n,
            entries,
            symmetric: self.symmetric,
        }
    }

    /// `(A + Aᵀ) / 2`.
    pub fn symmetrize(&self) -> Self {
        let half = GaussRat::ratio(1, 2);
        (self + &self.transpose()).scale(&half)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let entries = self.entries.iter().map(|x| x * c).collect();
        ExactMatrix {
            n: self.n,
            entries,
            symmetric: self.symmetric,
        }
    }

    /// Sum of `|re| + |im|` over all entries.
    pub fn l1_norm(&self) -> BigRational {
        self.entries
            .iter()
            .map(GaussRat::l1)
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.n, entries)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.n, entries)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.n;
        let mut entries = vec![GaussRat::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        entries[r * n + c] += &(a * b);
                    }
                }
            }
        }
        Self::new(n, entries)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::MatrixDim {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_add(rhs).expect("matrix dimensions agree")
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_sub(rhs).expect("matrix dimensions agree")
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Matrices substituted for generators, plus a numeric value for ℏ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    dim: usize,
    matrices: BTreeMap<Generator, ExactMatrix>,
    hbar: GaussRat,
}

impl Assignment {
    /// Empty assignment with `ℏ = 1`.
    pub fn new(dim: usize) -> Self {
        Assignment {
            dim,
            matrices: BTreeMap::new(),
            hbar: GaussRat::one(),
        }
    }

    pub fn with_hbar(mut self, hbar: GaussRat) -> Self {
        self.hbar = hbar;
        self
    }

    pub fn set(&mut self, g: Generator, m: ExactMatrix) -> Result<()> {
        if m.dim() != self.dim {
            return Err(Error::MatrixDim {
                expected: self.dim,
                found: m.dim(),
            });
        }
        self.matrices.insert(g, m);
        Ok(())
    }

    pub fn with(mut self, g: Generator, m: ExactMatrix) -> Result<Self> {
        self.set(g, m)?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hbar(&self) -> &GaussRat {
        &self.hbar
    }

    pub fn get(&self, g: Generator) -> Option<&ExactMatrix> {
        self.matrices.get(&g)
    }

    pub fn matrices(&self) -> impl Iterator<Item = (&Generator, &ExactMatrix)> + '_ {
        self.matrices.iter()
    }

    fn require(&self, g: Generator) -> Result<&ExactMatrix> {
        self.get(g)
            .ok_or_else(|| Error::MissingGenerator(g.to_string()))
    }
}

pub fn eval_coefficient(c: &Coefficient, hbar: &GaussRat) -> Result<GaussRat> {
    c.eval(hbar).ok_or(Error::HbarPole)
}

fn eval_word(w: &Word, a: &Assignment) -> Result<ExactMatrix> {
    let mut acc: Option<ExactMatrix> = None;
    for g in w.letters() {
        let m = a.require(*g)?;
        acc = Some(match acc {
            None => m.clone(),
            Some(x) => &x * m,
        });
    }
    Ok(acc.unwrap_or_else(|| ExactMatrix::identity(a.dim)))
}

/// `p̂(A)`: homomorphic evaluation with ℏ replaced by `a.hbar()`.
pub fn eval_free(p: &FreePoly, a: &Assignment) -> Result<ExactMatrix> {
    let mut out = ExactMatrix::zero(a.dim);
    for (w, c) in p.terms() {
        let s = eval_coefficient(c, &a.hbar)?;
        out = &out + &eval_word(w, a)?.scale(&s);
    }
    Ok(out)
}

/// `p̂'(A)[V]`: each occurrence of a generator is replaced in turn by its
/// direction matrix. Generators without a direction contribute zero.
pub fn eval_derivative(p: &FreePoly, a: &Assignment, v: &Assignment) -> Result<ExactMatrix> {
    if v.dim != a.dim {
        return Err(Error::MatrixDim {
            expected: a.dim,
            found: v.dim,
        });
    }
    let n = a.dim;
    let mut out = ExactMatrix::zero(n);
    for (w, c) in p.terms() {
        let s = eval_coefficient(c, &a.hbar)?;
        let letters = w.letters();
        let mats = letters
            .iter()
            .map(|g| a.require(*g))
            .collect::<Result<Vec<_>>>()?;
        // suffix[k] = A_{k} … A_{L-1}
        let mut suffix = vec![ExactMatrix::identity(n); letters.len() + 1];
        for k in (0..letters.len()).rev() {
            suffix[k] = mats[k] * &suffix[k + 1];
        }
        let mut prefix = ExactMatrix::identity(n);
        for (k, g) in letters.iter().enumerate() {
            if let Some(d) = v.get(*g) {
                out = &out + &(&(&prefix * d) * &suffix[k + 1]).scale(&s);
            }
            prefix = &prefix * mats[k];
        }
    }
    Ok(out)
}

/// Coefficients `E_0, E_1, …` of `p̂(A + hV) = Σ hʲ E_j`, computed by
/// multiplying matrix polynomials in `h` word by word.
pub fn expansion_in_h(p: &FreePoly, a: &Assignment, v: &Assignment) -> Result<Vec<ExactMatrix>> {
    let n = a.dim;
    let zero = ExactMatrix::zero(n);
    let mut total: Vec<ExactMatrix> = Vec::new();
    for (w, c) in p.terms() {
        let s = eval_coefficient(c, &a.hbar)?;
        let mut poly = vec![ExactMatrix::identity(n)];
        for g in w.letters() {
            let am = a.require(*g)?;
            let vm = v.get(*g).unwrap_or(&zero);
            let mut next = vec![ExactMatrix::zero(n); poly.len() + 1];
            for (j, m) in poly.iter().enumerate() {
                next[j] = &next[j] + &(m * am);
                next[j + 1] = &next[j + 1] + &(m * vm);
            }
            poly = next;
        }
        if total.len() < poly.len() {
            total.resize(poly.len(), ExactMatrix::zero(n));
        }
        for (j, m) in poly.iter().enumerate() {
            total[j] = &total[j] + &m.scale(&s);
        }
    }
    if total.is_empty() {
        total.push(zero);
    }
    Ok(total)
}

/// Outcome of the first-order expansion test.
#[derive(Clone, Debug)]
pub struct FirstOrderReport {
    /// `(h, ‖p̂(A + hV) − p̂(A) − h·p̂'(A)[V]‖₁)` for `h = 2^-k`.
    pub residuals: Vec<(BigRational, BigRational)>,
    /// Whether the `h⁰` and `h¹` coefficients of the residual vanish exactly.
    pub exact_order_two: bool,
}

impl FirstOrderReport {
    /// The residual vanishes to second order and, where nonzero, shrinks by
    /// at least a factor of 3 each time `h` halves.
    pub fn holds(&self) -> bool {
        let three = BigRational::from_integer(BigInt::from(3));
        self.exact_order_two
            && self
                .residuals
                .windows(2)
                .all(|w| w[1].1.is_zero() || w[0].1 >= &three * &w[1].1)
    }
}

pub fn first_order_check(
    p: &FreePoly,
    a: &Assignment,
    v: &Assignment,
    ks: std::ops::RangeInclusive<u32>,
) -> Result<FirstOrderReport> {
    let base = eval_free(p, a)?;
    let deriv = eval_derivative(p, a, v)?;
    let expansion = expansion_in_h(p, a, v)?;
    let zero = ExactMatrix::zero(a.dim);
    let exact_order_two = expansion[0] == base && *expansion.get(1).unwrap_or(&zero) == deriv;
    let mut residuals = Vec::new();
    for k in ks {
        let h = GaussRat::real(BigRational::new(BigInt::one(), BigInt::one() << k));
        let mut shifted = Assignment::new(a.dim).with_hbar(a.hbar.clone());
        for (g, m) in a.matrices() {
            let m = match v.get(*g) {
                Some(d) => m + &d.scale(&h),
                None => m.clone(),
            };
            shifted.set(*g, m)?;
        }
        let r = &(&eval_free(p, &shifted)? - &base) - &deriv.scale(&h);
        residuals.push((h.re.clone(), r.l1_norm()));
    }
    Ok(FirstOrderReport {
        residuals,
        exact_order_two,
    })
}

impl Sampler {
    /// Matrix with integer entries in `[-bound, bound]`.
    pub fn int_matrix(&mut self, n: usize, bound: i64) -> ExactMatrix {
        let entries = (0..n * n)
            .map(|_| GaussRat::from_int(self.rng().gen_range(-bound..=bound)))
            .collect();
        ExactMatrix::new(n, entries).expect("n*n entries")
    }

    /// `(M + Mᵀ) / 2` for a uniform small-integer `M`.
    pub fn symmetric_matrix(&mut self, n: usize, bound: i64) -> ExactMatrix {
        self.int_matrix(n, bound).symmetrize()
    }

    /// Matrix with small rational entries.
    pub fn rational_matrix(&mut self, n: usize) -> ExactMatrix {
        let entries = (0..n * n)
            .map(|_| {
                let num = self.rng().gen_range(-9i64..=9);
                let den = self.rng().gen_range(1i64..=9);
                GaussRat::ratio(num, den)
            })
            .collect();
        ExactMatrix::new(n, entries).expect("n*n entries")
    }
}

/// `⌊d/2⌋ + 1`, the matrix size that separates distinct polynomials of degree `≤ d`.
pub fn separation_dim(d: usize) -> usize {
    d / 2 + 1
}

/// A separating assignment found by [`separate`].
#[derive(Clone, Debug)]
pub struct Witness {
    pub attempt: usize,
    pub assignment: Assignment,
    pub p_value: ExactMatrix,
    pub q_value: ExactMatrix,
}

/// Searches random symmetric matrices of size `⌊d/2⌋ + 1` (and a random ℏ)
/// on which `p` and `q` evaluate differently. `None` if `p = q` or the
/// budget runs out.
pub fn separate(p: &FreePoly, q: &FreePoly, seed: u64, attempts: usize) -> Result<Option<Witness>> {
    crate::error::check_dim(p.dof(), q.dof())?;
    if p == q {
        return Ok(None);
    }
    let f = p.dof();
    let dim = separation_dim(p.degree().max(q.degree()));
    let mut s = Sampler::new(seed);
    for attempt in 0..attempts {
        let hbar = loop {
            let h = GaussRat::ratio(s.rng().gen_range(1..=9), s.rng().gen_range(1..=9));
            if !h.is_zero() {
                break h;
            }
        };
        let mut a = Assignment::new(dim).with_hbar(hbar);
        for g in Generator::all(f) {
            a.set(g, s.symmetric_matrix(dim, 5))?;
        }
        let pv = eval_free(p, &a)?;
        let qv = eval_free(q, &a)?;
        if pv != qv {
            return Ok(Some(Witness {
                attempt,
                assignment: a,
                p_value: pv,
                q_value: qv,
            }));
        }
    }
    Ok(None)
}

/// Hall's pair `(XY − YX)²Z` and `Z(XY − YX)²` with `X = Q₁`, `Y = P₁`,
/// `Z = Q₂` in two degrees of freedom.
pub fn hall_polys() -> (FreePoly, FreePoly) {
    let f = 2;
    let (x, y, z) = (FreePoly::q(f, 1), FreePoly::p(f, 1), FreePoly::q(f, 2));
    let c = x.commutator(&y).expect("same f");
    let c2 = &c * &c;
    (&c2 * &z, &z * &c2)
}

pub fn hall_assignment(x: ExactMatrix, y: ExactMatrix, z: ExactMatrix) -> Result<Assignment> {
    let n = x.dim();
    Assignment::new(n)
        .with(Generator::q(1), x)?
        .with(Generator::p(1), y)?
        .with(Generator::q(2), z)
}

/// Whether `(XY − YX)²Z = Z(XY − YX)²` for the given matrices.
pub fn hall_holds(x: &ExactMatrix, y: &ExactMatrix, z: &ExactMatrix) -> bool {
    let c = &(x * y) - &(y * x);
    let c2 = &c * &c;
    &c2 * z == z * &c2
}

/// Result of [`hall_demo`].
#[derive(Clone, Debug)]
pub struct HallReport {
    pub trials_2x2: usize,
    pub failures_2x2: usize,
    /// A 3×3 triple violating the identity, if one was found.
    pub witness_3x3: Option<(ExactMatrix, ExactMatrix, ExactMatrix)>,
}

impl HallReport {
    pub fn holds(&self) -> bool {
        self.failures_2x2 == 0 && self.witness_3x3.is_some()
    }
}

/// Checks the identity on `trials` random rational 2×2 triples and searches
/// up to `attempts` random integer 3×3 triples for a counterexample.
pub fn hall_demo(seed: u64, trials: usize, attempts: usize) -> HallReport {
    let mut s = Sampler::new(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let (x, y, z) = (
            s.rational_matrix(2),
            s.rational_matrix(2),
            s.rational_matrix(2),
        );
        if !hall_holds(&x, &y, &z) {
            failures += 1;
        }
    }
    let mut witness = None;
    for _ in 0..attempts {
        let (x, y, z) = (s.int_matrix(3, 3), s.int_matrix(3, 3), s.int_matrix(3, 3));
        if !hall_holds(&x, &y, &z) {
            witness = Some((x, y, z));
            break;
        }
    }
    HallReport {
        trials_2x2: trials,
        failures_2x2: failures,
        witness_3x3: witness,
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
    fn nilpotent_pair() -> Assignment {
        Assignment::new(2)
            .with(
                Generator::q(1),
                ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]).unwrap(),
            )
            .unwrap()
            .with(
                Generator::p(1),
                ExactMatrix::from_ints(&[&[0, 0], &[1, 0]]).unwrap(),
            )
            .unwrap()
    }

    #[test]
    fn commutator_of_nilpotent_pair() {
        let c = q().commutator(&p()).unwrap();
        assert_eq!(
            eval_free(&c, &nilpotent_pair()).unwrap(),
            ExactMatrix::from_ints(&[&[1, 0], &[0, -1]]).unwrap()
        );
        assert_eq!(
            eval_free(&FreePoly::one(1), &nilpotent_pair()).unwrap(),
            ExactMatrix::identity(2)
        );
    }

    #[test]
    fn hbar_is_substituted() {
        let a = nilpotent_pair().with_hbar(GaussRat::from_int(3));
        let x = FreePoly::constant(1, Coefficient::i_hbar());
        let three_i = GaussRat::new(BigRational::zero(), BigRational::from_integer(3.into()));
        assert_eq!(eval_free(&x, &a).unwrap(), ExactMatrix::scalar(2, three_i));
        let pole = FreePoly::constant(1, Coefficient::monomial(-1, GaussRat::one()));
        assert!(eval_free(&pole, &a.clone().with_hbar(GaussRat::zero())).is_err());
    }

    #[test]
    fn missing_generator_is_reported() {
        let a = Assignment::new(2)
            .with(Generator::q(1), ExactMatrix::identity(2))
            .unwrap();
        assert!(matches!(
            eval_free(&(&q() * &p()), &a),
            Err(Error::MissingGenerator(_))
        ));
        assert!(Assignment::new(2)
            .with(Generator::q(1), ExactMatrix::identity(3))
            .is_err());
    }

    #[test]
    fn derivative_of_square_and_qpq() {
        let mut s = Sampler::new(7);
        let (aq, ap, vq, vp) = (
            s.int_matrix(3, 4),
            s.int_matrix(3, 4),
            s.int_matrix(3, 4),
            s.int_matrix(3, 4),
        );
        let a = Assignment::new(3)
            .with(Generator::q(1), aq.clone())
            .unwrap()
            .with(Generator::p(1), ap.clone())
            .unwrap();
        let v = Assignment::new(3)
            .with(Generator::q(1), vq.clone())
            .unwrap()
            .with(Generator::p(1), vp.clone())
            .unwrap();

        let d = eval_derivative(&q().pow(2), &a, &v).unwrap();
        assert_eq!(d, &(&aq * &vq) + &(&vq * &aq));

        let qpq = &(&q() * &p()) * &q();
        let d = eval_derivative(&qpq, &a, &v).unwrap();
        let expected = &(&(&(&vq * &ap) * &aq) + &(&(&aq * &vp) * &aq)) + &(&(&aq * &ap) * &vq);
        assert_eq!(d, expected);
    }

    #[test]
    fn first_order_expansion() {
        let mut s = Sampler::new(11);
        let poly = &(&(&q() * &p()) * &q()) + &p().pow(3);
        let a = Assignment::new(2)
            .with(Generator::q(1), s.int_matrix(2, 3))
            .unwrap()
            .with(Generator::p(1), s.int_matrix(2, 3))
            .unwrap();
        let v = Assignment::new(2)
            .with(Generator::q(1), s.int_matrix(2, 3))
            .unwrap()
            .with(Generator::p(1), s.int_matrix(2, 3))
            .unwrap();
        let report = first_order_check(&poly, &a, &v, 4..=10).unwrap();
        assert!(report.exact_order_two);
        assert!(report.holds(), "{:?}", report.residuals);
    }

    #[test]
    fn toy_example_needs_dimension_two() {
        let (x, y) = (FreePoly::q(1, 1), FreePoly::p(1, 1));
        let (pxy, pyx) = (&x * &y, &y * &x);
        let mut s = Sampler::new(3);
        for _ in 0..20 {
            let a = Assignment::new(1)
                .with(Generator::q(1), s.int_matrix(1, 9))
                .unwrap()
                .with(Generator::p(1), s.int_matrix(1, 9))
                .unwrap();
            assert_eq!(eval_free(&pxy, &a).unwrap(), eval_free(&pyx, &a).unwrap());
        }
        assert_ne!(
            eval_free(&pxy, &nilpotent_pair()).unwrap(),
            eval_free(&pyx, &nilpotent_pair()).unwrap()
        );
        let w = separate(&pxy, &pyx, 1, 20)
            .unwrap()
            .expect("dim 2 separates QP and PQ");
        assert_eq!(w.assignment.dim(), 2);
        assert!(separate(&pxy, &pxy, 1, 20).unwrap().is_none());
    }

    #[test]
    fn hall_identity() {
        let report = hall_demo(5, 30, 50);
        assert!(report.holds());
        let (hp, hq) = hall_polys();
        assert_eq!(hp.degree(), 5);
        let w = separate(&hp, &hq, 2, 20)
            .unwrap()
            .expect("Hall pair separated at dim 3");
        assert_eq!(w.assignment.dim(), 3);
    }

    #[test]
    fn symmetric_flag() {
        let mut s = Sampler::new(1);
        assert!(s.symmetric_matrix(4, 5).is_symmetric());
        assert!(!ExactMatrix::from_ints(&[&[0, 1], &[0, 0]])
            .unwrap()
            .is_symmetric());
    }
}
