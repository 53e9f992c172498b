//! Seeded random elements for property suites.
//!
//! Coefficients are Gaussian rationals with numerators in `[-9, 9]` and
//! denominators in `[1, 9]`; a quarter of them carry an extra factor ℏ.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Coefficient, GaussRat};
use crate::fields::VectorField;
use crate::free_algebra::{FreePoly, Generator, Word};
use crate::hamiltonian::theta_of;
use crate::weyl::{NormalMonomial, WeylElement};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn small_rational(&mut self) -> BigRational {
        let num = self.rng.gen_range(-9i64..=9);
        let den = self.rng.gen_range(1i64..=9);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Nonzero Gaussian rational; the imaginary part is zero two times in three.
    pub fn gauss_rat(&mut self) -> GaussRat {
        loop {
            let re = self.small_rational();
            let im = if self.rng.gen_bool(1.0 / 3.0) {
                self.small_rational()
            } else {
                BigRational::default()
            };
            let z = GaussRat::new(re, im);
            if !z.is_zero() {
                return z;
            }
        }
    }

    /// Nonzero ℏ-free coefficient.
    pub fn plain_coefficient(&mut self) -> Coefficient {
        Coefficient::constant(self.gauss_rat())
    }

    /// Nonzero coefficient, sometimes carrying a power of ℏ.
    pub fn coefficient(&mut self) -> Coefficient {
        let c = self.gauss_rat();
        let e = if self.rng.gen_bool(0.25) { 1 } else { 0 };
        Coefficient::monomial(e, c)
    }

    pub fn generator(&mut self, f: usize) -> Generator {
        Generator::from_slot(f, self.rng.gen_range(0..2 * f))
    }

    /// Uniform length in `0..=max_degree`, uniform letters.
    pub fn word(&mut self, f: usize, max_degree: usize) -> Word {
        if f == 0 {
            return Word::unit();
        }
        let len = self.rng.gen_range(0..=max_degree);
        (0..len).map(|_| self.generator(f)).collect()
    }

    pub fn free_poly(&mut self, f: usize, max_degree: usize, max_terms: usize) -> FreePoly {
        let n = self.rng.gen_range(1..=max_terms.max(1));
        let mut out = FreePoly::zero(f);
        for _ in 0..n {
            let c = self.coefficient();
            out = &out + &FreePoly::monomial(f, self.word(f, max_degree), c);
        }
        out
    }

    pub fn normal_monomial(&mut self, f: usize, max_degree: usize) -> NormalMonomial {
        let mut m = NormalMonomial::unit(f);
        if f == 0 {
            return m;
        }
        let deg = self.rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            let g = self.generator(f);
            match g.kind {
                crate::free_algebra::Kind::Q => m.q_exp[g.dof - 1] += 1,
                crate::free_algebra::Kind::P => m.p_exp[g.dof - 1] += 1,
            }
        }
        m
    }

    pub fn weyl_element(&mut self, f: usize, max_degree: usize, max_terms: usize) -> WeylElement {
        let n = self.rng.gen_range(1..=max_terms.max(1));
        let terms: Vec<_> = (0..n)
            .map(|_| (self.normal_monomial(f, max_degree), self.coefficient()))
            .collect();
        WeylElement::from_terms(f, terms).expect("sampled monomials share f")
    }

    /// Like [`Self::weyl_element`] but with ℏ-free coefficients.
    pub fn plain_weyl_element(
        &mut self,
        f: usize,
        max_degree: usize,
        max_terms: usize,
    ) -> WeylElement {
        let n = self.rng.gen_range(1..=max_terms.max(1));
        let terms: Vec<_> = (0..n)
            .map(|_| {
                (
                    self.normal_monomial(f, max_degree),
                    self.plain_coefficient(),
                )
            })
            .collect();
        WeylElement::from_terms(f, terms).expect("sampled monomials share f")
    }

    /// A member of Γ: the Θ-image of a random Hamiltonian of degree
    /// `≤ max_degree + 1` plus a random constant field.
    pub fn vector_field(&mut self, f: usize, max_degree: usize, max_terms: usize) -> VectorField {
        let h = self.weyl_element(f, max_degree + 1, max_terms);
        let mut comps = theta_of(&h).into_components();
        for c in comps.iter_mut() {
            if self.rng.gen_bool(0.5) {
                *c = &*c + &WeylElement::constant(f, self.coefficient());
            }
        }
        VectorField::new(f, comps).expect("Θ-image plus constants lies in Γ")
    }
}
