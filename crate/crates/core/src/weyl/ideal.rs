//! Elements of the commutation ideal 𝒥.

use rand::Rng;

use crate::coeff::Coefficient;
use crate::free_algebra::{FreePoly, Generator};
use crate::random::Sampler;

/// Generators of 𝒥 for `f` degrees of freedom:
/// `Q_kP_l − P_lQ_k − iℏδ_kl` for all `k, l`, and `Q_kQ_l − Q_lQ_k`,
/// `P_kP_l − P_lP_k` for `k < l`.
pub fn ideal_generators(f: usize) -> Vec<FreePoly> {
    let mut gens = Vec::new();
    let var = |g| FreePoly::generator(f, g);
    for k in 1..=f {
        for l in 1..=f {
            let mut g = var(Generator::q(k))
                .commutator(&var(Generator::p(l)))
                .unwrap();
            if k == l {
                g = &g - &FreePoly::constant(f, Coefficient::i_hbar());
            }
            gens.push(g);
        }
    }
    for k in 1..=f {
        for l in k + 1..=f {
            gens.push(
                var(Generator::q(k))
                    .commutator(&var(Generator::q(l)))
                    .unwrap(),
            );
            gens.push(
                var(Generator::p(k))
                    .commutator(&var(Generator::p(l)))
                    .unwrap(),
            );
        }
    }
    gens
}

/// A random `Σ a_k · g_k · b_k` with `g_k` an ideal generator and `a_k`,
/// `b_k` random coefficient-weighted words of degree `≤ max_degree`.
/// Its normal form is zero by construction.
pub fn ideal_sample(seed: u64, f: usize, max_degree: usize) -> FreePoly {
    let mut s = Sampler::new(seed);
    s.ideal_element(f, max_degree, 3)
}

impl Sampler {
    /// See [`ideal_sample`]; `max_terms` bounds the number of summands.
    pub fn ideal_element(&mut self, f: usize, max_degree: usize, max_terms: usize) -> FreePoly {
        let gens = ideal_generators(f);
        let mut out = FreePoly::zero(f);
        if gens.is_empty() {
            return out;
        }
        let count = self.rng().gen_range(1..=max_terms.max(1));
        for _ in 0..count {
            let g = &gens[self.rng().gen_range(0..gens.len())];
            let left = FreePoly::monomial(f, self.word(f, max_degree), self.coefficient());
            let right = FreePoly::monomial(f, self.word(f, max_degree), Coefficient::one());
            out = &out + &(&(&left * g) * &right);
        }
        out
    }
}
