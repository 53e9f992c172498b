//! Abstract vector fields Γ on quantum phase space.
//!
//! A vector field is a `2f`-tuple `(K_q1..K_qf, K_p1..K_pf)` of Weyl
//! elements whose flow leaves the commutation relations intact:
//!
//! ```text
//! [K_qk, Q_l] = [K_ql, Q_k]    [K_pk, P_l] = [K_pl, P_k]    [K_qk, P_l] = [K_pl, Q_k]
//! ```
//!
//! Only certified members can be constructed, since the Lie derivative is
//! independent of representatives only on Γ.

use std::fmt;

use crate::error::{check_arity, check_dim, Error, Result};
use crate::free_algebra::{FreePoly, Generator};
use crate::weyl::{normal_form, WeylElement};

/// Scalar fields are Weyl-algebra elements.
pub type ScalarField = WeylElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `Q_k Q_l = Q_l Q_k`
    QQ,
    /// `P_k P_l = P_l P_k`
    PP,
    /// `Q_k P_l − P_l Q_k = iℏδ_kl`
    QP,
}

/// One failed membership identity with its exact nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: Relation,
    pub k: usize,
    pub l: usize,
    pub residual: WeylElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub dof: usize,
    pub violations: Vec<Violation>,
}

impl MembershipReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for MembershipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            return write!(f, "all membership identities hold");
        }
        for (n, v) in self.violations.iter().enumerate() {
            if n > 0 {
                write!(f, "; ")?;
            }
            let (k, l) = (v.k, v.l);
            match v.relation {
                Relation::QQ => write!(f, "[K_q{k}, Q_{l}] - [K_q{l}, Q_{k}]")?,
                Relation::PP => write!(f, "[K_p{k}, P_{l}] - [K_p{l}, P_{k}]")?,
                Relation::QP => write!(f, "[K_q{k}, P_{l}] - [K_p{l}, Q_{k}]")?,
            }
            write!(f, " = {}", v.residual)?;
        }
        Ok(())
    }
}

/// Checks every membership identity for the candidate components.
pub fn membership(f: usize, comps: &[WeylElement]) -> Result<MembershipReport> {
    check_arity(2 * f, comps.len())?;
    for c in comps {
        check_dim(f, c.dof())?;
    }
    let q = |k: usize| WeylElement::q(f, k);
    let p = |k: usize| WeylElement::p(f, k);
    let kq = |k: usize| &comps[k - 1];
    let kp = |k: usize| &comps[f + k - 1];
    let mut violations = Vec::new();
    let mut push = |relation, k, l, residual: WeylElement| {
        if !residual.is_zero() {
            violations.push(Violation {
                relation,
                k,
                l,
                residual,
            });
        }
    };
    for k in 1..=f {
        for l in k + 1..=f {
            let r = &kq(k).commutator(&q(l))? - &kq(l).commutator(&q(k))?;
            push(Relation::QQ, k, l, r);
            let r = &kp(k).commutator(&p(l))? - &kp(l).commutator(&p(k))?;
            push(Relation::PP, k, l, r);
        }
    }
    for k in 1..=f {
        for l in 1..=f {
            let r = &kq(k).commutator(&p(l))? - &kp(l).commutator(&q(k))?;
            push(Relation::QP, k, l, r);
        }
    }
    Ok(MembershipReport { dof: f, violations })
}

/// `true` iff the components form a member of Γ, with the full report.
pub fn is_vector_field(f: usize, comps: &[WeylElement]) -> Result<(bool, MembershipReport)> {
    let report = membership(f, comps)?;
    Ok((report.holds(), report))
}

/// A certified member of Γ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    f: usize,
    comps: Vec<WeylElement>,
}

impl VectorField {
    /// Fails with [`Error::NotAVectorField`] when a membership identity breaks.
    pub fn new(f: usize, comps: Vec<WeylElement>) -> Result<Self> {
        let report = membership(f, &comps)?;
        if !report.holds() {
            return Err(Error::NotAVectorField(report));
        }
        Ok(VectorField { f, comps })
    }

    pub fn zero(f: usize) -> Self {
        VectorField {
            f,
            comps: vec![WeylElement::zero(f); 2 * f],
        }
    }

    /// The constant field with `1` in `slot` and `0` elsewhere.
    pub fn unit(f: usize, slot: usize) -> Self {
        let mut comps = vec![WeylElement::zero(f); 2 * f];
        comps[slot] = WeylElement::one(f);
        VectorField { f, comps }
    }

    pub fn dof(&self) -> usize {
        self.f
    }

    /// Components in slot order `(K_q1..K_qf, K_p1..K_pf)`.
    pub fn components(&self) -> &[WeylElement] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<WeylElement> {
        self.comps
    }

    pub fn component(&self, g: Generator) -> &WeylElement {
        &self.comps[g.slot(self.f)]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(WeylElement::is_zero)
    }

    /// Normal-ordered representatives of the components.
    pub fn lifts(&self) -> Vec<FreePoly> {
        self.comps.iter().map(WeylElement::lift).collect()
    }

    /// `L_K H = H'[K] mod 𝒥`.
    pub fn lie_derivative(&self, h: &WeylElement) -> Result<WeylElement> {
        check_dim(self.f, h.dof())?;
        Ok(lie_derivative_of_reps(&self.lifts(), &h.lift()))
    }

    /// `⟦K, G⟧ = (L_K G_i − L_G K_i)_i`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        check_dim(self.f, other.f)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(k, g)| Ok(&self.lie_derivative(g)? - &other.lie_derivative(k)?))
            .collect::<Result<Vec<_>>>()?;
        VectorField::new(self.f, comps)
            .map_err(|e| Error::Invariant(format!("bracket left Γ: {e}")))
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<VectorField> {
        check_dim(self.f, other.f)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a + b)
            .collect();
        Ok(VectorField { f: self.f, comps })
    }

    pub fn scale(&self, c: &crate::coeff::Coefficient) -> VectorField {
        VectorField {
            f: self.f,
            comps: self.comps.iter().map(|x| x.scale(c)).collect(),
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_tuple(&self.comps))
    }
}

/// `H'[K] mod 𝒥` for explicit free-algebra representatives. On Γ the
/// result does not depend on which representatives are passed.
pub fn lie_derivative_of_reps(k_reps: &[FreePoly], h_rep: &FreePoly) -> WeylElement {
    normal_form(&h_rep.derivative(k_reps).expect("representatives share f"))
}

pub fn lie_derivative(k: &VectorField, h: &ScalarField) -> Result<ScalarField> {
    k.lie_derivative(h)
}

pub fn lie_bracket(k: &VectorField, g: &VectorField) -> Result<VectorField> {
    k.bracket(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coefficient;

    fn q() -> WeylElement {
        WeylElement::q(1, 1)
    }
    fn p() -> WeylElement {
        WeylElement::p(1, 1)
    }
    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    #[test]
    fn anharmonic_generator_is_a_field() {
        let k = vec![p().scale(&c(2)), q().pow(3).scale(&c(-4))];
        assert!(is_vector_field(1, &k).unwrap().0);
        assert!(
            is_vector_field(1, &[WeylElement::one(1), WeylElement::zero(1)])
                .unwrap()
                .0
        );
    }

    #[test]
    fn q_zero_is_not_a_field() {
        let (ok, report) = is_vector_field(1, &[q(), WeylElement::zero(1)]).unwrap();
        assert!(!ok);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(
            report.violations[0].residual,
            WeylElement::constant(1, Coefficient::i_hbar())
        );
        assert!(matches!(
            VectorField::new(1, vec![q(), WeylElement::zero(1)]),
            Err(Error::NotAVectorField(_))
        ));
        assert!(matches!(membership(1, &[q()]), Err(Error::Arity { .. })));
    }

    #[test]
    fn lie_derivative_examples() {
        let k = VectorField::new(1, vec![p().scale(&c(2)), WeylElement::zero(1)]).unwrap();
        let expected = &(&p() * &q()).scale(&c(4))
            + &WeylElement::constant(
                1,
                Coefficient::i_hbar().scale(&crate::coeff::GaussRat::from_int(2)),
            );
        assert_eq!(k.lie_derivative(&q().pow(2)).unwrap(), expected);

        let unit_q = VectorField::unit(1, 0);
        assert_eq!(
            unit_q.lie_derivative(&q().pow(3)).unwrap(),
            q().pow(2).scale(&c(3))
        );

        assert_eq!(k.lie_derivative(&q()).unwrap(), k.components()[0]);
        assert_eq!(k.lie_derivative(&p()).unwrap(), k.components()[1]);
    }

    #[test]
    fn bracket_examples() {
        let k = VectorField::new(1, vec![p().scale(&c(2)), WeylElement::zero(1)]).unwrap();
        let g = VectorField::new(1, vec![WeylElement::zero(1), q().scale(&c(-2))]).unwrap();
        let kg = k.bracket(&g).unwrap();
        assert_eq!(kg.components(), &[q().scale(&c(4)), p().scale(&c(-4))]);
        assert!(k.bracket(&k).unwrap().is_zero());
        assert!(VectorField::unit(1, 0)
            .bracket(&VectorField::unit(1, 1))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn two_dof_rotation_field() {
        let f = 2;
        let comps = vec![
            -&WeylElement::q(f, 2),
            WeylElement::q(f, 1),
            -&WeylElement::p(f, 2),
            WeylElement::p(f, 1),
        ];
        assert!(is_vector_field(f, &comps).unwrap().0);
        // Swapping the momentum signs breaks the QP identities.
        let bad = vec![
            comps[0].clone(),
            comps[1].clone(),
            comps[3].clone(),
            comps[2].clone(),
        ];
        let (ok, report) = is_vector_field(f, &bad).unwrap();
        assert!(!ok);
        assert!(report.violations.iter().all(|v| v.relation == Relation::QP));
    }
}
