//! Hamiltonian structure on the Weyl algebra.
//!
//! An abstract gradient `dH` is represented by its scalar field `H` and acts
//! on vector fields by `dH[K] = L_K H`. The operator Θ evaluates a gradient
//! on the constant unit fields and rotates the result by the block matrix
//! `[[0, +1], [-1, 0]]`, so `Θ[dH] = (∂H/∂P_k, −∂H/∂Q_k)`.
//!
//! Sign convention: the Heisenberg generator is `((i/ℏ)[H, Q_k], (i/ℏ)[H, P_k])`,
//! i.e. the commutator is taken with `H` on the left. With this order the
//! generator coincides with `Θ[dH]` and `P² + Q⁴` yields `(2P, −4Q³)`.
//! The Poisson-like bracket is `pb(F, H) = dH[Θ dF]`, which makes
//! `pb(Q, P) = −1`.

use crate::coeff::Coefficient;
use crate::error::{check_dim, Error, Result};
use crate::fields::VectorField;
use crate::free_algebra::{FreePoly, Generator};
use crate::weyl::{normal_form, WeylElement};

/// The gradient `dH` of a scalar field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientCovector {
    h: WeylElement,
}

impl GradientCovector {
    pub fn of(h: WeylElement) -> Self {
        GradientCovector { h }
    }

    /// The generating scalar field `H`.
    pub fn potential(&self) -> &WeylElement {
        &self.h
    }

    pub fn dof(&self) -> usize {
        self.h.dof()
    }

    /// `dH[K] = L_K H`.
    pub fn eval(&self, k: &VectorField) -> Result<WeylElement> {
        k.lie_derivative(&self.h)
    }
}

pub fn d(h: &WeylElement) -> GradientCovector {
    GradientCovector::of(h.clone())
}

/// `(∂H/∂g [1]) mod 𝒥`, computed on the normal-ordered representative.
///
/// Independent of the representative because the constant unit field lies
/// in Γ.
pub fn partial(h: &WeylElement, g: Generator) -> WeylElement {
    let f = h.dof();
    normal_form(
        &h.lift()
            .partial(g, &FreePoly::one(f))
            .expect("generator within f"),
    )
}

/// `(∂H/∂Q_1, …, ∂H/∂Q_f, ∂H/∂P_1, …, ∂H/∂P_f)`.
pub fn grad_components(h: &WeylElement) -> Vec<WeylElement> {
    Generator::all(h.dof()).map(|g| partial(h, g)).collect()
}

pub fn covector_eval(w: &GradientCovector, k: &VectorField) -> Result<WeylElement> {
    w.eval(k)
}

/// `Θ[w]`: evaluate `w` on the unit fields, then apply `[[0, I], [−I, 0]]`.
pub fn theta_apply(w: &GradientCovector) -> VectorField {
    let f = w.dof();
    let on_units: Vec<WeylElement> = (0..2 * f)
        .map(|slot| {
            w.eval(&VectorField::unit(f, slot))
                .expect("unit field shares f")
        })
        .collect();
    let (wq, wp) = on_units.split_at(f);
    let comps = wp.iter().cloned().chain(wq.iter().map(|x| -x)).collect();
    VectorField::new(f, comps).expect("Θ maps gradients into Γ")
}

/// `Θ[dH]`.
pub fn theta_of(h: &WeylElement) -> VectorField {
    theta_apply(&d(h))
}

/// `((i/ℏ)[H, Q_k], (i/ℏ)[H, P_k])`.
///
/// Each commutator must be divisible by ℏ; this holds for any `H` with
/// non-negative ℏ powers and is checked.
pub fn heisenberg_generator(h: &WeylElement) -> Result<VectorField> {
    let f = h.dof();
    let comps = Generator::all(f)
        .map(|g| {
            let c = h.commutator(&WeylElement::generator(f, g))?;
            if !c.hbar_check(1) {
                return Err(Error::Invariant(format!(
                    "[H, {g}] = {c} is not divisible by hbar"
                )));
            }
            Ok(c.scale(&Coefficient::i_over_hbar()))
        })
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(f, comps)
}

/// `pb(F, H) = dH[Θ dF]`.
pub fn poisson_bracket(f_field: &WeylElement, h: &WeylElement) -> Result<WeylElement> {
    check_dim(f_field.dof(), h.dof())?;
    d(h).eval(&theta_of(f_field))
}

/// `dF[Θ̃ dH] + dH[Θ̃ dF]` computed in the free algebra with
/// `Θ̃ dX = (∂X/∂P[1], −∂X/∂Q[1])` and no quotient. Nonzero in general.
pub fn free_theta_pairing(f_poly: &FreePoly, h: &FreePoly) -> Result<FreePoly> {
    check_dim(f_poly.dof(), h.dof())?;
    let a = f_poly.derivative(&free_theta(h))?;
    let b = h.derivative(&free_theta(f_poly))?;
    a.checked_add(&b)
}

fn free_theta(x: &FreePoly) -> Vec<FreePoly> {
    let f = x.dof();
    let one = FreePoly::one(f);
    let dq: Vec<FreePoly> = (1..=f)
        .map(|k| x.partial(Generator::q(k), &one).unwrap())
        .collect();
    let dp: Vec<FreePoly> = (1..=f)
        .map(|k| x.partial(Generator::p(k), &one).unwrap())
        .collect();
    dp.into_iter().chain(dq.iter().map(|v| -v)).collect()
}

/// `dI[K] = 0`.
pub fn is_conserved(i: &WeylElement, k: &VectorField) -> Result<bool> {
    Ok(d(i).eval(k)?.is_zero())
}

/// The symmetry `G = Θ[dI]` attached to a conserved quantity `I` of the
/// Heisenberg flow of `H`. Verifies `⟦K, G⟧ = 0` before returning.
pub fn noether_symmetry(h: &WeylElement, i: &WeylElement) -> Result<VectorField> {
    check_dim(h.dof(), i.dof())?;
    let k = heisenberg_generator(h)?;
    let rate = d(i).eval(&k)?;
    if !rate.is_zero() {
        return Err(Error::PreconditionViolated {
            what: "dI[K] must vanish",
            residual: rate,
        });
    }
    let g = theta_of(i);
    let kg = k.bracket(&g)?;
    if !kg.is_zero() {
        return Err(Error::Invariant(format!(
            "conserved quantity gave a non-symmetry, [[K,G]] = {kg}"
        )));
    }
    Ok(g)
}

/// Both sides of `Θ d(dH[Θ dF]) = ⟦Θ dF, Θ dH⟧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherianCheck {
    pub lhs: VectorField,
    pub rhs: VectorField,
    pub residual: Vec<WeylElement>,
}

impl NoetherianCheck {
    pub fn holds(&self) -> bool {
        self.residual.iter().all(WeylElement::is_zero)
    }
}

pub fn noetherian_identity_check(
    f_field: &WeylElement,
    h: &WeylElement,
) -> Result<NoetherianCheck> {
    let lhs = theta_of(&poisson_bracket(f_field, h)?);
    let rhs = theta_of(f_field).bracket(&theta_of(h))?;
    let residual = lhs
        .components()
        .iter()
        .zip(rhs.components())
        .map(|(a, b)| a - b)
        .collect();
    Ok(NoetherianCheck { lhs, rhs, residual })
}

/// `(L_K w)[G] = L_K(w[G]) − w[⟦K, G⟧]`, the Lie derivative of a covector
/// evaluated on `G`.
pub fn covector_lie_derivative(
    k: &VectorField,
    w: &GradientCovector,
    g: &VectorField,
) -> Result<WeylElement> {
    let first = k.lie_derivative(&w.eval(g)?)?;
    let second = w.eval(&k.bracket(g)?)?;
    first.checked_sub(&second)
}

/// `∂K_qk/∂Q_k + ∂K_pk/∂P_k` for each `k`; all zero for `K ∈ Γ`.
pub fn cauchy_riemann_residuals(k: &VectorField) -> Vec<WeylElement> {
    let f = k.dof();
    (1..=f)
        .map(|d| {
            let a = partial(k.component(Generator::q(d)), Generator::q(d));
            let b = partial(k.component(Generator::p(d)), Generator::p(d));
            &a + &b
        })
        .collect()
}

/// `(∂A/∂Q[∂B/∂P[1]], ∂B/∂P[∂A/∂Q[1]])` in the free algebra, `f = 1`.
///
/// The two sides agree modulo 𝒥 for monomials `A = PᵐQⁿ`, `B = P^M Q^N` but
/// generally differ as free polynomials.
pub fn mixed_partials(a: &FreePoly, b: &FreePoly) -> Result<(FreePoly, FreePoly)> {
    check_dim(a.dof(), b.dof())?;
    let f = a.dof();
    let one = FreePoly::one(f);
    let (q, p) = (Generator::q(1), Generator::p(1));
    let lhs = a.partial(q, &b.partial(p, &one)?)?;
    let rhs = b.partial(p, &a.partial(q, &one)?)?;
    Ok((lhs, rhs))
}

/// Taylor coefficients of the formal flow `u(t) = u + Σ_j t^j c_j` of the
/// Heisenberg generator, truncated at order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSeries {
    f: usize,
    /// `coeffs[j - 1]` is `c_j`, a `2f`-tuple in slot order.
    coeffs: Vec<Vec<WeylElement>>,
}

/// The `t^order` coefficient of one commutation relation along the flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcrResidual {
    pub relation: crate::fields::Relation,
    pub k: usize,
    pub l: usize,
    pub order: usize,
    pub residual: WeylElement,
}

impl FlowSeries {
    pub fn dof(&self) -> usize {
        self.f
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_j` for `1 ≤ j ≤ N`.
    pub fn coefficient(&self, j: usize) -> &[WeylElement] {
        &self.coeffs[j - 1]
    }

    /// `t^j` coefficient of the component in `slot`, with `j = 0` the
    /// initial generator.
    fn series_term(&self, slot: usize, j: usize) -> WeylElement {
        if j == 0 {
            WeylElement::generator(self.f, Generator::from_slot(self.f, slot))
        } else {
            self.coeffs[j - 1][slot].clone()
        }
    }

    /// `Σ_{a+b=j} [X_a, Y_b]` minus the constant `iℏδ_kl` at `j = 0`.
    fn relation_term(&self, x: usize, y: usize, j: usize, constant: bool) -> WeylElement {
        let mut acc = WeylElement::zero(self.f);
        for a in 0..=j {
            let c = self
                .series_term(x, a)
                .commutator(&self.series_term(y, j - a))
                .unwrap();
            acc = &acc + &c;
        }
        if constant && j == 0 {
            acc = &acc - &WeylElement::constant(self.f, Coefficient::i_hbar());
        }
        acc
    }

    /// Every commutation relation's Taylor coefficient for orders `0..=N`.
    pub fn ccr_residuals(&self) -> Vec<CcrResidual> {
        use crate::fields::Relation;
        let f = self.f;
        let mut out = Vec::new();
        for j in 0..=self.order() {
            for k in 1..=f {
                for l in k + 1..=f {
                    let r = self.relation_term(k - 1, l - 1, j, false);
                    out.push(CcrResidual {
                        relation: Relation::QQ,
                        k,
                        l,
                        order: j,
                        residual: r,
                    });
                    let r = self.relation_term(f + k - 1, f + l - 1, j, false);
                    out.push(CcrResidual {
                        relation: Relation::PP,
                        k,
                        l,
                        order: j,
                        residual: r,
                    });
                }
                for l in 1..=f {
                    let r = self.relation_term(k - 1, f + l - 1, j, k == l);
                    out.push(CcrResidual {
                        relation: Relation::QP,
                        k,
                        l,
                        order: j,
                        residual: r,
                    });
                }
            }
        }
        out
    }

    pub fn preserves_ccr(&self) -> bool {
        self.ccr_residuals().iter().all(|r| r.residual.is_zero())
    }
}

/// The Lie series `c_1 = K`, `c_{j+1} = L_K(c_j) / (j + 1)` of the
/// Heisenberg flow of `H`. The returned series is checked to preserve the
/// commutation relations through order `N`.
pub fn flow_taylor(h: &WeylElement, order: usize) -> Result<FlowSeries> {
    if order == 0 {
        return Err(Error::Invariant("flow order must be at least 1".into()));
    }
    let k = heisenberg_generator(h)?;
    let mut coeffs = vec![k.components().to_vec()];
    for j in 1..order {
        let inv = Coefficient::ratio(1, j as i64 + 1);
        let next = coeffs[j - 1]
            .iter()
            .map(|c| Ok(k.lie_derivative(c)?.scale(&inv)))
            .collect::<Result<Vec<_>>>()?;
        coeffs.push(next);
    }
    let series = FlowSeries { f: h.dof(), coeffs };
    if let Some(bad) = series
        .ccr_residuals()
        .into_iter()
        .find(|r| !r.residual.is_zero())
    {
        return Err(Error::Invariant(format!(
            "flow breaks {:?}({}, {}) at order {}: {}",
            bad.relation, bad.k, bad.l, bad.order, bad.residual
        )));
    }
    Ok(series)
}
