//! Algebraic laws checked on seeded random inputs.

mod common;

use common::*;
use proptest::prelude::*;
use weylalg::coeff::GaussRat;
use weylalg::fields::lie_derivative_of_reps;
use weylalg::hamiltonian::{cauchy_riemann_residuals, covector_lie_derivative, d, partial};
use weylalg::matrix_eval::{eval_free, Assignment};
use weylalg::weyl::rewrite::{normal_form_by_rewriting, Strategy};
use weylalg::*;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let (a, b, c) = (s.free_poly(f, 3, 3), s.free_poly(f, 3, 3), s.free_poly(f, 3, 3));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &FreePoly::one(f), a.clone());
        prop_assert_eq!(&FreePoly::one(f) * &a, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn partial_is_bilinear(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b, v, w) = (s.free_poly(1, 4, 3), s.free_poly(1, 4, 3), s.free_poly(1, 2, 2), s.free_poly(1, 2, 2));
        let c = s.coefficient();
        let g = s.generator(1);
        prop_assert_eq!(a.scale(&c).checked_add(&b).unwrap().partial(g, &v).unwrap(),
            &a.partial(g, &v).unwrap().scale(&c) + &b.partial(g, &v).unwrap());
        prop_assert_eq!(a.partial(g, &(&v.scale(&c) + &w)).unwrap(),
            &a.partial(g, &v).unwrap().scale(&c) + &a.partial(g, &w).unwrap());
    }

    #[test]
    fn product_rule(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.free_poly(f, 4, 3), s.free_poly(f, 4, 3));
        let v: Vec<FreePoly> = (0..2 * f).map(|_| s.free_poly(f, 2, 2)).collect();
        let lhs = (&a * &b).derivative(&v).unwrap();
        let rhs = &(&a.derivative(&v).unwrap() * &b) + &(&a * &b.derivative(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn second_derivative_is_symmetric(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let a = s.free_poly(f, 4, 3);
        let v: Vec<FreePoly> = (0..2 * f).map(|_| s.free_poly(f, 2, 2)).collect();
        let w: Vec<FreePoly> = (0..2 * f).map(|_| s.free_poly(f, 2, 2)).collect();
        prop_assert_eq!(a.second_derivative(&v, &w).unwrap(), a.second_derivative(&w, &v).unwrap());
    }

    #[test]
    fn chain_rule(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let outer = s.free_poly(1, 3, 3);
        let inner = [s.free_poly(1, 2, 2), s.free_poly(1, 2, 2)];
        let v = [s.free_poly(1, 2, 2), s.free_poly(1, 2, 2)];
        let lhs = outer.compose(&inner).unwrap().derivative(&v).unwrap();
        let dq: Vec<FreePoly> = inner.iter().map(|x| x.derivative(&v).unwrap()).collect();
        prop_assert_eq!(lhs, derivative_at(&outer, &inner, &dq));
        // second-order form with q held as a direction
        let lhs = outer.derivative(&inner).unwrap().derivative(&v).unwrap();
        let rhs = &outer.second_derivative(&inner, &v).unwrap() + &outer.derivative(&dq).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_degrees_add(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (u, w) = (s.word(2, 5), s.word(2, 5));
        let a = FreePoly::monomial(2, u.clone(), Coefficient::one());
        let b = FreePoly::monomial(2, w.clone(), Coefficient::one());
        prop_assert_eq!((&a * &b).degree(), u.degree() + w.degree());
    }

    #[test]
    fn normal_form_matches_oracle_and_strategies(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let x = s.free_poly(f, 5, 3);
        let nf = normal_form(&x);
        prop_assert_eq!(&nf, &oracle_normal_form(&x));
        for st in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(seed)] {
            prop_assert_eq!(&nf, &normal_form_by_rewriting(&x, st));
        }
    }

    #[test]
    fn normal_form_is_a_homomorphism(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.free_poly(f, 4, 3), s.free_poly(f, 4, 3));
        prop_assert_eq!(normal_form(&(&a * &b)), &normal_form(&a) * &normal_form(&b));
        prop_assert_eq!(normal_form(&(&a + &b)), &normal_form(&a) + &normal_form(&b));
    }

    #[test]
    fn representative_independence(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let x = s.weyl_element(f, 4, 3);
        prop_assert_eq!(normal_form(&x.lift()), x.clone());
        let j = s.ideal_element(f, 3, 3);
        prop_assert_eq!(normal_form(&(&x.lift() + &j)), x);
    }

    #[test]
    fn classical_limit_commutes(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.plain_weyl_element(f, 4, 3), s.plain_weyl_element(f, 4, 3));
        let c = a.commutator(&b).unwrap();
        prop_assert!(hbar_check(&c, 1));
        prop_assert!(c.at_hbar_zero().unwrap().is_zero());
    }

    #[test]
    fn field_bracket_laws(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (k, g, h) = (s.vector_field(1, 3, 2), s.vector_field(1, 3, 2), s.vector_field(1, 2, 2));
        let kg = k.bracket(&g).unwrap();
        prop_assert!(is_vector_field(1, kg.components()).unwrap().0);
        prop_assert!(kg.checked_add(&g.bracket(&k).unwrap()).unwrap().is_zero());
        let jac = kg.bracket(&h).unwrap()
            .checked_add(&g.bracket(&h).unwrap().bracket(&k).unwrap()).unwrap()
            .checked_add(&h.bracket(&k).unwrap().bracket(&g).unwrap()).unwrap();
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn lie_derivative_is_a_homomorphism(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let (k, g) = (s.vector_field(f, 3, 2), s.vector_field(f, 3, 2));
        let h = s.weyl_element(f, 3, 3);
        let lhs = &k.lie_derivative(&g.lie_derivative(&h).unwrap()).unwrap() - &g.lie_derivative(&k.lie_derivative(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, k.bracket(&g).unwrap().lie_derivative(&h).unwrap());
    }

    #[test]
    fn field_recovered_from_generators(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let k = s.vector_field(f, 3, 3);
        let probed: Vec<WeylElement> = Generator::all(f).map(|g| k.lie_derivative(&WeylElement::generator(f, g)).unwrap()).collect();
        prop_assert_eq!(probed.as_slice(), k.components());
    }

    #[test]
    fn lie_derivative_ignores_representatives(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let k = s.vector_field(1, 3, 2);
        let h = s.weyl_element(1, 4, 3);
        let reps: Vec<FreePoly> = k.lifts().iter().map(|c| c + &s.ideal_element(1, 2, 2)).collect();
        let h_rep = &h.lift() + &s.ideal_element(1, 2, 2);
        prop_assert_eq!(lie_derivative_of_reps(&reps, &h_rep), k.lie_derivative(&h).unwrap());
    }

    #[test]
    fn cauchy_riemann(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let k = s.vector_field(f, 4, 3);
        prop_assert!(cauchy_riemann_residuals(&k).iter().all(WeylElement::is_zero));
    }

    #[test]
    fn theta_of_gradient_is_the_generator(seed in any::<u64>(), f in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let h = s.plain_weyl_element(f, 5, 3);
        let t = theta_of(&h);
        prop_assert!(is_vector_field(f, t.components()).unwrap().0);
        prop_assert_eq!(&heisenberg_generator(&h).unwrap(), &t);
        let i_over_hbar = Coefficient::i_over_hbar();
        for k in 1..=f {
            let hq = h.commutator(&WeylElement::q(f, k)).unwrap().scale(&i_over_hbar);
            let hp = h.commutator(&WeylElement::p(f, k)).unwrap().scale(&i_over_hbar);
            prop_assert_eq!(hq, partial(&h, Generator::p(k)));
            prop_assert_eq!(hp, -&partial(&h, Generator::q(k)));
        }
        prop_assert!(d(&h).eval(&t).unwrap().is_zero());
    }

    #[test]
    fn poisson_laws(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b, c) = (s.weyl_element(1, 4, 3), s.weyl_element(1, 4, 3), s.weyl_element(1, 3, 2));
        prop_assert!((&poisson_bracket(&a, &b).unwrap() + &poisson_bracket(&b, &a).unwrap()).is_zero());
        let pb = |x: &WeylElement, y: &WeylElement| poisson_bracket(x, y).unwrap();
        let jac = &(&pb(&pb(&a, &b), &c) + &pb(&pb(&b, &c), &a)) + &pb(&pb(&c, &a), &b);
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn noetherian_identity(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.weyl_element(1, 4, 3), s.weyl_element(1, 4, 3));
        prop_assert!(noetherian_identity_check(&a, &b).unwrap().holds());
    }

    #[test]
    fn conserved_gradients_are_invariant(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let h = s.plain_weyl_element(1, 4, 3);
        let k = heisenberg_generator(&h).unwrap();
        let g = s.vector_field(1, 3, 2);
        prop_assert!(covector_lie_derivative(&k, &d(&h), &g).unwrap().is_zero());
        let sym = noether_symmetry(&h, &h).unwrap();
        prop_assert!(k.bracket(&sym).unwrap().is_zero());
    }

    #[test]
    fn matrix_evaluation_is_a_homomorphism(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.free_poly(1, 4, 3), s.free_poly(1, 4, 3));
        let asg = Assignment::new(3).with_hbar(GaussRat::ratio(2, 3))
            .with(Generator::q(1), s.int_matrix(3, 4)).unwrap()
            .with(Generator::p(1), s.int_matrix(3, 4)).unwrap();
        let (ea, eb) = (eval_free(&a, &asg).unwrap(), eval_free(&b, &asg).unwrap());
        prop_assert_eq!(eval_free(&(&a * &b), &asg).unwrap(), &ea * &eb);
        prop_assert_eq!(eval_free(&(&a + &b), &asg).unwrap(), &ea + &eb);
    }

    #[test]
    fn text_and_json_round_trips(seed in any::<u64>(), f in 0usize..=3) {
        let mut s = Sampler::new(seed);
        let x = s.free_poly(f, 5, 4);
        prop_assert_eq!(parse(&print_free(&x), f).unwrap(), x.clone());
        let js = syntax::json::free_to_json(&x);
        prop_assert_eq!(syntax::json::free_from_json(&js).unwrap(), x);
        let w = s.weyl_element(f, 5, 4);
        prop_assert_eq!(parse_weyl(&print_weyl(&w), f).unwrap(), w.clone());
        let js = syntax::json::weyl_to_json(&w);
        prop_assert_eq!(syntax::json::weyl_from_json(&js).unwrap(), w);
    }
}

#[test]
fn lem_vertrel_one_variable_specializations() {
    for n in 0..=12u32 {
        let lhs = q().pow(n).commutator(&p()).unwrap();
        let rhs = if n == 0 {
            WeylElement::zero(1)
        } else {
            q().pow(n - 1)
                .scale(&Coefficient::i_hbar().scale(&GaussRat::from_int(n as i64)))
        };
        assert_eq!(lhs, rhs, "[Q^{n}, P]");
        let lhs = q().commutator(&p().pow(n)).unwrap();
        let rhs = if n == 0 {
            WeylElement::zero(1)
        } else {
            p().pow(n - 1)
                .scale(&Coefficient::i_hbar().scale(&GaussRat::from_int(n as i64)))
        };
        assert_eq!(lhs, rhs, "[Q, P^{n}]");
    }
}

#[test]
fn hbar_check_on_small_plain_commutators() {
    // every pair of plain monomials of total degree <= 3 in two dofs
    let f = 2;
    let mut monos = vec![NormalMonomial::unit(f)];
    for _ in 0..3 {
        let mut next = monos.clone();
        for m in &monos {
            for g in Generator::all(f) {
                let x = &WeylElement::monomial(m.clone(), Coefficient::one())
                    * &WeylElement::generator(f, g);
                next.extend(x.terms().map(|(m, _)| m.clone()));
            }
        }
        next.sort();
        next.dedup();
        monos = next;
    }
    for a in &monos {
        for b in &monos {
            let x = WeylElement::monomial(a.clone(), Coefficient::one());
            let y = WeylElement::monomial(b.clone(), Coefficient::one());
            assert!(hbar_check(&x.commutator(&y).unwrap(), 1));
        }
    }
}

#[test]
fn naive_partials_depend_on_representative() {
    let h1 = fq().commutator(&fp()).unwrap();
    let h2 = FreePoly::constant(1, Coefficient::i_hbar());
    assert_eq!(normal_form(&h1), normal_form(&h2));
    let d1 = normal_form(&h1.partial(Generator::q(1), &fq()).unwrap());
    let d2 = normal_form(&h2.partial(Generator::q(1), &fq()).unwrap());
    assert_eq!(d1, WeylElement::constant(1, Coefficient::i_hbar()));
    assert!(d2.is_zero());
}
