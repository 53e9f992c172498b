//! Named property suites, runnable from the command line.
//!
//! Each suite checks an identity exactly on a fixed family or on seeded
//! random inputs and reports every failing case.

use crate::error::{Error, Result};
use crate::fields::{is_vector_field, lie_derivative_of_reps};
use crate::free_algebra::{FreePoly, Generator};
use crate::hamiltonian::{
    cauchy_riemann_residuals, flow_taylor, grad_components, heisenberg_generator, mixed_partials,
    noether_symmetry, noetherian_identity_check, poisson_bracket, theta_of,
};
use crate::matrix_eval::{hall_demo, separate};
use crate::random::Sampler;
use crate::syntax::{json, parse, print_free, print_weyl};
use crate::weyl::rewrite::{normal_form_by_rewriting, Strategy};
use crate::weyl::{closed_commutator, normal_form, WeylElement};

/// Inputs shared by all suites.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub seed: u64,
    /// Size bound; its meaning is suite-specific (exponent range, order, …).
    pub max: usize,
    /// Number of random cases.
    pub cases: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            seed: 0,
            max: 4,
            cases: 50,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type SuiteFn = fn(&SuiteParams, &mut Vec<String>) -> Result<usize>;

/// `(name, description, runner)` for every suite.
pub const SUITES: &[(&str, &str, SuiteFn)] = &[
    (
        "lemVertrel",
        "closed-form [Q^n, P^m] against the rewriting oracle, n, m <= max",
        lem_vertrel,
    ),
    (
        "confluence",
        "rewrite strategies and the closed-form product agree",
        confluence,
    ),
    (
        "normal-form-homomorphism",
        "normal_form(a*b) = normal_form(a)*normal_form(b)",
        nf_homomorphism,
    ),
    (
        "representative",
        "normal_form(lift(x) + j) = x for ideal elements j",
        representative,
    ),
    (
        "bracket-laws",
        "antisymmetry, Jacobi and closure of the field bracket",
        bracket_laws,
    ),
    (
        "lie-homomorphism",
        "L_K L_G - L_G L_K = L_[K,G]",
        lie_homomorphism,
    ),
    (
        "well-defined",
        "Lie derivatives and gradients ignore ideal perturbations",
        well_defined,
    ),
    (
        "theta",
        "Theta[dH] is a field and equals the Heisenberg generator",
        theta_suite,
    ),
    (
        "poisson",
        "antisymmetry and Jacobi of the Poisson-like bracket",
        poisson_suite,
    ),
    (
        "proHilfssatz",
        "mixed partials of P^m Q^n monomials agree in the quotient, exponents <= max",
        pro_hilfssatz,
    ),
    (
        "cauchy-riemann",
        "dK_q/dQ + dK_p/dP = 0 on fields",
        cauchy_riemann,
    ),
    (
        "noether",
        "conserved quantities give commuting symmetries",
        noether_suite,
    ),
    (
        "noetherian",
        "Theta d(pb(F,H)) = [[Theta dF, Theta dH]]",
        noetherian_suite,
    ),
    (
        "flow",
        "Taylor flows preserve the commutation relations to order max",
        flow_suite,
    ),
    (
        "hall",
        "Hall's identity on 2x2 matrices with a 3x3 counterexample",
        hall_suite,
    ),
    (
        "separate",
        "distinct polynomials are separated at dimension floor(d/2)+1",
        separate_suite,
    ),
    ("round-trip", "text and JSON round trips", round_trip),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|s| s.0)
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    let (name, _, run) = SUITES
        .iter()
        .find(|s| s.0 == name)
        .ok_or_else(|| Error::Invariant(format!("unknown suite {name:?}")))?;
    let mut failures = Vec::new();
    let cases = run(params, &mut failures)?;
    Ok(SuiteReport {
        name,
        cases,
        failures,
    })
}

fn q1() -> FreePoly {
    FreePoly::q(1, 1)
}

fn p1() -> FreePoly {
    FreePoly::p(1, 1)
}

fn lem_vertrel(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let max = p.max as u32;
    let mut n_cases = 0;
    for n in 0..=max {
        for m in 0..=max {
            let a = q1().pow(n);
            let b = p1().pow(m);
            let rewritten = normal_form_by_rewriting(&a.commutator(&b)?, Strategy::Leftmost);
            if closed_commutator(n, m) != rewritten {
                fail.push(format!(
                    "n={n} m={m}: closed {} vs rewriting {}",
                    closed_commutator(n, m),
                    rewritten
                ));
            }
            n_cases += 1;
        }
    }
    Ok(n_cases)
}

fn confluence(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for case in 0..p.cases {
        let f = 1 + case % 2;
        let x = s.free_poly(f, p.max, 3);
        let reference = normal_form(&x);
        for strategy in [
            Strategy::Leftmost,
            Strategy::Rightmost,
            Strategy::Random(p.seed ^ case as u64),
        ] {
            let got = normal_form_by_rewriting(&x, strategy);
            if got != reference {
                fail.push(format!("{x} under {strategy:?}: {got} vs {reference}"));
            }
        }
    }
    Ok(p.cases)
}

fn nf_homomorphism(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for case in 0..p.cases {
        let f = 1 + case % 2;
        let a = s.free_poly(f, p.max, 3);
        let b = s.free_poly(f, p.max, 3);
        if normal_form(&(&a * &b)) != &normal_form(&a) * &normal_form(&b) {
            fail.push(format!("a = {a}, b = {b}"));
        }
    }
    Ok(p.cases)
}

fn representative(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for case in 0..p.cases {
        let f = 1 + case % 2;
        let x = s.weyl_element(f, p.max, 3);
        let j = s.ideal_element(f, 2, 2);
        if normal_form(&(&x.lift() + &j)) != x {
            fail.push(format!("x = {x}, j = {j}"));
        }
    }
    Ok(p.cases)
}

fn bracket_laws(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for _ in 0..p.cases {
        let k = s.vector_field(1, p.max, 2);
        let g = s.vector_field(1, p.max, 2);
        let h = s.vector_field(1, p.max.min(2), 2);
        let kg = k.bracket(&g)?;
        let gk = g.bracket(&k)?;
        if !kg.checked_add(&gk)?.is_zero() {
            fail.push(format!("antisymmetry: K = {k}, G = {g}"));
        }
        if !is_vector_field(1, kg.components())?.0 {
            fail.push(format!("closure: K = {k}, G = {g}"));
        }
        let j1 = kg.bracket(&h)?;
        let j2 = g.bracket(&h)?.bracket(&k)?;
        let j3 = h.bracket(&k)?.bracket(&g)?;
        if !j1.checked_add(&j2)?.checked_add(&j3)?.is_zero() {
            fail.push(format!("Jacobi: K = {k}, G = {g}, H = {h}"));
        }
    }
    Ok(p.cases)
}

fn lie_homomorphism(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for _ in 0..p.cases {
        let k = s.vector_field(1, p.max, 2);
        let g = s.vector_field(1, p.max, 2);
        let h = s.weyl_element(1, p.max, 3);
        let lhs = &k.lie_derivative(&g.lie_derivative(&h)?)?
            - &g.lie_derivative(&k.lie_derivative(&h)?)?;
        let rhs = k.bracket(&g)?.lie_derivative(&h)?;
        if lhs != rhs {
            fail.push(format!("K = {k}, G = {g}, H = {h}"));
        }
    }
    Ok(p.cases)
}

fn well_defined(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for _ in 0..p.cases {
        let k = s.vector_field(1, p.max, 2);
        let h = s.weyl_element(1, p.max, 3);
        let reference = k.lie_derivative(&h)?;
        let k_reps: Vec<FreePoly> = k
            .lifts()
            .iter()
            .map(|c| c + &s.ideal_element(1, 2, 2))
            .collect();
        let h_rep = &h.lift() + &s.ideal_element(1, 2, 2);
        if lie_derivative_of_reps(&k_reps, &h_rep) != reference {
            fail.push(format!("lie derivative: K = {k}, H = {h}"));
        }
        let one = FreePoly::one(1);
        let perturbed: Vec<WeylElement> = Generator::all(1)
            .map(|g| normal_form(&h_rep.partial(g, &one).expect("same f")))
            .collect();
        if perturbed != grad_components(&h) {
            fail.push(format!("gradient: H = {h}"));
        }
    }
    Ok(p.cases)
}

fn theta_suite(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for case in 0..p.cases {
        let f = 1 + case % 2;
        let h = s.plain_weyl_element(f, p.max + 1, 3);
        let t = theta_of(&h);
        if !is_vector_field(f, t.components())?.0 {
            fail.push(format!("Theta dH not in Gamma: H = {h}"));
        }
        if heisenberg_generator(&h)? != t {
            fail.push(format!("generator differs from Theta dH: H = {h}"));
        }
    }
    Ok(p.cases)
}

fn poisson_suite(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for _ in 0..p.cases {
        let a = s.weyl_element(1, p.max, 3);
        let b = s.weyl_element(1, p.max, 3);
        let c = s.weyl_element(1, p.max.min(3), 2);
        if !(&poisson_bracket(&a, &b)? + &poisson_bracket(&b, &a)?).is_zero() {
            fail.push(format!("antisymmetry: F = {a}, H = {b}"));
        }
        let j = &(&poisson_bracket(&poisson_bracket(&a, &b)?, &c)?
            + &poisson_bracket(&poisson_bracket(&b, &c)?, &a)?)
            + &poisson_bracket(&poisson_bracket(&c, &a)?, &b)?;
        if !j.is_zero() {
            fail.push(format!("Jacobi: {a}, {b}, {c}"));
        }
    }
    Ok(p.cases)
}

fn pro_hilfssatz(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let max = p.max as u32;
    let mut cases = 0;
    let mono = |m: u32, n: u32| &p1().pow(m) * &q1().pow(n);
    for m in 0..=max {
        for n in 0..=max {
            for big_m in 0..=max {
                for big_n in 0..=max {
                    let (l, r) = mixed_partials(&mono(m, n), &mono(big_m, big_n))?;
                    if normal_form(&l) != normal_form(&r) {
                        fail.push(format!("m={m} n={n} M={big_m} N={big_n}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    let (l, r) = mixed_partials(&q1().pow(2), &p1().pow(3))?;
    if l == r {
        fail.push("A = Q^2, B = P^3 should differ in the free algebra".into());
    }
    Ok(cases + 1)
}

fn cauchy_riemann(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for case in 0..p.cases {
        let f = 1 + case % 2;
        let k = s.vector_field(f, p.max, 3);
        if !cauchy_riemann_residuals(&k)
            .iter()
            .all(WeylElement::is_zero)
        {
            fail.push(format!("K = {k}"));
        }
    }
    Ok(p.cases)
}

fn noether_suite(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let f = 2;
    let ang = parse("Q_1 P_2 - Q_2 P_1", f)?;
    let free = parse("P_1^2 + P_2^2", f)?;
    let g = noether_symmetry(&normal_form(&free), &normal_form(&ang))?;
    let expected = ["-Q_2", "Q_1", "-P_2", "P_1"].map(|t| normal_form(&parse(t, f).unwrap()));
    if g.components() != expected {
        fail.push(format!("rotation symmetry: {g}"));
    }
    let mut s = Sampler::new(p.seed);
    for _ in 0..p.cases {
        let h = s.plain_weyl_element(1, p.max, 3);
        let k = noether_symmetry(&h, &h)?;
        if !k.bracket(&k)?.is_zero() {
            fail.push(format!("H = {h}"));
        }
    }
    Ok(p.cases + 1)
}

fn noetherian_suite(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for _ in 0..p.cases {
        let a = s.weyl_element(1, p.max, 3);
        let b = s.weyl_element(1, p.max, 3);
        let chk = noetherian_identity_check(&a, &b)?;
        if !chk.holds() {
            fail.push(format!("F = {a}, H = {b}"));
        }
    }
    Ok(p.cases)
}

fn flow_suite(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let hs = ["P^2", "1/2 P^2 + 1/2 Q^2", "P^2 + Q^4"];
    for h in hs {
        let x = normal_form(&parse(h, 1)?);
        match flow_taylor(&x, p.max.max(1)) {
            Ok(series) if series.preserves_ccr() => {}
            Ok(_) => fail.push(format!("H = {h}: nonzero residual")),
            Err(e) => fail.push(format!("H = {h}: {e}")),
        }
    }
    Ok(hs.len())
}

fn hall_suite(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let report = hall_demo(p.seed, p.cases, 100);
    if report.failures_2x2 > 0 {
        fail.push(format!(
            "{} of {} 2x2 triples violate the identity",
            report.failures_2x2, report.trials_2x2
        ));
    }
    if report.witness_3x3.is_none() {
        fail.push("no 3x3 counterexample found".into());
    }
    Ok(p.cases + 1)
}

fn separate_suite(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for case in 0..p.cases {
        let a = s.free_poly(1, p.max, 3);
        let mut b = s.free_poly(1, p.max, 3);
        if a == b {
            b = &b + &FreePoly::one(1);
        }
        if separate(&a, &b, p.seed.wrapping_add(case as u64), 20)?.is_none() {
            fail.push(format!("p = {a}, q = {b}"));
        }
    }
    Ok(p.cases)
}

fn round_trip(p: &SuiteParams, fail: &mut Vec<String>) -> Result<usize> {
    let mut s = Sampler::new(p.seed);
    for case in 0..p.cases {
        let f = case % 3;
        let x = s.free_poly(f, p.max, 4);
        let text = print_free(&x);
        if parse(&text, f)? != x {
            fail.push(format!("free text: {text}"));
        }
        let js = json::free_to_json(&x);
        if json::free_to_json(&json::free_from_json(&js)?) != js {
            fail.push(format!("free json: {js}"));
        }
        let w = s.weyl_element(f, p.max, 4);
        let text = print_weyl(&w);
        if normal_form(&parse(&text, f)?) != w
            || print_weyl(&normal_form(&parse(&text, f)?)) != text
        {
            fail.push(format!("normal text: {text}"));
        }
        let js = json::weyl_to_json(&w);
        let back = json::weyl_from_json(&js)?;
        if back != w || json::weyl_to_json(&back) != js {
            fail.push(format!("normal json: {js}"));
        }
    }
    Ok(2 * p.cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_small() {
        for name in suite_names() {
            let params = SuiteParams {
                seed: 1,
                max: 2,
                cases: 3,
            };
            let r = run_suite(name, &params).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &SuiteParams::default()).is_err());
    }
}
