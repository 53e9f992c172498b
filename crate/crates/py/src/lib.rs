//! Python bindings for `weylalg`.
//!
//! Expressions may be passed as strings in the text grammar wherever an
//! element is expected; they are parsed with the dof of the other operand.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use weylalg::cli::parse_scalar;
use weylalg::hamiltonian as ham;
use weylalg::matrix_eval::{self, Assignment};
use weylalg::syntax::json;
use weylalg::verify::{run_suite, suite_names, SuiteParams};
use weylalg::{Error, ExactMatrix, Generator, Kind};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for weylalg::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn generator(name: &str, f: usize) -> PyResult<Generator> {
    let bad = || {
        PyValueError::new_err(format!(
            "expected a generator like Q, P_2 or Q1, got {name:?}"
        ))
    };
    let mut chars = name.chars();
    let kind = match chars.next() {
        Some('Q') => Kind::Q,
        Some('P') => Kind::P,
        _ => return Err(bad()),
    };
    let rest = chars.as_str().trim_start_matches('_');
    let dof = if rest.is_empty() {
        1
    } else {
        rest.parse().map_err(|_| bad())?
    };
    Generator { kind, dof }.check(f).py()
}

/// An element of the free algebra over `Q_k`, `P_k` with Laurent-in-hbar
/// Gaussian rational coefficients.
#[pyclass(frozen, from_py_object, eq, name = "FreePoly", module = "pyweylalg")]
#[derive(Clone, PartialEq)]
pub struct FreePoly(weylalg::FreePoly);

/// A normal-ordered element of the Weyl algebra.
#[pyclass(frozen, from_py_object, eq, name = "WeylElement", module = "pyweylalg")]
#[derive(Clone, PartialEq)]
pub struct WeylElement(weylalg::WeylElement);

/// A derivation of the Weyl algebra, given by its values on the generators.
#[pyclass(frozen, from_py_object, eq, name = "VectorField", module = "pyweylalg")]
#[derive(Clone, PartialEq)]
pub struct VectorField(weylalg::VectorField);

/// Free-algebra operand: a `FreePoly` or a string.
#[derive(FromPyObject)]
enum FreeArg {
    Poly(FreePoly),
    Text(String),
}

impl FreeArg {
    fn get(self, f: usize) -> PyResult<weylalg::FreePoly> {
        match self {
            FreeArg::Poly(p) => Ok(p.0),
            FreeArg::Text(s) => weylalg::parse(&s, f).py(),
        }
    }
}

/// Quotient operand: a `WeylElement`, a `FreePoly` (normalized) or a string.
#[derive(FromPyObject)]
enum WeylArg {
    Weyl(WeylElement),
    Poly(FreePoly),
    Text(String),
}

impl WeylArg {
    fn get(self, f: usize) -> PyResult<weylalg::WeylElement> {
        match self {
            WeylArg::Weyl(w) => Ok(w.0),
            WeylArg::Poly(p) => Ok(weylalg::normal_form(&p.0)),
            WeylArg::Text(s) => weylalg::parse_weyl(&s, f).py(),
        }
    }
}

#[pymethods]
impl FreePoly {
    #[new]
    #[pyo3(signature = (text, dof = 1))]
    fn new(text: &str, dof: usize) -> PyResult<Self> {
        Ok(FreePoly(weylalg::parse(text, dof).py()?))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(FreePoly(json::free_from_json(s).py()?))
    }

    fn to_json(&self) -> String {
        json::free_to_json(&self.0)
    }

    #[getter]
    fn dof(&self) -> usize {
        self.0.dof()
    }

    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __str__(&self) -> String {
        weylalg::print_free(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "FreePoly({:?}, dof={})",
            weylalg::print_free(&self.0),
            self.0.dof()
        )
    }

    fn __add__(&self, other: FreeArg) -> PyResult<Self> {
        Ok(FreePoly(
            self.0.checked_add(&other.get(self.0.dof())?).py()?,
        ))
    }

    fn __radd__(&self, other: FreeArg) -> PyResult<Self> {
        Ok(FreePoly(
            other.get(self.0.dof())?.checked_add(&self.0).py()?,
        ))
    }

    fn __sub__(&self, other: FreeArg) -> PyResult<Self> {
        Ok(FreePoly(
            self.0.checked_sub(&other.get(self.0.dof())?).py()?,
        ))
    }

    fn __rsub__(&self, other: FreeArg) -> PyResult<Self> {
        Ok(FreePoly(
            other.get(self.0.dof())?.checked_sub(&self.0).py()?,
        ))
    }

    fn __mul__(&self, other: FreeArg) -> PyResult<Self> {
        Ok(FreePoly(
            self.0.checked_mul(&other.get(self.0.dof())?).py()?,
        ))
    }

    fn __rmul__(&self, other: FreeArg) -> PyResult<Self> {
        Ok(FreePoly(
            other.get(self.0.dof())?.checked_mul(&self.0).py()?,
        ))
    }

    fn __neg__(&self) -> Self {
        FreePoly(-&self.0)
    }

    fn __pow__(&self, n: u32, _modulo: Option<u32>) -> Self {
        FreePoly(self.0.pow(n))
    }

    /// `ab - ba` in the free algebra.
    fn commutator(&self, other: FreeArg) -> PyResult<Self> {
        Ok(FreePoly(self.0.commutator(&other.get(self.0.dof())?).py()?))
    }

    /// Partial derivative along one generator in direction `v`.
    #[pyo3(signature = (generator_name, v = None))]
    fn partial(&self, generator_name: &str, v: Option<FreeArg>) -> PyResult<Self> {
        let f = self.0.dof();
        let g = generator(generator_name, f)?;
        let v = match v {
            Some(v) => v.get(f)?,
            None => weylalg::FreePoly::one(f),
        };
        Ok(FreePoly(self.0.partial(g, &v).py()?))
    }

    /// Directional derivative `p'[V]` for `2f` directions in slot order.
    fn derivative(&self, directions: Vec<FreeArg>) -> PyResult<Self> {
        let f = self.0.dof();
        let dirs = directions
            .into_iter()
            .map(|d| d.get(f))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(FreePoly(self.0.derivative(&dirs).py()?))
    }

    fn normal_form(&self) -> WeylElement {
        WeylElement(weylalg::normal_form(&self.0))
    }
}

#[pymethods]
impl WeylElement {
    #[new]
    #[pyo3(signature = (text, dof = 1))]
    fn new(text: &str, dof: usize) -> PyResult<Self> {
        Ok(WeylElement(weylalg::parse_weyl(text, dof).py()?))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(WeylElement(json::weyl_from_json(s).py()?))
    }

    fn to_json(&self) -> String {
        json::weyl_to_json(&self.0)
    }

    #[getter]
    fn dof(&self) -> usize {
        self.0.dof()
    }

    fn degree(&self) -> u32 {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The canonical representative in the free algebra.
    fn lift(&self) -> FreePoly {
        FreePoly(self.0.lift())
    }

    /// Whether every coefficient is divisible by `hbar^min_degree`.
    fn hbar_check(&self, min_degree: i32) -> bool {
        self.0.hbar_check(min_degree)
    }

    fn __str__(&self) -> String {
        weylalg::print_weyl(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "WeylElement({:?}, dof={})",
            weylalg::print_weyl(&self.0),
            self.0.dof()
        )
    }

    fn __add__(&self, other: WeylArg) -> PyResult<Self> {
        Ok(WeylElement(
            self.0.checked_add(&other.get(self.0.dof())?).py()?,
        ))
    }

    fn __radd__(&self, other: WeylArg) -> PyResult<Self> {
        Ok(WeylElement(
            other.get(self.0.dof())?.checked_add(&self.0).py()?,
        ))
    }

    fn __sub__(&self, other: WeylArg) -> PyResult<Self> {
        Ok(WeylElement(
            self.0.checked_sub(&other.get(self.0.dof())?).py()?,
        ))
    }

    fn __rsub__(&self, other: WeylArg) -> PyResult<Self> {
        Ok(WeylElement(
            other.get(self.0.dof())?.checked_sub(&self.0).py()?,
        ))
    }

    fn __mul__(&self, other: WeylArg) -> PyResult<Self> {
        Ok(WeylElement(
            self.0.checked_mul(&other.get(self.0.dof())?).py()?,
        ))
    }

    fn __rmul__(&self, other: WeylArg) -> PyResult<Self> {
        Ok(WeylElement(
            other.get(self.0.dof())?.checked_mul(&self.0).py()?,
        ))
    }

    fn __neg__(&self) -> Self {
        WeylElement(-&self.0)
    }

    fn __pow__(&self, n: u32, _modulo: Option<u32>) -> Self {
        WeylElement(self.0.pow(n))
    }

    /// `[self, other]` in normal form.
    fn commutator(&self, other: WeylArg) -> PyResult<Self> {
        Ok(WeylElement(
            self.0.commutator(&other.get(self.0.dof())?).py()?,
        ))
    }

    /// Gradient components `(dH/dQ_1.., dH/dP_1..)`.
    fn grad(&self) -> Vec<WeylElement> {
        ham::grad_components(&self.0)
            .into_iter()
            .map(WeylElement)
            .collect()
    }

    /// `Theta[dH]`.
    fn theta(&self) -> VectorField {
        VectorField(ham::theta_of(&self.0))
    }

    /// The field `(i/hbar)[H, .]` on the generators.
    fn heisenberg_generator(&self) -> PyResult<VectorField> {
        Ok(VectorField(ham::heisenberg_generator(&self.0).py()?))
    }
}

#[pymethods]
impl VectorField {
    /// Raises `ValueError` unless the components satisfy the membership identities.
    #[new]
    #[pyo3(signature = (components, dof = None))]
    fn new(components: Vec<WeylArg>, dof: Option<usize>) -> PyResult<Self> {
        let f = dof.unwrap_or(components.len() / 2);
        let comps = components
            .into_iter()
            .map(|c| c.get(f))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(VectorField(weylalg::VectorField::new(f, comps).py()?))
    }

    #[getter]
    fn dof(&self) -> usize {
        self.0.dof()
    }

    #[getter]
    fn components(&self) -> Vec<WeylElement> {
        self.0
            .components()
            .iter()
            .cloned()
            .map(WeylElement)
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `K(H)`.
    fn lie_derivative(&self, h: WeylArg) -> PyResult<WeylElement> {
        Ok(WeylElement(
            self.0.lie_derivative(&h.get(self.0.dof())?).py()?,
        ))
    }

    /// `[[K, G]]`.
    fn bracket(&self, other: &VectorField) -> PyResult<VectorField> {
        Ok(VectorField(self.0.bracket(&other.0).py()?))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("VectorField({})", self.0)
    }
}

/// Normal form of a free polynomial or expression string.
#[pyfunction]
#[pyo3(signature = (x, dof = 1))]
fn normal_form(x: FreeArg, dof: usize) -> PyResult<WeylElement> {
    Ok(WeylElement(weylalg::normal_form(&x.get(dof)?)))
}

/// `[Q^n, P^m]` from the closed formula.
#[pyfunction]
fn closed_commutator(n: u32, m: u32) -> WeylElement {
    WeylElement(weylalg::closed_commutator(n, m))
}

/// `(holds, report)` for `2f` components.
#[pyfunction]
#[pyo3(signature = (components, dof = None))]
fn is_vector_field(components: Vec<WeylArg>, dof: Option<usize>) -> PyResult<(bool, String)> {
    let f = dof.unwrap_or(components.len() / 2);
    let comps = components
        .into_iter()
        .map(|c| c.get(f))
        .collect::<PyResult<Vec<_>>>()?;
    let (ok, report) = weylalg::is_vector_field(f, &comps).py()?;
    Ok((ok, report.to_string()))
}

/// `dH[Theta dF]`.
#[pyfunction]
#[pyo3(signature = (f, h, dof = 1))]
fn poisson_bracket(f: WeylArg, h: WeylArg, dof: usize) -> PyResult<WeylElement> {
    Ok(WeylElement(
        ham::poisson_bracket(&f.get(dof)?, &h.get(dof)?).py()?,
    ))
}

/// The pairing with free-algebra partials, before passing to the quotient.
#[pyfunction]
#[pyo3(signature = (f, h, dof = 1))]
fn free_theta_pairing(f: FreeArg, h: FreeArg, dof: usize) -> PyResult<FreePoly> {
    Ok(FreePoly(
        ham::free_theta_pairing(&f.get(dof)?, &h.get(dof)?).py()?,
    ))
}

/// Whether `I` is annihilated by the field `K`.
#[pyfunction]
fn is_conserved(i: WeylArg, k: &VectorField) -> PyResult<bool> {
    ham::is_conserved(&i.get(k.0.dof())?, &k.0).py()
}

/// The symmetry `Theta[dI]` of a quantity `I` conserved by `H`.
#[pyfunction]
#[pyo3(signature = (h, i, dof = 1))]
fn noether_symmetry(h: WeylArg, i: WeylArg, dof: usize) -> PyResult<VectorField> {
    Ok(VectorField(
        ham::noether_symmetry(&h.get(dof)?, &i.get(dof)?).py()?,
    ))
}

/// `(Theta d(pb(F,H)), [[Theta dF, Theta dH]])`.
#[pyfunction]
#[pyo3(signature = (f, h, dof = 1))]
fn noetherian_check(f: WeylArg, h: WeylArg, dof: usize) -> PyResult<(VectorField, VectorField)> {
    let chk = ham::noetherian_identity_check(&f.get(dof)?, &h.get(dof)?).py()?;
    Ok((VectorField(chk.lhs), VectorField(chk.rhs)))
}

/// Taylor coefficients `c_1..c_order` of the Heisenberg flow, each a `2f`-list.
#[pyfunction]
#[pyo3(signature = (h, order, dof = 1))]
fn flow_taylor(h: WeylArg, order: usize, dof: usize) -> PyResult<Vec<Vec<WeylElement>>> {
    let series = ham::flow_taylor(&h.get(dof)?, order).py()?;
    Ok((1..=series.order())
        .map(|j| {
            series
                .coefficient(j)
                .iter()
                .cloned()
                .map(WeylElement)
                .collect()
        })
        .collect())
}

/// Evaluates on matrices given as `{"Q": [[0, 1], [0, 0]], ...}`; entries
/// are ints or scalar strings. Returns rows of entry strings.
#[pyfunction]
#[pyo3(signature = (x, assignment, hbar = "1", dof = 1))]
fn eval_matrix(
    x: FreeArg,
    assignment: &Bound<'_, PyDict>,
    hbar: &str,
    dof: usize,
) -> PyResult<Vec<Vec<String>>> {
    let p = x.get(dof)?;
    let mut asg: Option<Assignment> = None;
    for (k, v) in assignment.iter() {
        let g = generator(&k.extract::<String>()?, dof)?;
        let rows: Vec<Vec<Bound<'_, PyAny>>> = v.extract()?;
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| parse_scalar(&c.str()?.to_string()).py())
                    .collect()
            })
            .collect::<PyResult<Vec<Vec<_>>>>()?;
        let m = ExactMatrix::from_rows(rows).py()?;
        let a = asg.get_or_insert_with(|| Assignment::new(m.dim()));
        a.set(g, m).py()?;
    }
    let asg = asg
        .ok_or_else(|| PyValueError::new_err("empty assignment"))?
        .with_hbar(parse_scalar(hbar).py()?);
    let m = matrix_eval::eval_free(&p, &asg).py()?;
    Ok(m.rows()
        .map(|r| r.iter().map(|z| z.to_string()).collect())
        .collect())
}

/// A matrix witness that `p` and `q` differ, as `{generator: rows}` plus
/// `"hbar"`, or `None` within the attempt budget.
#[pyfunction]
#[pyo3(signature = (p, q, seed = 0, attempts = 20, dof = 1))]
fn separate<'py>(
    py: Python<'py>,
    p: FreeArg,
    q: FreeArg,
    seed: u64,
    attempts: usize,
    dof: usize,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    let Some(w) = weylalg::separate(&p.get(dof)?, &q.get(dof)?, seed, attempts).py()? else {
        return Ok(None);
    };
    let d = PyDict::new(py);
    for (g, m) in w.assignment.matrices() {
        let rows: Vec<Vec<String>> = m
            .rows()
            .map(|r| r.iter().map(|z| z.to_string()).collect())
            .collect();
        d.set_item(g.to_string(), rows)?;
    }
    d.set_item("hbar", w.assignment.hbar().to_string())?;
    Ok(Some(d))
}

/// `(failures_2x2, found_3x3_witness)` for Hall's identity.
#[pyfunction]
#[pyo3(signature = (seed = 0, trials = 100, attempts = 100))]
fn hall_demo(seed: u64, trials: usize, attempts: usize) -> (usize, bool) {
    let r = matrix_eval::hall_demo(seed, trials, attempts);
    (r.failures_2x2, r.witness_3x3.is_some())
}

/// Runs a named property suite; returns the list of failures.
#[pyfunction]
#[pyo3(signature = (suite, seed = 0, max = 4, cases = 50))]
fn verify(suite: &str, seed: u64, max: usize, cases: usize) -> PyResult<Vec<String>> {
    let r = run_suite(suite, &SuiteParams { seed, max, cases }).py()?;
    Ok(r.failures)
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    suite_names().collect()
}

#[pymodule]
pub fn pyweylalg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FreePoly>()?;
    m.add_class::<WeylElement>()?;
    m.add_class::<VectorField>()?;
    m.add_function(wrap_pyfunction!(normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(closed_commutator, m)?)?;
    m.add_function(wrap_pyfunction!(is_vector_field, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(free_theta_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(is_conserved, m)?)?;
    m.add_function(wrap_pyfunction!(noether_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(noetherian_check, m)?)?;
    m.add_function(wrap_pyfunction!(flow_taylor, m)?)?;
    m.add_function(wrap_pyfunction!(eval_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(separate, m)?)?;
    m.add_function(wrap_pyfunction!(hall_demo, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    Ok(())
}
