//! Runs Python code against the module through an embedded interpreter.

use pyo3::ffi::c_str;
use pyo3::prelude::*;
use pyweylalg::pyweylalg;

#[test]
fn module_from_python() {
    pyo3::append_to_inittab!(pyweylalg);
    Python::initialize();
    Python::attach(|py| {
        let code = c_str!(
            r#"
import pyweylalg as w
assert str(w.normal_form("Q^2 P^2")) == "P^2*Q^2 + 4*i*hbar*P*Q - 2*hbar^2"
h = w.WeylElement("P^2 + Q^4")
assert str(h.heisenberg_generator()) == "(2*P, -4*Q^3)"
assert w.is_vector_field(["Q", "0"])[0] is False
assert w.FreePoly("Q P").normal_form() == w.WeylElement("P Q + i hbar")
try:
    w.WeylElement("Q +")
    raise AssertionError("parse error expected")
except ValueError:
    pass
"#
        );
        py.run(code, None, None).unwrap();
    });
}
