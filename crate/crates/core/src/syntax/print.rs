//! Canonical text form.
//!
//! Terms are printed from the largest monomial down. A coefficient
//! `Σ_k (a_k + i·b_k) ℏ^k` is split into one printed term per nonzero real
//! or imaginary part, lowest ℏ power first, so every printed term is a
//! signed rational times `i`, a power of `hbar` and a word.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::Coefficient;
use crate::free_algebra::{FreePoly, Generator, Kind};
use crate::weyl::WeylElement;

fn generator_name(g: Generator, f: usize) -> String {
    let c = match g.kind {
        Kind::Q => 'Q',
        Kind::P => 'P',
    };
    if f == 1 {
        c.to_string()
    } else {
        format!("{c}_{}", g.dof)
    }
}

fn word_factors<I: IntoIterator<Item = Generator>>(letters: I, f: usize, out: &mut Vec<String>) {
    let mut run: Option<(Generator, u32)> = None;
    let flush = |run: Option<(Generator, u32)>, out: &mut Vec<String>| {
        if let Some((g, n)) = run {
            let name = generator_name(g, f);
            out.push(if n == 1 { name } else { format!("{name}^{n}") });
        }
    };
    for g in letters {
        run = match run {
            Some((h, n)) if h == g => Some((h, n + 1)),
            other => {
                flush(other, out);
                Some((g, 1))
            }
        };
    }
    flush(run, out);
}

/// `(negative, body)` for every printed piece of `c · word`.
fn pieces(c: &Coefficient, word: &[String]) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    for (k, z) in c.terms() {
        for (part, imag) in [(&z.re, false), (&z.im, true)] {
            if part.is_zero() {
                continue;
            }
            out.push((part.is_negative(), body(&part.abs(), imag, k, word)));
        }
    }
    out
}

fn body(mag: &BigRational, imag: bool, k: i32, word: &[String]) -> String {
    let mut fs: Vec<String> = Vec::new();
    let bare = imag || k != 0 || !word.is_empty();
    if !(mag.is_one() && bare) {
        fs.push(mag.to_string());
    }
    if imag {
        fs.push("i".into());
    }
    match k {
        0 => {}
        1 => fs.push("hbar".into()),
        _ => fs.push(format!("hbar^{k}")),
    }
    fs.extend_from_slice(word);
    fs.join("*")
}

fn join(all: Vec<(bool, String)>) -> String {
    if all.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, (neg, b)) in all.into_iter().enumerate() {
        match (n, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&b);
    }
    s
}

pub fn print_free(p: &FreePoly) -> String {
    let f = p.dof();
    let mut all = Vec::new();
    for (w, c) in p.terms().rev() {
        let mut word = Vec::new();
        word_factors(w.letters().iter().copied(), f, &mut word);
        all.extend(pieces(c, &word));
    }
    join(all)
}

pub fn print_weyl(x: &WeylElement) -> String {
    let f = x.dof();
    let mut all = Vec::new();
    for (m, c) in x.terms().rev() {
        let mut word = Vec::new();
        word_factors(m.letters(), f, &mut word);
        all.extend(pieces(c, &word));
    }
    join(all)
}

pub fn print_tuple(xs: &[WeylElement]) -> String {
    let parts: Vec<String> = xs.iter().map(print_weyl).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GaussRat;
    use crate::syntax::parse;
    use crate::weyl::{closed_commutator, normal_form};

    #[test]
    fn examples() {
        let qp = parse("Q*P", 1).unwrap();
        assert_eq!(print_weyl(&normal_form(&qp)), "P*Q + i*hbar");
        assert_eq!(print_weyl(&WeylElement::zero(1)), "0");
        assert_eq!(print_free(&FreePoly::zero(2)), "0");
        assert_eq!(
            print_weyl(&closed_commutator(2, 2)),
            "4*i*hbar*P*Q - 2*hbar^2"
        );
    }

    #[test]
    fn tuples_and_subscripts() {
        let k = [
            WeylElement::p(1, 1).scale(&Coefficient::from_int(2)),
            WeylElement::q(1, 1)
                .pow(3)
                .scale(&Coefficient::from_int(-4)),
        ];
        assert_eq!(print_tuple(&k), "(2*P, -4*Q^3)");
        let x = parse("Q_2 Q_2 P_1 - 1/2", 2).unwrap();
        assert_eq!(print_free(&x), "Q_2^2*P_1 - 1/2");
    }

    #[test]
    fn split_complex_and_laurent_coefficients() {
        let c = Coefficient::from_terms([
            (
                -1,
                GaussRat::new(
                    BigRational::from_integer(2.into()),
                    BigRational::new((-3).into(), 4.into()),
                ),
            ),
            (0, GaussRat::i()),
        ]);
        let x = FreePoly::constant(1, c);
        let s = print_free(&x);
        assert_eq!(s, "2*hbar^-1 - 3/4*i*hbar^-1 + i");
        assert_eq!(parse(&s, 1).unwrap(), x);
    }
}
