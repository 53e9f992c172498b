//! JSON encoding with exact rationals as `"a/b"` strings.
//!
//! Free form: `{"f":n,"terms":[{"coeff":[{"hpow":k,"re":"a/b","im":"c/d"}],"word":["Q1","P1"]}]}`.
//! Normal form replaces `"word"` by `"p_exp"` and `"q_exp"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeff::{Coefficient, GaussRat};
use crate::error::{check_arity, Error, Result};
use crate::free_algebra::{FreePoly, Generator, Word};
use crate::weyl::{NormalMonomial, WeylElement};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffTermJson {
    pub hpow: i32,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeTermJson {
    pub coeff: Vec<CoeffTermJson>,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeJson {
    pub f: usize,
    pub terms: Vec<FreeTermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalTermJson {
    pub coeff: Vec<CoeffTermJson>,
    pub p_exp: Vec<u32>,
    pub q_exp: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylJson {
    pub f: usize,
    pub terms: Vec<NormalTermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleJson {
    pub f: usize,
    pub components: Vec<WeylJson>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Json(e.to_string())
}

pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"a/b"` or `"a"`.
pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let bad = || Error::Json(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn coeff_to_json(c: &Coefficient) -> Vec<CoeffTermJson> {
    c.terms()
        .map(|(k, z)| CoeffTermJson {
            hpow: k,
            re: rational_to_string(&z.re),
            im: rational_to_string(&z.im),
        })
        .collect()
}

fn coeff_from_json(ts: &[CoeffTermJson]) -> Result<Coefficient> {
    let mut c = Coefficient::zero();
    for t in ts {
        let z = GaussRat::new(rational_from_str(&t.re)?, rational_from_str(&t.im)?);
        c += &Coefficient::monomial(t.hpow, z);
    }
    Ok(c)
}

fn generator_from_str(s: &str) -> Result<Generator> {
    let bad = || Error::Json(format!("bad generator {s:?}"));
    let (kind, rest) = s.split_at_checked(1).ok_or_else(bad)?;
    let dof: usize = rest.parse().map_err(|_| bad())?;
    match kind {
        "Q" => Ok(Generator::q(dof)),
        "P" => Ok(Generator::p(dof)),
        _ => Err(bad()),
    }
}

pub fn free_to_value(p: &FreePoly) -> FreeJson {
    let terms = p
        .terms()
        .map(|(w, c)| FreeTermJson {
            coeff: coeff_to_json(c),
            word: w.letters().iter().map(Generator::to_string).collect(),
        })
        .collect();
    FreeJson { f: p.dof(), terms }
}

pub fn free_from_value(v: &FreeJson) -> Result<FreePoly> {
    let terms = v
        .terms
        .iter()
        .map(|t| {
            let w = t
                .word
                .iter()
                .map(|s| generator_from_str(s))
                .collect::<Result<Vec<_>>>()?;
            Ok((Word(w), coeff_from_json(&t.coeff)?))
        })
        .collect::<Result<Vec<_>>>()?;
    FreePoly::from_terms(v.f, terms)
}

pub fn weyl_to_value(x: &WeylElement) -> WeylJson {
    let terms = x
        .terms()
        .map(|(m, c)| NormalTermJson {
            coeff: coeff_to_json(c),
            p_exp: m.p_exp.clone(),
            q_exp: m.q_exp.clone(),
        })
        .collect();
    WeylJson { f: x.dof(), terms }
}

pub fn weyl_from_value(v: &WeylJson) -> Result<WeylElement> {
    let terms = v
        .terms
        .iter()
        .map(|t| {
            check_arity(v.f, t.p_exp.len())?;
            check_arity(v.f, t.q_exp.len())?;
            Ok((
                NormalMonomial::new(t.p_exp.clone(), t.q_exp.clone()),
                coeff_from_json(&t.coeff)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    WeylElement::from_terms(v.f, terms)
}

pub fn tuple_to_value(f: usize, xs: &[WeylElement]) -> TupleJson {
    TupleJson {
        f,
        components: xs.iter().map(weyl_to_value).collect(),
    }
}

pub fn tuple_from_value(v: &TupleJson) -> Result<Vec<WeylElement>> {
    v.components
        .iter()
        .map(|c| {
            crate::error::check_dim(v.f, c.f)?;
            weyl_from_value(c)
        })
        .collect()
}

pub fn free_to_json(p: &FreePoly) -> String {
    serde_json::to_string(&free_to_value(p)).expect("serializable")
}

pub fn free_from_json(s: &str) -> Result<FreePoly> {
    free_from_value(&serde_json::from_str(s).map_err(json_err)?)
}

pub fn weyl_to_json(x: &WeylElement) -> String {
    serde_json::to_string(&weyl_to_value(x)).expect("serializable")
}

pub fn weyl_from_json(s: &str) -> Result<WeylElement> {
    weyl_from_value(&serde_json::from_str(s).map_err(json_err)?)
}

pub fn tuple_to_json(f: usize, xs: &[WeylElement]) -> String {
    serde_json::to_string(&tuple_to_value(f, xs)).expect("serializable")
}

pub fn tuple_from_json(s: &str) -> Result<Vec<WeylElement>> {
    tuple_from_value(&serde_json::from_str(s).map_err(json_err)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use crate::weyl::normal_form;

    #[test]
    fn free_schema() {
        let x = parse("Q*P - i*hbar", 1).unwrap();
        let s = free_to_json(&x);
        assert_eq!(
            s,
            r#"{"f":1,"terms":[{"coeff":[{"hpow":1,"re":"0/1","im":"-1/1"}],"word":[]},{"coeff":[{"hpow":0,"re":"1/1","im":"0/1"}],"word":["Q1","P1"]}]}"#
        );
        assert_eq!(free_from_json(&s).unwrap(), x);
    }

    #[test]
    fn weyl_schema() {
        let x = normal_form(&parse("Q_1 P_1 + 1/2 Q_2", 2).unwrap());
        let s = weyl_to_json(&x);
        assert!(s.contains(r#""p_exp":[1,0],"q_exp":[1,0]"#), "{s}");
        assert_eq!(weyl_from_json(&s).unwrap(), x);
        assert_eq!(weyl_to_json(&weyl_from_json(&s).unwrap()), s);
    }

    #[test]
    fn rejects_malformed() {
        assert!(free_from_json(r#"{"f":1,"terms":[{"coeff":[],"word":["Q2"]}]}"#).is_err());
        assert!(free_from_json(
            r#"{"f":1,"terms":[{"coeff":[{"hpow":0,"re":"1/0","im":"0"}],"word":[]}]}"#
        )
        .is_err());
        assert!(
            weyl_from_json(r#"{"f":1,"terms":[{"coeff":[],"p_exp":[1,0],"q_exp":[0]}]}"#).is_err()
        );
        assert!(free_from_json(r#"{"f":1,"terms":[],"extra":1}"#).is_err());
        assert!(free_from_json(r#"{"f":1,"terms":[{"coeff":[],"word":["X1"]}]}"#).is_err());
    }

    #[test]
    fn integer_rationals_accepted() {
        assert_eq!(
            rational_from_str("-3").unwrap(),
            BigRational::from_integer((-3).into())
        );
        assert_eq!(
            rational_to_string(&BigRational::new(4.into(), (-6).into())),
            "-2/3"
        );
    }
}
