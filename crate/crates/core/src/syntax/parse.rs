//! Expression grammar.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' '-'? nat)?
//! atom   := 'Q' ('_' nat)? | 'P' ('_' nat)? | 'hbar' | 'i' | rational
//!         | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! Juxtaposition and `*` are both the noncommutative product. Unsubscripted
//! `Q`/`P` mean dof 1. A rational literal is `a` or `a/b`. Negative
//! exponents are only accepted on `hbar`. `ℏ` is accepted for `hbar`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::{Coefficient, GaussRat};
use crate::error::{Error, Result};
use crate::free_algebra::{FreePoly, Generator};

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    /// Signed summands; `true` means subtracted.
    Sum(Vec<(bool, ExprAst)>),
    Product(Vec<ExprAst>),
    Power {
        base: Box<ExprAst>,
        exp: i64,
        pos: usize,
    },
    Commutator(Box<ExprAst>, Box<ExprAst>),
    Symbol {
        gen: Generator,
        pos: usize,
    },
    Hbar,
    I,
    Rational(BigRational),
    Group(Box<ExprAst>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Q(usize),
    P(usize),
    Hbar,
    I,
    Num(BigRational),
    End,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        &src[start..*i]
    };
    while i < bytes.len() {
        let pos = i;
        let c = bytes[i];
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBrack),
            b']' => Some(Tok::RBrack),
            b',' => Some(Tok::Comma),
            b'i' => Some(Tok::I),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'Q' || c == b'P' {
            i += 1;
            let mut dof = 1;
            if i < bytes.len() && bytes[i] == b'_' {
                i += 1;
                let d = digits(&mut i);
                dof = d
                    .parse()
                    .map_err(|_| err(i, "expected a subscript after '_'"))?;
                if dof == 0 {
                    return Err(err(pos, "generator indices start at 1"));
                }
            }
            out.push((pos, if c == b'Q' { Tok::Q(dof) } else { Tok::P(dof) }));
        } else if src[i..].starts_with("hbar") {
            i += 4;
            out.push((pos, Tok::Hbar));
        } else if src[i..].starts_with('ℏ') {
            i += 'ℏ'.len_utf8();
            out.push((pos, Tok::Hbar));
        } else if c.is_ascii_digit() {
            let num: BigInt = digits(&mut i).parse().expect("ascii digits");
            let mut den = BigInt::from(1);
            if i < bytes.len() && bytes[i] == b'/' {
                i += 1;
                let d = digits(&mut i);
                if d.is_empty() {
                    return Err(err(i, "expected a denominator after '/'"));
                }
                den = d.parse().expect("ascii digits");
                if den.is_zero() {
                    return Err(err(pos, "zero denominator"));
                }
            }
            out.push((pos, Tok::Num(BigRational::new(num, den))));
        } else {
            let ch = src[i..].chars().next().unwrap();
            return Err(err(pos, format!("unexpected character '{ch}'")));
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut parts = Vec::new();
        let mut neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            parts.push((neg, self.term()?));
            neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        if parts.len() == 1 && !parts[0].0 {
            return Ok(parts.pop().unwrap().1);
        }
        Ok(ExprAst::Sum(parts))
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Q(_) | Tok::P(_) | Tok::Hbar | Tok::I | Tok::Num(_) | Tok::LParen | Tok::LBrack
        )
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut factors = vec![self.factor()?];
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                factors.push(self.factor()?);
            } else if self.starts_atom() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        Ok(ExprAst::Product(factors))
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let epos = self.pos();
        let exp = match self.bump() {
            Tok::Num(r) if r.is_integer() => {
                i64::try_from(r.to_integer()).map_err(|_| err(epos, "exponent too large"))?
            }
            _ => return Err(err(epos, "expected a natural-number exponent")),
        };
        if exp > u32::MAX as i64 {
            return Err(err(epos, "exponent too large"));
        }
        if neg && base != ExprAst::Hbar {
            return Err(err(pos, "negative exponents are only allowed on hbar"));
        }
        Ok(ExprAst::Power {
            base: Box::new(base),
            exp: if neg { -exp } else { exp },
            pos,
        })
    }

    fn atom(&mut self) -> Result<ExprAst> {
        let pos = self.pos();
        match self.bump() {
            Tok::Q(k) => Ok(ExprAst::Symbol {
                gen: Generator::q(k),
                pos,
            }),
            Tok::P(k) => Ok(ExprAst::Symbol {
                gen: Generator::p(k),
                pos,
            }),
            Tok::Hbar => Ok(ExprAst::Hbar),
            Tok::I => Ok(ExprAst::I),
            Tok::Num(r) => Ok(ExprAst::Rational(r)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(ExprAst::Group(Box::new(e)))
            }
            Tok::LBrack => {
                let a = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.expr()?;
                self.expect(Tok::RBrack, "']'")?;
                Ok(ExprAst::Commutator(Box::new(a), Box::new(b)))
            }
            Tok::End => Err(err(pos, "unexpected end of input")),
            t => Err(err(pos, format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses `text` into an expression tree without lowering it.
pub fn parse_ast(text: &str) -> Result<ExprAst> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

impl ExprAst {
    /// Lowers to a free polynomial in `f` degrees of freedom.
    pub fn lower(&self, f: usize) -> Result<FreePoly> {
        Ok(match self {
            ExprAst::Sum(parts) => {
                let mut acc = FreePoly::zero(f);
                for (neg, e) in parts {
                    let x = e.lower(f)?;
                    acc = if *neg { &acc - &x } else { &acc + &x };
                }
                acc
            }
            ExprAst::Product(fs) => {
                let mut acc = FreePoly::one(f);
                for e in fs {
                    acc = &acc * &e.lower(f)?;
                }
                acc
            }
            ExprAst::Power { base, exp, .. } => {
                if **base == ExprAst::Hbar {
                    FreePoly::constant(f, Coefficient::monomial(*exp as i32, GaussRat::one()))
                } else {
                    base.lower(f)?.pow(*exp as u32)
                }
            }
            ExprAst::Commutator(a, b) => a.lower(f)?.commutator(&b.lower(f)?)?,
            ExprAst::Symbol { gen, .. } => FreePoly::generator(f, gen.check(f)?),
            ExprAst::Hbar => FreePoly::constant(f, Coefficient::hbar()),
            ExprAst::I => FreePoly::constant(f, Coefficient::i()),
            ExprAst::Rational(r) => FreePoly::constant(f, GaussRat::real(r.clone()).into()),
            ExprAst::Group(e) => e.lower(f)?,
        })
    }
}

/// Parses and lowers `text` for `f` degrees of freedom.
pub fn parse(text: &str, f: usize) -> Result<FreePoly> {
    parse_ast(text)?.lower(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FreePoly {
        FreePoly::q(1, 1)
    }
    fn p() -> FreePoly {
        FreePoly::p(1, 1)
    }

    #[test]
    fn ideal_generator() {
        let got = parse("Q*P - P*Q - i*hbar", 1).unwrap();
        let expected =
            &(&(&q() * &p()) - &(&p() * &q())) - &FreePoly::constant(1, Coefficient::i_hbar());
        assert_eq!(got, expected);
    }

    #[test]
    fn anharmonic_and_bracket() {
        assert_eq!(parse("P^2 + Q^4", 1).unwrap(), &p().pow(2) + &q().pow(4));
        assert_eq!(parse("[Q,P]", 1).unwrap(), q().commutator(&p()).unwrap());
        assert_eq!(parse("QP", 1).unwrap(), &q() * &p());
        assert_eq!(
            parse("2 Q P", 1).unwrap(),
            (&q() * &p()).scale(&Coefficient::from_int(2))
        );
    }

    #[test]
    fn subscripts_and_dimension() {
        let x = parse("Q_1 P_2 - Q_2*P_1", 2).unwrap();
        let expected =
            &(&FreePoly::q(2, 1) * &FreePoly::p(2, 2)) - &(&FreePoly::q(2, 2) * &FreePoly::p(2, 1));
        assert_eq!(x, expected);
        assert!(matches!(
            parse("Q_2", 1),
            Err(Error::IndexOutOfRange { index: 2, dof: 1 })
        ));
        assert!(matches!(parse("Q", 0), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(
            parse("3/4 hbar", 0).unwrap(),
            FreePoly::constant(0, Coefficient::monomial(1, GaussRat::ratio(3, 4)))
        );
    }

    #[test]
    fn hbar_powers() {
        let x = parse("-i*hbar^-2 + ℏ", 1).unwrap();
        let c = &Coefficient::monomial(-2, -GaussRat::i()) + &Coefficient::hbar();
        assert_eq!(x, FreePoly::constant(1, c));
        assert!(parse("Q^-1", 1).is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("Q + * P", 1) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse("(Q + P", 1) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse("1/0", 1).is_err());
        assert!(parse("Q $", 1).is_err());
        assert!(parse("", 1).is_err());
        assert!(parse("[Q P]", 1).is_err());
    }
}
