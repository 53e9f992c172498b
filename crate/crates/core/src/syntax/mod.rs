//! Surface syntax: parser, canonical printer and JSON encoding.

pub mod json;
mod parse;
mod print;

pub use parse::{parse, parse_ast, ExprAst};
pub use print::{print_free, print_tuple, print_weyl};

use crate::error::Result;
use crate::weyl::{normal_form, WeylElement};

/// Parses and reduces to normal form.
pub fn parse_weyl(text: &str, f: usize) -> Result<WeylElement> {
    Ok(normal_form(&parse(text, f)?))
}
