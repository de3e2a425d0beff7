//! The `.mdx` scripting language: a small expression language over one chart
//! for building multivector fields, forms, pairs and admissible forms and
//! applying every operation of the core crate to them.
//!
//! ```text
//! chart x, y, z;
//! ambient 2;
//! graph dx ^ dy ^ dz;
//! let a = adm(z dx; @y);
//! print pb(a, adm(x dy; @z));
//! assert i(@x ^ @y; dx ^ dy) == 1;
//! ```

mod ast;
mod eval;
mod lexer;
mod parser;
mod pretty;

use std::collections::BTreeSet;
use std::fmt;

pub use ast::{is_reserved, Expr, Func, Script, Stmt, StmtKind, KEYWORDS};
pub use eval::{EvalError, EvalErrorKind, Interpreter, Outcome, Value};
pub use lexer::Pos;
pub use parser::{parse, parse_expr};
pub use pretty::{pretty_expr, pretty_print};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    pub expected: BTreeSet<String>,
}

impl ParseError {
    pub fn new<S: Into<String>>(
        pos: Pos,
        message: impl Into<String>,
        expected: impl IntoIterator<Item = S>,
    ) -> Self {
        ParseError {
            pos,
            message: message.into(),
            expected: expected.into_iter().map(Into::into).collect(),
        }
    }

    pub fn at_end_of_input(&self) -> bool {
        self.message == "unexpected end of input"
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)?;
        if !self.expected.is_empty() {
            let list: Vec<&str> = self.expected.iter().map(String::as_str).collect();
            write!(f, "; expected one of {}", list.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}
