//! Text format for scales, rule bases and calculator expressions.
//!
//! ```text
//! document   := scaledecl negdecl? item* ;
//! scaledecl  := "scale" IDENT "{" IDENT+ "}" ;
//! negdecl    := "negation" "{" (IDENT "->" IDENT)+ "}" ;
//! item       := ruledecl | factdecl ;
//! ruledecl   := "rule" IDENT ":" "if" atom ("and" atom)* "then" concl ("and" concl)* ;
//! concl      := atom "[" pv "]" ;
//! factdecl   := "fact" atom "[" pv "]" ;
//! atom       := IDENT "=" IDENT ;
//! pv         := IDENT | "(" IDENT ("," IDENT)* ")" ;
//! ```
//!
//! Identifiers match `[A-Za-z][A-Za-z0-9_-]*` and are case-sensitive; the
//! lowercase keywords above are reserved. `#` comments run to end of line.
//!
//! Expressions combine valuation literals with `NOT`, `AND`, `OR` (in
//! decreasing precedence) and the binary calls `SIMP(f, g)`, `RIMP(f, g)`,
//! `MPR(f, g)` and `MPS(f, g)`.

mod expr;
mod lexer;
mod parser;
mod serialize;

use std::fmt;

use serde::Serialize;

pub use expr::{parse_expression, BinaryOp, Expr};
pub use parser::{parse_document, parse_scale};
pub use serialize::{serialize, serialize_valuation};

/// Position in the source text. Lines and columns start at 1, `offset` is a
/// byte offset from the start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ErrorKind {
    Syntax,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub kind: ErrorKind,
    pub span: SourceSpan,
    pub expected: Vec<String>,
    pub found: String,
    pub message: String,
}

impl ParseError {
    /// The offending line of `src` with a caret under the error column.
    pub fn render(&self, src: &str) -> String {
        let line = src.lines().nth(self.span.line - 1).unwrap_or("");
        format!(
            "{self}\n  |\n  | {line}\n  | {:>width$}",
            "^",
            width = self.span.column
        )
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}",
            self.span.line, self.span.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}
