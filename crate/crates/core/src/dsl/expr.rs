use std::fmt;

use super::lexer::Tok;
use super::parser::{parse_pv, Cursor};
use super::ParseError;
use crate::algebra;
use crate::error::Result;
use crate::scale::Scale;
use crate::valuation::Valuation;

const OPERATORS: &[&str] = &["NOT", "AND", "OR", "SIMP", "RIMP", "MPR", "MPS"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    And,
    Or,
    Simp,
    Rimp,
    Mpr,
    Mps,
}

impl BinaryOp {
    pub fn name(self) -> &'static str {
        match self {
            BinaryOp::And => "AND",
            BinaryOp::Or => "OR",
            BinaryOp::Simp => "SIMP",
            BinaryOp::Rimp => "RIMP",
            BinaryOp::Mpr => "MPR",
            BinaryOp::Mps => "MPS",
        }
    }

    fn call(name: &str) -> Option<Self> {
        match name {
            "SIMP" => Some(BinaryOp::Simp),
            "RIMP" => Some(BinaryOp::Rimp),
            "MPR" => Some(BinaryOp::Mpr),
            "MPS" => Some(BinaryOp::Mps),
            _ => None,
        }
    }

    pub fn apply(self, f: &Valuation, g: &Valuation) -> Result<Valuation> {
        match self {
            BinaryOp::And => algebra::conj(f, g),
            BinaryOp::Or => algebra::disj(f, g),
            BinaryOp::Simp => algebra::s_implication(f, g),
            BinaryOp::Rimp => algebra::r_implication(f, g),
            BinaryOp::Mpr => algebra::mpgf_r(f, g),
            BinaryOp::Mps => algebra::mpgf_s(f, g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Literal(Valuation),
    Not(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self) -> Result<Valuation> {
        match self {
            Expr::Literal(v) => Ok(v.clone()),
            Expr::Not(e) => Ok(algebra::neg(&e.eval()?)),
            Expr::Binary(op, a, b) => op.apply(&a.eval()?, &b.eval()?),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(v) => write!(f, "{v}"),
            Expr::Not(e) => write!(f, "NOT {e}"),
            Expr::Binary(op @ (BinaryOp::And | BinaryOp::Or), a, b) => {
                write!(f, "({a} {} {b})", op.name())
            }
            Expr::Binary(op, a, b) => write!(f, "{}({a}, {b})", op.name()),
        }
    }
}

/// Parses a calculator expression over grades of `scale`.
pub fn parse_expression(text: &str, scale: &Scale) -> Result<Expr, ParseError> {
    let mut cur = Cursor::new(text)?;
    let e = parse_or(&mut cur, scale)?;
    cur.expect_eof()?;
    Ok(e)
}

fn at_op(cur: &Cursor<'_>, op: &str) -> bool {
    let t = cur.peek();
    t.kind == Tok::Ident && t.text == op
}

fn parse_or(cur: &mut Cursor<'_>, scale: &Scale) -> Result<Expr, ParseError> {
    let mut lhs = parse_and(cur, scale)?;
    while at_op(cur, "OR") {
        cur.bump();
        let rhs = parse_and(cur, scale)?;
        lhs = Expr::Binary(BinaryOp::Or, Box::new(lhs), Box::new(rhs));
    }
    Ok(lhs)
}

fn parse_and(cur: &mut Cursor<'_>, scale: &Scale) -> Result<Expr, ParseError> {
    let mut lhs = parse_unary(cur, scale)?;
    while at_op(cur, "AND") {
        cur.bump();
        let rhs = parse_unary(cur, scale)?;
        lhs = Expr::Binary(BinaryOp::And, Box::new(lhs), Box::new(rhs));
    }
    Ok(lhs)
}

fn parse_unary(cur: &mut Cursor<'_>, scale: &Scale) -> Result<Expr, ParseError> {
    if at_op(cur, "NOT") {
        cur.bump();
        return Ok(Expr::Not(Box::new(parse_unary(cur, scale)?)));
    }
    parse_primary(cur, scale)
}

fn parse_primary(cur: &mut Cursor<'_>, scale: &Scale) -> Result<Expr, ParseError> {
    let t = cur.peek().clone();
    match t.kind {
        Tok::Ident => {
            if let Some(op) = BinaryOp::call(t.text) {
                cur.bump();
                cur.expect(Tok::LParen)?;
                let a = parse_or(cur, scale)?;
                cur.expect(Tok::Comma)?;
                let b = parse_or(cur, scale)?;
                cur.expect(Tok::RParen)?;
                return Ok(Expr::Binary(op, Box::new(a), Box::new(b)));
            }
            if OPERATORS.contains(&t.text) {
                return Err(cur.unexpected(&["grade", "'('", "operator call"]));
            }
            Ok(Expr::Literal(parse_pv(cur, scale)?))
        }
        Tok::LParen => {
            let next = cur.peek_at(1);
            let after = cur.peek_at(2).kind;
            let literal = next.kind == Tok::Ident
                && !OPERATORS.contains(&next.text)
                && matches!(after, Tok::Comma | Tok::RParen);
            if literal {
                return Ok(Expr::Literal(parse_pv(cur, scale)?));
            }
            cur.bump();
            let e = parse_or(cur, scale)?;
            cur.expect(Tok::RParen)?;
            Ok(e)
        }
        _ => Err(cur.unexpected(&["grade", "'('", "'NOT'", "operator call"])),
    }
}
