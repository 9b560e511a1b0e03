use std::collections::{HashMap, HashSet};

use super::lexer::{tokenize, Tok, Token};
use super::{ErrorKind, ParseError, SourceSpan};
use crate::engine::{Atom, Conclusion, Fact, Rule, RuleBase};
use crate::scale::Scale;
use crate::valuation::Valuation;

const KEYWORDS: &[&str] = &["scale", "negation", "rule", "fact", "if", "then", "and"];

/// Token cursor with one token of lookahead (two for expression literals).
pub(crate) struct Cursor<'a> {
    toks: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Cursor {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Token<'a> {
        &self.toks[self.pos]
    }

    pub(crate) fn peek_at(&self, n: usize) -> &Token<'a> {
        &self.toks[(self.pos + n).min(self.toks.len() - 1)]
    }

    pub(crate) fn bump(&mut self) -> Token<'a> {
        let t = self.toks[self.pos].clone();
        if t.kind != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_keyword(&self, kw: &str) -> bool {
        let t = self.peek();
        t.kind == Tok::Ident && t.text == kw
    }

    pub(crate) fn unexpected(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        let list = expected.join(" or ");
        ParseError {
            kind: ErrorKind::Syntax,
            span: t.span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.lexeme(),
            message: format!("expected {list}, found {}", t.lexeme()),
        }
    }

    pub(crate) fn expect(&mut self, kind: Tok) -> Result<Token<'a>, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[kind.describe()]))
        }
    }

    pub(crate) fn expect_keyword(&mut self, kw: &str) -> Result<Token<'a>, ParseError> {
        if self.at_keyword(kw) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[&format!("'{kw}'")]))
        }
    }

    /// An identifier that is not a reserved keyword.
    pub(crate) fn expect_name(&mut self) -> Result<Token<'a>, ParseError> {
        let t = self.peek();
        if t.kind == Tok::Ident && KEYWORDS.contains(&t.text) {
            let mut e = self.unexpected(&["identifier"]);
            e.found = format!("keyword '{}'", t.text);
            e.message = format!("expected identifier, found keyword '{}'", t.text);
            return Err(e);
        }
        self.expect(Tok::Ident)
    }

    pub(crate) fn expect_eof(&self) -> Result<(), ParseError> {
        if self.peek().kind == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected(&[Tok::Eof.describe()]))
        }
    }
}

pub(crate) fn semantic(span: SourceSpan, found: &str, message: String) -> ParseError {
    ParseError {
        kind: ErrorKind::Semantic,
        span,
        expected: Vec::new(),
        found: found.to_string(),
        message,
    }
}

pub(crate) fn resolve_grade(scale: &Scale, tok: &Token<'_>) -> Result<usize, ParseError> {
    scale.rank_of(tok.text).ok_or_else(|| {
        semantic(
            tok.span,
            tok.text,
            format!("unknown grade '{}' in scale '{}'", tok.text, scale.name()),
        )
    })
}

fn parse_scale_decl(cur: &mut Cursor<'_>) -> Result<Scale, ParseError> {
    cur.expect_keyword("scale")?;
    let name = cur.expect_name()?;
    cur.expect(Tok::LBrace)?;
    let mut labels: Vec<Token<'_>> = Vec::new();
    loop {
        if cur.peek().kind == Tok::RBrace && !labels.is_empty() {
            break;
        }
        labels.push(cur.expect_name()?);
    }
    cur.expect(Tok::RBrace)?;
    let mut seen = HashSet::new();
    for l in &labels {
        if !seen.insert(l.text) {
            return Err(semantic(
                l.span,
                l.text,
                format!("duplicate grade label '{}'", l.text),
            ));
        }
    }
    Scale::new(name.text, labels.iter().map(|l| l.text))
        .map_err(|e| semantic(name.span, name.text, e.to_string()))
}

fn parse_negation_decl(cur: &mut Cursor<'_>, scale: &Scale) -> Result<Scale, ParseError> {
    let kw = cur.expect_keyword("negation")?;
    cur.expect(Tok::LBrace)?;
    let mut images: Vec<Option<usize>> = vec![None; scale.size()];
    loop {
        if cur.peek().kind == Tok::RBrace && images.iter().any(Option::is_some) {
            break;
        }
        let from = cur.expect_name()?;
        cur.expect(Tok::Arrow)?;
        let to = cur.expect_name()?;
        let f = resolve_grade(scale, &from)?;
        let t = resolve_grade(scale, &to)?;
        if images[f].is_some() {
            return Err(semantic(
                from.span,
                from.text,
                format!("negation of '{}' given twice", from.text),
            ));
        }
        images[f] = Some(t);
    }
    let close = cur.expect(Tok::RBrace)?;
    let total: Option<Vec<usize>> = images.iter().copied().collect();
    let Some(total) = total else {
        let missing: Vec<&str> = scale
            .labels()
            .iter()
            .zip(&images)
            .filter(|(_, i)| i.is_none())
            .map(|(l, _)| l.as_str())
            .collect();
        return Err(semantic(
            close.span,
            "}",
            format!("negation has no image for {}", missing.join(", ")),
        ));
    };
    scale
        .with_negation(&total)
        .map_err(|e| semantic(kw.span, kw.text, e.to_string()))
}

/// Parses a scale declaration with an optional negation table, and nothing
/// else.
pub fn parse_scale(src: &str) -> Result<Scale, ParseError> {
    let mut cur = Cursor::new(src)?;
    let mut scale = parse_scale_decl(&mut cur)?;
    if cur.at_keyword("negation") {
        scale = parse_negation_decl(&mut cur, &scale)?;
    }
    cur.expect_eof()?;
    Ok(scale)
}

fn parse_atom(cur: &mut Cursor<'_>) -> Result<(Atom, SourceSpan), ParseError> {
    let attr = cur.expect_name()?;
    cur.expect(Tok::Eq)?;
    let value = cur.expect_name()?;
    Ok((
        Atom {
            attribute: attr.text.to_string(),
            value: value.text.to_string(),
        },
        attr.span,
    ))
}

pub(crate) fn parse_pv(cur: &mut Cursor<'_>, scale: &Scale) -> Result<Valuation, ParseError> {
    let start = cur.peek().span;
    let mut grades = Vec::new();
    if cur.peek().kind == Tok::LParen {
        cur.bump();
        loop {
            let t = cur.expect_name()?;
            grades.push(resolve_grade(scale, &t)?);
            if cur.peek().kind == Tok::Comma {
                cur.bump();
            } else {
                break;
            }
        }
        cur.expect(Tok::RParen)?;
    } else {
        let t = cur
            .expect_name()
            .map_err(|_| cur.unexpected(&["grade", "'('"]))?;
        grades.push(resolve_grade(scale, &t)?);
    }
    Valuation::from_grades(scale, grades).map_err(|e| semantic(start, "pv", e.to_string()))
}

fn parse_bracketed_pv(
    cur: &mut Cursor<'_>,
    scale: &Scale,
) -> Result<(Valuation, SourceSpan), ParseError> {
    cur.expect(Tok::LBracket)?;
    let span = cur.peek().span;
    let pv = parse_pv(cur, scale)?;
    cur.expect(Tok::RBracket)?;
    Ok((pv, span))
}

/// Parses and validates a whole rule-base document.
pub fn parse_document(src: &str) -> Result<RuleBase, ParseError> {
    let mut cur = Cursor::new(src)?;
    let mut scale = parse_scale_decl(&mut cur)?;
    if cur.at_keyword("negation") {
        scale = parse_negation_decl(&mut cur, &scale)?;
    }
    let mut rules = Vec::new();
    let mut facts = Vec::new();
    let mut rule_ids: HashMap<String, SourceSpan> = HashMap::new();
    let mut fact_atoms: HashSet<Atom> = HashSet::new();
    loop {
        if cur.at_keyword("rule") {
            cur.bump();
            let id = cur.expect_name()?;
            if rule_ids.contains_key(id.text) {
                return Err(semantic(
                    id.span,
                    id.text,
                    format!("duplicate rule id '{}'", id.text),
                ));
            }
            rule_ids.insert(id.text.to_string(), id.span);
            cur.expect(Tok::Colon)?;
            cur.expect_keyword("if")?;
            let mut premises = vec![parse_atom(&mut cur)?.0];
            while cur.at_keyword("and") {
                cur.bump();
                premises.push(parse_atom(&mut cur)?.0);
            }
            cur.expect_keyword("then")?;
            let mut conclusions = Vec::new();
            loop {
                let (atom, _) = parse_atom(&mut cur)?;
                let (pv, span) = parse_bracketed_pv(&mut cur, &scale)?;
                if pv.is_bottom() {
                    return Err(semantic(
                        span,
                        &pv.to_string(),
                        format!("conclusion '{atom}' must have plausibility above {pv}"),
                    ));
                }
                conclusions.push(Conclusion { atom, pv });
                if cur.at_keyword("and") {
                    cur.bump();
                } else {
                    break;
                }
            }
            let rule = Rule::new(id.text, premises, conclusions)
                .map_err(|e| semantic(id.span, id.text, e.to_string()))?;
            rules.push(rule);
        } else if cur.at_keyword("fact") {
            cur.bump();
            let (atom, span) = parse_atom(&mut cur)?;
            if fact_atoms.contains(&atom) {
                return Err(semantic(
                    span,
                    &atom.to_string(),
                    format!("duplicate fact '{atom}'"),
                ));
            }
            let (pv, _) = parse_bracketed_pv(&mut cur, &scale)?;
            fact_atoms.insert(atom.clone());
            facts.push(Fact { atom, pv });
        } else if cur.peek().kind == Tok::Eof {
            break;
        } else {
            return Err(cur.unexpected(&["'rule'", "'fact'", "end of input"]));
        }
    }
    let eof = cur.peek().span;
    RuleBase::new(scale, rules, facts).map_err(|e| semantic(eof, "", e.to_string()))
}
