use super::{ErrorKind, ParseError, SourceSpan};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Eq,
    Comma,
    Arrow,
    Eof,
}

impl Tok {
    pub(crate) fn describe(self) -> &'static str {
        match self {
            Tok::Ident => "identifier",
            Tok::LBrace => "'{'",
            Tok::RBrace => "'}'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::LBracket => "'['",
            Tok::RBracket => "']'",
            Tok::Colon => "':'",
            Tok::Eq => "'='",
            Tok::Comma => "','",
            Tok::Arrow => "'->'",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token<'a> {
    pub kind: Tok,
    pub text: &'a str,
    pub span: SourceSpan,
}

impl Token<'_> {
    pub(crate) fn lexeme(&self) -> String {
        match self.kind {
            Tok::Eof => "end of input".to_string(),
            _ => format!("'{}'", self.text),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

/// Splits `src` into tokens. `#` starts a comment running to end of line.
pub(crate) fn tokenize(src: &str) -> Result<Vec<Token<'_>>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(start, c)) = chars.peek() {
        let span = SourceSpan {
            line,
            column: col,
            offset: start,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        if is_ident_start(c) {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !is_ident_continue(c) {
                    break;
                }
                // `A->B`: the dash belongs to the arrow, not the identifier
                if c == '-' && src[i + 1..].starts_with('>') {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
                col += 1;
            }
            out.push(Token {
                kind: Tok::Ident,
                text: &src[start..end],
                span,
            });
            continue;
        }
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ':' => Some(Tok::Colon),
            '=' => Some(Tok::Eq),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(kind) = single {
            chars.next();
            col += 1;
            out.push(Token {
                kind,
                text: &src[start..start + 1],
                span,
            });
            continue;
        }
        if c == '-' && src[start + 1..].starts_with('>') {
            chars.next();
            chars.next();
            col += 2;
            out.push(Token {
                kind: Tok::Arrow,
                text: &src[start..start + 2],
                span,
            });
            continue;
        }
        return Err(ParseError {
            kind: ErrorKind::Syntax,
            span,
            expected: vec!["token".to_string()],
            found: format!("'{c}'"),
            message: format!("unexpected character '{c}'"),
        });
    }
    out.push(Token {
        kind: Tok::Eof,
        text: "",
        span: SourceSpan {
            line,
            column: col,
            offset: src.len(),
        },
    });
    Ok(out)
}
