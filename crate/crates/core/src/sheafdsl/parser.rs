use super::ast::{Atom, SheafExpr};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Plus,
    Arrow,
    Int(i64),
    Ident(String),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::SyntaxError {
        offset,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Arrow
            }
            b'-' | b'0'..=b'9' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                if text == "-" {
                    return Err(syntax(start, "expected digits after `-`"));
                }
                Tok::Int(
                    text.parse()
                        .map_err(|_| syntax(start, format!("integer `{text}` out of range")))?,
                )
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(src[start..i].to_string())
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push(Token { tok, offset: start });
    }
    Ok(out)
}

const KEYWORDS: [&str; 8] = [
    "O", "TX", "Omega1", "twist", "dual", "rdual", "coker", "ker",
];

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.src.len(), |t| t.offset)
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Int(n)) => format!("`{n}`"),
            Some(Tok::LParen) => "`(`".into(),
            Some(Tok::RParen) => "`)`".into(),
            Some(Tok::Comma) => "`,`".into(),
            Some(Tok::Plus) => "`+`".into(),
            Some(Tok::Arrow) => "`->`".into(),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(
                self.offset(),
                format!("expected {what}, found {}", self.describe()),
            ))
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(syntax(
                self.offset(),
                format!("expected integer, found {}", self.describe()),
            )),
        }
    }

    fn expr(&mut self) -> Result<SheafExpr> {
        let mut lhs = self.term()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = lhs.sum(rhs);
        }
        Ok(lhs)
    }

    /// Optional `(t)` suffix on `TX` and `Omega1`.
    fn twist_suffix(&mut self, base: SheafExpr) -> Result<SheafExpr> {
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let t = self.int()?;
            self.expect(Tok::RParen, "`)`")?;
            Ok(base.twist(t))
        } else {
            Ok(base)
        }
    }

    fn arrow_pair(&mut self) -> Result<(SheafExpr, SheafExpr)> {
        self.expect(Tok::LParen, "`(`")?;
        let a = self.expr()?;
        self.expect(Tok::Arrow, "`->`")?;
        let b = self.expr()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok((a, b))
    }

    fn term(&mut self) -> Result<SheafExpr> {
        let offset = self.offset();
        let name = match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(e);
            }
            Some(Tok::Ident(name)) => name.clone(),
            _ => {
                return Err(syntax(
                    offset,
                    format!("expected a sheaf, found {}", self.describe()),
                ));
            }
        };
        self.pos += 1;
        match name.as_str() {
            "O" => {
                self.expect(Tok::LParen, "`(` after `O`")?;
                let t = self.int()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(SheafExpr::line(t))
            }
            "TX" => self.twist_suffix(SheafExpr::tangent()),
            "Omega1" => self.twist_suffix(SheafExpr::cotangent()),
            "twist" => {
                self.expect(Tok::LParen, "`(`")?;
                let e = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let t = self.int()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e.twist(t))
            }
            "dual" | "rdual" => {
                self.expect(Tok::LParen, "`(`")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(if name == "dual" { e.dual() } else { e.rdual() })
            }
            "coker" => {
                let (sub, ambient) = self.arrow_pair()?;
                Ok(SheafExpr::coker(sub, ambient))
            }
            "ker" => {
                let (ambient, quotient) = self.arrow_pair()?;
                Ok(SheafExpr::ker(ambient, quotient))
            }
            _ => Ok(SheafExpr::Atom(Atom::Named(name))),
        }
    }
}

/// Parses a sheaf expression.
///
/// ```text
/// expr := term ("+" term)*
/// term := "(" expr ")" | "O(" int ")" | "TX" ["(" int ")"] | "Omega1" ["(" int ")"]
///       | "twist(" expr "," int ")" | "dual(" expr ")" | "rdual(" expr ")"
///       | "coker(" expr "->" expr ")" | "ker(" expr "->" expr ")" | ident
/// ```
pub fn parse(src: &str) -> Result<SheafExpr> {
    let tokens = lex(src)?;
    if tokens.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        src,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(syntax(p.offset(), format!("unexpected {}", p.describe())));
    }
    Ok(e)
}

/// Whether `id` can be used as a user-declared atom.
pub fn is_valid_identifier(id: &str) -> bool {
    let mut chars = id.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&id)
}

/// Parses a batch file: one expression per line, `#` starts a comment.
/// Yields the 1-based line number with each result.
pub fn parse_batch(src: &str) -> Vec<(usize, Result<SheafExpr>)> {
    src.lines()
        .enumerate()
        .filter_map(|(n, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| (n + 1, parse(body)))
        })
        .collect()
}
