//! Tokens and the expression grammar shared by `Element::parse` and the
//! spec-file parser.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary ("*" unary)*
//! unary := "-" unary | power
//! power := atom ("^" INT)?
//! atom  := INT ("/" INT)? | IDENT "[" INT "]" | "(" expr ")"
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Element, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub offset: usize,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(BigInt),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Equals,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "`{s}`"),
            TokenKind::Int(n) => write!(f, "`{n}`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Plus => f.write_str("`+`"),
            TokenKind::Minus => f.write_str("`-`"),
            TokenKind::Star => f.write_str("`*`"),
            TokenKind::Slash => f.write_str("`/`"),
            TokenKind::Caret => f.write_str("`^`"),
            TokenKind::Equals => f.write_str("`=`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub span: Span,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)
    }
}

impl std::error::Error for SyntaxError {}

impl SyntaxError {
    pub fn new(span: Span, message: impl Into<String>) -> Self {
        Self {
            span,
            message: message.into(),
        }
    }
}

/// Tokenize, skipping whitespace and `#` comments. The result always ends in `Eof`.
pub fn lex(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.char_indices().peekable();
    while let Some(&(offset, c)) = chars.peek() {
        let span = Span { offset, line, col };
        let mut advance = |chars: &mut std::iter::Peekable<std::str::CharIndices<'_>>| {
            let (_, c) = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                advance(&mut chars);
            }
            continue;
        }
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    advance(&mut chars);
                } else {
                    break;
                }
            }
            TokenKind::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    advance(&mut chars);
                } else {
                    break;
                }
            }
            TokenKind::Int(s.parse().expect("digits"))
        } else {
            let kind = match c {
                '[' => TokenKind::LBracket,
                ']' => TokenKind::RBracket,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '/' => TokenKind::Slash,
                '^' => TokenKind::Caret,
                '=' => TokenKind::Equals,
                other => {
                    return Err(SyntaxError::new(
                        span,
                        format!("unexpected character `{other}`"),
                    ))
                }
            };
            advance(&mut chars);
            kind
        };
        tokens.push(Token { kind, span });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: Span {
            offset: text.len(),
            line,
            col,
        },
    });
    Ok(tokens)
}

/// Cursor over a token stream.
pub struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(tokens: &'a [Token]) -> Self {
        Self { tokens, pos: 0 }
    }

    /// Index of the next token.
    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn peek(&self) -> &'a Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    pub fn peek_kind(&self) -> &'a TokenKind {
        &self.peek().kind
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> &'a Token {
        let t = self.peek();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek_kind(), TokenKind::Eof)
    }

    pub fn expect(&mut self, kind: &TokenKind) -> Result<&'a Token, SyntaxError> {
        let t = self.peek();
        if &t.kind == kind {
            Ok(self.next())
        } else {
            Err(SyntaxError::new(
                t.span,
                format!("expected {kind}, found {}", t.kind),
            ))
        }
    }

    pub fn ident(&mut self) -> Result<(&'a str, Span), SyntaxError> {
        let t = self.next();
        match &t.kind {
            TokenKind::Ident(s) => Ok((s.as_str(), t.span)),
            other => Err(SyntaxError::new(
                t.span,
                format!("expected identifier, found {other}"),
            )),
        }
    }

    pub fn keyword(&mut self, word: &str) -> Result<Span, SyntaxError> {
        let t = self.next();
        match &t.kind {
            TokenKind::Ident(s) if s == word => Ok(t.span),
            other => Err(SyntaxError::new(
                t.span,
                format!("expected `{word}`, found {other}"),
            )),
        }
    }

    pub fn small_int(&mut self) -> Result<(u32, Span), SyntaxError> {
        let t = self.next();
        match &t.kind {
            TokenKind::Int(n) => n
                .to_u32()
                .map(|v| (v, t.span))
                .ok_or_else(|| SyntaxError::new(t.span, "integer too large")),
            other => Err(SyntaxError::new(
                t.span,
                format!("expected integer, found {other}"),
            )),
        }
    }

    /// `IDENT "[" INT "]"`, returning name, index and the span of the name.
    pub fn indexed(&mut self) -> Result<(&'a str, u32, Span), SyntaxError> {
        let (name, span) = self.ident()?;
        self.expect(&TokenKind::LBracket)?;
        let (index, _) = self.small_int()?;
        self.expect(&TokenKind::RBracket)?;
        Ok((name, index, span))
    }
}

/// Resolves `name[index]` at `span` to an element.
pub trait Resolver {
    fn resolve(&self, name: &str, index: u32, span: Span) -> Result<Element, SyntaxError>;
    fn constant(&self, value: Rational) -> Element;
}

pub fn parse_expr(cur: &mut Cursor<'_>, res: &dyn Resolver) -> Result<Element, SyntaxError> {
    let mut acc = parse_term(cur, res)?;
    loop {
        match cur.peek_kind() {
            TokenKind::Plus => {
                cur.next();
                acc = &acc + &parse_term(cur, res)?;
            }
            TokenKind::Minus => {
                cur.next();
                acc = &acc - &parse_term(cur, res)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(cur: &mut Cursor<'_>, res: &dyn Resolver) -> Result<Element, SyntaxError> {
    let mut acc = parse_unary(cur, res)?;
    while matches!(cur.peek_kind(), TokenKind::Star) {
        cur.next();
        acc = &acc * &parse_unary(cur, res)?;
    }
    Ok(acc)
}

fn parse_unary(cur: &mut Cursor<'_>, res: &dyn Resolver) -> Result<Element, SyntaxError> {
    if matches!(cur.peek_kind(), TokenKind::Minus) {
        cur.next();
        return Ok(-&parse_unary(cur, res)?);
    }
    let base = parse_atom(cur, res)?;
    if matches!(cur.peek_kind(), TokenKind::Caret) {
        cur.next();
        let (n, _) = cur.small_int()?;
        return Ok(base.pow(n));
    }
    Ok(base)
}

fn parse_atom(cur: &mut Cursor<'_>, res: &dyn Resolver) -> Result<Element, SyntaxError> {
    let t = cur.peek();
    match &t.kind {
        TokenKind::Int(n) => {
            cur.next();
            let mut value = Rational::from_integer(n.clone());
            if matches!(cur.peek_kind(), TokenKind::Slash) {
                cur.next();
                let d = cur.next();
                match &d.kind {
                    TokenKind::Int(den) if !den.is_zero() => {
                        value = Rational::new(n.clone(), den.clone());
                    }
                    TokenKind::Int(_) => return Err(SyntaxError::new(d.span, "zero denominator")),
                    other => {
                        return Err(SyntaxError::new(
                            d.span,
                            format!("expected denominator, found {other}"),
                        ))
                    }
                }
            }
            Ok(res.constant(value))
        }
        TokenKind::Ident(_) => {
            let (name, index, span) = cur.indexed()?;
            res.resolve(name, index, span)
        }
        TokenKind::LParen => {
            cur.next();
            let e = parse_expr(cur, res)?;
            cur.expect(&TokenKind::RParen)?;
            Ok(e)
        }
        other => Err(SyntaxError::new(
            t.span,
            format!("expected expression, found {other}"),
        )),
    }
}
