//! Polynomial expression syntax.
//!
//! ```text
//! expr   := unary (('+' | '-') unary)*
//! unary  := '-' unary | term
//! term   := factor ('*' factor)*
//! factor := base ('^' nonneg-int)?
//! base   := literal | variable | '(' expr ')'
//! literal:= int ('/' int)?
//! ```
//!
//! `^` binds tighter than `*`, which binds tighter than `+`/`-`. Unary minus
//! binds looser than `^`, so `-t^2` is `-(t^2)`. Juxtaposition is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{Ctx, Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownVariable,
    BadExponent,
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownVariable => "unknown variable",
            ParseErrorKind::BadExponent => "bad exponent",
            ParseErrorKind::DivisionByZero => "division by zero",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Other(char),
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Vec<Spanned> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().unwrap())
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => Tok::Other(other),
            }
        };
        column += i - start;
        out.push(Spanned { tok, line: l0, column: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    out
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ctx: &'a Ctx,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError { kind, line: at.line, column: at.column, message: message.into() }
    }

    fn error(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        self.error_at(&self.toks[self.pos], kind, message)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.unary()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.term()
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.bump();
        let e = match &at.tok {
            Tok::Int(v) => v.to_u32().ok_or_else(|| {
                self.error_at(&at, ParseErrorKind::BadExponent, "exponent too large")
            })?,
            Tok::Minus => {
                return Err(self.error_at(&at, ParseErrorKind::BadExponent, "negative exponent"))
            }
            _ => {
                return Err(self.error_at(
                    &at,
                    ParseErrorKind::BadExponent,
                    "exponent must be a nonnegative integer literal",
                ))
            }
        };
        if let Tok::Other('.') = self.peek() {
            return Err(self.error(ParseErrorKind::BadExponent, "exponent must be an integer"));
        }
        Ok(base.pow(e as u64))
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.bump();
        match &at.tok {
            Tok::Int(num) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let den_at = self.bump();
                    let Tok::Int(den) = &den_at.tok else {
                        return Err(self.error_at(&den_at, ParseErrorKind::Syntax, "expected denominator"));
                    };
                    if den.is_zero() {
                        return Err(self.error_at(&den_at, ParseErrorKind::DivisionByZero, "zero denominator"));
                    }
                    let c = self.ctx.field().from_fraction(num, den).map_err(|_| {
                        self.error_at(&den_at, ParseErrorKind::DivisionByZero, "denominator vanishes in this field")
                    })?;
                    Ok(Polynomial::constant(self.ctx, c))
                } else {
                    Ok(Polynomial::constant(self.ctx, self.ctx.field().from_bigint(num)))
                }
            }
            Tok::Ident(name) => match self.ctx.index_of(name) {
                Ok(i) => Ok(Polynomial::var(self.ctx, i)),
                Err(_) => Err(self.error_at(
                    &at,
                    ParseErrorKind::UnknownVariable,
                    format!("`{name}` is not declared"),
                )),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(ParseErrorKind::Syntax, "expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(self.error_at(&at, ParseErrorKind::Syntax, "unexpected end of input")),
            other => Err(self.error_at(&at, ParseErrorKind::Syntax, format!("unexpected {}", describe(other)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("number `{v}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Slash => "`/`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Other(c) => format!("character `{c}`"),
        Tok::End => "end of input".into(),
    }
}

/// Parses `text` into a canonical polynomial over `ctx`.
pub fn parse(text: &str, ctx: &Ctx) -> Result<Polynomial, ParseError> {
    let mut p = Parser { toks: lex(text), pos: 0, ctx };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::Ident(_) | Tok::Int(_) | Tok::LParen => Err(p.error(
            ParseErrorKind::Syntax,
            format!("unexpected {}; implicit multiplication is not allowed", describe(p.peek())),
        )),
        other => {
            let msg = format!("unexpected {}", describe(other));
            Err(p.error(ParseErrorKind::Syntax, msg))
        }
    }
}

/// Parses a `;`-separated list such as `"t1;t1*t2"`.
pub fn parse_list(text: &str, ctx: &Ctx) -> Result<Vec<Polynomial>, ParseError> {
    let mut out = Vec::new();
    let mut offset_line = 0;
    let mut offset_col = 0;
    for piece in text.split(';') {
        let parsed = parse(piece, ctx).map_err(|mut e| {
            if e.line == 1 {
                e.column += offset_col;
            }
            e.line += offset_line;
            e
        })?;
        out.push(parsed);
        let newlines = piece.matches('\n').count();
        if newlines > 0 {
            offset_line += newlines;
            offset_col = piece.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        } else {
            offset_col += piece.chars().count() + 1;
        }
    }
    Ok(out)
}

fn print_monomial(out: &mut String, names: &[String], m: &Monomial) {
    let mut first = true;
    for (name, &e) in names.iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(name);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Deterministic rendering in the context's term order; `parse` inverts it.
pub fn print(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = p.ctx().names();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let (neg, abs) = c.as_signed_display();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.is_one() {
            out.push_str(&abs);
        } else {
            if abs != "1" {
                out.push_str(&abs);
                out.push('*');
            }
            print_monomial(&mut out, names, m);
        }
    }
    out
}
