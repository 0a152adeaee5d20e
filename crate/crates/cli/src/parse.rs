//! Polynomial grammar:
//!
//! ```text
//! poly     := ["+"|"-"] term (("+"|"-") term)*
//! term     := factor ("*" factor)*
//! factor   := rational | ident ["^" nat] | "(" poly ")" ["^" nat]
//! rational := int ["/" nat]
//! ```
//!
//! Whitespace is ignored. Implicit multiplication is rejected.

use derivring_core::{MonomialOrder, Polynomial, Rational};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        let tok = match c {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                out.push((start, Tok::Int(chars[start..k].iter().collect())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                out.push((start, Tok::Ident(chars[start..k].iter().collect())));
                continue;
            }
            other => return Err(ParseError { column: start + 1, message: format!("unexpected character '{}'", other) }),
        };
        out.push((start, tok));
        k += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
    order: MonomialOrder,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c) + 1
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.column(), message: message.into() })
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        match self.peek() {
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                self.fail("implicit multiplication is not allowed; use '*'")
            }
            _ => Ok(acc),
        }
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                let v = s.parse::<u32>().or_else(|_| self.fail("exponent too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("expected a natural number"),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            self.nat()
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.pos += 1;
                let mut text = num;
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let col = self.column();
                    let den = self.nat()?;
                    if den == 0 {
                        return Err(ParseError { column: col, message: "division by zero".into() });
                    }
                    text = format!("{}/{}", text, den);
                }
                let c: Rational = text.parse().or_else(|_| self.fail("malformed rational"))?;
                Ok(Polynomial::constant(n, self.order, c))
            }
            Some(Tok::Ident(name)) => {
                let Some(k) = self.vars.iter().position(|v| *v == name) else {
                    return self.fail(format!("unknown identifier '{}'", name));
                };
                self.pos += 1;
                let e = self.exponent()?;
                Ok(Polynomial::var(n, k, self.order).pow(e))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.poly()?;
                match self.peek() {
                    Some(Tok::RParen) => self.pos += 1,
                    _ => return self.fail("expected ')'"),
                }
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            Some(_) => self.fail("expected a number, identifier or '('"),
            None => self.fail("unexpected end of input"),
        }
    }
}

/// Parses `s` as a polynomial in `vars` under `order`.
pub fn parse_polynomial(s: &str, vars: &[String], order: MonomialOrder) -> Result<Polynomial, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, end: s.chars().count(), vars, order };
    let out = p.poly()?;
    if p.pos != p.toks.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(out)
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let t = s.trim();
    let bad = || ParseError { column: 1, message: format!("'{}' is not a rational number", t) };
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let ok = !body.is_empty()
        && body.split('/').count() <= 2
        && body.split('/').all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit()));
    if !ok {
        return Err(bad());
    }
    if let Some((_, den)) = body.split_once('/') {
        if den.chars().all(|c| c == '0') {
            return Err(ParseError { column: 1, message: "division by zero".into() });
        }
    }
    let v: Rational = body.parse().map_err(|_| bad())?;
    Ok(if neg && !v.is_zero() { -v } else { v })
}

/// `[A-Za-z][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut it = s.chars();
    matches!(it.next(), Some(c) if c.is_ascii_alphabetic()) && it.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Canonical text of `p`: degrevlex-descending terms.
pub fn print_polynomial(p: &Polynomial, vars: &[String]) -> String {
    p.with_order(MonomialOrder::DegRevLex).display(vars).to_string()
}
