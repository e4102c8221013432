//! Polynomial text syntax: `3*x^2*y - y^3 + 1`, parentheses allowed,
//! coefficients may be written `p/q`.

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), start));
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(Error::Parse(format!(
                        "unexpected character `{c}` at column {}",
                        start + 1
                    )))
                }
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    field: &'a F,
    vars: &'a [String],
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| c + 1)
            .unwrap_or(self.len + 1)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {}", self.column()))
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        let n = self.vars.len();
        let mut acc = Poly::zero(n);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            acc = if neg {
                acc.sub(self.field, &t)
            } else {
                acc.add(self.field, &t)
            };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(self.field, &f);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(s)) => {
                    let e = s
                        .parse::<u32>()
                        .map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    Ok(e)
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Poly<F>> {
        let n = self.vars.len();
        let col = self.column();
        let base = match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                let mut text = s;
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            text = format!("{text}/{d}");
                        }
                        _ => return Err(self.err("expected a denominator")),
                    }
                }
                let c = self
                    .field
                    .parse(&text)
                    .map_err(|e| Error::Parse(format!("{e} at column {col}")))?;
                Poly::constant(self.field, n, c)
            }
            Some(Tok::Ident(name)) => {
                let Some(i) = self.vars.iter().position(|v| *v == name) else {
                    return Err(Error::Parse(format!(
                        "unknown variable `{name}` at column {col}"
                    )));
                };
                self.pos += 1;
                Poly::var(self.field, n, i)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(_) => return Err(self.err("unexpected token")),
            None => return Err(self.err("unexpected end of input")),
        };
        let e = self.exponent()?;
        Ok(if e == 1 {
            base
        } else {
            base.pow(self.field, e)
        })
    }
}

/// Parses `src` as a polynomial in `vars`.
pub fn parse_poly<F: Field>(field: &F, vars: &[String], src: &str) -> Result<Poly<F>> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        field,
        vars,
        toks,
        pos: 0,
        len: src.chars().count(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected token"));
    }
    Ok(out)
}

/// Monomial shorthand used in tests: exponent vector to polynomial.
pub fn monomial_poly<F: Field>(field: &F, exps: &[u32]) -> Poly<F> {
    Poly::term(field, field.one(), Monomial::new(exps.to_vec()))
}
