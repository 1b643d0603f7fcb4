//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary | '/' integer)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Division is accepted only by a nonzero
//! integer literal, which is what the canonical printer emits for
//! non-integral coefficients.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{owned_vars, MultiPoly, PolyError, Rational};

/// Resource limits for untrusted input.
#[derive(Debug, Clone, Copy)]
pub struct ParseLimits {
    pub max_depth: usize,
    pub max_exponent: u32,
    /// Upper bound on `terms(a) * terms(b)` for any single product.
    pub max_product_work: usize,
}

impl Default for ParseLimits {
    fn default() -> Self {
        ParseLimits { max_depth: 200, max_exponent: 4096, max_product_work: 4_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        if ch.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match ch {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                out.push((Tok::Int(digits.parse().expect("ascii digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let c = text[start..].chars().next().unwrap_or('?');
                return Err(PolyError::Syntax { pos: start, msg: format!("unexpected character `{}`", c) });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: Vec<String>,
    limits: &'a ParseLimits,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn enter(&mut self) -> Result<(), PolyError> {
        self.depth += 1;
        if self.depth > self.limits.max_depth {
            return self.err("expression nested too deeply");
        }
        Ok(())
    }

    fn checked_mul(&self, a: &MultiPoly, b: &MultiPoly, at: usize) -> Result<MultiPoly, PolyError> {
        if a.num_terms().saturating_mul(b.num_terms()) > self.limits.max_product_work {
            return Err(PolyError::Syntax { pos: at, msg: "expression too large".into() });
        }
        let da = a.total_degree().unwrap_or(0) as u64;
        let db = b.total_degree().unwrap_or(0) as u64;
        if da + db > self.limits.max_exponent as u64 {
            return Err(PolyError::Syntax { pos: at, msg: "degree exceeds limit".into() });
        }
        Ok(a * b)
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        self.enter()?;
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    let at = self.offset();
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.checked_mul(&acc, &rhs, at)?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    match self.bump() {
                        Tok::Int(n) if !n.is_zero() => {
                            acc = acc.scale(&Rational::new(BigInt::from(1), n));
                        }
                        Tok::Int(_) => {
                            return Err(PolyError::Syntax { pos: at, msg: "division by zero".into() })
                        }
                        _ => {
                            return Err(PolyError::Syntax {
                                pos: at,
                                msg: "division is only allowed by an integer literal".into(),
                            })
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                self.enter()?;
                let v = -self.unary()?;
                self.depth -= 1;
                Ok(v)
            }
            Tok::Plus => {
                self.bump();
                self.enter()?;
                let v = self.unary()?;
                self.depth -= 1;
                Ok(v)
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let k = match self.bump() {
            Tok::Int(n) => n,
            Tok::Minus => return Err(PolyError::Syntax { pos: at, msg: "negative exponent".into() }),
            _ => return Err(PolyError::Syntax { pos: at, msg: "expected integer exponent".into() }),
        };
        let k = match k.to_u32() {
            Some(k) if k <= self.limits.max_exponent => k,
            _ => return Err(PolyError::Syntax { pos: at, msg: "exponent exceeds limit".into() }),
        };
        let deg = base.total_degree().unwrap_or(0) as u64;
        if deg * k as u64 > self.limits.max_exponent as u64 {
            return Err(PolyError::Syntax { pos: at, msg: "degree exceeds limit".into() });
        }
        if base.num_terms() > 1 {
            let nv = base.support_vars().len() as u32;
            let upper = (deg * k as u64 + 1).saturating_pow(nv);
            if upper > self.limits.max_product_work as u64 {
                return Err(PolyError::Syntax { pos: at, msg: "expression too large".into() });
            }
        }
        Ok(base.pow_u(k as u64))
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(MultiPoly::constant_owned(self.vars.clone(), Rational::from_integer(n))),
            Tok::Ident(name) => {
                if !self.vars.contains(&name) {
                    return Err(PolyError::UndeclaredVariable { name, pos: at });
                }
                MultiPoly::var_owned(self.vars.clone(), &name)
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(PolyError::Syntax { pos: at, msg: "unexpected end of input".into() }),
            t => Err(PolyError::Syntax { pos: at, msg: format!("unexpected token {:?}", t) }),
        }
    }
}

/// Parses `text` over the declared variables `vars` with default limits.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MultiPoly, PolyError> {
    parse_poly_with(text, &owned_vars(vars), &ParseLimits::default())
}

pub fn parse_poly_with(text: &str, vars: &[String], limits: &ParseLimits) -> Result<MultiPoly, PolyError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, vars: vars.to_vec(), limits, depth: 0 };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}
