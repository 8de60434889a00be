//! The input language for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ('+' | '-')? base ('^' nat)?
//! base   := rational | var | '(' expr ')'
//! ```
//!
//! A rational literal is `n` or `n/d`. Juxtaposition is rejected, so `2x`
//! must be written `2*x`. A leading sign binds looser than `^`, so `-x^2`
//! is `-(x^2)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::algebra::signature::s_names;
use crate::algebra::{MultiPoly, Rational, Signature};
use crate::error::{Error, Result};
use crate::pipeline::InputTuple;

/// Exponents above this are refused rather than expanded.
pub const MAX_EXPONENT: u32 = 1000;

/// Syntax tree of a polynomial expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Num(Rational),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    /// Distinct variable names.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            PolyExpr::Num(_) => {}
            PolyExpr::Var(v) => {
                out.insert(v.clone());
            }
            PolyExpr::Neg(a) | PolyExpr::Pow(a, _) => a.collect_vars(out),
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) | PolyExpr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Expands over `sig`; every variable must be declared there.
    pub fn eval(&self, sig: &Signature) -> Result<MultiPoly> {
        Ok(match self {
            PolyExpr::Num(q) => MultiPoly::constant(sig, q.clone()),
            PolyExpr::Var(v) => MultiPoly::var_named(sig, v)?,
            PolyExpr::Neg(a) => -&a.eval(sig)?,
            PolyExpr::Add(a, b) => &a.eval(sig)? + &b.eval(sig)?,
            PolyExpr::Sub(a, b) => &a.eval(sig)? - &b.eval(sig)?,
            PolyExpr::Mul(a, b) => &a.eval(sig)? * &b.eval(sig)?,
            PolyExpr::Pow(a, e) => a.eval(sig)?.pow(*e),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
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
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(digits.parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = PolyExpr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = PolyExpr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = PolyExpr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => return self.err("division is only allowed inside a rational literal"),
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
                    return self.err("implicit multiplication is not allowed; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                return Ok(PolyExpr::Neg(Box::new(self.factor()?)));
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                return self.factor();
            }
            _ => {}
        }
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let caret = self.here();
        self.pos += 1;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let at = self.here();
                self.pos += 1;
                if self.peek() == Some(&Tok::Slash) {
                    return self.err("fractional exponent");
                }
                match u32::try_from(n) {
                    Ok(e) if e <= MAX_EXPONENT => Ok(PolyExpr::Pow(Box::new(base), e)),
                    _ => Err(Error::Syntax {
                        pos: at,
                        msg: format!("exponent exceeds {MAX_EXPONENT}"),
                    }),
                }
            }
            Some(Tok::Minus) => Err(Error::Syntax {
                pos: caret,
                msg: "negative exponent at `^-`".into(),
            }),
            _ => self.err("expected a non-negative integer exponent"),
        }
    }

    fn base(&mut self) -> Result<PolyExpr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.peek() != Some(&Tok::Slash) {
                    return Ok(PolyExpr::Num(Rational::from_integer(n)));
                }
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::Int(d)) if d != BigInt::from(0) => {
                        self.pos += 1;
                        Ok(PolyExpr::Num(Rational::new(n, d)))
                    }
                    Some(Tok::Int(_)) => self.err("zero denominator"),
                    _ => self.err("expected an integer denominator"),
                }
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(PolyExpr::Var(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => self.err("expected a number, a variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses the syntax tree without resolving variables.
pub fn parse_expr(src: &str) -> Result<PolyExpr> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.chars().count(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected token");
    }
    Ok(e)
}

fn is_reserved(v: &str) -> bool {
    let rest = |p: &str| v.strip_prefix(p).is_some_and(|r| r.is_empty() || r.chars().all(|c| c.is_ascii_digit()));
    rest("s") || rest("t") || v.starts_with("d_")
}

/// Index of `x1..xn` style names.
fn indexed(v: &str) -> Option<usize> {
    let r = v.strip_prefix('x')?;
    if r.is_empty() || r.starts_with('0') || !r.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    r.parse().ok()
}

/// The coordinate names used by a set of expressions, in canonical order:
/// a subset of `x, y, z`, or of `x1, x2, …`; `x` alone when none are used.
pub fn x_variables<'a>(exprs: impl IntoIterator<Item = &'a PolyExpr>) -> Result<Vec<String>> {
    let mut used = BTreeSet::new();
    for e in exprs {
        used.extend(e.variables());
    }
    for v in &used {
        if is_reserved(v) {
            return Err(Error::InvalidInput(format!("`{v}` is reserved and cannot appear in f")));
        }
        if !matches!(v.as_str(), "x" | "y" | "z") && indexed(v).is_none() {
            return Err(Error::UnknownVariable(v.clone()));
        }
    }
    let plain: Vec<String> = ["x", "y", "z"]
        .into_iter()
        .filter(|v| used.contains(*v))
        .map(String::from)
        .collect();
    let mut idx: Vec<(usize, String)> = used.iter().filter_map(|v| Some((indexed(v)?, v.clone()))).collect();
    if !plain.is_empty() && !idx.is_empty() {
        return Err(Error::InvalidInput("mixes x, y, z with x1..xn".into()));
    }
    if !idx.is_empty() {
        idx.sort();
        return Ok(idx.into_iter().map(|(_, v)| v).collect());
    }
    Ok(if plain.is_empty() { vec!["x".into()] } else { plain })
}

/// A polynomial in the coordinates it mentions.
pub fn parse_poly(src: &str) -> Result<MultiPoly> {
    let e = parse_expr(src)?;
    let names = x_variables([&e])?;
    e.eval(&Signature::x_vars(&names)?)
}

/// A tuple of polynomials over the union of their coordinates.
pub fn parse_tuple<S: AsRef<str>>(srcs: &[S]) -> Result<InputTuple> {
    let exprs: Vec<PolyExpr> = srcs.iter().map(|s| parse_expr(s.as_ref())).collect::<Result<_>>()?;
    let names = x_variables(&exprs)?;
    let sig = Signature::x_vars(&names)?;
    let polys: Vec<MultiPoly> = exprs.iter().map(|e| e.eval(&sig)).collect::<Result<_>>()?;
    InputTuple::new(&names, &polys)
}

/// A polynomial in the parameters `s` (r = 1) or `s1..sr`.
pub fn parse_s_poly(src: &str, r: usize) -> Result<MultiPoly> {
    let e = parse_expr(src)?;
    let allowed = s_names(r);
    if let Some(v) = e.variables().into_iter().find(|v| !allowed.contains(v)) {
        return Err(Error::UnknownVariable(v));
    }
    e.eval(&Signature::s_params(r))
}
