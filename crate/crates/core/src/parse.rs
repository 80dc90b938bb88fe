//! Text input for ideals.
//!
//! ```text
//! ideal  := poly (',' poly)*
//! poly   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' nat)?
//! atom   := variable | integer | '(' poly ')'
//! ```
//!
//! Juxtaposed atoms multiply, so `2x`, `x y` and `3(x+y)` are accepted.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::Ideal;
use crate::poly::{Polynomial, PolynomialRing, Ring};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v: BigInt = src[start..i].parse().expect("digits");
            out.push((Tok::Int(v), start));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{}`", src[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((t, start));
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Var(String),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn ideal(&mut self) -> Result<Vec<Expr>> {
        let mut gens = vec![self.poly()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            gens.push(self.poly()?);
        }
        if self.pos < self.toks.len() {
            return self.err("unexpected token");
        }
        Ok(gens)
    }

    fn poly(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                negative = true;
                self.pos += 1
            }
            _ => {}
        }
        terms.push((negative, self.term()?));
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
            terms.push((neg, self.term()?));
        }
        Ok(Expr::Sum(terms))
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_) | Tok::Int(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                factors.push(self.factor()?);
            } else if self.starts_atom() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(Expr::Product(factors))
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return self.err("expected a natural-number exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.poly()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected a variable, integer or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn collect_vars(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Num(_) => {}
        Expr::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Expr::Sum(ts) => ts.iter().for_each(|(_, t)| collect_vars(t, out)),
        Expr::Product(fs) => fs.iter().for_each(|f| collect_vars(f, out)),
        Expr::Pow(b, _) => collect_vars(b, out),
    }
}

fn eval(e: &Expr, ring: &Ring) -> Result<Polynomial> {
    Ok(match e {
        Expr::Num(v) => Polynomial::constant(ring, ring.field().from_bigint(v)),
        Expr::Var(name) => match ring.var_index(name) {
            Ok(i) => Polynomial::var_at(ring, i),
            Err(_) => return Err(Error::UnknownVariable(name.clone())),
        },
        Expr::Sum(ts) => {
            let mut acc = Polynomial::zero(ring);
            for (neg, t) in ts {
                let v = eval(t, ring)?;
                acc = if *neg { &acc - &v } else { &acc + &v };
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = Polynomial::one(ring);
            for f in fs {
                acc = &acc * &eval(f, ring)?;
            }
            acc
        }
        Expr::Pow(b, k) => eval(b, ring)?.pow(*k),
    })
}

fn parse_exprs(src: &str) -> Result<Vec<Expr>> {
    if src.trim().is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty input".into() });
    }
    let toks = lex(src)?;
    Parser { toks, pos: 0, end: src.len() }.ideal()
}

/// Variables of `src` in order of first appearance.
pub fn infer_variables(src: &str) -> Result<Vec<String>> {
    let mut vars = Vec::new();
    for e in parse_exprs(src)? {
        collect_vars(&e, &mut vars);
    }
    Ok(vars)
}

/// Parse comma-separated polynomials into `ring`.
pub fn parse_polynomials(src: &str, ring: &Ring) -> Result<Vec<Polynomial>> {
    parse_exprs(src)?.iter().map(|e| eval(e, ring)).collect()
}

pub fn parse_polynomial(src: &str, ring: &Ring) -> Result<Polynomial> {
    let mut v = parse_polynomials(src, ring)?;
    if v.len() != 1 {
        return Err(Error::Parse { pos: 0, msg: "expected a single polynomial".into() });
    }
    Ok(v.pop().unwrap())
}

/// Parse an ideal. With `vars` given, any other identifier is an
/// [`Error::UnknownVariable`]; otherwise variables are inferred in order of
/// first appearance. The input `"0"` yields the zero ideal.
pub fn parse_ideal(src: &str, vars: Option<&[String]>, field: FieldSpec) -> Result<Ideal> {
    let exprs = parse_exprs(src)?;
    let names = match vars {
        Some(v) => v.to_vec(),
        None => {
            let mut names = Vec::new();
            exprs.iter().for_each(|e| collect_vars(e, &mut names));
            names
        }
    };
    let ring = PolynomialRing::new(names, field)?;
    let gens = exprs.iter().map(|e| eval(e, &ring)).collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(&ring, gens))
}
