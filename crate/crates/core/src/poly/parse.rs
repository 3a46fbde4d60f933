//! Expression grammar shared by polynomials and Weyl operators.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/' | <juxtaposition>) unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `7/2` is a rational
//! literal. Juxtaposition multiplies, which is how operators are written
//! (`x dx`).

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Polynomial, Rational, VariableContext};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Ident { name: String, pos: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div { num: Box<Expr>, den: Box<Expr>, pos: usize },
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Num(s.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Ident(s), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                lhs = Expr::Div { num: Box::new(lhs), den: Box::new(self.unary()?), pos };
            } else if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    let e = n.to_u32().ok_or(Error::Syntax { pos, msg: "exponent too large".into() })?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(Error::Syntax { pos, msg: "expected a non-negative integer exponent".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Expr::Ident { name, pos })
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Syntax { pos: self.pos(), msg: "expected `)`".into() });
                }
                Ok(e)
            }
            Some(Tok::Sym(c)) => Err(Error::Syntax { pos, msg: format!("unexpected `{c}`") }),
            None => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(Error::Syntax { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(e)
}

/// All identifiers occurring in `text`, in order of appearance.
pub fn identifiers(text: &str) -> Result<Vec<String>> {
    Ok(tokenize(text)?
        .into_iter()
        .filter_map(|(t, _)| match t {
            Tok::Ident(s) => Some(s),
            _ => None,
        })
        .collect())
}

/// Target of expression evaluation.
pub trait ExprAlgebra: Sized + Clone {
    fn from_integer(&self, n: &BigInt) -> Self;
    fn ident(&self, name: &str, pos: usize) -> Result<Self>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn as_constant(&self) -> Option<Rational>;
    fn scale(&self, c: &Rational) -> Self;
}

/// Evaluates `e` using `proto` as a context carrier for constants and names.
pub fn evaluate<A: ExprAlgebra>(e: &Expr, proto: &A) -> Result<A> {
    Ok(match e {
        Expr::Num(n) => proto.from_integer(n),
        Expr::Ident { name, pos } => proto.ident(name, *pos)?,
        Expr::Add(a, b) => evaluate(a, proto)?.add(&evaluate(b, proto)?),
        Expr::Sub(a, b) => evaluate(a, proto)?.sub(&evaluate(b, proto)?),
        Expr::Mul(a, b) => evaluate(a, proto)?.mul(&evaluate(b, proto)?),
        Expr::Neg(a) => evaluate(a, proto)?.neg(),
        Expr::Pow(a, k) => {
            let base = evaluate(a, proto)?;
            let mut acc = proto.from_integer(&BigInt::from(1));
            for _ in 0..*k {
                acc = acc.mul(&base);
            }
            acc
        }
        Expr::Div { num, den, pos } => {
            let d = evaluate(den, proto)?
                .as_constant()
                .ok_or(Error::Syntax { pos: *pos, msg: "division by a non-constant".into() })?;
            if d.is_zero() {
                return Err(Error::Syntax { pos: *pos, msg: "division by zero".into() });
            }
            evaluate(num, proto)?.scale(&d.recip())
        }
    })
}

impl ExprAlgebra for Polynomial {
    fn from_integer(&self, n: &BigInt) -> Self {
        Polynomial::constant(self.ring(), Rational::from_integer(n.clone()))
    }
    fn ident(&self, name: &str, _pos: usize) -> Result<Self> {
        match self.ring().index_of(name) {
            Some(i) => Ok(Polynomial::var(self.ring(), i)),
            None => Err(Error::UnknownVariable(name.to_string())),
        }
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn as_constant(&self) -> Option<Rational> {
        self.constant_value()
    }
    fn scale(&self, c: &Rational) -> Self {
        Polynomial::scale(self, c)
    }
}

pub fn parse_polynomial(text: &str, ring: &VariableContext) -> Result<Polynomial> {
    let e = parse_expr(text)?;
    evaluate(&e, &Polynomial::zero(ring))
}
