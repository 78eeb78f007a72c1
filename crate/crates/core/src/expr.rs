//! Expression sublanguage for elements and tensors of a presented algebra.
//!
//! ```text
//! sum     := tprod (('+' | '-') tprod)*
//! tprod   := product ('|' product)*          slots of a pure tensor
//! product := unary (('*' | '/' int | juxtaposition) unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' int)?
//! atom    := int | 'zeta' | name | '(' sum ')'
//! ```
//!
//! `zeta` is the primitive root of unity of the algebra's conductor.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{Algebra, AlgebraExt, Element, Tensor};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Int(s.parse().expect("digits parse")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^|()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, A: Algebra + ?Sized> {
    alg: &'a A,
    tokens: Vec<Token>,
    pos: usize,
    src: &'a str,
}

impl<'a, A: Algebra + ?Sized> Parser<'a, A> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at token {} in {:?}", self.pos, self.src))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.tokens.get(self.pos) {
            Some(Token::Int(n)) => {
                self.pos += 1;
                let v = n.to_i64().ok_or_else(|| self.err("integer too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("expected integer")),
        }
    }

    fn sum(&mut self) -> Result<Tensor> {
        let mut acc = self.tprod()?;
        loop {
            let sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                break;
            };
            let rhs = self.tprod()?;
            if rhs.level() != acc.level() {
                return Err(self.err("adding tensors with different slot counts"));
            }
            acc.add_scaled(&rhs, &Scalar::from_int(sign));
        }
        Ok(acc)
    }

    fn tprod(&mut self) -> Result<Tensor> {
        let first = self.product()?;
        if self.peek() != Some(&Token::Sym('|')) {
            return Ok(first);
        }
        let mut slots = vec![self.as_element(first)?];
        while self.eat('|') {
            let p = self.product()?;
            slots.push(self.as_element(p)?);
        }
        Ok(Tensor::pure(&slots))
    }

    fn as_element(&self, t: Tensor) -> Result<Element> {
        if t.level() != 1 {
            return Err(self.err("tensor used where a single slot is expected"));
        }
        Ok(t.to_element())
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Token::Int(_)) | Some(Token::Ident(_)) | Some(Token::Sym('(')))
    }

    fn product(&mut self) -> Result<Tensor> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.multiply(acc, rhs)?;
            } else if self.eat('/') {
                let d = self.int()?;
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                acc = acc.scale(&Scalar::from_frac(1, d));
            } else if self.starts_atom() {
                let rhs = self.power()?;
                acc = self.multiply(acc, rhs)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn multiply(&self, a: Tensor, b: Tensor) -> Result<Tensor> {
        let (a, b) = (self.as_element(a)?, self.as_element(b)?);
        Ok(Tensor::from_element(&self.alg.mul(&a, &b)))
    }

    fn unary(&mut self) -> Result<Tensor> {
        if self.eat('-') {
            return Ok(self.unary()?.scale(&Scalar::from_int(-1)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Tensor> {
        let is_zeta = matches!(self.peek(), Some(Token::Ident(s)) if s == "zeta");
        if is_zeta {
            self.pos += 1;
            let k = if self.eat('^') { self.int()? } else { 1 };
            let m = self.alg.conductor();
            return Ok(Tensor::from_element(&Element::scalar(Scalar::root_of_unity(m, k))));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.int()?;
            if e < 0 {
                return Err(self.err("negative exponent"));
            }
            let b = self.as_element(base)?;
            return Ok(Tensor::from_element(&self.alg.pow(&b, e as u32)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Tensor> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                let c = Scalar::from_rational(num_rational::BigRational::from_integer(n));
                Ok(Tensor::from_element(&Element::scalar(c)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let g = self
                    .alg
                    .gen_by_name(&name)
                    .ok_or_else(|| Error::UnknownName(format!("generator {name:?} of {}", self.alg.name())))?;
                Ok(Tensor::from_element(&self.alg.gen(g)))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parse a tensor expression; the slot count comes from the `|` separators.
pub fn parse_tensor<A: Algebra + ?Sized>(alg: &A, src: &str) -> Result<Tensor> {
    let mut p = Parser { alg, tokens: lex(src)?, pos: 0, src };
    let t = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

/// Parse a tensor expression with a required slot count.
pub fn parse_tensor_level<A: Algebra + ?Sized>(alg: &A, src: &str, level: usize) -> Result<Tensor> {
    let t = parse_tensor(alg, src)?;
    if t.level() != level {
        return Err(Error::Parse(format!("{src:?} has {} slots, expected {level}", t.level())));
    }
    Ok(t)
}

pub fn parse_element<A: Algebra + ?Sized>(alg: &A, src: &str) -> Result<Element> {
    Ok(parse_tensor_level(alg, src, 1)?.to_element())
}

/// Parse a scalar: an expression in `zeta` and rational numbers only.
pub fn parse_scalar(conductor: u32, src: &str) -> Result<Scalar> {
    let ground = crate::algebra::Presentation::new("scalars", conductor, Vec::new(), Vec::new())?;
    let e = parse_element(&ground, src)?;
    Ok(e.coeff(&[]))
}

/// Render a scalar in the syntax [`parse_scalar`] reads back, using powers
/// of the primitive `conductor`-th root of unity.
pub fn format_scalar(c: &Scalar, conductor: u32) -> String {
    if let Some(q) = c.as_rational() {
        return rational_display(q);
    }
    let Some(lifted) = c.in_field(conductor) else {
        return c.to_string();
    };
    let mut parts = Vec::new();
    for (i, q) in lifted.coefficients().iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let body = match i {
            0 => String::new(),
            1 => "zeta".to_string(),
            _ => format!("zeta^{i}"),
        };
        let coeff = rational_display(q);
        parts.push(match (body.is_empty(), coeff.as_str()) {
            (true, _) => coeff,
            (false, "1") => body,
            (false, "-1") => format!("-{body}"),
            (false, _) => format!("{coeff}*{body}"),
        });
    }
    let mut s = String::new();
    for (k, p) in parts.iter().enumerate() {
        if k == 0 {
            s.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(p);
        }
    }
    s
}

fn rational_display(q: &num_rational::BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
