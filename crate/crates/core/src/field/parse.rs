//! Recursive-descent parser for the element grammar shared by F_p[t], F_p(t)
//! and K: integers, `t`, `θ` (or `theta`), `+ - * / ^` and parentheses.
//! Whitespace is ignored; errors carry a 1-based column. Polynomial
//! equations additionally allow the variables `x`, `y`, `z` or `x1`, `x2`, ...

use super::kelem::KElem;
use crate::base::{fp, FElem, RPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u128),
    T,
    Theta,
    Var(usize),
    Op(char),
    End,
}

fn tokenize(s: &str, vars: bool) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut v: u128 = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(chars[i].to_digit(10).unwrap() as u128))
                    .ok_or(Error::Parse { column: col, message: "integer literal too large".into() })?;
                i += 1;
            }
            out.push((Tok::Int(v), col));
        } else if c == 'θ' {
            out.push((Tok::Theta, col));
            i += 1;
        } else if chars[i..].starts_with(&['t', 'h', 'e', 't', 'a']) {
            out.push((Tok::Theta, col));
            i += 5;
        } else if c == 't' {
            out.push((Tok::T, col));
            i += 1;
        } else if vars && c == 'x' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
            let mut v = 0usize;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                v = v.saturating_mul(10).saturating_add(chars[i].to_digit(10).unwrap() as usize);
                i += 1;
            }
            if v == 0 || v > 64 {
                return Err(Error::Parse { column: col, message: "variable index out of range".into() });
            }
            out.push((Tok::Var(v - 1), col));
        } else if vars && "xyz".contains(c) {
            out.push((Tok::Var("xyz".find(c).unwrap()), col));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(Error::Parse { column: col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// Values the grammar can build.
pub trait ParseValue: Sized {
    fn lift(x: KElem) -> Self;
    fn var(i: usize, p: u32) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> std::result::Result<Self, &'static str>;
    fn pow(&self, e: i64) -> std::result::Result<Self, &'static str>;
}

impl ParseValue for KElem {
    fn lift(x: KElem) -> Self {
        x
    }

    fn var(_: usize, _: u32) -> Option<Self> {
        None
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn neg(&self) -> Self {
        -self
    }

    fn div(&self, o: &Self) -> std::result::Result<Self, &'static str> {
        KElem::div(self, o).map_err(|_| "division by zero")
    }

    fn pow(&self, e: i64) -> std::result::Result<Self, &'static str> {
        KElem::pow(self, e).map_err(|_| "negative power of zero")
    }
}

struct Parser<V> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    p: u32,
    _v: std::marker::PhantomData<V>,
}

impl<V: ParseValue> Parser<V> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { column: self.col(), message: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Op(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<V> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<V> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if *self.peek() == Tok::Op('/') {
                let col = self.col();
                self.pos += 1;
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|m| Error::Parse { column: col, message: m.into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<V> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<V> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        let e = self.exponent()?;
        base.pow(e).map_err(|m| Error::Parse { column: col, message: m.into() })
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('(') {
            let e = self.exponent()?;
            if !self.eat(')') {
                return self.err("expected `)`");
            }
            return Ok(e);
        }
        let neg = self.eat('-');
        match *self.peek() {
            Tok::Int(v) if v <= 1 << 40 => {
                self.pos += 1;
                Ok(if neg { -(v as i64) } else { v as i64 })
            }
            Tok::Int(_) => self.err("exponent too large"),
            _ => self.err("expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<V> {
        let p = self.p;
        match self.peek().clone() {
            Tok::Int(v) => {
                self.pos += 1;
                Ok(V::lift(KElem::constant((v % p as u128) as i64, p)))
            }
            Tok::T => {
                self.pos += 1;
                Ok(V::lift(KElem::t(p)))
            }
            Tok::Theta => {
                self.pos += 1;
                Ok(V::lift(KElem::theta(p)))
            }
            Tok::Var(i) => match V::var(i, p) {
                Some(x) => {
                    self.pos += 1;
                    Ok(x)
                }
                None => self.err("unexpected variable"),
            },
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => self.err(&format!("unexpected `{c}`")),
        }
    }
}

/// Parses with variables enabled when `V` supports them.
pub fn parse_value<V: ParseValue>(s: &str, p: u32, vars: bool) -> Result<V> {
    fp::check_prime(p)?;
    let mut ps = Parser::<V> { toks: tokenize(s, vars)?, pos: 0, p, _v: std::marker::PhantomData };
    let e = ps.expr()?;
    if *ps.peek() != Tok::End {
        return ps.err("trailing input");
    }
    Ok(e)
}

/// Parses an element of K.
pub fn parse_k(s: &str, p: u32) -> Result<KElem> {
    parse_value(s, p, false)
}

/// Parses an element of F = F_p(t).
pub fn parse_f(s: &str, p: u32) -> Result<FElem> {
    parse_k(s, p)?.as_felem().ok_or(Error::Parse { column: 1, message: format!("`{s}` involves θ") })
}

/// Parses an element of R = F_p[t].
pub fn parse_r(s: &str, p: u32) -> Result<RPoly> {
    parse_k(s, p)?
        .as_rpoly()
        .ok_or(Error::Parse { column: 1, message: format!("`{s}` is not a polynomial in t") })
}
