//! Expression parser for `Q(q)` values and Laurent polynomials.
//!
//! Grammar: sums and differences of products of powers of atoms, where an atom
//! is an integer, `q`, a variable `x1..xd`, or a parenthesized expression.
//! Juxtaposition multiplies, so the canonical text `3*q^0 * x1^1 x2^0` parses.
//! Division is allowed by `x`-free expressions and by single terms.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};
use crate::qcoeff::QRat;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Q,
    X(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < cs.len() {
        let c = cs[k];
        match c {
            ' ' | '\t' | '\n' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            'q' => out.push(Tok::Q),
            'x' => {
                let start = k + 1;
                let mut end = start;
                while end < cs.len() && cs[end].is_ascii_digit() {
                    end += 1;
                }
                let idx: usize = cs[start..end]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse(format!("variable without index at position {k}")))?;
                if idx == 0 {
                    return Err(Error::Parse(String::from("variables are numbered from x1")));
                }
                out.push(Tok::X(idx - 1));
                k = end;
                continue;
            }
            d if d.is_ascii_digit() => {
                let mut end = k;
                while end < cs.len() && cs[end].is_ascii_digit() {
                    end += 1;
                }
                let n: BigInt = cs[k..end].iter().collect::<String>().parse().expect("digits");
                out.push(Tok::Num(n));
                k = end;
                continue;
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
        k += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    d: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
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
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let den = self.unary()?;
                    acc = &acc * &invert(&den)?;
                }
                Some(Tok::Num(_) | Tok::Q | Tok::X(_) | Tok::LParen) => {
                    acc = &acc * &self.unary()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let e: u32 = match self.bump() {
            Some(Tok::Num(n)) => n.try_into().map_err(|_| Error::Parse(String::from("exponent too large")))?,
            _ => return Err(Error::Parse(String::from("expected an integer exponent"))),
        };
        let p = base.pow(e);
        if neg {
            invert(&p)
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(LaurentPoly::constant(self.d, QRat::from_rational(BigRational::from_integer(n)))),
            Some(Tok::Q) => Ok(LaurentPoly::constant(self.d, QRat::q_pow(1))),
            Some(Tok::X(i)) => {
                if i >= self.d {
                    return Err(Error::Parse(format!("x{} out of range for {} variables", i + 1, self.d)));
                }
                Ok(LaurentPoly::var(self.d, i))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse(String::from("missing ')'"))),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse(String::from("unexpected end of input"))),
        }
    }
}

fn invert(p: &LaurentPoly) -> Result<LaurentPoly> {
    if let Some(c) = p.as_constant() {
        return Ok(LaurentPoly::constant(p.nvars(), c.inv()?));
    }
    if p.as_term().is_some() {
        return p.inv_term();
    }
    Err(Error::Parse(format!("cannot divide by the polynomial {}", p.pretty())))
}

pub fn parse_laurent(s: &str, d: usize) -> Result<LaurentPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse(String::from("empty expression")));
    }
    let mut p = Parser { toks, pos: 0, d };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

pub fn parse_qrat(s: &str) -> Result<QRat> {
    let p = parse_laurent(s, 0)?;
    p.as_constant().ok_or_else(|| Error::Parse(s.to_string()))
}

/// Parses a monomial written as an exponent list such as `[2,0,-1]`.
pub fn parse_exponents(s: &str) -> Result<Monomial> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(Monomial(Vec::new()));
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent {t:?}"))))
        .collect::<Result<Vec<_>>>()
        .map(Monomial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::qint;

    #[test]
    fn qrat_round_trip() {
        let samples = [
            qint(3),
            &qint(2).inv().unwrap() * &QRat::from_int(7),
            QRat::zero(),
            QRat::laurent(-3, &[2, 0, -5]),
            (&QRat::q_pow(1) + &QRat::one()).inv().unwrap().scale(&BigRational::new(3.into(), 4.into())),
        ];
        for r in samples {
            assert_eq!(parse_qrat(&r.to_canonical()).unwrap(), r, "{}", r.to_canonical());
            assert_eq!(parse_qrat(&r.pretty()).unwrap(), r, "{}", r.pretty());
        }
    }

    #[test]
    fn laurent_round_trip() {
        let p = parse_laurent("3*x1^2*x2^-1 + q^2*x1 - (q + q^-1)/(q^2 - 1) x2", 2).unwrap();
        assert_eq!(parse_laurent(&p.to_canonical(), 2).unwrap(), p);
        assert_eq!(parse_laurent(&p.pretty(), 2).unwrap(), p);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_laurent("x3", 2).is_err());
        assert!(parse_laurent("1/(x1 + x2)", 2).is_err());
        assert!(parse_laurent("(q", 0).is_err());
        assert!(parse_qrat("x1").is_err());
        assert!(parse_qrat("1/0").is_err());
    }
}
