//! Text parser for the canonical polynomial syntax.
//!
//! Accepts sums of products of rationals and variables, e.g.
//! `x1_0*x2_0 - 3/2*xi1_0^1 + (x1 - x2)^2`. A bare `x3` means `x3_0`.

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::{Rational, SuperPolynomial, VarKind, Variable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Var(Variable),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn error(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn next_tok(&mut self) -> Result<Option<(usize, Tok)>, ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let s = self.take_digits();
                Tok::Num(s.parse().expect("digits"))
            }
            b'x' => {
                self.pos += 1;
                let kind = if self.peek() == Some(b'i') {
                    self.pos += 1;
                    VarKind::Odd
                } else {
                    VarKind::Even
                };
                let index: u32 = self
                    .take_digits()
                    .parse()
                    .map_err(|_| self.error("expected variable index"))?;
                let level: u32 = if self.peek() == Some(b'_') {
                    self.pos += 1;
                    self.take_digits()
                        .parse()
                        .map_err(|_| self.error("expected variable level"))?
                } else {
                    0
                };
                Tok::Var(Variable { level, kind, index })
            }
            _ => return Err(self.error(&format!("unexpected character '{}'", c as char))),
        };
        Ok(Some((start, tok)))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn take_digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn error(&self, msg: &str) -> ParseError {
        let pos = self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(usize::MAX);
        ParseError { pos, msg: msg.to_string() }
    }

    fn expr(&mut self) -> Result<SuperPolynomial, ParseError> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            negate = true;
        } else if matches!(self.peek(), Some(Tok::Plus)) {
            self.bump();
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SuperPolynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SuperPolynomial, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.to_string().parse().map_err(|_| self.error("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.error("expected integer exponent after '^'")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SuperPolynomial, ParseError> {
        match self.bump() {
            Some(Tok::Num(n)) => {
                // rational literal `a/b`
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(d)) => Ok(SuperPolynomial::constant(Rational::new(n, d))),
                        _ => Err(self.error("expected denominator after '/'")),
                    }
                } else {
                    Ok(SuperPolynomial::constant(Rational::new(n, BigInt::one())))
                }
            }
            Some(Tok::Var(v)) => Ok(SuperPolynomial::var(v)),
            Some(Tok::Minus) => {
                let f = self.factor()?;
                Ok(-&f)
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(self.error("expected ')'")),
                }
            }
            _ => Err(self.error("expected number, variable, or '('")),
        }
    }
}

/// Parses the canonical polynomial syntax.
pub fn parse_poly(src: &str) -> Result<SuperPolynomial, ParseError> {
    let mut lexer = Lexer::new(src);
    let mut toks = Vec::new();
    while let Some(t) = lexer.next_tok()? {
        toks.push(t);
    }
    if toks.is_empty() {
        return Err(ParseError { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { toks, at: 0 };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn parses_and_rerenders() {
        let p = parse_poly("x1_0*x2_0 - 3/2*xi1_0 + 1").unwrap();
        assert_eq!(p.canonical_text(), "1 * x1_0*x2_0 - 3/2 * xi1_0 + 1");
        let q = parse_poly(&p.canonical_text()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn bare_index_means_level_zero() {
        assert_eq!(parse_poly("x3").unwrap(), parse_poly("x3_0").unwrap());
        assert_eq!(parse_poly("xi2").unwrap(), parse_poly("xi2_0").unwrap());
    }

    #[test]
    fn parens_and_powers() {
        let p = parse_poly("(x1 - x2)^2").unwrap();
        let q = parse_poly("x1^2 - 2*x1*x2 + x2^2").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn odd_square_is_zero() {
        assert!(parse_poly("xi1_0^2").unwrap().is_zero());
        assert_eq!(parse_poly("xi1*xi2 + xi2*xi1").unwrap(), SuperPolynomial::zero());
    }

    #[test]
    fn unary_minus_binds_factor() {
        let p = parse_poly("-x1*x2 + 2").unwrap();
        assert_eq!(p.coeff(&parse_mono("x1*x2")), rat(-1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("x1 +").is_err());
        assert!(parse_poly("y1").is_err());
        assert!(parse_poly("").is_err());
    }

    fn parse_mono(s: &str) -> crate::poly::SuperMonomial {
        let p = parse_poly(s).unwrap();
        let (m, _) = p.terms().next().unwrap();
        m.clone()
    }
}
