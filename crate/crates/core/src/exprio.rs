//! Textual grammar for algebra elements, and the canonical printer whose
//! output round-trips through the parser.
//!
//! ```text
//! element := ['-'] term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := atom ('^' exponent)?
//! exponent:= sint | '(' sint '/' '2' ')'
//! atom    := 'q' | int | 'E' '[' int ',' int ']' | 'K' '[' int ']' | '(' element ')'
//! ```
//!
//! Division requires a scalar divisor; whitespace is insignificant.

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, Gen, Letter, Signature};
use crate::coeff::Coeff;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at byte {pos}: {source}")]
    Algebra {
        pos: usize,
        #[source]
        source: AlgebraError,
    },
    #[error("at byte {pos}: division by a non-scalar element")]
    NonScalarDivisor { pos: usize },
    #[error("at byte {pos}: division by zero")]
    DivisionByZero { pos: usize },
    #[error("at byte {pos}: negative power of a non-scalar element")]
    NegativePower { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: Signature,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, sig: Signature) -> Self {
        Self {
            src: src.as_bytes(),
            pos: 0,
            sig,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            got => self.err(format!(
                "expected '{}', found {}",
                c as char,
                got.map_or("end of input".into(), |g| format!("'{}'", g as char))
            )),
        }
    }

    fn parse_uint(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            _ => return self.err("expected integer"),
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| ParseError::Syntax {
                pos: start,
                msg: "integer too large".into(),
            })
    }

    fn parse_sint(&mut self) -> Result<i64, ParseError> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let v = self.parse_uint()?;
        Ok(if neg { -v } else { v })
    }

    /// Exponent in half-units: `3` parses to 6, `(3/2)` parses to 3.
    fn parse_exponent_half(&mut self) -> Result<i64, ParseError> {
        if self.peek() == Some(b'(') {
            let save = self.pos;
            self.pos += 1;
            let p = self.parse_sint()?;
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let two = self.parse_uint()?;
                if two != 2 {
                    return self.err("only halves are supported in exponents");
                }
                self.expect(b')')?;
                return Ok(p);
            }
            // plain parenthesized integer exponent
            self.expect(b')')?;
            let _ = save;
            Ok(2 * p)
        } else {
            Ok(2 * self.parse_sint()?)
        }
    }

    fn parse_element(&mut self) -> Result<Element, ParseError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.parse_term()?.neg()
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc.add(&t).expect("same signature");
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc.sub(&t).expect("same signature");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.parse_factor()?;
                    acc = acc.multiply(&f).expect("same signature");
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let f = self.parse_factor()?;
                    let scalar = f
                        .as_scalar()
                        .ok_or(ParseError::NonScalarDivisor { pos: at })?;
                    let inv = scalar
                        .inv()
                        .map_err(|_| ParseError::DivisionByZero { pos: at })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Element, ParseError> {
        let (base, kind) = self.parse_atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        self.pos += 1;
        let half = self.parse_exponent_half()?;
        match kind {
            AtomKind::Q => Ok(Element::scalar(self.sig, Coeff::q_pow_half(half))),
            AtomKind::Cartan(index) => Ok(Element::monomial(
                self.sig,
                if half == 0 {
                    vec![]
                } else {
                    vec![Letter::cartan(index, half)]
                },
                Coeff::one(),
            )),
            AtomKind::Other => {
                if half % 2 != 0 {
                    return Err(ParseError::Syntax {
                        pos: at,
                        msg: "half powers only apply to q and K".into(),
                    });
                }
                let e = half / 2;
                if e >= 0 {
                    let mut acc = Element::identity(self.sig);
                    for _ in 0..e {
                        acc = acc.multiply(&base).expect("same signature");
                    }
                    Ok(acc)
                } else {
                    let scalar = base
                        .as_scalar()
                        .ok_or(ParseError::NegativePower { pos: at })?;
                    let inv = scalar
                        .inv()
                        .map_err(|_| ParseError::DivisionByZero { pos: at })?;
                    let mut acc = Coeff::one();
                    for _ in 0..(-e) {
                        acc = acc.mul(&inv);
                    }
                    Ok(Element::scalar(self.sig, acc))
                }
            }
        }
    }

    fn parse_atom(&mut self) -> Result<(Element, AtomKind), ParseError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok((
                    Element::scalar(self.sig, Coeff::q_pow(1)),
                    AtomKind::Q,
                ))
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'[')?;
                let at = self.pos;
                let row = self.parse_uint()?;
                self.expect(b',')?;
                let col = self.parse_uint()?;
                self.expect(b']')?;
                let g = Gen::new(row as u32, col as u32, &self.sig)
                    .map_err(|source| ParseError::Algebra { pos: at, source })?;
                Ok((Element::gen(self.sig, g), AtomKind::Other))
            }
            Some(b'K') => {
                self.pos += 1;
                self.expect(b'[')?;
                let at = self.pos;
                let index = self.parse_uint()? as u32;
                self.expect(b']')?;
                self.sig
                    .check_index(index)
                    .map_err(|source| ParseError::Algebra { pos: at, source })?;
                Ok((
                    Element::monomial(
                        self.sig,
                        vec![Letter::cartan(index, 2)],
                        Coeff::one(),
                    ),
                    AtomKind::Cartan(index),
                ))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.parse_element()?;
                self.expect(b')')?;
                Ok((e, AtomKind::Other))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.parse_uint()?;
                Ok((
                    Element::scalar(self.sig, Coeff::from_int(v)),
                    AtomKind::Other,
                ))
            }
            _ => self.err("expected 'q', 'E[', 'K[', integer, or '('"),
        }
    }
}

enum AtomKind {
    Q,
    Cartan(u32),
    Other,
}

/// Parse a raw (unnormalized) element.
pub fn parse_element(text: &str, sig: Signature) -> Result<Element, ParseError> {
    let mut p = Parser::new(text, sig);
    let e = p.parse_element()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

fn coeff_factor(c: &Coeff) -> String {
    let simple = c.denominator().is_one() && c.numerator().terms().count() == 1;
    if simple {
        format!("{}", c)
    } else {
        format!("({})", c)
    }
}

/// Deterministic canonical printing: monomials in key order, coefficients
/// canonical, sign folded into the term separator.
pub fn print_element(e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (word, coeff)) in e.terms().enumerate() {
        let neg = coeff.print_negative();
        let mag = if neg { coeff.neg() } else { coeff.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || word.is_empty() {
            factors.push(coeff_factor(&mag));
        }
        for l in word {
            factors.push(l.to_string());
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Gen;

    fn sig(m: u32, n: u32) -> Signature {
        Signature::new(m, n).unwrap()
    }

    #[test]
    fn parse_word() {
        let s = sig(2, 1);
        let e = parse_element("E[2,1]*E[1,2]", s).unwrap();
        let expect = Element::word(
            s,
            vec![
                Letter::Gen(Gen::new(2, 1, &s).unwrap()),
                Letter::Gen(Gen::new(1, 2, &s).unwrap()),
            ],
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn parse_coeff_times_cartan() {
        let s = sig(2, 1);
        let e = parse_element("(q - q^-1)*K[1]^-1", s).unwrap();
        let expect = Element::monomial(
            s,
            vec![Letter::cartan(1, -2)],
            Coeff::delta(),
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn reject_equal_indices() {
        let s = sig(2, 1);
        assert!(matches!(
            parse_element("E[1,1]", s),
            Err(ParseError::Algebra { .. })
        ));
    }

    #[test]
    fn reject_out_of_range() {
        let s = sig(1, 1);
        assert!(parse_element("E[1,3]", s).is_err());
        assert!(parse_element("K[5]", s).is_err());
    }

    #[test]
    fn syntax_error_has_position() {
        let s = sig(1, 1);
        match parse_element("E[1,2] +* q", s) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("expected syntax error, got {:?}", other),
        }
    }

    #[test]
    fn print_zero_and_identity() {
        let s = sig(1, 1);
        assert_eq!(print_element(&Element::zero(s)), "0");
        assert_eq!(print_element(&Element::identity(s)), "1");
    }

    #[test]
    fn print_delta_bar_cartans() {
        let s = sig(1, 1);
        let e = Element::monomial(
            s,
            vec![Letter::cartan(1, 2), Letter::cartan(2, -2)],
            Coeff::delta_bar(),
        );
        assert_eq!(print_element(&e), "(q/(q^2-1))*K[1]*K[2]^-1");
    }

    #[test]
    fn half_cartan_round_trip() {
        let s = sig(1, 1);
        let e = parse_element("K[1]^(3/2)", s).unwrap();
        assert_eq!(print_element(&e), "K[1]^(3/2)");
        assert_eq!(parse_element(&print_element(&e), s).unwrap(), e);
    }

    #[test]
    fn negative_leading_term_round_trip() {
        let s = sig(1, 1);
        let e = parse_element("-q*E[1,2] + 2", s).unwrap();
        let printed = print_element(&e);
        assert_eq!(parse_element(&printed, s).unwrap(), e);
    }

    #[test]
    fn division_by_scalar_only() {
        let s = sig(1, 1);
        assert!(parse_element("q/(q^2-1)", s).is_ok());
        assert!(matches!(
            parse_element("q/E[1,2]", s),
            Err(ParseError::NonScalarDivisor { .. })
        ));
        assert!(matches!(
            parse_element("1/(q-q)", s),
            Err(ParseError::DivisionByZero { .. })
        ));
    }
}
