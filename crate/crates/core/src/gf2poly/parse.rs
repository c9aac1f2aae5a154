//! Text parsing for the polynomial grammar.
//!
//! `polynomial := "0" | term ("+" term)*`
//! `term      := "1" | factor ("*" factor)*`
//! `factor    := "w" index ("^" exponent)?`
//!
//! Indices and exponents are decimal nonnegative integers; whitespace is
//! insignificant between tokens.

use std::fmt;

use super::{Monomial, Polynomial};

/// A syntax or range error, with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos, message: message.into() })
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or(ParseError { position: start, message: "number too large".into() })?;
            self.bump();
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        Ok(value)
    }
}

pub(super) fn parse_polynomial(text: &str, arity: usize) -> Result<Polynomial, ParseError> {
    assert!(arity >= 1, "polynomial arity must be at least 1");
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.peek() == Some(b'0') {
        cur.bump();
        cur.skip_ws();
        if !cur.at_end() {
            return cur.err("unexpected input after the zero polynomial");
        }
        return Ok(Polynomial::zero(arity));
    }
    if cur.at_end() {
        return cur.err("empty input");
    }
    let mut terms = Vec::new();
    loop {
        terms.push(parse_term(&mut cur, arity)?);
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        if !cur.eat(b'+') {
            return cur.err("expected `+` or end of input");
        }
    }
    Ok(Polynomial::from_terms(arity, terms))
}

fn parse_term(cur: &mut Cursor<'_>, arity: usize) -> Result<Monomial, ParseError> {
    cur.skip_ws();
    if cur.eat(b'1') {
        return Ok(Monomial::constant(arity));
    }
    let mut exps = vec![0u32; arity];
    loop {
        cur.skip_ws();
        if !cur.eat(b'w') {
            return cur.err("expected a term (`1` or `w<index>`)");
        }
        cur.skip_ws();
        let index_pos = cur.pos;
        let index = cur.number()?;
        if index == 0 || index > arity as u64 {
            return Err(ParseError {
                position: index_pos,
                message: format!("unknown variable index w{index} (arity {arity})"),
            });
        }
        cur.skip_ws();
        let exponent = if cur.eat(b'^') {
            cur.skip_ws();
            let exp_pos = cur.pos;
            let e = cur.number()?;
            u32::try_from(e).map_err(|_| ParseError {
                position: exp_pos,
                message: "exponent too large".into(),
            })?
        } else {
            1
        };
        let slot = &mut exps[(index - 1) as usize];
        *slot = slot
            .checked_add(exponent)
            .ok_or(ParseError { position: cur.pos, message: "exponent overflow".into() })?;
        cur.skip_ws();
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok(Monomial::new(exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_example() {
        let p = Polynomial::parse("w2^5 + w1*w3^3", 3).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert!(p.contains_term(&Monomial::new(vec![0, 5, 0])));
        assert!(p.contains_term(&Monomial::new(vec![1, 0, 3])));
    }

    #[test]
    fn parses_zero_and_one() {
        assert!(Polynomial::parse("0", 3).unwrap().is_zero());
        assert_eq!(Polynomial::parse("1", 3).unwrap(), Polynomial::one(3));
        assert_eq!(Polynomial::parse("  1  ", 3).unwrap(), Polynomial::one(3));
    }

    #[test]
    fn whitespace_insignificant() {
        let a = Polynomial::parse("w1 * w2 ^ 2 + w3", 3).unwrap();
        let b = Polynomial::parse("w1*w2^2+w3", 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn repeated_factors_multiply() {
        let a = Polynomial::parse("w1*w1*w3", 3).unwrap();
        let b = Polynomial::parse("w1^2*w3", 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn duplicate_terms_cancel() {
        assert!(Polynomial::parse("w1 + w1", 3).unwrap().is_zero());
    }

    #[test]
    fn unknown_variable_index() {
        let err = Polynomial::parse("w4", 3).unwrap_err();
        assert_eq!(err.position, 1);
        assert!(err.message.contains("unknown variable index"));
        let err = Polynomial::parse("w0", 3).unwrap_err();
        assert!(err.message.contains("unknown variable index"));
    }

    #[test]
    fn syntax_error_positions() {
        let err = Polynomial::parse("w1 + + w2", 3).unwrap_err();
        assert_eq!(err.position, 5);
        let err = Polynomial::parse("w1 w2", 3).unwrap_err();
        assert_eq!(err.position, 3);
        let err = Polynomial::parse("0 + w1", 3).unwrap_err();
        assert_eq!(err.position, 2);
        let err = Polynomial::parse("", 3).unwrap_err();
        assert_eq!(err.position, 0);
    }

    #[test]
    fn display_roundtrip() {
        for text in ["0", "1", "w1^2*w2 + w3^4", "w2^5 + w1*w3^3", "w1 + w2 + w3 + 1"] {
            let p = Polynomial::parse(text, 3).unwrap();
            let q = Polynomial::parse(&p.to_string(), 3).unwrap();
            assert_eq!(p, q);
        }
    }
}
