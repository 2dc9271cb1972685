//! ASCII polynomial syntax for `--poly`.
//!
//! Accepts sums of terms such as `3x^2`, `2*x`, `-x`, `7`, a JSON array of
//! ascending integer coefficients (`[-2, 1]` is `x - 2`), or the word
//! `transcendental`.

use std::collections::BTreeMap;

use ks_core::exactalg::{IntPolynomial, Parameter};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("malformed polynomial at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column in the input.
    pub column: usize,
    pub message: String,
}

fn err(column: usize, message: impl Into<String>) -> ParseError {
    ParseError { column, message: message.into() }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, src }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(c) => err(self.column(), format!("unexpected character {c:?}")),
            None => err(self.column(), format!("unexpected end of input in {:?}", self.src)),
        }
    }
}

/// Ascending coefficients of an ASCII polynomial in `x`.
pub fn parse_coefficients(src: &str) -> Result<Vec<BigInt>, ParseError> {
    let trimmed = src.trim_start();
    if trimmed.starts_with('[') {
        return parse_json_array(src);
    }
    let mut cur = Cursor::new(src);
    let mut terms: BTreeMap<u32, BigInt> = BTreeMap::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            if first {
                return Err(err(cur.column(), "empty polynomial"));
            }
            break;
        }
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            return Err(cur.unexpected());
        };
        let (coeff, power) = parse_term(&mut cur)?;
        let coeff = if negative { -coeff } else { coeff };
        *terms.entry(power).or_insert_with(BigInt::zero) += coeff;
        first = false;
    }
    let degree = terms.keys().next_back().copied().unwrap_or(0) as usize;
    let mut out = vec![BigInt::zero(); degree + 1];
    for (p, c) in terms {
        out[p as usize] = c;
    }
    Ok(out)
}

fn parse_term(cur: &mut Cursor) -> Result<(BigInt, u32), ParseError> {
    let coeff = cur.digits();
    let has_star = coeff.is_some() && cur.eat('*');
    cur.skip_ws();
    if cur.peek() == Some('x') {
        cur.pos += 1;
        let power = if cur.eat('^') {
            let col = cur.column();
            let d = cur.digits().ok_or_else(|| cur.unexpected())?;
            d.parse::<u32>().map_err(|_| err(col, format!("exponent {d} too large")))?
        } else {
            1
        };
        let coeff = coeff.map_or_else(|| BigInt::from(1), |d| d.parse().expect("digits"));
        Ok((coeff, power))
    } else if has_star {
        Err(cur.unexpected())
    } else {
        match coeff {
            Some(d) => Ok((d.parse().expect("digits"), 0)),
            None => Err(cur.unexpected()),
        }
    }
}

fn parse_json_array(src: &str) -> Result<Vec<BigInt>, ParseError> {
    let values: Vec<serde_json::Value> = serde_json::from_str(src).map_err(|e| {
        // serde_json reports 1-based line/column
        let offset: usize = src.lines().take(e.line().saturating_sub(1)).map(|l| l.chars().count() + 1).sum();
        err(offset + e.column(), e.to_string())
    })?;
    values
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer")),
            serde_json::Value::String(s) => s.parse().map_err(|_| err(1, format!("entry {i} is not an integer: {s:?}"))),
            other => Err(err(1, format!("entry {i} is not an integer: {other}"))),
        })
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum ParamError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] ks_core::Error),
}

/// `--poly` value to a validated parameter.
pub fn parse_parameter(src: &str) -> Result<Parameter, ParamError> {
    if src.trim().eq_ignore_ascii_case("transcendental") {
        return Ok(Parameter::Transcendental);
    }
    let coeffs = parse_coefficients(src)?;
    Ok(Parameter::Algebraic(IntPolynomial::normalize(&coeffs)?))
}
