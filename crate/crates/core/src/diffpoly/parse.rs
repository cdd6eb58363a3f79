//! Text grammar for polynomials.
//!
//! ```text
//! poly   := ws [sign] term (sign term)* ws
//! term   := item (('*' item) | ('/' number))*
//! item   := number | ident ['^' uint]
//! number := digits ['.' digits] [exponent] | '.' digits [exponent]
//! ```
//!
//! Numbers are converted exactly (`0.25` is `1/4`). Identifiers must be one
//! of the variable names supplied by the caller; `λ` is accepted as an
//! alias for `l`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::mpoly::MPoly;
use super::param::ParamPoly;
use super::poly1::Poly1;
use super::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.pos + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".into(),
        }
    }

    fn poly(&mut self) -> Result<MPoly, ParseError> {
        let n = self.vars.len();
        let mut acc = MPoly::zero(n);
        let mut first = true;
        loop {
            let mut sign = Rational::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                None if first => return self.err("expected a term, found end of input"),
                None => break,
                Some(_) if first => {}
                Some(_) => {
                    let found = self.describe();
                    return self.err(format!("expected '+' or '-', found {found}"));
                }
            }
            first = false;
            let t = self.term()?;
            acc = &acc + &t.scale(&sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut t = self.item()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let i = self.item()?;
                    t = &t * &i;
                }
                Some('/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let start = self.pos;
                    let d = self.number()?;
                    if d.is_zero() {
                        self.pos = start;
                        return self.err("division by zero");
                    }
                    t = t.scale(&(Rational::one() / d));
                }
                _ => break,
            }
        }
        Ok(t)
    }

    fn item(&mut self) -> Result<MPoly, ParseError> {
        let n = self.vars.len();
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => Ok(MPoly::constant(n, self.number()?)),
            Some(c) if c.is_alphabetic() || c == 'λ' => {
                let start = self.pos;
                let mut name = String::new();
                while let Some(&c) = self.chars.get(self.pos) {
                    if c.is_alphanumeric() || c == '_' || c == 'λ' {
                        name.push(if c == 'λ' { 'l' } else { c });
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let Some(idx) = self.vars.iter().position(|v| *v == name) else {
                    self.pos = start;
                    return self.err(format!("unknown variable '{name}'"));
                };
                let mut p = MPoly::var(n, idx);
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let e = self.uint()?;
                    p = p.pow(e);
                }
                Ok(p)
            }
            _ => {
                let found = self.describe();
                self.err(format!("expected a number or variable, found {found}"))
            }
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let d = self.digits();
        if d.is_empty() {
            let found = self.describe();
            return self.err(format!("expected a non-negative integer exponent, found {found}"));
        }
        d.parse().or_else(|_| {
            self.pos = start;
            self.err("exponent too large")
        })
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let int_part = self.digits();
        let mut frac = String::new();
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            frac = self.digits();
        }
        if int_part.is_empty() && frac.is_empty() {
            let found = self.describe();
            return self.err(format!("expected a number, found {found}"));
        }
        let mut exp: i64 = 0;
        if matches!(self.chars.get(self.pos), Some('e') | Some('E')) {
            let save = self.pos;
            self.pos += 1;
            let mut neg = false;
            if matches!(self.chars.get(self.pos), Some('+') | Some('-')) {
                neg = self.chars[self.pos] == '-';
                self.pos += 1;
            }
            let d = self.digits();
            if d.is_empty() {
                self.pos = save;
            } else {
                exp = d
                    .parse::<i64>()
                    .map_err(|_| ParseError { column: save + 1, message: "exponent too large".into() })?;
                if neg {
                    exp = -exp;
                }
            }
        }
        let mantissa: BigInt = format!("{int_part}{frac}").parse().unwrap_or_default();
        let scale = exp - frac.len() as i64;
        let ten = BigInt::from(10);
        let value = if scale >= 0 {
            Rational::from_integer(mantissa * num_traits::pow(ten, scale as usize))
        } else {
            Rational::new(mantissa, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(value)
    }
}

/// Parse a polynomial over the named variables.
pub fn parse_mpoly(text: &str, vars: &[&str]) -> Result<MPoly, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, vars };
    let out = p.poly()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return p.err(format!("unexpected '{}'", p.chars[p.pos]));
    }
    Ok(out)
}

/// Parse a polynomial in `x`, e.g. `1/2*x^2 - 3*x + 7/4`.
pub fn parse_poly1(text: &str) -> Result<Poly1, ParseError> {
    Ok(Poly1::from_mpoly(&parse_mpoly(text, &["x"])?))
}

const FAMILY_VARS: [&str; 10] = ["x", "l1", "l2", "l3", "l4", "l5", "l6", "l7", "l8", "l9"];

/// Parse a test-function family in `x` and placeholders `l1..l9`. The
/// parameter count is the highest placeholder index used.
pub fn parse_family(text: &str) -> Result<ParamPoly, ParseError> {
    let p = parse_mpoly(text, &FAMILY_VARS)?;
    let nparams = (1..FAMILY_VARS.len()).filter(|&i| p.degree_in(i) > 0).max().unwrap_or(0);
    let mut map = vec![0usize; FAMILY_VARS.len()];
    for (i, slot) in map.iter_mut().enumerate().skip(1) {
        // unused trailing placeholders have zero exponent everywhere
        *slot = if i <= nparams { 1 + i } else { 0 };
    }
    let mut out = MPoly::zero(2 + nparams);
    for (e, c) in p.terms() {
        let mut e2 = vec![0; 2 + nparams];
        for (i, &k) in e.iter().enumerate() {
            e2[map[i]] += k;
        }
        out.add_term(e2, c.clone());
    }
    Ok(ParamPoly::from_mpoly(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rational::{int, ratio};

    #[test]
    fn parses_example_potential() {
        let p = parse_poly1("1/2*x^2 - 3*x + 7/4").unwrap();
        assert_eq!(p, Poly1::new(vec![ratio(7, 4), int(-3), ratio(1, 2)]));
        assert_eq!(parse_poly1("  x^4-2 * x^2 ").unwrap(), Poly1::from_i64(&[0, 0, -2, 0, 1]));
        assert_eq!(parse_poly1("-x").unwrap(), Poly1::from_i64(&[0, -1]));
        assert_eq!(parse_poly1("x^2/2").unwrap(), Poly1::new(vec![int(0), int(0), ratio(1, 2)]));
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_poly1("0.25").unwrap(), Poly1::constant(ratio(1, 4)));
        assert_eq!(parse_poly1("1.5e-2*x").unwrap(), Poly1::new(vec![int(0), ratio(3, 200)]));
        assert_eq!(parse_poly1(".5").unwrap(), Poly1::constant(ratio(1, 2)));
    }

    #[test]
    fn reports_column_of_error() {
        let e = parse_poly1("x^^2").unwrap_err();
        assert_eq!(e.column, 3);
        let e = parse_poly1("x + y").unwrap_err();
        assert_eq!(e.column, 5);
        assert!(e.message.contains("unknown variable"));
        assert!(parse_poly1("").is_err());
        assert!(parse_poly1("3 x").is_err());
        assert!(parse_poly1("x/0").is_err());
    }

    #[test]
    fn family_placeholders() {
        let f = parse_family("l1*x + l2*x^3").unwrap();
        assert_eq!(f.nparams(), 2);
        let g = parse_family("λ1*x").unwrap();
        assert_eq!(g.nparams(), 1);
        assert_eq!(parse_family("-x").unwrap().nparams(), 0);
        assert_eq!(f.eval(2.0, 0.0, &[1.0, 1.0]), 10.0);
    }
}
