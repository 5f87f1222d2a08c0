//! Text forms of fields, elements and polynomials.
//!
//! Field specs look like `p=5` or `p=2,k=2,mod=t^2+t+1`. Polynomials are sums
//! of products of integers, `t`, the main variable and parenthesized
//! subexpressions, each optionally raised to a nonnegative integer power:
//! `x^4+x-1`, `(t+1)*x^2+t`, `(x+1)^3*(x^3+x^2+1)`. Integers reduce mod p.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::field::{ExtElement, FieldElement, FiniteField};
use crate::poly::Poly;

const MAX_EXPONENT: u64 = 10_000_000;

/// Parses a polynomial in `x`.
pub fn parse_poly(field: &FiniteField, text: &str) -> Result<Poly> {
    parse_poly_in(field, text, 'x')
}

/// Parses a polynomial in the variable `var`, with `t` naming the generator
/// of F_q over F_p when the field is not prime.
pub fn parse_poly_in(field: &FiniteField, text: &str, var: char) -> Result<Poly> {
    let mut parser = Parser {
        field,
        text,
        pos: 0,
        var,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < text.len() {
        return Err(parser.error("unexpected character").into());
    }
    Ok(poly)
}

struct Parser<'a> {
    field: &'a FiniteField,
    text: &'a str,
    pos: usize,
    var: char,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError::new(self.text, self.pos, message)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek_raw() {
            self.pos += c.len_utf8();
        }
    }

    fn expr(&mut self) -> std::result::Result<Poly, ParseError> {
        let mut acc = Poly::zero(self.field);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some('+') => {
                    self.bump();
                    false
                }
                Some('-') => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let term = self.term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
        }
        Ok(acc)
    }

    fn term(&mut self) -> std::result::Result<Poly, ParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.bump();
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> std::result::Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let e = self.integer()?;
            if e > MAX_EXPONENT as u128 {
                return Err(self.error("exponent too large"));
            }
            return Ok(base.pow(e as u64));
        }
        Ok(base)
    }

    fn integer(&mut self) -> std::result::Result<u128, ParseError> {
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| ParseError::new(self.text, start, "integer literal too large"))
    }

    fn atom(&mut self) -> std::result::Result<Poly, ParseError> {
        let field = self.field;
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = (n % field.p() as u128) as i64;
                Ok(Poly::constant(field, field.from_int(c)))
            }
            Some(c) if c == self.var => {
                self.bump();
                Ok(Poly::x(field))
            }
            Some('t') => match field.t() {
                Some(t) => {
                    self.bump();
                    Ok(Poly::constant(field, t))
                }
                None => Err(self.error("`t` is only available in extension fields")),
            },
            Some(_) => Err(self.error(&format!("expected a number, `{}`, `t` or '('", self.var))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a field spec: `p=<prime>[,k=<degree>][,mod=<poly in t>]`.
pub fn parse_field(spec: &str) -> Result<FiniteField> {
    let mut p = None;
    let mut k = None;
    let mut modulus = None;
    let mut offset = 0;
    for part in spec.split(',') {
        let at = offset + part.len() - part.trim_start().len();
        offset += part.len() + 1;
        let err = |msg: &str| Error::Parse(ParseError::new(spec, at, msg));
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| err("expected key=value"))?;
        let value_at = at + key.len() + 1;
        match key.trim() {
            "p" => {
                p = Some(
                    value
                        .trim()
                        .parse::<u64>()
                        .map_err(|_| err("invalid prime"))?,
                );
            }
            "k" => {
                k = Some(
                    value
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| err("invalid degree"))?,
                );
            }
            "mod" => modulus = Some((value, value_at)),
            _ => return Err(err("unknown key (expected p, k or mod)")),
        }
    }
    let p = p.ok_or_else(|| Error::Parse(ParseError::new(spec, 0, "missing p=<prime>")))?;
    let base = FiniteField::prime(p)?;
    match modulus {
        None => FiniteField::extension(p, k.unwrap_or(1), None),
        Some((text, at)) => {
            let m = parse_poly_in(&base, text, 't').map_err(|e| match e {
                Error::Parse(pe) => Error::Parse(ParseError::new(spec, at + pe.pos, pe.message)),
                other => other,
            })?;
            let degree = m.degree().unwrap_or(0);
            if let Some(k) = k {
                if k != degree {
                    return Err(Error::InvalidField(format!(
                        "k={k} but the modulus has degree {degree}"
                    )));
                }
            }
            let ints: Vec<u64> = m.coeffs().iter().map(|&c| c as u64).collect();
            FiniteField::extension(p, degree, Some(&ints))
        }
    }
}

/// Element of F_q from text (an integer, or an expression in `t`).
pub fn parse_element(field: &FiniteField, text: &str) -> Result<FieldElement> {
    let poly = parse_poly_in(field, text, 'x')?;
    if !poly.is_constant() {
        return Err(Error::Parse(ParseError::new(
            text,
            0,
            "expected a field element, not a polynomial in x",
        )));
    }
    Ok(field.element(poly.coeff(0)))
}

// Coefficients printed with sign: for prime fields with odd p, residues above
// p/2 print as negatives; extension elements print as t-expressions.
fn signed_prime(field: &FiniteField, c: u32) -> (bool, u64) {
    let p = field.p();
    let c = c as u64;
    if p > 2 && c > p / 2 {
        (true, p - c)
    } else {
        (false, c)
    }
}

/// Writes `coeffs` (little-endian) as a polynomial in `var`. With
/// `symmetric`, prime-field coefficients above p/2 print as negatives.
fn write_terms(out: &mut String, field: &FiniteField, coeffs: &[u32], var: char, symmetric: bool) {
    let mut first = true;
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let (neg, body, atomic) = if field.is_prime_field() {
            let (neg, v) = if symmetric {
                signed_prime(field, c)
            } else {
                (false, c as u64)
            };
            (neg, v.to_string(), true)
        } else {
            let body = t_expr(field, c);
            let atomic = !body.contains(['+', '-']);
            (false, body, atomic)
        };
        if neg {
            out.push('-');
        } else if !first {
            out.push('+');
        }
        first = false;
        let monomial = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if e == 0 {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&monomial);
        } else if atomic {
            out.push_str(&format!("{body}*{monomial}"));
        } else {
            out.push_str(&format!("({body})*{monomial}"));
        }
    }
    if first {
        out.push('0');
    }
}

// An extension-field element as a polynomial in t with nonnegative digits.
fn t_expr(field: &FiniteField, c: u32) -> String {
    let digits: Vec<u32> = field.digits(c).into_iter().map(|d| d as u32).collect();
    let prime = FiniteField::prime(field.p()).expect("characteristic is prime");
    let mut s = String::new();
    write_terms(&mut s, &prime, &digits, 't', false);
    s
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_terms(&mut s, self.field(), self.coeffs(), 'x', true);
        f.write_str(&s)
    }
}

impl Poly {
    /// Canonical text with a chosen variable name.
    pub fn to_string_in(&self, var: char) -> String {
        let mut s = String::new();
        write_terms(&mut s, self.field(), self.coeffs(), var, true);
        s
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().to_string_in('z'))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field().is_prime_field() {
            write!(f, "{}", self.value())
        } else {
            f.write_str(&t_expr(self.field(), self.value()))
        }
    }
}

impl FiniteField {
    /// The field in spec syntax; parses back to an equal field.
    pub fn spec_string(&self) -> String {
        match self.modulus() {
            None => format!("p={}", self.p()),
            Some(m) => {
                let prime = FiniteField::prime(self.p()).expect("characteristic is prime");
                let mut s = String::new();
                write_terms(&mut s, &prime, m, 't', false);
                format!("p={},k={},mod={}", self.p(), self.k(), s)
            }
        }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}
