//! Prime fields F_p and their extensions F_q = F_p[t]/(modulus).
//!
//! Elements are passed around as raw `u32` codes: the code of
//! `c_0 + c_1 t + ... + c_{k-1} t^{k-1}` is `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
//! Counting codes upward therefore enumerates F_q as 0, 1, ..., p-1 and then
//! t-ascending, which is the canonical element order used for output.

pub mod ext;
pub mod nt;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;

pub use ext::{ExtElement, ExtField};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

struct FieldData {
    p: u64,
    k: usize,
    q: u64,
    // monic, k + 1 coefficients in F_p, little-endian; absent for prime fields
    modulus: Option<Vec<u32>>,
    // discrete log tables over a fixed generator, only for k > 1
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.spec_string())
    }
}

impl FiniteField {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !nt::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > MAX_FIELD_SIZE {
            return Err(Error::InvalidField(format!(
                "field size {p} exceeds {MAX_FIELD_SIZE}"
            )));
        }
        Ok(FiniteField(Arc::new(FieldData {
            p,
            k: 1,
            q: p,
            modulus: None,
            log: Vec::new(),
            exp: Vec::new(),
        })))
    }

    /// F_{p^k}. With `modulus = None` the lexicographically first monic
    /// irreducible polynomial of degree `k` over F_p is used; a supplied
    /// modulus must be monic, of degree `k` and irreducible.
    pub fn extension(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<Self> {
        let base = FiniteField::prime(p)?;
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = nt::checked_pow(p, k as u64)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| {
                Error::InvalidField(format!("field size {p}^{k} exceeds {MAX_FIELD_SIZE}"))
            })?;
        let modulus = match modulus {
            Some(m) => {
                let poly = Poly::from_ints(&base, &m.iter().map(|&c| c as i64).collect::<Vec<_>>());
                if poly.degree() != Some(k) || !poly.is_monic() {
                    return Err(Error::InvalidField(format!(
                        "modulus {poly} must be monic of degree {k}"
                    )));
                }
                if !poly.is_irreducible()? {
                    return Err(Error::InvalidField(format!(
                        "modulus {poly} is not irreducible over F_{p}"
                    )));
                }
                poly
            }
            None => first_irreducible(&base, k)?,
        };
        if k == 1 {
            // F_p[t]/(t - c) is F_p itself
            return Ok(base);
        }
        let modulus: Vec<u32> = modulus.coeffs().to_vec();
        let (log, exp) = build_log_tables(p, k, q, &modulus);
        Ok(FiniteField(Arc::new(FieldData {
            p,
            k,
            q,
            modulus: Some(modulus),
            log,
            exp,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    /// Number of elements.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// The defining modulus over F_p (little-endian), if this is an extension.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q as u32
    }

    /// Embeds an integer through F_p.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Code of the element with the given F_p coordinates (little-endian in t).
    pub fn from_digits(&self, digits: &[u64]) -> u32 {
        let p = self.0.p;
        digits
            .iter()
            .take(self.0.k)
            .rev()
            .fold(0u64, |acc, &d| acc * p + d % p) as u32
    }

    pub fn digits(&self, a: u32) -> Vec<u64> {
        let p = self.0.p;
        let mut a = a as u64;
        (0..self.0.k)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    /// The generator `t` of F_q over F_p; `None` for prime fields.
    pub fn t(&self) -> Option<u32> {
        (self.0.k > 1).then_some(self.0.p as u32)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let d = &*self.0;
        if d.k == 1 {
            let s = a as u64 + b as u64;
            return if s >= d.p { (s - d.p) as u32 } else { s as u32 };
        }
        if d.p == 2 {
            return a ^ b;
        }
        let (mut x, mut y) = (a as u64, b as u64);
        let mut place = 1u64;
        let mut r = 0u64;
        for _ in 0..d.k {
            let s = x % d.p + y % d.p;
            r += if s >= d.p { s - d.p } else { s } * place;
            x /= d.p;
            y /= d.p;
            place *= d.p;
        }
        r as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let d = &*self.0;
        if d.k == 1 {
            return if a == 0 { 0 } else { (d.p - a as u64) as u32 };
        }
        if d.p == 2 {
            return a;
        }
        let mut x = a as u64;
        let mut place = 1u64;
        let mut r = 0u64;
        for _ in 0..d.k {
            let c = x % d.p;
            r += if c == 0 { 0 } else { d.p - c } * place;
            x /= d.p;
            place *= d.p;
        }
        r as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let d = &*self.0;
        if d.k == 1 {
            return ((a as u64 * b as u64) % d.p) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        d.exp[d.log[a as usize] as usize + d.log[b as usize] as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let d = &*self.0;
        if d.k == 1 {
            // extended Euclid on integers
            let (mut r0, mut r1) = (d.p as i64, a as i64);
            let (mut s0, mut s1) = (0i64, 1i64);
            while r1 != 0 {
                let qt = r0 / r1;
                (r0, r1) = (r1, r0 - qt * r1);
                (s0, s1) = (s1, s0 - qt * s1);
            }
            return Some(s0.rem_euclid(d.p as i64) as u32);
        }
        let l = d.log[a as usize] as u64;
        Some(d.exp[((d.q - 1 - l) % (d.q - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        self.inv(b)
            .map(|bi| self.mul(a, bi))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: u32) -> u32 {
        self.pow(a, self.0.q / self.0.p)
    }

    /// Nonzero squares in odd characteristic; every element in characteristic 2.
    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.0.p == 2 || self.pow(a, (self.0.q - 1) / 2) == 1
    }

    pub fn element(&self, code: u32) -> FieldElement {
        assert!((code as u64) < self.0.q, "element code out of range");
        FieldElement {
            field: self.clone(),
            value: code,
        }
    }
}

// Lexicographic scan of monic degree-k polynomials over F_p by their lower coefficients.
fn first_irreducible(base: &FiniteField, k: usize) -> Result<Poly> {
    let p = base.p();
    let count = nt::checked_pow(p, k as u64).expect("bounded by MAX_FIELD_SIZE");
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut c = code;
        for _ in 0..k {
            coeffs.push((c % p) as u32);
            c /= p;
        }
        coeffs.push(1);
        let cand = Poly::new(base, coeffs);
        if cand.is_irreducible()? {
            return Ok(cand);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

// Schoolbook product of two digit vectors modulo the (monic) modulus over F_p.
fn mul_digits(p: u64, k: usize, modulus: &[u32], a: u64, b: u64) -> u64 {
    let digits = |mut v: u64| -> Vec<u64> {
        (0..k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c != 0 {
            for j in 0..k {
                let sub = c * modulus[j] as u64 % p;
                prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
            }
            prod[i] = 0;
        }
    }
    prod[..k].iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn build_log_tables(p: u64, k: usize, q: u64, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = q - 1;
    let primes: Vec<u64> = nt::integer_factor(n as u128)
        .expect("q - 1 < 2^20")
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let pow = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_digits(p, k, modulus, acc, base);
            }
            base = mul_digits(p, k, modulus, base, base);
            e >>= 1;
        }
        acc
    };
    let gen = (2..q)
        .find(|&g| primes.iter().all(|&r| pow(g, n / r) != 1))
        .expect("multiplicative group is cyclic");
    let mut log = vec![0u32; q as usize];
    let mut exp = vec![0u32; 2 * n as usize];
    let mut cur = 1u64;
    for i in 0..n {
        exp[i as usize] = cur as u32;
        exp[(i + n) as usize] = cur as u32;
        log[cur as usize] = i as u32;
        cur = mul_digits(p, k, modulus, cur, gen);
    }
    (log, exp)
}

/// An element of F_q bundled with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FiniteField,
    value: u32,
}

/// The four field operations, for callers that dispatch on an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    /// Builds the element with F_p coordinates `coeffs` (little-endian in t).
    pub fn new(field: &FiniteField, coeffs: &[u64]) -> Self {
        FieldElement {
            field: field.clone(),
            value: field.from_digits(coeffs),
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn arith(&self, op: ArithOp, other: &FieldElement) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let f = &self.field;
        let (a, b) = (self.value, other.value);
        let value = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.div(a, b)?,
        };
        Ok(FieldElement {
            field: f.clone(),
            value,
        })
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        let value = self.field.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(self.field.element(value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
