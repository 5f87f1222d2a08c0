//! Dense univariate polynomials over a [`FiniteField`].

mod factor;
mod ntheory;
pub(crate) use ntheory::ceil_log;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::FiniteField;

pub use factor::{factor, factor_with_seed, Factorization};
pub use ntheory::{count_divisors, monic_divisors, nu, ord_x_mod, phi_q, rad, MAX_DIVISORS};

/// A polynomial with coefficients stored little-endian as raw field codes.
/// The zero polynomial has no coefficients and degree `None`.
#[derive(Clone)]
pub struct Poly {
    field: FiniteField,
    coeffs: Vec<u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Canonical order: by degree, then coefficients compared from the leading
/// term downward.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Poly {
    pub fn new(field: &FiniteField, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| (c as u64) < field.q()));
        trim(&mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Little-endian integer coefficients embedded through F_p.
    pub fn from_ints(field: &FiniteField, ints: &[i64]) -> Self {
        Poly::new(field, ints.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FiniteField) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &FiniteField) -> Self {
        Poly::new(field, vec![1])
    }

    pub fn x(field: &FiniteField) -> Self {
        Poly::new(field, vec![0, 1])
    }

    pub fn constant(field: &FiniteField, c: u32) -> Self {
        Poly::new(field, vec![c])
    }

    /// `c * x^e`
    pub fn monomial(field: &FiniteField, c: u32, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Poly::new(field, coeffs)
    }

    /// `x - a`
    pub fn linear(field: &FiniteField, a: u32) -> Self {
        Poly::new(field, vec![field.neg(a), 1])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    // degree with the zero polynomial mapped to 0
    pub(crate) fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_divisible_by_x(&self) -> bool {
        self.coeff(0) == 0
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self
            .field
            .inv(self.leading())
            .expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn eval(&self, a: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.p()) as i64)))
            .collect();
        Poly::new(f, coeffs)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self * other)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.divrem_nonzero(divisor))
    }

    pub(crate) fn divrem_nonzero(&self, divisor: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let inv = f.inv(divisor.leading()).expect("nonzero divisor");
        let d: Vec<u32> = divisor.coeffs.iter().map(|&c| f.mul(c, inv)).collect();
        let mut r = self.coeffs.clone();
        let qt = divrem_monic_raw(f, &mut r, &d);
        let qt = qt.into_iter().map(|c| f.mul(c, inv)).collect();
        (Poly::new(f, qt), Poly::new(f, r))
    }

    pub(crate) fn rem(&self, divisor: &Poly) -> Poly {
        if self.coeffs.len() < divisor.coeffs.len() {
            return self.clone();
        }
        self.divrem_nonzero(divisor).1
    }

    /// `self / divisor`, which must be exact.
    pub(crate) fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem_nonzero(divisor);
        debug_assert!(r.is_zero(), "inexact division of {self} by {divisor}");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self.gcd_monic(other))
    }

    pub(crate) fn gcd_monic(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let g = self.gcd_monic(other);
        Ok((&self.exact_div(&g) * other).monic())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u128, modulus: &Poly) -> Poly {
        let field = &self.field;
        let m = modulus.monic();
        let mut acc = Poly::one(field).rem(&m);
        let mut base = self.rem(&m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, &m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, &m);
            }
        }
        acc
    }

    /// `self * other mod m` for monic `m`.
    pub(crate) fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        let f = &self.field;
        let mut prod = mul_raw(f, &self.coeffs, &other.coeffs);
        if prod.len() >= m.coeffs.len() {
            divrem_monic_raw(f, &mut prod, &m.coeffs);
        }
        Poly::new(f, prod)
    }

    /// `self^q mod m`, i.e. one application of Frobenius in F_q[x]/(m).
    pub(crate) fn frobenius_mod(&self, m: &Poly) -> Poly {
        self.pow_mod(self.field.q() as u128, m)
    }

    /// Substitution `self(inner)` by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(&self.field, c);
        }
        acc
    }

    /// `self(x + a)`
    pub fn shift(&self, a: u32) -> Poly {
        let field = &self.field;
        let mut acc: Vec<u32> = Vec::with_capacity(self.coeffs.len());
        for &c in self.coeffs.iter().rev() {
            // acc <- acc * (x + a) + c
            acc.insert(0, 0);
            for i in 0..acc.len() - 1 {
                acc[i] = field.add(acc[i], field.mul(acc[i + 1], a));
            }
            acc[0] = field.add(acc[0], c);
        }
        Poly::new(field, acc)
    }

    /// Strips the largest power of `x` dividing `self`: returns `(s, g0)` with
    /// `self = x^s * g0` and `g0(0) != 0`.
    pub fn split_x_power(&self) -> (usize, Poly) {
        let s = self.coeffs.iter().take_while(|&&c| c == 0).count();
        (s, Poly::new(&self.field, self.coeffs[s..].to_vec()))
    }

    /// For a polynomial in `x^p`, the polynomial `h` with `h^p = self`.
    pub(crate) fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| i % p == 0 || c == 0));
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pth_root(c))
            .collect();
        Poly::new(f, coeffs)
    }

    /// Trace coefficient: the coefficient of `x^(n-1)` of the monic normalization.
    pub fn trace_coeff(&self) -> u32 {
        let m = self.monic();
        match m.degree() {
            Some(n) if n >= 1 => m.coeff(n - 1),
            _ => 0,
        }
    }
}

// Schoolbook product of raw coefficient slices.
pub(crate) fn mul_raw(field: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if field.is_prime_field() {
        // products are < 2^40, so up to 2^24 of them fit in a u64 accumulator
        let p = field.p();
        let mut acc = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot += x * y as u64;
            }
        }
        let mut out: Vec<u32> = acc.into_iter().map(|v| (v % p) as u32).collect();
        trim(&mut out);
        return out;
    }
    let mut out = vec![0u32; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = field.add(out[i + j], field.mul(x, y));
            }
        }
    }
    trim(&mut out);
    out
}

// Divides `r` in place by the monic `m`, leaving the remainder; returns the quotient.
pub(crate) fn divrem_monic_raw(field: &FiniteField, r: &mut Vec<u32>, m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    if r.len() <= dm {
        trim(r);
        return Vec::new();
    }
    let mut qt = vec![0u32; r.len() - dm];
    if field.is_prime_field() {
        let p = field.p();
        for i in (dm..r.len()).rev() {
            let c = r[i] as u64;
            if c == 0 {
                continue;
            }
            qt[i - dm] = c as u32;
            let neg = p - c;
            for (j, &mj) in m[..dm].iter().enumerate() {
                let slot = &mut r[i - dm + j];
                *slot = ((*slot as u64 + neg * mj as u64) % p) as u32;
            }
            r[i] = 0;
        }
    } else {
        for i in (dm..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            qt[i - dm] = c;
            let neg = field.neg(c);
            for (j, &mj) in m[..dm].iter().enumerate() {
                if mj != 0 {
                    r[i - dm + j] = field.add(r[i - dm + j], field.mul(neg, mj));
                }
            }
            r[i] = 0;
        }
    }
    r.truncate(dm);
    trim(r);
    qt
}

fn assert_same_field(a: &Poly, b: &Poly) {
    assert!(a.field == b.field, "polynomials over different fields");
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, other: &Poly) -> Poly {
        assert_same_field(self, other);
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, &s) in out.iter_mut().zip(short) {
            *o = f.add(*o, s);
        }
        Poly::new(f, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, other: &Poly) -> Poly {
        self + &(-other)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, other: &Poly) -> Poly {
        assert_same_field(self, other);
        Poly::new(
            &self.field,
            mul_raw(&self.field, &self.coeffs, &other.coeffs),
        )
    }
}
