//! F_{q^n} realised as F_q[z]/(f) for a monic irreducible `f` of degree `n`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::nt;
use super::FiniteField;
use crate::error::{Error, Result};
use crate::poly::{divrem_monic_raw, mul_raw, Poly};

#[derive(Clone)]
pub struct ExtField(Arc<Poly>);

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtField({})", self.0)
    }
}

impl ExtField {
    /// Checks that `f` is irreducible and uses its monic normalization.
    pub fn new(f: &Poly) -> Result<Self> {
        if !f.is_irreducible()? {
            return Err(Error::NotIrreducible(f.to_string()));
        }
        Ok(ExtField::new_unchecked(f))
    }

    /// Caller guarantees irreducibility.
    pub(crate) fn new_unchecked(f: &Poly) -> Self {
        debug_assert!(!f.is_constant());
        ExtField(Arc::new(f.monic()))
    }

    pub fn base(&self) -> &FiniteField {
        self.0.field()
    }

    pub fn modulus(&self) -> &Poly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.deg()
    }

    /// `q^n`, when it fits in a u64.
    pub fn size(&self) -> Option<u64> {
        nt::checked_pow(self.base().q(), self.degree() as u64)
    }

    fn wrap(&self, mut coeffs: Vec<u32>) -> ExtElement {
        let n = self.degree();
        if coeffs.len() > n {
            divrem_monic_raw(self.base(), &mut coeffs, self.0.coeffs());
        }
        coeffs.resize(n, 0);
        ExtElement {
            ctx: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> ExtElement {
        self.wrap(Vec::new())
    }

    pub fn one(&self) -> ExtElement {
        self.from_base(1)
    }

    pub fn from_base(&self, c: u32) -> ExtElement {
        self.wrap(vec![c])
    }

    /// The class of `z`, a root of the modulus.
    pub fn generator(&self) -> ExtElement {
        self.wrap(vec![0, 1])
    }

    /// Reduces a polynomial in `z` modulo the defining polynomial.
    pub fn from_poly(&self, p: &Poly) -> ExtElement {
        assert!(
            p.field() == self.base(),
            "polynomial over a different field"
        );
        self.wrap(p.coeffs().to_vec())
    }

    /// The element whose coordinates are the base-q digits of `index`;
    /// `0..q^n` enumerates the field.
    pub fn element_at(&self, mut index: u64) -> ExtElement {
        let q = self.base().q();
        let coeffs = (0..self.degree())
            .map(|_| {
                let c = (index % q) as u32;
                index /= q;
                c
            })
            .collect();
        self.wrap(coeffs)
    }
}

/// An element of F_q[z]/(f), stored as exactly `deg f` coordinates.
#[derive(Clone)]
pub struct ExtElement {
    ctx: ExtField,
    coeffs: Vec<u32>,
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx == other.ctx
    }
}

impl Eq for ExtElement {}

impl Hash for ExtElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtElement({self})")
    }
}

impl ExtElement {
    pub fn ctx(&self) -> &ExtField {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// The canonical representative as a polynomial (in the variable of the
    /// returned `Poly`) of degree below `n`.
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.ctx.base(), self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.base_value() == Some(1)
    }

    /// The F_q value when the element lies in the base field.
    pub fn base_value(&self) -> Option<u32> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then(|| self.coeffs[0])
    }

    fn same_ctx(&self, other: &ExtElement) {
        assert!(
            self.ctx == other.ctx,
            "elements of different extension fields"
        );
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        self.same_ctx(other);
        let f = self.ctx.base();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        ExtElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> ExtElement {
        let f = self.ctx.base();
        ExtElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ExtElement) -> ExtElement {
        self.same_ctx(other);
        self.ctx
            .wrap(mul_raw(self.ctx.base(), &self.coeffs, &other.coeffs))
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, c: u32) -> ExtElement {
        let f = self.ctx.base();
        ExtElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Inverse by extended Euclid against the modulus.
    pub fn inverse(&self) -> Result<ExtElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = self.ctx.base();
        let (mut r0, mut r1) = (self.ctx.modulus().clone(), self.to_poly());
        let (mut s0, mut s1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (qt, r) = r0.divrem_nonzero(&r1);
            let s = &s0 - &(&qt * &s1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        let c = field.inv(r0.leading()).expect("nonzero gcd");
        Ok(self.ctx.from_poly(&s0.scale(c)))
    }

    pub fn pow(&self, mut e: u128) -> ExtElement {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^(q^i)`, by `i` successive q-th powers.
    pub fn frobenius(&self, i: usize) -> ExtElement {
        let q = self.ctx.base().q() as u128;
        let mut a = self.clone();
        for _ in 0..i {
            a = a.pow(q);
        }
        a
    }

    /// Least `e > 0` with `self^e = 1`.
    pub fn mult_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let q = self.ctx.base().q() as u128;
        let group = (0..self.ctx.degree())
            .try_fold(1u128, |acc, _| acc.checked_mul(q))
            .filter(|&s| s - 1 < 1u128 << 64)
            .ok_or_else(|| {
                Error::Overflow(format!(
                    "group order {q}^{} - 1 exceeds 2^64",
                    self.ctx.degree()
                ))
            })?
            - 1;
        let mut e = group as u64;
        for (r, _) in nt::integer_factor(group)? {
            while e.is_multiple_of(r) && self.pow((e / r) as u128).is_one() {
                e /= r;
            }
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;
    use proptest::prelude::*;

    fn ctx(p: u64, f: &str) -> ExtField {
        let field = FiniteField::prime(p).unwrap();
        ExtField::new(&parse_poly(&field, f).unwrap()).unwrap()
    }

    #[test]
    fn frobenius_examples() {
        let k = ctx(2, "x^2+x+1");
        let a = k.generator();
        assert_eq!(a.frobenius(0), a);
        assert_eq!(a.frobenius(1), a.add(&k.one()));
        assert_eq!(a.frobenius(2), a);
    }

    #[test]
    fn mult_order_examples() {
        let k = ctx(2, "x^2+x+1");
        assert_eq!(k.one().mult_order().unwrap(), 1);
        assert_eq!(k.generator().mult_order().unwrap(), 3);
        assert_eq!(k.zero().mult_order(), Err(Error::ZeroElement));
        let k = ctx(2, "x^3+x+1");
        assert_eq!(k.generator().mult_order().unwrap(), 7);
        // root of x^4 + x^3 + x^2 + x + 1 has order 5
        let k = ctx(2, "x^4+x^3+x^2+x+1");
        assert_eq!(k.generator().mult_order().unwrap(), 5);
    }

    #[test]
    fn mult_order_overflow() {
        // 2^65 - 1 does not fit
        let field = FiniteField::prime(2).unwrap();
        let mut c = vec![0u32; 66];
        c[0] = 1;
        c[1] = 1;
        c[65] = 1;
        let k = ExtField::new_unchecked(&Poly::new(&field, c));
        assert!(matches!(
            k.generator().mult_order(),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn rejects_reducible_modulus() {
        let field = FiniteField::prime(2).unwrap();
        let f = parse_poly(&field, "x^2+1").unwrap();
        assert!(matches!(ExtField::new(&f), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn order_divides_group_order_exhaustive() {
        let k = ctx(3, "x^3+2*x+1");
        let size = k.size().unwrap();
        for i in 1..size {
            let a = k.element_at(i);
            let e = a.mult_order().unwrap();
            assert_eq!((size - 1) % e, 0);
            assert!(a.pow(e as u128).is_one());
            assert!(a.pow((size - 1) as u128).is_one());
            assert!(a.mul(&a.inverse().unwrap()).is_one());
        }
    }

    proptest! {
        #[test]
        fn frobenius_composes(i in 0usize..10, j in 0usize..10, idx in 0u64..625) {
            let k = ctx(5, "x^4+x-1");
            let a = k.element_at(idx);
            prop_assert_eq!(a.frobenius(i + j), a.frobenius(i).frobenius(j));
            prop_assert_eq!(a.frobenius(4), a);
        }

        #[test]
        fn frobenius_is_a_ring_map(x in 0u64..625, y in 0u64..625) {
            let k = ctx(5, "x^4+x-1");
            let (a, b) = (k.element_at(x), k.element_at(y));
            prop_assert_eq!(a.add(&b).frobenius(1), a.frobenius(1).add(&b.frobenius(1)));
            prop_assert_eq!(a.mul(&b).frobenius(1), a.frobenius(1).mul(&b.frobenius(1)));
        }
    }
}
