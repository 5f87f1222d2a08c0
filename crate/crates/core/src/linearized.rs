//! q-associates `L_g(x) = sum g_i x^(q^i)`, their action on extension-field
//! elements, and the F_q-order of an element: the monic generator of the
//! ideal `{g : L_g(a) = 0}`.

use crate::error::{Error, Result};
use crate::field::ExtElement;
use crate::poly::{factor, Poly};

/// Default cap on the number of coefficients a dense composition may have.
pub const DEFAULT_MAX_COEFFS: usize = 100_000;

/// Environment variable overriding [`DEFAULT_MAX_COEFFS`].
pub const MAX_COEFFS_ENV: &str = "LINFACTOR_MAX_COEFFS";

/// The active coefficient cap.
pub fn max_coeffs() -> usize {
    std::env::var(MAX_COEFFS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_COEFFS)
}

fn check_size(what: &'static str, size: Option<u128>) -> Result<usize> {
    let limit = max_coeffs() as u128;
    match size {
        Some(s) if s <= limit => Ok(s as usize),
        _ => Err(Error::SizeExceeded {
            what,
            size: size.unwrap_or(u128::MAX),
            limit,
        }),
    }
}

/// The q-associate of a conventional polynomial `g`. Only `g` is stored;
/// the sparse form `sum g_i x^(q^i)` is produced on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    source: Poly,
}

pub fn q_associate(g: &Poly) -> LinearizedPoly {
    LinearizedPoly { source: g.clone() }
}

impl LinearizedPoly {
    /// The conventional polynomial `g` with `self = L_g`.
    pub fn source(&self) -> &Poly {
        &self.source
    }

    /// `q^deg(g)`, or `None` for `g = 0` or on overflow.
    pub fn degree(&self) -> Option<u128> {
        let d = self.source.degree()?;
        (self.source.field().q() as u128).checked_pow(d as u32)
    }

    /// Nonzero terms `(q^i, g_i)` in increasing exponent order.
    pub fn terms(&self) -> Vec<(u128, u32)> {
        let q = self.source.field().q() as u128;
        let mut e = 1u128;
        let mut out = Vec::new();
        for (i, &c) in self.source.coeffs().iter().enumerate() {
            if i > 0 {
                e = e.saturating_mul(q);
            }
            if c != 0 {
                out.push((e, c));
            }
        }
        out
    }

    /// The dense polynomial `L_g(x)`, subject to the coefficient cap.
    pub fn materialize(&self) -> Result<Poly> {
        let field = self.source.field();
        if self.source.is_zero() {
            return Ok(Poly::zero(field));
        }
        let len = check_size(
            "linearized polynomial",
            self.degree().and_then(|d| d.checked_add(1)),
        )?;
        let mut coeffs = vec![0u32; len];
        for (e, c) in self.terms() {
            coeffs[e as usize] = c;
        }
        Ok(Poly::new(field, coeffs))
    }

    pub fn eval(&self, a: &ExtElement) -> ExtElement {
        eval_linearized(&self.source, a)
    }
}

/// `L_g(a) = sum g_i a^(q^i)`.
pub fn eval_linearized(g: &Poly, a: &ExtElement) -> ExtElement {
    assert!(
        g.field() == a.ctx().base(),
        "polynomial and element over different fields"
    );
    let mut acc = a.ctx().zero();
    let mut conj = a.clone();
    for (i, &c) in g.coeffs().iter().enumerate() {
        if i > 0 {
            conj = conj.frobenius(1);
        }
        if c != 0 {
            acc = acc.add(&conj.scale(c));
        }
    }
    acc
}

/// Least `d >= 1` with `a^(q^d) = a`, the degree of `a` over F_q.
pub fn element_degree(a: &ExtElement) -> usize {
    let mut conj = a.frobenius(1);
    let mut d = 1;
    while conj != *a {
        conj = conj.frobenius(1);
        d += 1;
    }
    d
}

/// The F_q-order of `a`: starting from `x^d - 1` with `d` the degree of `a`,
/// irreducible factors are removed while the quotient still annihilates `a`.
pub fn fq_order(a: &ExtElement) -> Poly {
    let field = a.ctx().base();
    let d = element_degree(a);
    let mut h = &Poly::monomial(field, 1, d) - &Poly::one(field);
    let fac = factor(&h).expect("x^d - 1 is nonzero");
    for (phi, mult) in &fac.factors {
        for _ in 0..*mult {
            let cand = h.exact_div(phi);
            if eval_linearized(&cand, a).is_zero() {
                h = cand;
            } else {
                break;
            }
        }
    }
    h
}

/// `f(L_g(x))`, by Horner's rule against the sparse form of `L_g`.
///
/// The result has `deg(f) * q^deg(g) + 1` coefficients and must fit under
/// [`max_coeffs`].
pub fn compose_f_lg(f: &Poly, g: &Poly) -> Result<Poly> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lin = q_associate(g);
    let size = lin
        .degree()
        .and_then(|d| d.checked_mul(n as u128))
        .and_then(|d| d.checked_add(1));
    let len = check_size("composition f(L_g)", size)?;
    let field = f.field();
    let terms = lin.terms();
    let top = terms.last().map_or(0, |&(e, _)| e as usize);
    let mut acc: Vec<u32> = Vec::with_capacity(len);
    for &c in f.coeffs().iter().rev() {
        // acc <- acc * L_g + c
        let mut next = vec![0u32; if acc.is_empty() { 1 } else { acc.len() + top }];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(e, t) in &terms {
                let slot = &mut next[i + e as usize];
                *slot = field.add(*slot, field.mul(a, t));
            }
        }
        next[0] = field.add(next[0], c);
        acc = next;
    }
    Ok(Poly::new(field, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ExtField, FiniteField};
    use crate::poly::{ord_x_mod, phi_q};
    use crate::text::parse_poly;
    use proptest::prelude::*;

    fn p(field: &FiniteField, s: &str) -> Poly {
        parse_poly(field, s).unwrap()
    }

    fn ext(field: &FiniteField, s: &str) -> ExtField {
        ExtField::new(&p(field, s)).unwrap()
    }

    #[test]
    fn q_associate_examples() {
        let f7 = FiniteField::prime(7).unwrap();
        let l = q_associate(&p(&f7, "x-1")).materialize().unwrap();
        assert_eq!(l, p(&f7, "x^7-x"));
        let l = q_associate(&Poly::one(&f7)).materialize().unwrap();
        assert_eq!(l, Poly::x(&f7));
        let f2 = FiniteField::prime(2).unwrap();
        let l = q_associate(&p(&f2, "x^4+x^2+x+1")).materialize().unwrap();
        assert_eq!(l, p(&f2, "x^16+x^4+x^2+x"));
        assert_eq!(l.degree(), Some(16));
    }

    #[test]
    fn materialize_respects_cap() {
        let f5 = FiniteField::prime(5).unwrap();
        let big = Poly::monomial(&f5, 1, 9);
        assert!(matches!(
            q_associate(&big).materialize(),
            Err(Error::SizeExceeded { .. })
        ));
    }

    #[test]
    fn eval_examples() {
        let f2 = FiniteField::prime(2).unwrap();
        let k = ext(&f2, "x^2+x+1");
        let alpha = k.generator();
        // L_{x^2 - 1}(a) = a^4 - a = 0 in F_4
        assert!(eval_linearized(&p(&f2, "x^2-1"), &alpha).is_zero());
        assert_eq!(eval_linearized(&Poly::one(&f2), &alpha), alpha);
        // a^2 - a = 1
        assert!(eval_linearized(&p(&f2, "x-1"), &alpha).is_one());
    }

    #[test]
    fn fq_order_examples() {
        let f2 = FiniteField::prime(2).unwrap();
        let k = ext(&f2, "x^2+x+1");
        assert!(fq_order(&k.zero()).is_one());
        assert_eq!(fq_order(&k.one()), p(&f2, "x-1"));
        assert_eq!(fq_order(&k.generator()), p(&f2, "x^2+1"));
        let f5 = FiniteField::prime(5).unwrap();
        let k = ext(&f5, "x^4+x-1");
        for c in 1..5 {
            assert_eq!(fq_order(&k.from_base(c)), p(&f5, "x-1"));
        }
    }

    #[test]
    fn element_degree_examples() {
        let f3 = FiniteField::prime(3).unwrap();
        let k = ext(&f3, "x^5+2*x+1");
        assert_eq!(element_degree(&k.from_base(2)), 1);
        assert_eq!(element_degree(&k.zero()), 1);
        assert_eq!(element_degree(&k.generator()), 5);
        // an element of F_16 with F_2-order (x+1)^3 has degree 4
        let f2 = FiniteField::prime(2).unwrap();
        let k = ext(&f2, "x^4+x+1");
        let target = p(&f2, "(x+1)^3");
        let a = (0..16)
            .map(|i| k.element_at(i))
            .find(|a| fq_order(a) == target)
            .unwrap();
        assert_eq!(element_degree(&a), 4);
    }

    #[test]
    fn compose_examples() {
        let f2 = FiniteField::prime(2).unwrap();
        let c = compose_f_lg(&p(&f2, "x^2+x+1"), &p(&f2, "x^4+x^2+x+1")).unwrap();
        assert_eq!(c, p(&f2, "x^32+x^16+x^8+x+1"));
        let f = p(&f2, "x^5+x^2+1");
        assert_eq!(compose_f_lg(&f, &Poly::one(&f2)).unwrap(), f);
        let f5 = FiniteField::prime(5).unwrap();
        let c = compose_f_lg(&p(&f5, "x^4+x-1"), &p(&f5, "x-1")).unwrap();
        assert_eq!(c, p(&f5, "x^20+x^16+x^12+x^8+x^5+x^4-x-1"));
        assert_eq!(
            compose_f_lg(&Poly::one(&f5), &Poly::x(&f5)),
            Err(Error::ConstantPolynomial)
        );
        assert_eq!(
            compose_f_lg(&Poly::x(&f5), &Poly::zero(&f5)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn compose_matches_dense_substitution() {
        let f3 = FiniteField::prime(3).unwrap();
        let f = p(&f3, "x^3+2*x^2+x+1");
        for g in ["x^2+1", "2*x^3+x", "x+2", "x^2"] {
            let g = p(&f3, g);
            let dense = f.compose(&q_associate(&g).materialize().unwrap());
            assert_eq!(compose_f_lg(&f, &g).unwrap(), dense);
        }
    }

    #[test]
    fn x_power_in_g_is_a_frobenius_power() {
        // f(L_{x^s g0}) = f(L_{g0})^(q^s)
        let f3 = FiniteField::prime(3).unwrap();
        let f = p(&f3, "x^2+1");
        let g0 = p(&f3, "x+1");
        let g = &Poly::x(&f3) * &g0;
        assert_eq!(
            compose_f_lg(&f, &g).unwrap(),
            compose_f_lg(&f, &g0).unwrap().pow(3)
        );
    }

    #[test]
    fn census_of_fq_orders() {
        // every monic H with H(0) != 0 and deg H <= 3 over F_2 is the order of
        // exactly Phi_2(H) elements
        let f2 = FiniteField::prime(2).unwrap();
        let mut candidates = Vec::new();
        for d in 0..=3u32 {
            for code in 0..(1u32 << d) {
                let mut c: Vec<u32> = (0..d).map(|i| (code >> i) & 1).collect();
                c.push(1);
                let h = Poly::new(&f2, c);
                if !h.is_divisible_by_x() {
                    candidates.push(h);
                }
            }
        }
        for h in candidates {
            let d = ord_x_mod(&h).unwrap() as usize;
            let k = ExtField::new(&first_irreducible(&f2, d)).unwrap();
            let count = (0..1u64 << d)
                .filter(|&i| fq_order(&k.element_at(i)) == h)
                .count() as u64;
            assert_eq!(count, phi_q(&h).unwrap(), "H = {h}");
        }
    }

    fn first_irreducible(field: &FiniteField, d: usize) -> Poly {
        (0..field.q().pow(d as u32))
            .map(|code| {
                let mut c: Vec<u32> = (0..d)
                    .map(|i| ((code / field.q().pow(i as u32)) % field.q()) as u32)
                    .collect();
                c.push(1);
                Poly::new(field, c)
            })
            .find(|f| f.is_irreducible().unwrap())
            .unwrap()
    }

    fn arb_coeffs(q: u32, len: usize) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0..q, 0..len)
    }

    proptest! {
        #[test]
        fn associate_laws(g in arb_coeffs(3, 5), h in arb_coeffs(3, 5), idx in 0u64..729) {
            let f3 = FiniteField::prime(3).unwrap();
            let k = ext(&f3, "x^6+2*x^4+x^2+2*x+2");
            let (g, h) = (Poly::new(&f3, g), Poly::new(&f3, h));
            let a = k.element_at(idx);
            prop_assert_eq!(
                eval_linearized(&(&g + &h), &a),
                eval_linearized(&g, &a).add(&eval_linearized(&h, &a))
            );
            prop_assert_eq!(
                eval_linearized(&g, &eval_linearized(&h, &a)),
                eval_linearized(&(&g * &h), &a)
            );
        }

        #[test]
        fn fq_order_properties(g in arb_coeffs(4, 6), idx in 0u64..4096, i in 0usize..6) {
            let f4 = FiniteField::extension(2, 2, None).unwrap();
            let k = ExtField::new(&first_irreducible(&f4, 6)).unwrap();
            let g = Poly::new(&f4, g);
            let a = k.element_at(idx);
            let h = fq_order(&a);
            prop_assert!(h.is_monic() && !h.is_divisible_by_x());
            let d = element_degree(&a);
            prop_assert_eq!(ord_x_mod(&h).unwrap(), d as u64);
            prop_assert!(h.divides(&(&Poly::monomial(&f4, 1, d) - &Poly::one(&f4))));
            // annihilation iff divisibility
            prop_assert_eq!(eval_linearized(&g, &a).is_zero(), g.is_zero() || h.divides(&g));
            // order of L_g(a) is h / gcd(h, g)
            let b = eval_linearized(&g, &a);
            let expect = if g.is_zero() { Poly::one(&f4) } else { h.exact_div(&h.gcd_monic(&g)) };
            prop_assert_eq!(fq_order(&b), expect);
            // conjugates share the order
            prop_assert_eq!(fq_order(&a.frobenius(i)), h);
        }
    }
}
