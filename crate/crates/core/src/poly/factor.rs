//! Complete factorization over F_q: squarefree decomposition, distinct-degree
//! splitting, then Cantor-Zassenhaus equal-degree splitting with a seeded RNG.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::field::nt;
use crate::field::{FieldElement, FiniteField};

/// `unit * prod(factor^multiplicity)`, factors monic irreducible, pairwise
/// distinct and in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self) -> Poly {
        let field = self.unit.field();
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit.value()), |acc, (f, m)| {
                &acc * &f.pow(*m as u64)
            })
    }

    /// Number of irreducible factors of each degree, counted with multiplicity.
    pub fn degree_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for (f, m) in &self.factors {
            *hist.entry(f.deg() as u64).or_insert(0) += *m as u64;
        }
        hist
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }
}

/// Factorization with the default seed 0.
pub fn factor(f: &Poly) -> Result<Factorization> {
    factor_with_seed(f, 0)
}

pub fn factor_with_seed(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let unit = field.element(f.leading());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: BTreeMap<Poly, u32> = BTreeMap::new();
    for (sqf, mult) in squarefree_decomposition(&f.monic()) {
        for (part, d) in distinct_degree(&sqf) {
            let mut pieces = Vec::new();
            equal_degree(&part, d, &mut rng, &mut pieces);
            for piece in pieces {
                *found.entry(piece).or_insert(0) += mult;
            }
        }
    }
    Ok(Factorization {
        unit,
        factors: found.into_iter().collect(),
    })
}

// Pairs (g, m) with f = prod g^m and every g squarefree, monic and nonconstant.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.field().p() as u32;
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd_monic(&df);
    let mut w = f.exact_div(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd_monic(&c);
        let z = w.exact_div(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w);
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

// For squarefree monic f: pairs (g_d, d) with g_d the product of all degree-d factors.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.frobenius_mod(&rest);
        let g = rest.gcd_monic(&(&h - &x));
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if !rest.is_constant() {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn random_poly(field: &FiniteField, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = field.q() as u32;
    Poly::new(field, (0..below).map(|_| rng.gen_range(0..q)).collect())
}

// Splits a product of distinct monic irreducibles of degree d.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.deg();
    if n == d {
        out.push(f.clone());
        return;
    }
    let field = f.field();
    loop {
        let a = random_poly(field, n, rng);
        if a.is_constant() {
            continue;
        }
        let g = f.gcd_monic(&a);
        let g = if !g.is_one() {
            g
        } else {
            f.gcd_monic(&splitting_element(&a, f, d))
        };
        if !g.is_one() && g.deg() < n {
            let other = f.exact_div(&g);
            equal_degree(&g, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}

// Odd q: a^((q^d - 1)/2) - 1. Even q: the absolute trace of a into F_2.
fn splitting_element(a: &Poly, m: &Poly, d: usize) -> Poly {
    let field = a.field();
    let q = field.q();
    if q % 2 == 1 {
        // (q^d - 1)/2 = (q - 1)/2 * (1 + q + ... + q^(d-1))
        let mut conj = a.rem(m);
        let mut norm = conj.clone();
        for _ in 1..d {
            conj = conj.frobenius_mod(m);
            norm = norm.mul_mod(&conj, m);
        }
        &norm.pow_mod(((q - 1) / 2) as u128, m) - &Poly::one(field)
    } else {
        let bits = field.k() * d;
        let mut sq = a.rem(m);
        let mut acc = sq.clone();
        for _ in 1..bits {
            sq = sq.mul_mod(&sq, m);
            acc = &acc + &sq;
        }
        acc
    }
}

impl Poly {
    /// Rabin's test: `x^(q^n) = x mod f` and `gcd(x^(q^(n/r)) - x, f) = 1` for
    /// each prime `r | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(1) => return Ok(true),
            Some(n) => n,
        };
        let f = self.monic();
        let x = Poly::x(f.field());
        let primes: Vec<usize> = nt::integer_factor(n as u128)?
            .into_iter()
            .map(|(r, _)| r as usize)
            .collect();
        let mut h = x.clone();
        for i in 1..=n {
            h = h.frobenius_mod(&f);
            if i < n && primes.iter().any(|&r| n / r == i) && !f.gcd_monic(&(&h - &x)).is_one() {
                return Ok(false);
            }
        }
        Ok(h == x.rem(&f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;
    use proptest::prelude::*;

    fn poly(field: &FiniteField, s: &str) -> Poly {
        parse_poly(field, s).unwrap()
    }

    // every monic polynomial of degree `d` over `field`
    fn monics(field: &FiniteField, d: usize) -> Vec<Poly> {
        let q = field.q();
        (0..q.pow(d as u32))
            .map(|mut code| {
                let mut c: Vec<u32> = (0..d)
                    .map(|_| {
                        let v = (code % q) as u32;
                        code /= q;
                        v
                    })
                    .collect();
                c.push(1);
                Poly::new(field, c)
            })
            .collect()
    }

    // irreducible iff no monic factor of degree 1..=n/2 divides
    fn brute_irreducible(f: &Poly) -> bool {
        let n = f.deg();
        (1..=n / 2).all(|d| monics(f.field(), d).iter().all(|g| !g.divides(f)))
    }

    #[test]
    fn degree_32_composition_factors() {
        let f2 = FiniteField::prime(2).unwrap();
        let f = poly(&f2, "x^32+x^16+x^8+x+1");
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0], (poly(&f2, "x^4+x+1"), 1));
        assert_eq!(fac.factors[1].0.degree(), Some(28));
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn trivial_factorizations() {
        let f2 = FiniteField::prime(2).unwrap();
        let fac = factor(&poly(&f2, "x")).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f2, "x"), 1)]);
        let fac = factor(&poly(&f2, "x^2+1")).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f2, "x+1"), 2)]);
        assert_eq!(factor(&Poly::zero(&f2)), Err(Error::ZeroPolynomial));
        let f5 = FiniteField::prime(5).unwrap();
        let fac = factor(&Poly::constant(&f5, 3)).unwrap();
        assert!(fac.factors.is_empty());
        assert_eq!(fac.unit.value(), 3);
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = FiniteField::prime(2).unwrap();
        let f5 = FiniteField::prime(5).unwrap();
        assert!(poly(&f2, "x^4+x+1").is_irreducible().unwrap());
        assert!(!poly(&f2, "x^2+1").is_irreducible().unwrap());
        assert!(poly(&f5, "x^4+x-1").is_irreducible().unwrap());
        assert_eq!(
            Poly::one(&f2).is_irreducible(),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for field in [
            FiniteField::prime(2).unwrap(),
            FiniteField::prime(3).unwrap(),
            FiniteField::extension(2, 2, None).unwrap(),
        ] {
            let max_deg = if field.q() == 2 { 8 } else { 4 };
            for d in 1..=max_deg {
                for f in monics(&field, d) {
                    assert_eq!(f.is_irreducible().unwrap(), brute_irreducible(&f), "{f}");
                }
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree n is (1/n) sum_{d|n} mu(d) q^(n/d)
        let f3 = FiniteField::prime(3).unwrap();
        let counts: Vec<usize> = (1..=5)
            .map(|d| {
                monics(&f3, d)
                    .iter()
                    .filter(|f| f.is_irreducible().unwrap())
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![3, 3, 8, 18, 48]);
    }

    #[test]
    fn output_is_seed_independent() {
        let f3 = FiniteField::prime(3).unwrap();
        let f = poly(&f3, "x^12+2*x^7+x^5+x^2+2");
        let base = factor(&f).unwrap();
        for seed in 1..6 {
            assert_eq!(factor_with_seed(&f, seed).unwrap(), base);
        }
    }

    fn check_factorization(f: &Poly) -> std::result::Result<(), TestCaseError> {
        let fac = factor(f).unwrap();
        prop_assert_eq!(&fac.product(), f);
        for w in fac.factors.windows(2) {
            prop_assert!(w[0].0 < w[1].0);
        }
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            prop_assert!(g.is_irreducible().unwrap());
        }
        Ok(())
    }

    proptest! {
        #[test]
        fn factors_recombine_prime(c in prop::collection::vec(0i64..5, 1..30)) {
            let f5 = FiniteField::prime(5).unwrap();
            let f = Poly::from_ints(&f5, &c);
            prop_assume!(!f.is_zero());
            check_factorization(&f)?;
        }

        #[test]
        fn factors_recombine_repeated(c in prop::collection::vec(0u32..4, 1..8), e in 1u64..6) {
            let f4 = FiniteField::extension(2, 2, None).unwrap();
            let g = Poly::new(&f4, c);
            prop_assume!(!g.is_zero());
            let f = &g.pow(e) * &g.shift(1);
            check_factorization(&f)?;
        }

        #[test]
        fn factors_recombine_f9(c in prop::collection::vec(0u32..9, 1..16)) {
            let f9 = FiniteField::extension(3, 2, None).unwrap();
            let f = Poly::new(&f9, c);
            prop_assume!(!f.is_zero());
            check_factorization(&f)?;
        }
    }
}
