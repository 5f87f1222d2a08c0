use std::collections::BTreeMap;

use proptest::prelude::*;

use linfactor::construct::{extend_by_primitive, is_primitive};
use linfactor::distribution::{additive_distribution, ni_lower_bound, root_fq_order};
use linfactor::explicit::{beta_from_alpha, factor_f_xq_minus_x, minimal_polynomial};
use linfactor::linearized::{compose_f_lg, fq_order};
use linfactor::poly::factor;
use linfactor::{Error, ExtField, FiniteField, Poly};

fn fields() -> Vec<FiniteField> {
    vec![
        FiniteField::prime(2).unwrap(),
        FiniteField::prime(3).unwrap(),
        FiniteField::extension(2, 2, None).unwrap(),
        FiniteField::prime(5).unwrap(),
    ]
}

fn monic_of_degree(field: &FiniteField, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.q();
    (0..q.pow(d as u32)).map(move |mut code| {
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
}

fn irreducibles(field: &FiniteField, d: usize) -> Vec<Poly> {
    monic_of_degree(field, d)
        .filter(|f| f.is_irreducible().unwrap())
        .collect()
}

// the first irreducible of degree d at or after the given code
fn irreducible_from(field: &FiniteField, d: usize, start: u64) -> Poly {
    let all: Vec<Poly> = monic_of_degree(field, d).collect();
    let n = all.len();
    (0..n)
        .map(|i| &all[(start as usize + i) % n])
        .find(|f| f.is_irreducible().unwrap())
        .unwrap()
        .clone()
}

fn admissible(f: &Poly) -> bool {
    let n = f.degree().unwrap() as u64;
    f.trace_coeff() == 0 && !n.is_multiple_of(f.field().p())
}

#[test]
fn beta_identity_and_shift_factorization() {
    for field in fields() {
        for n in 1..=6 {
            for f in irreducibles(&field, n) {
                if !admissible(&f) {
                    assert!(beta_from_alpha(&f).is_err(), "{f}");
                    continue;
                }
                let beta = beta_from_alpha(&f).unwrap();
                assert_eq!(beta.frobenius(1).sub(&beta), beta.ctx().generator(), "{f}");
                if n > 4 {
                    continue;
                }
                let out = factor_f_xq_minus_x(&f).unwrap();
                let mut shifts = out.shifts.clone();
                shifts.sort();
                let x_minus_1 = &Poly::x(&field) - &Poly::one(&field);
                let oracle = factor(&compose_f_lg(&f, &x_minus_1).unwrap()).unwrap();
                let factors: Vec<Poly> = oracle.factors.iter().map(|(g, _)| g.clone()).collect();
                assert_eq!(shifts, factors, "{f}");
                assert!(oracle.factors.iter().all(|&(_, e)| e == 1));
            }
        }
    }
}

#[test]
fn trace_zero_gate() {
    // admissible f are exactly those predicted to give q factors of degree n
    for field in fields() {
        let x_minus_1 = &Poly::x(&field) - &Poly::one(&field);
        for n in 1..=4 {
            for f in irreducibles(&field, n) {
                if (n as u64).is_multiple_of(field.p()) {
                    continue;
                }
                let hist = additive_distribution(&f, &x_minus_1).unwrap().histogram();
                let split = hist == BTreeMap::from([(n as u64, field.q())]);
                assert_eq!(split, admissible(&f), "{f}");
            }
        }
    }
}

#[test]
fn conjugates_share_order_and_polynomial() {
    for field in fields() {
        for f in irreducibles(&field, 3) {
            let alpha = ExtField::new(&f).unwrap().generator();
            let h = root_fq_order(&f).unwrap();
            for i in 0..3 {
                let conj = alpha.frobenius(i);
                assert_eq!(fq_order(&conj), h);
                assert_eq!(minimal_polynomial(&conj), f);
            }
        }
    }
}

#[test]
fn construction_matches_oracle() {
    let mut checked = 0;
    for field in fields() {
        let q = field.q();
        for d in 2..=4usize {
            for g in irreducibles(&field, d) {
                if !is_primitive(&g).unwrap() {
                    continue;
                }
                for n in 1..=4usize {
                    let units = q.pow(d as u32) - 1;
                    if q.pow(d as u32) * n as u64 > 10_000 || gcd(n as u64, units) != 1 {
                        continue;
                    }
                    for f in irreducibles(&field, n).into_iter().take(3) {
                        if f.is_divisible_by_x() {
                            continue;
                        }
                        let step = extend_by_primitive(&f, &g).unwrap();
                        let oracle = factor(&compose_f_lg(&f, &g).unwrap()).unwrap();
                        assert_eq!(
                            oracle.factors,
                            vec![(step.g1.clone(), 1), (step.g2.clone(), 1)],
                            "f = {f}, g = {g}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 20);
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn degenerate_inputs() {
    let f2 = FiniteField::prime(2).unwrap();
    let x = Poly::x(&f2);
    let one = Poly::one(&f2);
    assert!(matches!(
        ni_lower_bound(&x, &(&x + &one)),
        Err(Error::DegenerateInput(_))
    ));
    assert_eq!(
        additive_distribution(&x, &Poly::zero(&f2)),
        Err(Error::ZeroPolynomial)
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_power_multiplicities(
        fi in 0usize..4,
        n in 1usize..=3,
        fcode in 0u64..200,
        gcode in 0u64..200,
        s in 1usize..=2,
    ) {
        let field = fields()[fi].clone();
        let q = field.q();
        let f = irreducible_from(&field, n, fcode);
        let mut g0: Vec<Poly> = monic_of_degree(&field, 1).filter(|g| !g.is_divisible_by_x()).collect();
        g0.extend(monic_of_degree(&field, 2).filter(|g| !g.is_divisible_by_x()));
        let g0 = g0[gcode as usize % g0.len()].clone();
        prop_assume!(n as u64 * q.pow((g0.degree().unwrap() + s) as u32) <= 400);
        let g = &Poly::monomial(&field, 1, s) * &g0;
        let d = additive_distribution(&f, &g).unwrap();
        prop_assert_eq!(d.frobenius_power as usize, s);
        prop_assert_eq!(d.total_degree, n as u64 * q.pow(g0.degree().unwrap() as u32));
        let oracle = factor(&compose_f_lg(&f, &g).unwrap()).unwrap();
        prop_assert_eq!(d.histogram(), oracle.degree_histogram());
        prop_assert!(oracle.factors.iter().all(|&(_, e)| e as u64 == q.pow(s as u32)));
    }

    #[test]
    fn shifts_of_irreducibles_differ(fi in 0usize..4, n in 1usize..=5, code in 0u64..5000, a in 1u32..5) {
        let field = fields()[fi].clone();
        prop_assume!(!(n as u64).is_multiple_of(field.p()));
        let g = irreducible_from(&field, n, code);
        let a = a % field.q() as u32;
        prop_assume!(a != 0);
        prop_assert_ne!(g.shift(a), g);
    }

    #[test]
    fn class_degrees_sum_to_total(fi in 0usize..4, n in 1usize..=4, fcode in 0u64..700, gcode in 0u64..700) {
        let field = fields()[fi].clone();
        let f = irreducible_from(&field, n, fcode);
        let gs: Vec<Poly> = (0..=3).flat_map(|d| monic_of_degree(&field, d)).filter(|g| !g.is_divisible_by_x()).collect();
        let g = gs[gcode as usize % gs.len()].clone();
        let d = additive_distribution(&f, &g).unwrap();
        let sum: u64 = d.classes.iter().map(|c| c.degree * c.count).sum();
        prop_assert_eq!(sum, d.total_degree);
        prop_assert_eq!(sum, n as u64 * field.q().pow(g.degree().unwrap() as u32));
        if !root_fq_order(&f).unwrap().is_one() {
            prop_assert!(ni_lower_bound(&f, &g).unwrap() <= d.num_factors());
        }
    }
}
