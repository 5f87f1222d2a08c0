//! Irreducible polynomials of large degree from primitive polynomials.
//!
//! For `f` irreducible of degree `n` and `g` primitive of degree `d` with
//! `gcd(n, q^d - 1) = 1`, `f(L_g(x))` is the product of two irreducibles:
//! `G1 = gcd(f(L_g(x)), x^{q^n} - x)` of degree `n` and `G2` of degree
//! `n (q^d - 1)`.

use crate::error::{Error, Result};
use crate::field::nt;
use crate::linearized::compose_f_lg;
use crate::poly::{ord_x_mod, Poly};

/// True when the roots of the irreducible `g` generate the multiplicative
/// group of F_{q^d}. `x` is not primitive.
pub fn is_primitive(g: &Poly) -> Result<bool> {
    if !g.is_irreducible()? {
        return Err(Error::NotIrreducible(g.to_string()));
    }
    if g.is_divisible_by_x() {
        return Ok(false);
    }
    let group = nt::checked_pow(g.field().q(), g.deg() as u64)
        .ok_or_else(|| Error::Overflow(format!("q^{} exceeds u64", g.deg())))?
        - 1;
    Ok(ord_x_mod(g)? == group)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionStep {
    pub f_in: Poly,
    pub g: Poly,
    /// The factor of degree `deg f_in`.
    pub g1: Poly,
    /// The factor of degree `deg f_in * (q^deg g - 1)`.
    pub g2: Poly,
}

fn violated(msg: String) -> Error {
    Error::PreconditionViolated(msg)
}

/// Splits `f(L_g(x)) = G1 * G2` and certifies both factors irreducible.
pub fn extend_by_primitive(f: &Poly, g: &Poly) -> Result<ConstructionStep> {
    if f.is_constant() || !f.is_irreducible()? {
        return Err(violated(format!("f = {f} is not irreducible")));
    }
    if g.is_zero() || g.is_constant() {
        return Err(violated(format!("g = {g} is constant")));
    }
    let field = f.field();
    let (f, g) = (f.monic(), g.monic());
    let x = Poly::x(field);
    if g == x || g == &x - &Poly::one(field) {
        return Err(violated(format!("g = {g} must differ from x and x - 1")));
    }
    if !is_primitive(&g).unwrap_or(false) {
        return Err(violated(format!("g = {g} is not primitive")));
    }
    let n = f.deg() as u64;
    let units = nt::checked_pow(field.q(), g.deg() as u64)
        .ok_or_else(|| Error::Overflow("q^d exceeds u64".into()))?
        - 1;
    if nt::gcd(n, units) != 1 {
        return Err(violated(format!(
            "gcd(deg f, q^deg g - 1) = gcd({n}, {units}) != 1"
        )));
    }
    let comp = compose_f_lg(&f, &g)?;
    // x^{q^n} mod comp by n Frobenius steps
    let mut r = x.rem(&comp);
    for _ in 0..n {
        r = r.frobenius_mod(&comp);
    }
    let g1 = comp.gcd_monic(&(&r - &x));
    let g2 = comp.exact_div(&g1);
    let big = n as u128 * units as u128;
    if g1.deg() as u64 != n || g2.deg() as u128 != big {
        return Err(Error::Internal(format!(
            "split of degrees {} + {} instead of {n} + {big}",
            g1.deg(),
            g2.deg()
        )));
    }
    for part in [&g1, &g2] {
        if !part.is_irreducible()? {
            return Err(Error::Internal(format!("factor {part} is reducible")));
        }
    }
    Ok(ConstructionStep { f_in: f, g, g1, g2 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionChain {
    pub base: Poly,
    pub steps: Vec<ConstructionStep>,
}

impl ConstructionChain {
    /// `f_1 = base`, then the `G2` of each step.
    pub fn outputs(&self) -> Vec<&Poly> {
        std::iter::once(&self.base)
            .chain(self.steps.iter().map(|s| &s.g2))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.outputs().iter().map(|p| p.deg()).collect()
    }
}

/// Iterates [`extend_by_primitive`] over F_2, feeding each `G2` into the next
/// step. The `g_i` must have pairwise coprime degrees of at least 2 and
/// `gcd(deg f, 2^{d_i} - 1) = 1` for every `i`.
pub fn iterate_f2(f: &Poly, gs: &[Poly]) -> Result<ConstructionChain> {
    let field = f.field();
    if field.q() != 2 {
        return Err(violated(format!("base field has q = {}, not 2", field.q())));
    }
    if f.is_constant() || !f.is_irreducible()? {
        return Err(violated(format!("f = {f} is not irreducible")));
    }
    let n = f.deg() as u64;
    let mut degrees = Vec::with_capacity(gs.len());
    for (i, g) in gs.iter().enumerate() {
        if g.field() != field {
            return Err(Error::MixedFields);
        }
        let d = g.degree().unwrap_or(0) as u64;
        if d < 2 {
            return Err(violated(format!("g_{} = {g} has degree {d} < 2", i + 1)));
        }
        if d >= 64 {
            return Err(Error::Overflow(format!("2^{d} - 1 exceeds u64")));
        }
        if !is_primitive(g).unwrap_or(false) {
            return Err(violated(format!("g_{} = {g} is not primitive", i + 1)));
        }
        let m = (1u64 << d) - 1;
        if nt::gcd(n, m) != 1 {
            return Err(violated(format!(
                "gcd(deg f, 2^{d} - 1) = gcd({n}, {m}) != 1 for g_{}",
                i + 1
            )));
        }
        degrees.push(d);
    }
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            let (di, dj) = (degrees[i], degrees[j]);
            if nt::gcd(di, dj) != 1 {
                return Err(violated(format!(
                    "deg g_{} = {di} and deg g_{} = {dj} are not coprime",
                    i + 1,
                    j + 1
                )));
            }
            let (mi, mj) = ((1u64 << di) - 1, (1u64 << dj) - 1);
            if nt::gcd(mi, mj) != 1 {
                return Err(Error::Internal(format!(
                    "2^{di} - 1 and 2^{dj} - 1 share a factor"
                )));
            }
        }
    }
    let base = f.monic();
    let mut steps: Vec<ConstructionStep> = Vec::with_capacity(gs.len());
    for g in gs {
        let cur = steps.last().map_or(&base, |s| &s.g2);
        let step = extend_by_primitive(cur, g)?;
        steps.push(step);
    }
    Ok(ConstructionChain { base, steps })
}
