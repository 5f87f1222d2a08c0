//! Polynomial analogues of integer arithmetic functions: squarefree part,
//! maximal multiplicity, Euler phi, order of x modulo F and divisor lattices.

use super::{factor, Poly};
use crate::error::{Error, Result};
use crate::field::nt;
use crate::field::ExtField;

/// Divisor enumeration refuses lattices larger than this.
pub const MAX_DIVISORS: u64 = 1_000_000;

/// Product of the distinct monic irreducible factors; `rad(c) = 1` for constants.
pub fn rad(f: &Poly) -> Result<Poly> {
    let fac = factor(f)?;
    Ok(fac
        .factors
        .iter()
        .fold(Poly::one(f.field()), |acc, (g, _)| &acc * g))
}

/// Largest multiplicity of an irreducible factor; `nu(c) = 0` for constants.
pub fn nu(f: &Poly) -> Result<u32> {
    let fac = factor(f)?;
    Ok(fac.factors.iter().map(|&(_, m)| m).max().unwrap_or(0))
}

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("{what} exceeds u64"))
}

/// Order of the unit group of F_q[x]/(f).
pub fn phi_q(f: &Poly) -> Result<u64> {
    let q = f.field().q();
    let mut phi = 1u64;
    for (g, s) in factor(f)?.factors {
        let norm = nt::checked_pow(q, g.deg() as u64).ok_or_else(|| overflow("N(g)"))?;
        let part = nt::checked_pow(norm, (s - 1) as u64)
            .and_then(|v| v.checked_mul(norm - 1))
            .ok_or_else(|| overflow("Phi_q"))?;
        phi = phi.checked_mul(part).ok_or_else(|| overflow("Phi_q"))?;
    }
    Ok(phi)
}

/// Least `r` with `p^r >= v`.
pub(crate) fn ceil_log(p: u64, v: u64) -> u32 {
    let mut r = 0;
    let mut pr = 1u64;
    while pr < v {
        pr = pr.saturating_mul(p);
        r += 1;
    }
    r
}

/// Least `k > 0` with `x^k = 1 mod F`.
///
/// The lcm of the orders of x modulo the distinct irreducible factors gives
/// the order modulo `rad(F)`; the order modulo `F` is that times `p^r`, where
/// `r` is least with `p^r >= nu(F)`.
pub fn ord_x_mod(f: &Poly) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(1);
    }
    if f.is_divisible_by_x() {
        return Err(Error::DivisibleByX(f.to_string()));
    }
    let fac = factor(f)?;
    let mut ord = 1u64;
    for (g, _) in &fac.factors {
        let e = ExtField::new_unchecked(g).generator().mult_order()?;
        ord = nt::lcm(ord, e)?;
    }
    let p = f.field().p();
    let nu = fac.factors.iter().map(|&(_, m)| m).max().unwrap_or(0);
    let pr = nt::checked_pow(p, ceil_log(p, nu as u64) as u64).ok_or_else(|| overflow("p^r"))?;
    ord.checked_mul(pr).ok_or_else(|| overflow("ord(x, F)"))
}

/// Number of monic divisors, `prod (m_i + 1)`.
pub fn count_divisors(g: &Poly) -> Result<u64> {
    let fac = factor(g)?;
    fac.factors.iter().try_fold(1u64, |acc, &(_, m)| {
        acc.checked_mul(m as u64 + 1)
            .ok_or_else(|| overflow("divisor count"))
    })
}

/// All monic divisors of `g` in canonical order.
pub fn monic_divisors(g: &Poly) -> Result<Vec<Poly>> {
    let count = count_divisors(g)?;
    if count > MAX_DIVISORS {
        return Err(Error::SizeExceeded {
            what: "divisor enumeration",
            size: count as u128,
            limit: MAX_DIVISORS as u128,
        });
    }
    let mut divs = vec![Poly::one(g.field())];
    for (p, m) in factor(g)?.factors {
        let len = divs.len();
        let mut pk = Poly::one(g.field());
        for _ in 0..m {
            pk = &pk * &p;
            for i in 0..len {
                let d = &divs[i] * &pk;
                divs.push(d);
            }
        }
    }
    divs.sort();
    Ok(divs)
}
