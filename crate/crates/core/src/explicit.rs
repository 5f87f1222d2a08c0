//! Explicit factorization of `f(x^q - x)` for irreducible `f` of degree `n`
//! with zero trace and `p` not dividing `n`.
//!
//! With `alpha` a root of `f`, `beta = -(1/n) sum_{i=1}^{n-1} i alpha^{q^{n-1-i}}`
//! satisfies `beta^q - beta = alpha`. Its minimal polynomial `g0` has degree
//! `n` and `f(x^q - x)` is the product of the `q` distinct shifts `g0(x + a)`.

use crate::error::{Error, Result};
use crate::field::{ExtElement, ExtField, FieldElement};
use crate::linearized::compose_f_lg;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftFactorization {
    pub g0: Poly,
    /// `g0(x + a)` for `a` in canonical element order; `shifts[0] = g0`.
    pub shifts: Vec<Poly>,
}

impl ShiftFactorization {
    pub fn product(&self) -> Poly {
        self.shifts
            .iter()
            .fold(Poly::one(self.g0.field()), |acc, s| &acc * s)
    }
}

fn admissible(f: &Poly) -> Result<Poly> {
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    let f = f.monic();
    if f.trace_coeff() != 0 {
        return Err(Error::TraceNonzero);
    }
    let p = f.field().p();
    if (f.deg() as u64).is_multiple_of(p) {
        return Err(Error::DegreeDivisibleByP { n: f.deg(), p });
    }
    Ok(f)
}

/// `beta` in F_q[z]/(f), computed from the conjugates of the root `z`.
pub fn beta_from_alpha(f: &Poly) -> Result<ExtElement> {
    let f = admissible(f)?;
    let field = f.field();
    let n = f.deg();
    let ctx = ExtField::new_unchecked(&f);
    let alpha = ctx.generator();
    let mut conj = Vec::with_capacity(n);
    conj.push(alpha.clone());
    for j in 1..n {
        conj.push(conj[j - 1].frobenius(1));
    }
    let mut sum = ctx.zero();
    for i in 1..n {
        sum = sum.add(&conj[n - 1 - i].scale(field.from_int(i as i64)));
    }
    let inv_n = field
        .inv(field.from_int(n as i64))
        .ok_or_else(|| Error::Internal(format!("{n} is not invertible")))?;
    let beta = sum.scale(field.neg(inv_n));
    if beta.frobenius(1).sub(&beta) != alpha {
        return Err(Error::Internal(format!(
            "beta^q - beta != alpha for f = {f}"
        )));
    }
    Ok(beta)
}

/// Monic minimal polynomial over F_q: the product of `x - b^{q^i}` over the
/// distinct conjugates of `b`.
pub fn minimal_polynomial(b: &ExtElement) -> Poly {
    let ctx = b.ctx();
    let field = ctx.base();
    let mut conj = vec![b.clone()];
    loop {
        let next = conj.last().unwrap().frobenius(1);
        if next == *b {
            break;
        }
        conj.push(next);
    }
    // coefficients in F_q[z]/(f), little-endian
    let mut prod = vec![ctx.one()];
    for c in &conj {
        let neg = c.neg();
        let mut next = vec![ctx.zero(); prod.len() + 1];
        for (i, a) in prod.iter().enumerate() {
            next[i + 1] = next[i + 1].add(a);
            next[i] = next[i].add(&a.mul(&neg));
        }
        prod = next;
    }
    let coeffs = prod
        .iter()
        .map(|c| {
            c.base_value()
                .expect("conjugate product has a coefficient outside F_q")
        })
        .collect();
    Poly::new(field, coeffs)
}

/// The complete factorization of `f(x^q - x)` as shifts of `g0`.
pub fn factor_f_xq_minus_x(f: &Poly) -> Result<ShiftFactorization> {
    let beta = beta_from_alpha(f)?;
    let f = f.monic();
    let g0 = minimal_polynomial(&beta);
    if g0.deg() != f.deg() {
        return Err(Error::Internal(format!(
            "minimal polynomial {g0} has degree {} instead of {}",
            g0.deg(),
            f.deg()
        )));
    }
    let field = f.field();
    let shifts: Vec<Poly> = field.elements().map(|a| g0.shift(a)).collect();
    let out = ShiftFactorization { g0, shifts };
    check_shifts(&f, &out)?;
    Ok(out)
}

fn check_shifts(f: &Poly, out: &ShiftFactorization) -> Result<()> {
    let mut sorted = out.shifts.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != out.shifts.len() {
        return Err(Error::Internal(format!("shifts of {} repeat", out.g0)));
    }
    let x_minus_1 = &Poly::x(f.field()) - &Poly::one(f.field());
    if out.product() != compose_f_lg(f, &x_minus_1)? {
        return Err(Error::Internal(format!(
            "shifts of {} do not multiply to f(x^q - x) for f = {f}",
            out.g0
        )));
    }
    Ok(())
}

/// `x^{2q} - 2x^{q+1} + x^2 - a = prod_c (x^2 + 2cx + c^2 - a/4)` for a
/// nonsquare `a` in odd characteristic.
pub fn closed_form_quadratic(a: &FieldElement) -> Result<ShiftFactorization> {
    let field = a.field();
    if field.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let a = a.value();
    if a == 0 || field.is_square(a) {
        return Err(Error::NotANonsquare(field.element(a).to_string()));
    }
    let a4 = field.div(a, field.from_int(4))?;
    let shifts: Vec<Poly> = field
        .elements()
        .map(|c| {
            let c2 = field.mul(c, c);
            Poly::new(field, vec![field.sub(c2, a4), field.add(c, c), 1])
        })
        .collect();
    let out = ShiftFactorization {
        g0: shifts[0].clone(),
        shifts,
    };
    let f = Poly::new(field, vec![field.neg(a), 0, 1]);
    if factor_f_xq_minus_x(&f)? != out {
        return Err(Error::Internal(format!(
            "quadratic closed form disagrees with the general factorization for f = {f}"
        )));
    }
    Ok(out)
}

/// `f(x^q - x) = prod_c (x^3 + cx^2 + (c^2 + a)x + c^3 + ac + b)` for
/// irreducible `f = x^3 + ax + b` in characteristic 2.
pub fn closed_form_cubic_char2(a: &FieldElement, b: &FieldElement) -> Result<ShiftFactorization> {
    let field = a.field();
    if b.field() != field {
        return Err(Error::MixedFields);
    }
    if field.p() != 2 {
        return Err(Error::OddCharacteristic);
    }
    let (a, b) = (a.value(), b.value());
    let f = Poly::new(field, vec![b, a, 0, 1]);
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    let shifts: Vec<Poly> = field
        .elements()
        .map(|c| {
            let c2 = field.mul(c, c);
            let c3 = field.mul(c2, c);
            let c0 = field.add(field.add(c3, field.mul(a, c)), b);
            Poly::new(field, vec![c0, field.add(c2, a), c, 1])
        })
        .collect();
    let out = ShiftFactorization {
        g0: shifts[0].clone(),
        shifts,
    };
    if factor_f_xq_minus_x(&f)? != out {
        return Err(Error::Internal(format!(
            "cubic closed form disagrees with the general factorization for f = {f}"
        )));
    }
    Ok(out)
}
