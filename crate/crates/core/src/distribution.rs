//! Closed-form degree distributions of the irreducible factors of `f(L_g(x))`
//! and of `f(x^m)`, a lower bound on the number of factors, and the
//! characterization of the irreducible compositions.
//!
//! For `f` irreducible of degree `n` whose roots have F_q-order `h`, and
//! `g = g1 * g2` with `gcd(g1, h) = 1` and every irreducible factor of `g2`
//! dividing `h`: each monic divisor `G` of `g1` contributes
//! `n * q^deg(g2) * Phi_q(G) / ord(x, G g2 h)` factors of degree
//! `ord(x, G g2 h)`. Every division is checked to be exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::nt;
use crate::field::ExtField;
use crate::linearized::fq_order;
use crate::poly::{count_divisors, monic_divisors, nu, ord_x_mod, phi_q, Poly};

/// The order shared by the roots of one class of factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderLabel {
    /// An F_q-order `G * g2 * h`.
    Additive(Poly),
    /// A multiplicative order `g * m2 * e`.
    Multiplicative(u64),
}

impl fmt::Display for OrderLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderLabel::Additive(p) => write!(f, "{p}"),
            OrderLabel::Multiplicative(e) => write!(f, "{e}"),
        }
    }
}

/// `count` irreducible factors of degree `degree`, all of whose roots have
/// order `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorClass {
    pub order: OrderLabel,
    pub degree: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDistribution {
    /// Sorted by degree, then by the text of the order label.
    pub classes: Vec<FactorClass>,
    /// `sum degree * count`.
    pub total_degree: u64,
    /// `s` when `g = x^s * g0`; the classes describe `f(L_g0(x))`, and every
    /// factor of `f(L_g(x))` carries multiplicity `q^s`.
    pub frobenius_power: u32,
    /// `q^s`.
    pub multiplicity: u64,
}

impl DegreeDistribution {
    fn new(mut classes: Vec<FactorClass>, frobenius_power: u32, multiplicity: u64) -> Result<Self> {
        classes.sort_by_cached_key(|c| (c.degree, c.order.to_string()));
        let total_degree = classes.iter().try_fold(0u64, |acc, c| {
            c.degree
                .checked_mul(c.count)
                .and_then(|d| acc.checked_add(d))
                .ok_or_else(|| Error::Overflow("total degree".into()))
        })?;
        Ok(DegreeDistribution {
            classes,
            total_degree,
            frobenius_power,
            multiplicity,
        })
    }

    /// Number of distinct irreducible factors.
    pub fn num_factors(&self) -> u64 {
        self.classes.iter().map(|c| c.count).sum()
    }

    /// Factor count per degree, with multiplicities, comparable to
    /// [`Factorization::degree_histogram`](crate::poly::Factorization::degree_histogram).
    pub fn histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for c in &self.classes {
            *hist.entry(c.degree).or_insert(0) += c.count * self.multiplicity;
        }
        hist
    }

    /// True when the described polynomial is itself irreducible.
    pub fn is_irreducible(&self) -> bool {
        self.multiplicity == 1 && self.num_factors() == 1
    }
}

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("{what} exceeds u64"))
}

fn internal(msg: String) -> Error {
    Error::Internal(msg)
}

// Monic normalization of an irreducible f.
fn checked_irreducible(f: &Poly) -> Result<Poly> {
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    Ok(f.monic())
}

/// F_q-order of the roots of the irreducible `f`, computed on the root `z` of
/// F_q[z]/(f).
pub fn root_fq_order(f: &Poly) -> Result<Poly> {
    let f = checked_irreducible(f)?;
    Ok(fq_order(&ExtField::new_unchecked(&f).generator()))
}

/// Splits `g = g1 * g2` with `gcd(g1, h) = 1` and every irreducible factor of
/// `g2` dividing `h`. `g2` is monic; the leading coefficient of `g` stays in `g1`.
pub fn split_g(g: &Poly, h: &Poly) -> Result<(Poly, Poly)> {
    if g.is_zero() || h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for p in [g, h] {
        if p.is_divisible_by_x() {
            return Err(Error::DivisibleByX(p.to_string()));
        }
    }
    let mut g1 = g.clone();
    let mut g2 = Poly::one(g.field());
    loop {
        let d = g1.gcd_monic(h);
        if d.is_one() {
            break;
        }
        g1 = g1.exact_div(&d);
        g2 = &g2 * &d;
    }
    Ok((g1, g2))
}

// g = x^s * g0 with g0 monic; returns (s, g0, q^s).
fn strip_g(g: &Poly) -> Result<(u32, Poly, u64)> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (s, g0) = g.split_x_power();
    let mult = nt::checked_pow(g.field().q(), s as u64).ok_or_else(|| overflow("q^s"))?;
    Ok((s as u32, g0.monic(), mult))
}

/// Degree distribution of the irreducible factors of `f(L_g(x))` for
/// irreducible `f` and nonzero `g`.
pub fn additive_distribution(f: &Poly, g: &Poly) -> Result<DegreeDistribution> {
    let f = checked_irreducible(f)?;
    let (s, g0, multiplicity) = strip_g(g)?;
    let h = root_fq_order(&f)?;
    let (g1, g2) = split_g(&g0, &h)?;
    let g1 = g1.monic();
    let q = f.field().q();
    let n = f.deg() as u128;
    let qm = nt::checked_pow(q, g2.deg() as u64).ok_or_else(|| overflow("q^m"))? as u128;
    let g2h = &g2 * &h;
    let mut classes = Vec::new();
    for big_g in monic_divisors(&g1)? {
        let label = &big_g * &g2h;
        let degree = ord_x_mod(&label)?;
        let roots = n * qm * phi_q(&big_g)? as u128;
        if !roots.is_multiple_of(degree as u128) {
            return Err(internal(format!(
                "{roots} roots of order {label} do not split into factors of degree {degree}"
            )));
        }
        let count = u64::try_from(roots / degree as u128).map_err(|_| overflow("factor count"))?;
        classes.push(FactorClass {
            order: OrderLabel::Additive(label),
            degree,
            count,
        });
    }
    let dist = DegreeDistribution::new(classes, s, multiplicity)?;
    let expected = nt::checked_pow(q, g0.deg() as u64)
        .and_then(|v| v.checked_mul(n as u64))
        .ok_or_else(|| overflow("n q^deg(g0)"))?;
    if dist.total_degree != expected {
        return Err(internal(format!(
            "class degrees sum to {} instead of {expected}",
            dist.total_degree
        )));
    }
    Ok(dist)
}

/// Degree distribution of the irreducible factors of `f(x^m)` for irreducible
/// `f` with nonzero roots and `gcd(m, q) = 1`.
pub fn butler_distribution(f: &Poly, m: u64) -> Result<DegreeDistribution> {
    let f = checked_irreducible(f)?;
    if f.is_divisible_by_x() {
        return Err(Error::DegenerateInput(
            "f = x: the root 0 has no multiplicative order".into(),
        ));
    }
    let q = f.field().q();
    if m == 0 {
        return Err(Error::PreconditionViolated("m must be positive".into()));
    }
    if nt::gcd(m, q) != 1 {
        return Err(Error::NotCoprime(m.to_string(), q.to_string()));
    }
    let e = ExtField::new_unchecked(&f).generator().mult_order()?;
    let mut m2 = 1u64;
    for (r, k) in nt::integer_factor(m as u128)? {
        if e % r == 0 {
            m2 *= r.pow(k);
        }
    }
    let m1 = m / m2;
    let n = f.deg() as u128;
    let mut classes = Vec::new();
    for g in nt::integer_divisors(m1 as u128)? {
        let label = g
            .checked_mul(m2)
            .and_then(|v| v.checked_mul(e))
            .ok_or_else(|| overflow("order label"))?;
        let degree = nt::ord_mod(q, label)?;
        let roots = n * m2 as u128 * nt::integer_phi(g as u128)? as u128;
        if !roots.is_multiple_of(degree as u128) {
            return Err(internal(format!(
                "{roots} roots of order {label} do not split into factors of degree {degree}"
            )));
        }
        classes.push(FactorClass {
            order: OrderLabel::Multiplicative(label),
            degree,
            count: (roots / degree as u128) as u64,
        });
    }
    let dist = DegreeDistribution::new(classes, 0, 1)?;
    if dist.total_degree as u128 != n * m as u128 {
        return Err(internal(format!(
            "class degrees sum to {} instead of {}",
            dist.total_degree,
            n * m as u128
        )));
    }
    Ok(dist)
}

/// `ceil(q^m * W(g1) / p^u)` with `u = clog_p nu(g2 h) - clog_p nu(h)`, a lower
/// bound on the number of irreducible factors of `f(L_g(x))`.
pub fn ni_lower_bound(f: &Poly, g: &Poly) -> Result<u64> {
    let f = checked_irreducible(f)?;
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.is_divisible_by_x() {
        return Err(Error::DivisibleByX(g.to_string()));
    }
    let h = root_fq_order(&f)?;
    if h.is_one() {
        return Err(Error::DegenerateInput(
            "f = x has F_q-order 1, so nu(h) = 0".into(),
        ));
    }
    let field = f.field();
    let (p, q) = (field.p(), field.q());
    let (g1, g2) = split_g(&g.monic(), &h)?;
    let w = count_divisors(&g1)? as u128;
    let qm = nt::checked_pow(q, g2.deg() as u64).ok_or_else(|| overflow("q^m"))? as u128;
    let log = crate::poly::ceil_log;
    let u = log(p, nu(&(&g2 * &h))? as u64) - log(p, nu(&h)? as u64);
    let pu = nt::checked_pow(p, u as u64).ok_or_else(|| overflow("p^u"))? as u128;
    Ok((qm * w).div_ceil(pu) as u64)
}

/// Which clause of the characterization makes `f(L_g(x))` irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrreducibilityReason {
    /// `g` is a nonzero constant, so the composition is `f` rescaled.
    ConstantG,
    /// `q = p` and `g` has degree one, divides `h` and does not divide
    /// `(x^n - 1)/h`.
    LinearDivisorOfOrder,
    /// `q = p = 2`, `g = x^2 + 1`, `h` squarefree and divisible by `x + 1`.
    SquareOfXPlusOne,
    /// None of the clauses hold.
    Reducible,
}

impl fmt::Display for IrreducibilityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrreducibilityReason::ConstantG => "constant-g",
            IrreducibilityReason::LinearDivisorOfOrder => "linear-divisor-of-order",
            IrreducibilityReason::SquareOfXPlusOne => "square-of-x-plus-one",
            IrreducibilityReason::Reducible => "reducible",
        })
    }
}

/// Decides irreducibility of `f(L_g(x))` twice, from the closed-form
/// distribution and from the characterization clauses (plus the trace
/// criteria for `g = x - 1` over F_p and `g = x^2 + 1` over F_2), and
/// reports an internal error if any of them disagree.
pub fn is_composition_irreducible(f: &Poly, g: &Poly) -> Result<(bool, IrreducibilityReason)> {
    let f = checked_irreducible(f)?;
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.is_divisible_by_x() {
        return Err(Error::DivisibleByX(g.to_string()));
    }
    let dist = additive_distribution(&f, g)?;
    let by_distribution = dist.is_irreducible();

    let field = f.field();
    let (p, q) = (field.p(), field.q());
    let g = g.monic();
    let h = root_fq_order(&f)?;
    let n = f.deg();
    let x = Poly::x(field);
    let one = Poly::one(field);
    let x_n_1 = &Poly::monomial(field, 1, n) - &one;
    let x_plus_1_sq = &(&x + &one) * &(&x + &one);

    let reason = if g.is_constant() {
        IrreducibilityReason::ConstantG
    } else if q == p && g.deg() == 1 && g.divides(&h) && !g.divides(&x_n_1.exact_div(&h)) {
        IrreducibilityReason::LinearDivisorOfOrder
    } else if q == 2 && g == x_plus_1_sq && nu(&h)? == 1 && (&x + &one).divides(&h) {
        IrreducibilityReason::SquareOfXPlusOne
    } else {
        IrreducibilityReason::Reducible
    };
    let by_clauses = reason != IrreducibilityReason::Reducible;
    if by_clauses != by_distribution {
        return Err(internal(format!(
            "characterization says {by_clauses}, distribution says {by_distribution} for f = {f}, g = {g}"
        )));
    }

    let trace_nonzero = f.trace_coeff() != 0;
    let x_minus_1 = &x - &one;
    if q == p && g == x_minus_1 {
        // h does not divide (x^n - 1)/(x - 1) iff the trace is nonzero
        let h_divides_quotient = h.divides(&x_n_1.exact_div(&x_minus_1));
        if trace_nonzero == h_divides_quotient || trace_nonzero != by_distribution {
            return Err(internal(format!(
                "trace criterion disagrees for f = {f}, g = x - 1"
            )));
        }
    }
    if q == 2 && g == x_plus_1_sq && (trace_nonzero && n % 2 == 1) != by_distribution {
        return Err(internal(format!(
            "trace and parity criterion disagrees for f = {f}, g = x^2 + 1"
        )));
    }
    Ok((by_distribution, reason))
}

/// Distribution for irreducible `g` coprime to `x` and `h`: one factor of
/// degree `n` and `n (q^d - 1) / lcm(n, e)` of degree `lcm(n, e)`, where
/// `e = ord(x, g)`. Cross-checked against [`additive_distribution`].
pub fn irreducible_g_distribution(f: &Poly, g: &Poly) -> Result<DegreeDistribution> {
    let f = checked_irreducible(f)?;
    if !g.is_irreducible()? {
        return Err(Error::NotIrreducible(g.to_string()));
    }
    let g = g.monic();
    if g.is_divisible_by_x() {
        return Err(Error::DivisibleByX(g.to_string()));
    }
    let h = root_fq_order(&f)?;
    if !g.gcd_monic(&h).is_one() {
        return Err(Error::NotCoprime(g.to_string(), h.to_string()));
    }
    let q = f.field().q();
    let n = f.deg() as u64;
    let d = g.deg() as u64;
    let e = ord_x_mod(&g)?;
    let l = nt::lcm(n, e)?;
    let units = nt::checked_pow(q, d).ok_or_else(|| overflow("q^d"))? - 1;
    let roots = n as u128 * units as u128;
    if !roots.is_multiple_of(l as u128) {
        return Err(internal(format!("lcm({n}, {e}) does not divide {roots}")));
    }
    let classes = vec![
        FactorClass {
            order: OrderLabel::Additive(h.clone()),
            degree: n,
            count: 1,
        },
        FactorClass {
            order: OrderLabel::Additive(&g * &h),
            degree: l,
            count: (roots / l as u128) as u64,
        },
    ];
    let dist = DegreeDistribution::new(classes, 0, 1)?;
    let general = additive_distribution(&f, &g)?;
    if general != dist {
        return Err(internal(format!(
            "irreducible-g formula disagrees with the general distribution for f = {f}, g = {g}"
        )));
    }
    Ok(dist)
}
