//! Small-integer number theory: factorization, totient, divisors and
//! multiplicative order modulo m. Everything is exact on `u64`.

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or_else(|| Error::Overflow(format!("lcm({a}, {b})")))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `base^exp` or `None` on u64 overflow.
pub fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Deterministic Miller-Rabin for the whole u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho; `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut power = 1u64;
        let mut lam = 1u64;
        while g == 1 {
            if power == lam {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = f(y);
            lam += 1;
            g = gcd(x.abs_diff(y), n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_large(d, out);
    factor_large(n / d, out);
}

/// Complete prime factorization as sorted `(prime, exponent)` pairs.
///
/// Trial division up to 10^6, Pollard rho on the cofactor. Inputs at or above
/// 2^64 are rejected.
pub fn integer_factor(n: u128) -> Result<Vec<(u64, u32)>> {
    if n >= 1u128 << 64 {
        return Err(Error::Overflow(format!("cannot factor {n} (>= 2^64)")));
    }
    if n == 0 {
        return Err(Error::PreconditionViolated("integer_factor(0)".into()));
    }
    let mut n = n as u64;
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    let mut d = 3u64;
    while d <= TRIAL_LIMIT && d * d <= n {
        push(d, &mut n);
        d += 2;
    }
    if n > 1 {
        let mut rest = Vec::new();
        if d * d > n {
            rest.push(n);
        } else {
            factor_large(n, &mut rest);
        }
        rest.sort_unstable();
        for p in rest {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    Ok(out)
}

pub fn integer_phi(n: u128) -> Result<u64> {
    let mut phi = n as u64;
    for (p, _) in integer_factor(n)? {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// All positive divisors of `n` in increasing order.
pub fn integer_divisors(n: u128) -> Result<Vec<u64>> {
    let mut divs = vec![1u64];
    for (p, e) in integer_factor(n)? {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Least `k > 0` with `a^k = 1 (mod m)`.
pub fn ord_mod(a: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::PreconditionViolated(
            "modulus must be positive".into(),
        ));
    }
    if m == 1 {
        return Ok(1);
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::NotCoprime(a.to_string(), m.to_string()));
    }
    let mut k = integer_phi(m as u128)?;
    for (p, _) in integer_factor(k as u128)? {
        while k % p == 0 && pow_mod(a, k / p, m) == 1 {
            k /= p;
        }
    }
    Ok(k)
}
