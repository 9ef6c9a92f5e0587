//! Small-integer number theory: trial-division factorization, modular
//! powers, valuations and the canonical primitive root.
//!
//! Everything here works on `u64` with `u128` intermediates. Inputs are at
//! desk scale (levels up to about 10^12), so trial division is adequate.

use crate::error::{domain, Result};

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization in increasing order of primes. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// p-adic valuation of a nonzero integer; `valuation(0, p)` is `u32::MAX`.
pub fn valuation(mut k: u64, p: u64) -> u32 {
    if k == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while k % p == 0 {
        k /= p;
        v += 1;
    }
    v
}

pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

pub fn checked_pow(p: u64, e: u32) -> Result<u64> {
    match p.checked_pow(e) {
        Some(v) => Ok(v),
        None => domain(format!("{p}^{e} overflows 64 bits")),
    }
}

/// Euler's totient of a prime power p^m.
pub fn phi_prime_power(p: u64, m: u32) -> Result<u64> {
    if m == 0 {
        return Ok(1);
    }
    Ok(checked_pow(p, m - 1)? * (p - 1))
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return crate::error::unsupported(
            "p = 2: dyadic places are not modeled (no quadratic character modulo 2)",
        );
    }
    if !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    Ok(())
}

/// The least positive primitive root modulo the odd prime `p` that is also a
/// primitive root modulo p². Such a root generates (ℤ/p^m)^× for every m ≥ 1.
pub fn canonical_primitive_root(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    let order = p - 1;
    let cofactors: Vec<u64> = factorize(order).iter().map(|&(r, _)| order / r).collect();
    let p2 = p * p;
    (2..p)
        .find(|&g| {
            cofactors.iter().all(|&c| pow_mod(g, c, p) != 1) && pow_mod(g, order, p2) != 1
        })
        .ok_or_else(|| crate::error::Error::Domain(format!("no primitive root modulo {p}")))
}
