//! Word-sized elementary number theory.
//!
//! Everything here runs on `u64` inputs with `u128` intermediates, which is
//! plenty for the moduli that show up in digit censuses (`p^m` for small `p`).
//! Factorization is trial division only.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};

/// Greatest common divisor of two unbounded integers; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd_u64(a, b))
        .checked_mul(b)
        .ok_or_else(|| Error::TooLarge(format!("lcm({a}, {b})")))
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
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

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// ascending order. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
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

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::OutOfRange("euler_phi(0) is undefined".into()));
    }
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// `x` in `[0, m)` with `a·x ≡ 1 (mod m)`.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("modulus {m} must be at least 2")));
    }
    let a_red = (a as i128).rem_euclid(m as i128) as u64;
    let ext = (a_red as i128).extended_gcd(&(m as i128));
    if ext.gcd != 1 {
        return Err(Error::NoInverse(a_red, m));
    }
    Ok(ext.x.rem_euclid(m as i128) as u64)
}

/// Smallest `t ≥ 1` with `b^t ≡ 1 (mod n)`, found by stripping prime factors
/// from `φ(n)`.
pub fn multiplicative_order(b: u64, n: u64) -> Result<u64> {
    if n < 2 || gcd_u64(b % n, n) != 1 {
        return Err(Error::OrderUndefined(b, n));
    }
    let phi = euler_phi(n)?;
    let mut t = phi;
    for (q, _) in factorize(phi) {
        while t % q == 0 && pow_mod(b, t / q, n) == 1 {
            t /= q;
        }
    }
    Ok(t)
}

pub fn is_primitive_root(b: u64, n: u64) -> bool {
    if n < 2 {
        return false;
    }
    match (multiplicative_order(b, n), euler_phi(n)) {
        (Ok(ord), Ok(phi)) => ord == phi,
        _ => false,
    }
}

/// Outcome of checking that a primitive root of `p²` stays primitive for
/// every higher power of `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    Holds,
    /// First exponent `k` where `b` is not a primitive root of `p^k`.
    FailsAt(u32),
    /// `b` is not a primitive root of `p²` (or `p` is not an odd prime).
    NotApplicable,
}

impl Propagation {
    pub fn holds(self) -> bool {
        self == Propagation::Holds
    }
}

pub fn check_p2_propagation(b: u64, p: u64, k_max: u32) -> Propagation {
    if p == 2 || !is_prime(p) {
        return Propagation::NotApplicable;
    }
    let Some(p2) = p.checked_mul(p) else {
        return Propagation::NotApplicable;
    };
    if !is_primitive_root(b, p2) {
        return Propagation::NotApplicable;
    }
    for k in 2..=k_max {
        match p.checked_pow(k) {
            Some(pk) if is_primitive_root(b, pk) => {}
            _ => return Propagation::FailsAt(k),
        }
    }
    Propagation::Holds
}

/// `p^m` as a word, or an error naming the overflow.
pub fn prime_power(p: u64, m: u32) -> Result<u64> {
    p.checked_pow(m)
        .ok_or_else(|| Error::TooLarge(format!("{p}^{m}")))
}
