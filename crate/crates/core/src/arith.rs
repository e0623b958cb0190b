//! Word-size integer helpers shared by every module.

use std::collections::BTreeMap;

use num_prime::nt_funcs::{factorize64, is_prime64};

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    is_prime64(n)
}

/// Prime factorization as an ordered map `prime -> exponent`.
pub fn factorize(n: u64) -> BTreeMap<u64, usize> {
    if n <= 1 {
        return BTreeMap::new();
    }
    factorize64(n)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Least non-negative residue of `a` modulo `m`.
pub fn modulo(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
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

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// `p^r` if it stays below `limit`.
pub fn checked_pow_below(p: u64, r: u32, limit: u64) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..r {
        acc = acc.checked_mul(p)?;
        if acc >= limit {
            return None;
        }
    }
    Some(acc)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (prime, exp) in factorize(n) {
        let current = out.clone();
        let mut pk = 1u64;
        for _ in 0..exp {
            pk *= prime;
            out.extend(current.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Smallest prime factor of `n >= 2`.
pub fn smallest_prime_factor(n: u64) -> u64 {
    *factorize(n).keys().next().expect("n >= 2")
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&q| is_prime(q)).collect()
}
