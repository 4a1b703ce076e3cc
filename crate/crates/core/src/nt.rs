//! Rational-integer helpers: modular exponentiation, primality, trial-division
//! factorization and modular square roots.

use crate::error::{Error, Result};

#[inline]
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

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
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

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

/// Factorization by trial division, primes in increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
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

/// Sieve of Eratosthenes: all primes strictly below `bound`.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Square root modulo an odd prime by Tonelli-Shanks. `None` if `a` is a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // smallest quadratic non-residue, deterministic
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

/// Multiplicative order of `p` modulo 5, for `p` coprime to 5.
pub fn order_mod5(p: u64) -> u32 {
    match p % 5 {
        1 => 1,
        4 => 2,
        2 | 3 => 4,
        _ => 0,
    }
}

/// 5-adic valuation of a positive integer.
pub fn v5(mut n: u64) -> u32 {
    assert!(n > 0, "v5 of zero");
    let mut v = 0;
    while n % 5 == 0 {
        n /= 5;
        v += 1;
    }
    v
}

pub fn is_fifth_power_free(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e < 5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let sieve = primes_below(10_000);
        let direct: Vec<u64> = (0..10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, direct);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(299));
    }

    #[test]
    fn factor_reassembles() {
        for n in 2..5000u64 {
            let prod: u64 = factor(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
        assert_eq!(factor(608), vec![(2, 5), (19, 1)]);
    }

    #[test]
    fn tonelli_shanks_roots_square_back() {
        for p in primes_below(2000).into_iter().skip(1) {
            for a in 1..p.min(60) {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a % p),
                    None => assert_eq!(pow_mod(a, (p - 1) / 2, p), p - 1),
                }
            }
        }
        assert_eq!(sqrt_mod(5, 19), Some(9));
    }
}
