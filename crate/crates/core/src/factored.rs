//! Canonical prime factorizations of 64-bit integers.
//!
//! Factoring uses trial division by small primes and a deterministic
//! Pollard-Brent rho fallback; primality is a deterministic Miller-Rabin
//! over the 12-base set that is exact for all u64 inputs.

use crate::error::{Error, Result};

/// An integer together with its sorted prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    /// Canonical factorization of `n >= 1`. Deterministic.
    pub fn factorize(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        let mut factors = factorize_u64(n);
        factors.sort_unstable_by_key(|&(p, _)| p);
        Ok(FactoredInteger { value: n, factors })
    }

    /// Build from parts, checking all invariants.
    pub fn from_parts(value: u64, factors: Vec<(u64, u32)>) -> Result<Self> {
        if value == 0 {
            return Err(Error::ZeroInput);
        }
        let mut prod: u128 = 1;
        let mut last = 0u64;
        for &(p, e) in &factors {
            if p <= last || !is_prime_u64(p) || e == 0 {
                return Err(Error::InvalidParam(format!(
                    "bad factor entry ({p}, {e})"
                )));
            }
            last = p;
            for _ in 0..e {
                prod = prod.checked_mul(p as u128).ok_or(Error::Overflow("from_parts"))?;
            }
        }
        if prod != value as u128 {
            return Err(Error::InvalidParam(format!(
                "factors multiply to {prod}, not {value}"
            )));
        }
        Ok(FactoredInteger { value, factors })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Sorted `(prime, exponent)` pairs; empty iff value == 1.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }
}

/// Deterministic Miller-Rabin, exact for every u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This base set decides primality for all n < 3.3e24, in particular all u64.
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    for p in [2u64, 3, 5] {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    // wheel over 7, 11, 13, ... up to 2^16; larger cofactors go to rho
    let mut p = 7u64;
    const INC: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while p <= 1 << 16 && p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += INC[i];
        i = (i + 1) % INC.len();
    }
    if n > 1 {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if is_prime_u64(m) {
                match factors.iter_mut().find(|(p, _)| *p == m) {
                    Some((_, e)) => *e += 1,
                    None => factors.push((m, 1)),
                }
                continue;
            }
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    factors
}

/// Brent-cycle rho with a fixed constant sequence; deterministic.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n));
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut ys) = (2u64, 2u64);
        let (mut y, mut d) = (2u64, 1u64);
        let mut r = 1u64;
        let mut q = 1u64;
        while d == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && d == 1 {
                ys = y;
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                d = gcd_u64(q, n);
                k += lim;
            }
            r *= 2;
        }
        if d == n {
            // backtrack one step at a time
            d = 1;
            while d == 1 {
                ys = f(ys);
                d = gcd_u64(x.abs_diff(ys), n);
            }
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_has_empty_factors() {
        let f = FactoredInteger::factorize(1).unwrap();
        assert_eq!(f.value(), 1);
        assert!(f.factors().is_empty());
    }

    #[test]
    fn twelve() {
        let f = FactoredInteger::factorize(12).unwrap();
        assert_eq!(f.factors(), &[(2, 2), (3, 1)]);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(FactoredInteger::factorize(0), Err(Error::ZeroInput));
    }

    #[test]
    fn mersenne_61_is_prime() {
        let n = 2305843009213693951u64; // 2^61 - 1
        assert!(is_prime_u64(n));
        let f = FactoredInteger::factorize(n).unwrap();
        assert_eq!(f.factors(), &[(n, 1)]);
    }

    #[test]
    fn semiprime_of_large_primes() {
        let p = 2147483647u64; // 2^31 - 1
        let q = 2147483659u64;
        let f = FactoredInteger::factorize(p * q).unwrap();
        assert_eq!(f.factors(), &[(p, 1), (q, 1)]);
    }

    #[test]
    fn from_parts_validates() {
        assert!(FactoredInteger::from_parts(12, vec![(2, 2), (3, 1)]).is_ok());
        assert!(FactoredInteger::from_parts(12, vec![(3, 1), (2, 2)]).is_err());
        assert!(FactoredInteger::from_parts(12, vec![(4, 1), (3, 1)]).is_err());
        assert!(FactoredInteger::from_parts(13, vec![(2, 2), (3, 1)]).is_err());
    }

    #[test]
    fn exhaustive_small() {
        for n in 1..=2000u64 {
            let f = FactoredInteger::factorize(n).unwrap();
            let prod: u64 = f
                .factors()
                .iter()
                .map(|&(p, e)| p.pow(e))
                .product();
            assert_eq!(prod, n);
            for &(p, _) in f.factors() {
                assert!(is_prime_u64(p));
            }
        }
    }
}
