//! Pointwise exact evaluation of the generalized gcd/lcm family.
//!
//! Everything here is a pure function of its inputs. All products run in
//! 128-bit intermediates with explicit overflow errors.
//!
//! Prime-power formulas in use, for `a = k*b + j` with `0 <= j < b`:
//!
//! * gcd-sum:      `h_b(p^a) = p^(k+j) + (p^b - 1) * sum_{l=1..k} p^((k+j-l) + b(l-1))`
//!   (the divisibility-free rewrite of the closed form with denominator
//!   `p(p^(b-1)-1)`; also valid at b = 1 where it reduces to Pillai's function)
//! * harmonic mean: `H_b(p^a) = 1` for k = 0, else
//!   `p^(k(b+1)) (p^(b+1)-1) / (p^(k(b+1)) (p^(b+1)-p) + p - 1)`
//! * Klee totient: `phi_b(p^a) = p^a - p^(a-b)` for a >= b, else `p^a`

use crate::error::{Error, Result};
use crate::factored::{gcd_u64, FactoredInteger};
use crate::rational::Rational;
use std::collections::BTreeMap;

/// The fixed power parameter `b >= 1` of `(r,s)_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exponent(u32);

impl Exponent {
    pub fn new(b: u32) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidExponent);
        }
        Ok(Exponent(b))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn checked_pow_u128(p: u128, e: u32, what: &'static str) -> Result<u128> {
    p.checked_pow(e).ok_or(Error::Overflow(what))
}

/// `(n_1, .., n_k)_b`: the largest d with `d^b` dividing every input.
///
/// Computed as `prod p^floor(e_p/b)` over the factorization of `gcd(ns)`;
/// `d^b | n_i` for all i is equivalent to `d^b | gcd(ns)`.
pub fn gen_gcd(ns: &[u64], b: Exponent) -> Result<u64> {
    if ns.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut g = 0u64;
    for &n in ns {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        g = gcd_u64(g, n);
    }
    if b.get() == 1 {
        return Ok(g);
    }
    let f = FactoredInteger::factorize(g)?;
    let mut d = 1u64;
    for &(p, e) in f.factors() {
        d *= p.pow(e / b.get()); // cannot overflow: d divides g
    }
    Ok(d)
}

/// `[n_1, .., n_k]_b`: the smallest d with every input dividing `d^b`.
///
/// Computed as `prod p^ceil(e_p/b)` over the merged (max) exponents.
pub fn gen_lcm(ns: &[u64], b: Exponent) -> Result<u64> {
    if ns.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut exps: BTreeMap<u64, u32> = BTreeMap::new();
    for &n in ns {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        for &(p, e) in FactoredInteger::factorize(n)?.factors() {
            let cur = exps.entry(p).or_insert(0);
            *cur = (*cur).max(e);
        }
    }
    let mut d: u128 = 1;
    for (&p, &e) in &exps {
        let ce = e.div_ceil(b.get());
        d = d
            .checked_mul(checked_pow_u128(p as u128, ce, "gen_lcm")?)
            .ok_or(Error::Overflow("gen_lcm"))?;
    }
    u64::try_from(d).map_err(|_| Error::Overflow("gen_lcm"))
}

/// Floor of the integer b-th root.
pub fn iroot(n: u64, b: u32) -> u64 {
    if b == 1 || n <= 1 {
        return n;
    }
    if b >= 64 {
        return 1;
    }
    let mut r = (n as f64).powf(1.0 / b as f64).round() as u64;
    while r > 0 && (r as u128).checked_pow(b).map_or(true, |v| v > n as u128) {
        r -= 1;
    }
    while ((r + 1) as u128).checked_pow(b).map_or(false, |v| v <= n as u128) {
        r += 1;
    }
    r
}

/// Indicator of perfect b-th powers.
pub fn chi_b(n: u64, b: Exponent) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let r = iroot(n, b.get());
    Ok((r as u128).pow(b.get().min(127)) == n as u128)
}

/// Indicator of b-free integers (no prime exponent reaches b).
pub fn xi_b(n: u64, b: Exponent) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let f = FactoredInteger::factorize(n)?;
    Ok(f.factors().iter().all(|&(_, e)| e < b.get()))
}

/// Klee's totient `phi_b(n) = #{k <= n : (k,n)_b = 1}`.
pub fn phi_b(n: u64, b: Exponent) -> Result<u64> {
    Ok(phi_b_of_factored(&FactoredInteger::factorize(n)?, b))
}

pub fn phi_b_of_factored(f: &FactoredInteger, b: Exponent) -> u64 {
    phi_from_factors(f.factors(), b.get()).expect("phi_b <= n") as u64
}

pub(crate) fn phi_from_factors(factors: &[(u64, u32)], b: u32) -> Result<u128> {
    let mut val: u128 = 1;
    for &(p, a) in factors {
        val = val
            .checked_mul(phi_b_prime_power(p, a, b)?)
            .ok_or(Error::Overflow("phi_b"))?;
    }
    Ok(val)
}

/// Klee totient of a prime power, as u128.
pub(crate) fn phi_b_prime_power(p: u64, a: u32, b: u32) -> Result<u128> {
    let pa = checked_pow_u128(p as u128, a, "phi_b prime power")?;
    if a >= b {
        Ok(pa - pa / (p as u128).pow(b))
    } else {
        Ok(pa)
    }
}

/// Gcd-sum `h_b` at a prime power.
pub(crate) fn h_prime_power(p: u64, a: u32, b: u32) -> Result<u128> {
    let k = a / b;
    let j = a % b;
    let p = p as u128;
    let mut acc = checked_pow_u128(p, k + j, "h_b prime power")?;
    if k > 0 {
        let pb1 = checked_pow_u128(p, b, "h_b prime power")? - 1;
        for l in 1..=k {
            let exp = (k + j - l) + b * (l - 1);
            let term = pb1
                .checked_mul(checked_pow_u128(p, exp, "h_b prime power")?)
                .ok_or(Error::Overflow("h_b prime power"))?;
            acc = acc.checked_add(term).ok_or(Error::Overflow("h_b prime power"))?;
        }
    }
    Ok(acc)
}

/// Gcd-sum `h_b(n) = sum_{j<=n} (j,n)_b`, evaluated multiplicatively.
pub fn h_b(n: u64, b: Exponent) -> Result<u64> {
    h_b_of_factored(&FactoredInteger::factorize(n)?, b)
}

pub fn h_b_of_factored(f: &FactoredInteger, b: Exponent) -> Result<u64> {
    let acc = h_from_factors(f.factors(), b.get())?;
    u64::try_from(acc).map_err(|_| Error::Overflow("h_b"))
}

pub(crate) fn h_from_factors(factors: &[(u64, u32)], b: u32) -> Result<u128> {
    let mut acc: u128 = 1;
    for &(p, a) in factors {
        acc = acc
            .checked_mul(h_prime_power(p, a, b)?)
            .ok_or(Error::Overflow("h_b"))?;
    }
    Ok(acc)
}

/// Harmonic mean of a prime power.
pub(crate) fn harmonic_prime_power(p: u64, a: u32, b: u32) -> Result<Rational> {
    let k = a / b;
    if k == 0 {
        return Ok(Rational::ONE);
    }
    let p = p as i128;
    let pow = p
        .checked_pow(k * (b + 1))
        .ok_or(Error::Overflow("harmonic prime power"))?;
    let pb1 = p.checked_pow(b + 1).ok_or(Error::Overflow("harmonic prime power"))?;
    let num = pow
        .checked_mul(pb1 - 1)
        .ok_or(Error::Overflow("harmonic prime power"))?;
    let den = pow
        .checked_mul(pb1 - p)
        .and_then(|v| v.checked_add(p - 1))
        .ok_or(Error::Overflow("harmonic prime power"))?;
    Rational::new(num, den)
}

/// Harmonic mean `H_b(n) = n (sum_{j<=n} 1/(j,n)_b)^{-1}`, exact.
pub fn harmonic_mean(n: u64, b: Exponent) -> Result<Rational> {
    harmonic_mean_of_factored(&FactoredInteger::factorize(n)?, b)
}

pub fn harmonic_mean_of_factored(f: &FactoredInteger, b: Exponent) -> Result<Rational> {
    harmonic_from_factors(f.factors(), b.get())
}

pub(crate) fn harmonic_from_factors(factors: &[(u64, u32)], b: u32) -> Result<Rational> {
    let mut acc = Rational::ONE;
    for &(p, a) in factors {
        acc = acc.checked_mul(&harmonic_prime_power(p, a, b)?)?;
    }
    Ok(acc)
}

/// `n * log G_b(n) = sum_{d^b | n} phi_b(n/d^b) log d`, with exact integer
/// coefficients times f64 logarithms.
pub fn geo_logsum(n: u64, b: Exponent) -> Result<f64> {
    geo_logsum_of_factored(&FactoredInteger::factorize(n)?, b)
}

pub fn geo_logsum_of_factored(f: &FactoredInteger, b: Exponent) -> Result<f64> {
    geo_from_factors(f.factors(), b.get())
}

pub(crate) fn geo_from_factors(factors: &[(u64, u32)], bb: u32) -> Result<f64> {
    // d ranges over divisors of D = prod p^floor(e_p/b); d^b | n iff d | D.
    let dfactors: Vec<(u64, u32)> = factors
        .iter()
        .filter_map(|&(p, e)| {
            let q = e / bb;
            (q > 0).then_some((p, q))
        })
        .collect();
    if dfactors.is_empty() {
        return Ok(0.0); // b-free n: only the d = 1 term
    }
    let mut sum = CompensatedSum::default();
    let mut texp = vec![0u32; dfactors.len()];
    loop {
        // phi_b(n / d^b) from the exponent vector of d
        let mut phi: u128 = 1;
        let mut log_d = 0.0f64;
        let mut di = 0usize;
        for &(p, e) in factors {
            let t = if di < dfactors.len() && dfactors[di].0 == p {
                let t = texp[di];
                di += 1;
                t
            } else {
                0
            };
            let a = e - bb * t;
            phi = phi
                .checked_mul(phi_b_prime_power(p, a, bb)?)
                .ok_or(Error::Overflow("geo_logsum"))?;
            if t > 0 {
                log_d += t as f64 * (p as f64).ln();
            }
        }
        sum.add(phi as f64 * log_d);
        // next divisor exponent vector
        let mut i = 0;
        loop {
            if i == texp.len() {
                return Ok(sum.total());
            }
            if texp[i] < dfactors[i].1 {
                texp[i] += 1;
                break;
            }
            texp[i] = 0;
            i += 1;
        }
    }
}

/// Neumaier-compensated f64 accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u32) -> Exponent {
        Exponent::new(x).unwrap()
    }

    #[test]
    fn gen_gcd_examples() {
        assert_eq!(gen_gcd(&[1, 500], b(2)).unwrap(), 1);
        assert_eq!(gen_gcd(&[4, 4], b(2)).unwrap(), 2);
        assert_eq!(gen_gcd(&[8, 4], b(2)).unwrap(), 2);
        assert_eq!(gen_gcd(&[36, 72], b(2)).unwrap(), 6);
        assert_eq!(gen_gcd(&[12, 18], b(1)).unwrap(), 6);
        assert_eq!(gen_gcd(&[], b(2)), Err(Error::EmptySequence));
        assert_eq!(gen_gcd(&[0, 3], b(2)), Err(Error::ZeroInput));
    }

    #[test]
    fn gen_lcm_examples() {
        assert_eq!(gen_lcm(&[4, 8], b(2)).unwrap(), 4);
        for bb in 1..5 {
            assert_eq!(gen_lcm(&[7, 7], b(bb)).unwrap(), 7);
        }
        assert_eq!(gen_lcm(&[2, 3, 4], b(2)).unwrap(), 6);
        assert_eq!(gen_lcm(&[], b(2)), Err(Error::EmptySequence));
        // overflow of the 64-bit result is an explicit error
        let big = 2u64.pow(62);
        assert_eq!(gen_lcm(&[big, 3u64.pow(39)], b(1)), Err(Error::Overflow("gen_lcm")));
    }

    #[test]
    fn chi_xi_examples() {
        assert!(chi_b(9, b(2)).unwrap());
        assert!(!chi_b(8, b(2)).unwrap());
        assert!(xi_b(10, b(2)).unwrap());
        assert!(!xi_b(12, b(2)).unwrap());
        for bb in 1..6 {
            assert!(chi_b(1, b(bb)).unwrap());
            assert!(xi_b(1, b(bb)).unwrap());
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_b(4, b(2)).unwrap(), 3);
        assert_eq!(phi_b(16, b(2)).unwrap(), 12);
        // b-free n has the empty product
        assert_eq!(phi_b(30, b(2)).unwrap(), 30);
    }

    #[test]
    fn h_examples() {
        for p in [2u64, 3, 5, 97] {
            for bb in 2..5 {
                assert_eq!(h_b(p, b(bb)).unwrap(), p);
            }
        }
        assert_eq!(h_b(4, b(2)).unwrap(), 5);
        assert_eq!(h_b(16, b(2)).unwrap(), 22);
    }

    #[test]
    fn h_b1_is_pillai() {
        // h_1 = id * phi (Cesaro); check against a direct gcd sum
        for n in 1..=200u64 {
            let direct: u64 = (1..=n).map(|j| gcd_u64(j, n)).sum();
            assert_eq!(h_b(n, b(1)).unwrap(), direct, "n={n}");
        }
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_mean(1, b(2)).unwrap(), Rational::ONE);
        assert_eq!(harmonic_mean(4, b(2)).unwrap(), Rational::new(8, 7).unwrap());
        assert_eq!(harmonic_mean(16, b(2)).unwrap(), Rational::new(64, 55).unwrap());
    }

    #[test]
    fn geo_examples() {
        assert_eq!(geo_logsum(30, b(2)).unwrap(), 0.0);
        assert!((geo_logsum(4, b(2)).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert!((geo_logsum(16, b(2)).unwrap() - 5.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn periodicity_and_gcd_relation() {
        for bb in [2u32, 3] {
            for r in 1..=120u64 {
                for s in 1..=120u64 {
                    let d = gen_gcd(&[r, s], b(bb)).unwrap();
                    for m in 1..=4u64 {
                        assert_eq!(gen_gcd(&[r + m * s, s], b(bb)).unwrap(), d);
                    }
                    // gcd(r,s) = d * gcd(r/d, s/d)
                    assert_eq!(gcd_u64(r, s), d * gcd_u64(r / d, s / d));
                }
            }
        }
    }

    #[test]
    fn multiplicativity_on_coprime_pairs() {
        let pairs = [(4u64, 9u64), (8, 27), (16, 81), (25, 32), (49, 100), (121, 64)];
        for bb in 1..5 {
            for &(m, n) in &pairs {
                assert_eq!(gcd_u64(m, n), 1);
                assert_eq!(
                    h_b(m * n, b(bb)).unwrap(),
                    h_b(m, b(bb)).unwrap() * h_b(n, b(bb)).unwrap()
                );
                assert_eq!(
                    phi_b(m * n, b(bb)).unwrap(),
                    phi_b(m, b(bb)).unwrap() * phi_b(n, b(bb)).unwrap()
                );
                assert_eq!(
                    harmonic_mean(m * n, b(bb)).unwrap(),
                    harmonic_mean(m, b(bb))
                        .unwrap()
                        .checked_mul(&harmonic_mean(n, b(bb)).unwrap())
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn group_count_identity_b2() {
        // h_2(p^{2k}) counts pairs (i,j) in Z_{p^{2k}} x Z_{p^k} with i*j^2 = 0
        for p in [2u64, 3] {
            for k in [1u32, 2] {
                let n = p.pow(2 * k);
                let m = p.pow(k);
                let mut count = 0u64;
                for i in 0..n {
                    for j in 0..m {
                        if (i as u128 * (j as u128 * j as u128)) % n as u128 == 0 {
                            count += 1;
                        }
                    }
                }
                assert_eq!(h_b(n, b(2)).unwrap(), count, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn growth_bound() {
        let mut max2 = 0.0f64;
        let mut max3 = 0.0f64;
        for n in 1..=20_000u64 {
            let r2 = h_b(n, b(2)).unwrap() as f64 / (n as f64 * ((n + 2) as f64).ln());
            let r3 = h_b(n, b(3)).unwrap() as f64 / n as f64;
            max2 = max2.max(r2);
            max3 = max3.max(r3);
        }
        assert!(max2 <= 10.0, "max2 = {max2}");
        assert!(max3 <= 10.0, "max3 = {max3}");
    }

    #[test]
    fn iroot_exact() {
        for n in 1..1000u64 {
            for bb in 2..7u32 {
                let r = iroot(n, bb);
                assert!((r as u128).pow(bb) <= n as u128);
                assert!(((r + 1) as u128).pow(bb) > n as u128);
            }
        }
        assert_eq!(iroot(u64::MAX, 2), (1u64 << 32) - 1);
    }
}
