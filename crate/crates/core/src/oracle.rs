//! Definition-level brute-force references used as ground truth.
//!
//! Nothing here shares code with the formula paths: generalized gcds are
//! found by direct divisibility scans, divisor lists come from local trial
//! division, and gcds use a local Euclid. Oracles are deliberately naive;
//! budgets keep them inside test runtime.

use crate::error::{Error, Result};
use crate::rational::Rational;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Work limits for oracle scans.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_n: u64,
    pub max_tuples: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 10_000,
            max_tuples: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointwiseFn {
    GcdSum,
    Phi,
    Harmonic,
    Geo,
    Chi,
    Xi,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Integer(u128),
    Rational(Rational),
    Real(f64),
}

fn euclid(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Largest d with `d^b` dividing every value, by upward divisibility scan.
fn gen_gcd_scan(vals: &[u64], b: u32) -> u64 {
    let m = *vals.iter().min().expect("nonempty");
    let mut best = 1u64;
    let mut d = 2u64;
    loop {
        let dp = match (d as u128).checked_pow(b) {
            Some(v) if v <= m as u128 => v,
            _ => return best,
        };
        if vals.iter().all(|&v| v as u128 % dp == 0) {
            best = d;
        }
        d += 1;
    }
}

/// All six pointwise oracles for a single n, computed in one scan over j.
#[derive(Debug, Clone)]
pub struct PointwiseRow {
    pub gcd_sum: u128,
    pub phi: u64,
    pub harmonic: Rational,
    pub geo: f64,
    pub chi: bool,
    pub xi: bool,
}

fn pointwise_row(n: u64, b: u32) -> PointwiseRow {
    // D = largest d with d^b | n; every (j,n)_b divides D, so D clears
    // all denominators in the harmonic sum.
    let d_top = gen_gcd_scan(&[n], b);
    let mut gcd_sum: u128 = 0;
    let mut phi = 0u64;
    let mut harm_num: u128 = 0; // sum of D / (j,n)_b
    let mut geo = 0.0f64;
    let mut geo_c = 0.0f64; // Neumaier carry
    for j in 1..=n {
        let g = gen_gcd_scan(&[j, n], b);
        gcd_sum += g as u128;
        if g == 1 {
            phi += 1;
        }
        harm_num += (d_top / g) as u128;
        let term = (g as f64).ln();
        let t = geo + term;
        if geo.abs() >= term.abs() {
            geo_c += (geo - t) + term;
        } else {
            geo_c += (term - t) + geo;
        }
        geo = t;
    }
    let geo = geo + geo_c;
    let harmonic = Rational::new((n as u128 * d_top as u128) as i128, harm_num as i128)
        .expect("harmonic denominator positive");
    // chi: scan for an exact b-th root
    let mut chi = false;
    let mut m = 1u64;
    loop {
        match (m as u128).checked_pow(b) {
            Some(v) if v <= n as u128 => {
                if v == n as u128 {
                    chi = true;
                    break;
                }
            }
            _ => break,
        }
        m += 1;
    }
    // xi: no m >= 2 with m^b | n
    let mut xi = true;
    let mut m = 2u64;
    loop {
        match (m as u128).checked_pow(b) {
            Some(v) if v <= n as u128 => {
                if n as u128 % v == 0 {
                    xi = false;
                    break;
                }
            }
            _ => break,
        }
        m += 1;
    }
    PointwiseRow {
        gcd_sum,
        phi,
        harmonic,
        geo,
        chi,
        xi,
    }
}

/// Table of all pointwise oracles for n = 1..=max_n, one scan per n.
#[derive(Debug)]
pub struct PointwiseTable {
    pub b: u32,
    pub rows: Vec<PointwiseRow>, // rows[n - 1]
}

impl PointwiseTable {
    pub fn row(&self, n: u64) -> &PointwiseRow {
        &self.rows[n as usize - 1]
    }
}

static TABLE_CACHE: Lazy<Mutex<HashMap<(u32, u64), Arc<PointwiseTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Cached per (b, max_n); the scans dominate the equivalence audits.
pub fn pointwise_table(b: u32, max_n: u64, budget: &OracleBudget) -> Result<Arc<PointwiseTable>> {
    if max_n > budget.max_n {
        return Err(Error::BudgetExceeded(format!(
            "pointwise scan to {max_n} exceeds max_n {}",
            budget.max_n
        )));
    }
    if let Some(t) = TABLE_CACHE.lock().unwrap().get(&(b, max_n)) {
        return Ok(t.clone());
    }
    let rows: Vec<PointwiseRow> = (1..=max_n).map(|n| pointwise_row(n, b)).collect();
    let table = Arc::new(PointwiseTable { b, rows });
    TABLE_CACHE
        .lock()
        .unwrap()
        .insert((b, max_n), table.clone());
    Ok(table)
}

/// Evaluate one pointwise oracle by its literal defining scan.
pub fn brute_pointwise(fn_id: PointwiseFn, n: u64, b: u32, budget: &OracleBudget) -> Result<Value> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if n > budget.max_n {
        return Err(Error::BudgetExceeded(format!(
            "pointwise scan at n={n} exceeds max_n {}",
            budget.max_n
        )));
    }
    let row = pointwise_row(n, b);
    Ok(match fn_id {
        PointwiseFn::GcdSum => Value::Integer(row.gcd_sum),
        PointwiseFn::Phi => Value::Integer(row.phi as u128),
        PointwiseFn::Harmonic => Value::Rational(row.harmonic),
        PointwiseFn::Geo => Value::Real(row.geo),
        PointwiseFn::Chi => Value::Integer(row.chi as u128),
        PointwiseFn::Xi => Value::Integer(row.xi as u128),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    GcdPower,
    LcmPower,
}

/// Divisor lists for 1..=x by trial division.
fn divisor_lists(x: u64) -> Vec<Vec<u64>> {
    let mut lists = vec![Vec::new(); x as usize + 1];
    for n in 1..=x {
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                small.push(d);
                if d * d != n {
                    large.push(n / d);
                }
            }
            d += 1;
        }
        large.reverse();
        small.extend(large);
        lists[n as usize] = small;
    }
    lists
}

/// `[n_1..n_k]_b` as the least member of the divisor-product candidate set
/// satisfying the defining predicate `n_i | d^b`. Every divisor of
/// `lcm(n_1..n_k)` is such a product, hence the true minimum is covered.
fn gen_lcm_bruteforce(vals: &[u64], b: u32, divs: &[Vec<u64>]) -> u64 {
    // d^b mod v without overflow, for the divisibility predicate
    fn pow_rem(d: u64, b: u32, v: u64) -> u64 {
        let mut acc: u128 = 1;
        let base = (d % v) as u128;
        let m = v as u128;
        for _ in 0..b {
            acc = acc * base % m;
        }
        acc as u64
    }
    fn rec(vals: &[u64], b: u32, divs: &[Vec<u64>], idx: usize, acc: u64, best: &mut u64) {
        if acc >= *best {
            return;
        }
        if idx == vals.len() {
            if vals.iter().all(|&v| pow_rem(acc, b, v) == 0) {
                *best = acc;
            }
            return;
        }
        for &d in &divs[vals[idx] as usize] {
            match acc.checked_mul(d) {
                Some(next) if next < *best => rec(vals, b, divs, idx + 1, next, best),
                _ => break, // divisors ascend; all further products are larger
            }
        }
    }
    let mut best = u64::MAX;
    rec(vals, b, divs, 0, 1, &mut best);
    debug_assert_ne!(best, u64::MAX);
    best
}

fn tuple_budget(k: u32, x: u64, budget: &OracleBudget) -> Result<()> {
    let mut total: u128 = 1;
    for _ in 0..k {
        total = total.saturating_mul(x as u128);
    }
    if total > budget.max_tuples as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{k}-fold scan to x={x} needs {total} tuples > {}",
            budget.max_tuples
        )));
    }
    Ok(())
}

/// Full k-fold lattice scan of `sum f((n_1..n_k)_b)` or `sum [n_1..n_k]_b^r`
/// with `f = id^r`, bucketed by max coordinate and prefix-summed, so entry
/// `x-1` of the result is the sum over the x-cube.
pub fn brute_lattice_prefix(
    kind: LatticeKind,
    k: u32,
    b: u32,
    xmax: u64,
    r: u32,
    budget: &OracleBudget,
) -> Result<Vec<u128>> {
    if k == 0 || xmax == 0 {
        return Err(Error::InvalidParam("k >= 1 and x >= 1 required".into()));
    }
    tuple_budget(k, xmax, budget)?;
    let divs = match kind {
        LatticeKind::LcmPower => divisor_lists(xmax),
        LatticeKind::GcdPower => Vec::new(),
    };
    let mut buckets = vec![0u128; xmax as usize + 1];
    let mut tuple = vec![1u64; k as usize];
    loop {
        let base = match kind {
            LatticeKind::GcdPower => gen_gcd_scan(&tuple, b),
            LatticeKind::LcmPower => gen_lcm_bruteforce(&tuple, b, &divs),
        };
        let mut val: u128 = 1;
        for _ in 0..r {
            val = val
                .checked_mul(base as u128)
                .ok_or(Error::Overflow("brute_lattice"))?;
        }
        let mx = *tuple.iter().max().unwrap() as usize;
        buckets[mx] = buckets[mx]
            .checked_add(val)
            .ok_or(Error::Overflow("brute_lattice"))?;
        // odometer
        let mut i = 0usize;
        loop {
            if i == tuple.len() {
                let mut out = Vec::with_capacity(xmax as usize);
                let mut acc: u128 = 0;
                for x in 1..=xmax as usize {
                    acc += buckets[x];
                    out.push(acc);
                }
                return Ok(out);
            }
            if tuple[i] < xmax {
                tuple[i] += 1;
                break;
            }
            tuple[i] = 1;
            i += 1;
        }
    }
}

/// Single-x variant of the full k-fold scan.
pub fn brute_lattice(
    kind: LatticeKind,
    k: u32,
    b: u32,
    x: u64,
    r: u32,
    budget: &OracleBudget,
) -> Result<u128> {
    Ok(*brute_lattice_prefix(kind, k, b, x, r, budget)?
        .last()
        .expect("x >= 1"))
}

/// Cesaro's left side: `sum_{k<=j} f(gcd(k,j))`.
pub fn cesaro_lhs(j: u64, f: impl Fn(u64) -> u128) -> u128 {
    (1..=j).map(|k| f(euclid(k, j))).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn pointwise_examples() {
        assert_eq!(
            brute_pointwise(PointwiseFn::GcdSum, 4, 2, &budget()).unwrap(),
            Value::Integer(5)
        );
        assert_eq!(
            brute_pointwise(PointwiseFn::Phi, 4, 2, &budget()).unwrap(),
            Value::Integer(3)
        );
        assert_eq!(
            brute_pointwise(PointwiseFn::Harmonic, 1, 2, &budget()).unwrap(),
            Value::Rational(Rational::ONE)
        );
        assert_eq!(
            brute_pointwise(PointwiseFn::Harmonic, 16, 2, &budget()).unwrap(),
            Value::Rational(Rational::new(64, 55).unwrap())
        );
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(
            brute_pointwise(PointwiseFn::Phi, 20_001, 2, &budget()),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            brute_lattice(LatticeKind::GcdPower, 3, 2, 100_000, 1, &budget()),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn lattice_examples() {
        let bud = budget();
        assert_eq!(
            brute_lattice(LatticeKind::GcdPower, 2, 2, 4, 1, &bud).unwrap(),
            17
        );
        assert_eq!(
            brute_lattice(LatticeKind::GcdPower, 2, 2, 1, 1, &bud).unwrap(),
            1
        );
        assert_eq!(
            brute_lattice(LatticeKind::LcmPower, 2, 2, 2, 1, &bud).unwrap(),
            7
        );
        assert_eq!(
            brute_lattice(LatticeKind::LcmPower, 2, 2, 5, 0, &bud).unwrap(),
            25
        );
    }

    #[test]
    fn lcm_bruteforce_matches_direct_scan_small() {
        // cross-check the candidate-set method against the literal
        // increment scan where the latter is affordable
        let divs = divisor_lists(40);
        for b in [1u32, 2, 3] {
            for n1 in 1..=40u64 {
                for n2 in 1..=40u64 {
                    let fast = gen_lcm_bruteforce(&[n1, n2], b, &divs);
                    let mut d = 1u64;
                    let slow = loop {
                        let dp = (d as u128).pow(b);
                        if dp % n1 as u128 == 0 && dp % n2 as u128 == 0 {
                            break d;
                        }
                        d += 1;
                    };
                    assert_eq!(fast, slow, "b={b} n1={n1} n2={n2}");
                }
            }
        }
    }

    #[test]
    fn cesaro_examples() {
        assert_eq!(cesaro_lhs(6, |d| d as u128), 15);
        assert_eq!(cesaro_lhs(1, |d| (d * d) as u128), 1);
        assert_eq!(cesaro_lhs(4, |d| d as u128), 8);
    }

    #[test]
    fn prefix_is_consistent_with_single() {
        let bud = budget();
        let pre = brute_lattice_prefix(LatticeKind::GcdPower, 2, 2, 12, 1, &bud).unwrap();
        for x in 1..=12u64 {
            assert_eq!(
                pre[x as usize - 1],
                brute_lattice(LatticeKind::GcdPower, 2, 2, x, 1, &bud).unwrap()
            );
        }
    }
}
