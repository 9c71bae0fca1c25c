//! Bulk evaluation over 1..N, summatory series, and lattice sums.
//!
//! Sieve construction is single-threaded. Batch evaluation and lattice
//! scans partition disjoint index ranges across scoped threads; per-index
//! values are independent and integer reductions happen in fixed chunk
//! order, so results are identical for any thread count.

use crate::arith::{
    geo_from_factors, h_from_factors, harmonic_from_factors, iroot, phi_from_factors,
    CompensatedSum, Exponent,
};
use crate::error::{Error, Result};
use std::ops::Range;

const MEMORY_GUARD: u64 = 100_000_000;
const LCM_WORK_BUDGET: u128 = 4_000_000_000;

/// Smallest-prime-factor and Mobius tables for 1..=N.
#[derive(Debug)]
pub struct SieveTable {
    n: u64,
    spf: Vec<u32>,
    mobius: Vec<i8>,
}

/// Linear-time smallest-prime-factor and Mobius sieves.
pub fn build_sieve(n: u64) -> Result<SieveTable> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if n > MEMORY_GUARD {
        return Err(Error::MemoryGuard(n));
    }
    let len = n as usize + 1;
    let mut spf = vec![0u32; len];
    let mut mobius = vec![0i8; len];
    if n >= 1 {
        mobius[1] = 1;
    }
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..len {
        if spf[i] == 0 {
            spf[i] = i as u32;
            mobius[i] = -1;
            primes.push(i as u32);
        }
        for &p in &primes {
            let ip = i * p as usize;
            if p > spf[i] || ip >= len {
                break;
            }
            spf[ip] = p;
            mobius[ip] = if p == spf[i] { 0 } else { -mobius[i] };
        }
    }
    Ok(SieveTable { n, spf, mobius })
}

impl SieveTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Least prime factor of `i >= 2`.
    pub fn spf(&self, i: u64) -> u64 {
        self.spf[i as usize] as u64
    }

    pub fn mobius(&self, i: u64) -> i8 {
        self.mobius[i as usize]
    }

    /// Factor `m <= N` by walking the spf chain; sorted output.
    pub fn factor(&self, m: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::with_capacity(8);
        self.factor_into(m, &mut out);
        out
    }

    fn factor_into(&self, mut m: u64, out: &mut Vec<(u64, u32)>) {
        out.clear();
        debug_assert!(m >= 1 && m <= self.n);
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }

    /// Squarefree-count identity: `sum mu(n)^2 = sum_{d<=sqrt(N)} mu(d) floor(N/d^2)`.
    pub fn mobius_selfcheck(&self) -> bool {
        let lhs: i64 = (1..=self.n)
            .map(|i| (self.mobius[i as usize] as i64).pow(2))
            .sum();
        let mut rhs: i64 = 0;
        let mut d = 1u64;
        while d * d <= self.n {
            rhs += self.mobius[d as usize] as i64 * (self.n / (d * d)) as i64;
            d += 1;
        }
        lhs == rhs
    }
}

/// Function ids for batch/summatory evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatchFn {
    H,
    Phi,
    HarmonicOverN,
    GeoLogsum,
    Xi,
    Chi,
}

impl BatchFn {
    pub fn is_integer_valued(self) -> bool {
        matches!(self, BatchFn::H | BatchFn::Phi | BatchFn::Xi | BatchFn::Chi)
    }

    pub fn name(self) -> &'static str {
        match self {
            BatchFn::H => "h",
            BatchFn::Phi => "phi",
            BatchFn::HarmonicOverN => "harmonic_over_n",
            BatchFn::GeoLogsum => "geo_logsum",
            BatchFn::Xi => "xi",
            BatchFn::Chi => "chi",
        }
    }
}

impl std::str::FromStr for BatchFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "h" => BatchFn::H,
            "phi" => BatchFn::Phi,
            "harmonic_over_n" | "hmean_over_n" => BatchFn::HarmonicOverN,
            "geo_logsum" | "geo" => BatchFn::GeoLogsum,
            "xi" => BatchFn::Xi,
            "chi" => BatchFn::Chi,
            other => return Err(Error::InvalidParam(format!("unknown function id `{other}`"))),
        })
    }
}

/// Values for n = 1..=N; index n holds f(n), index 0 is unused.
#[derive(Debug, Clone, PartialEq)]
pub enum ValueSeq {
    Int(Vec<u64>),
    Real(Vec<f64>),
}

impl ValueSeq {
    pub fn len(&self) -> usize {
        match self {
            ValueSeq::Int(v) => v.len(),
            ValueSeq::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Split `range` into at most `threads` contiguous chunks.
fn chunk_ranges(range: Range<u64>, threads: u32) -> Vec<Range<u64>> {
    let total = range.end.saturating_sub(range.start);
    let t = threads.max(1) as u64;
    let per = total.div_ceil(t.min(total.max(1)));
    let mut out = Vec::new();
    let mut lo = range.start;
    while lo < range.end {
        let hi = (lo + per).min(range.end);
        out.push(lo..hi);
        lo = hi;
    }
    out
}

fn eval_int_range(fn_id: BatchFn, b: u32, table: &SieveTable, start: u64, out: &mut [u64]) -> Result<()> {
    let mut factors: Vec<(u64, u32)> = Vec::with_capacity(10);
    for (i, slot) in out.iter_mut().enumerate() {
        let n = start + i as u64;
        table.factor_into(n, &mut factors);
        *slot = match fn_id {
            BatchFn::H => u64::try_from(h_from_factors(&factors, b)?)
                .map_err(|_| Error::Overflow("batch h"))?,
            BatchFn::Phi => phi_from_factors(&factors, b)? as u64,
            BatchFn::Xi => factors.iter().all(|&(_, e)| e < b) as u64,
            BatchFn::Chi => factors.iter().all(|&(_, e)| e % b == 0) as u64,
            _ => unreachable!(),
        };
    }
    Ok(())
}

fn eval_real_range(fn_id: BatchFn, b: u32, table: &SieveTable, start: u64, out: &mut [f64]) -> Result<()> {
    let mut factors: Vec<(u64, u32)> = Vec::with_capacity(10);
    for (i, slot) in out.iter_mut().enumerate() {
        let n = start + i as u64;
        table.factor_into(n, &mut factors);
        *slot = match fn_id {
            BatchFn::HarmonicOverN => harmonic_from_factors(&factors, b)?.to_f64() / n as f64,
            BatchFn::GeoLogsum => geo_from_factors(&factors, b)?,
            _ => unreachable!(),
        };
    }
    Ok(())
}

/// Values of `fn_id` for n = 1..=N via the spf chain; identical to the
/// pointwise formulas for every n, independent of `threads`.
pub fn batch_values(
    fn_id: BatchFn,
    b: Exponent,
    n: u64,
    table: &SieveTable,
    threads: u32,
) -> Result<ValueSeq> {
    if table.n() < n {
        return Err(Error::InvalidParam(format!(
            "sieve covers {} < requested {n}",
            table.n()
        )));
    }
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let b = b.get();
    let chunks = chunk_ranges(1..n + 1, threads);
    if fn_id.is_integer_valued() {
        let mut values = vec![0u64; n as usize + 1];
        run_on_chunks(&chunks, &mut values[1..], |range, slice| {
            eval_int_range(fn_id, b, table, range.start, slice)
        })?;
        Ok(ValueSeq::Int(values))
    } else {
        let mut values = vec![0f64; n as usize + 1];
        run_on_chunks(&chunks, &mut values[1..], |range, slice| {
            eval_real_range(fn_id, b, table, range.start, slice)
        })?;
        Ok(ValueSeq::Real(values))
    }
}

/// Run `work` on disjoint output slices, one scoped thread per chunk
/// (inline when there is a single chunk).
fn run_on_chunks<T: Send>(
    chunks: &[Range<u64>],
    mut out: &mut [T],
    work: impl Fn(Range<u64>, &mut [T]) -> Result<()> + Sync,
) -> Result<()> {
    if chunks.len() <= 1 {
        if let Some(range) = chunks.first() {
            work(range.clone(), out)?;
        }
        return Ok(());
    }
    let mut slices = Vec::with_capacity(chunks.len());
    for range in chunks {
        let len = (range.end - range.start) as usize;
        let (head, tail) = out.split_at_mut(len);
        slices.push((range.clone(), head));
        out = tail;
    }
    let results: Vec<Result<()>> = std::thread::scope(|scope| {
        let handles: Vec<_> = slices
            .into_iter()
            .map(|(range, slice)| scope.spawn(|| work(range, slice)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    results.into_iter().collect()
}

/// One summatory checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub x: u64,
    /// Exact for integer-valued functions, compensated f64 otherwise.
    pub plain: SumValue,
    /// `sum_{n<=x} (1 - n/x) f(n)`, when requested.
    pub weighted: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SumValue {
    Int(i128),
    Real(f64),
}

impl SumValue {
    pub fn to_f64(self) -> f64 {
        match self {
            SumValue::Int(v) => v as f64,
            SumValue::Real(v) => v,
        }
    }
}

impl std::fmt::Display for SumValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SumValue::Int(v) => write!(f, "{v}"),
            SumValue::Real(v) => write!(f, "{v:.15e}"),
        }
    }
}

/// Checkpointed partial sums for one function/parameter pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SummatorySeries {
    pub fn_id: BatchFn,
    pub b: u32,
    pub checkpoints: Vec<Checkpoint>,
    pub exact: bool,
}

/// Geometrically spaced checkpoints with the largest exactly `xmax`;
/// ties from rounding down are dropped.
pub fn checkpoint_grid(xmax: u64, num: u32) -> Vec<u64> {
    let m = num.max(2) as i32;
    let mut xs: Vec<u64> = (1..=m)
        .map(|i| {
            if i == m {
                xmax
            } else {
                (xmax as f64).powf(i as f64 / m as f64).floor() as u64
            }
        })
        .filter(|&x| x >= 1)
        .collect();
    xs.dedup();
    xs
}

/// Checkpointed `sum_{n<=x} f(n)` (and optionally the (1 - n/x)-weighted
/// variant). Accumulation is sequential over the value array, so the series
/// is bit-identical for every thread count.
pub fn summatory(
    fn_id: BatchFn,
    b: Exponent,
    xmax: u64,
    num_checkpoints: u32,
    weighted: bool,
    table: &SieveTable,
    threads: u32,
) -> Result<SummatorySeries> {
    if num_checkpoints < 2 {
        return Err(Error::InvalidParam("need at least 2 checkpoints".into()));
    }
    let values = batch_values(fn_id, b, xmax, table, threads)?;
    let grid = checkpoint_grid(xmax, num_checkpoints);
    let mut checkpoints = Vec::with_capacity(grid.len());
    match &values {
        ValueSeq::Int(vals) => {
            let mut s: i128 = 0; // sum f(n)
            let mut t: i128 = 0; // sum n f(n)
            let mut gi = 0usize;
            for n in 1..=xmax {
                let v = vals[n as usize] as i128;
                s += v;
                t = t
                    .checked_add(v.checked_mul(n as i128).ok_or(Error::Overflow("summatory"))?)
                    .ok_or(Error::Overflow("summatory"))?;
                while gi < grid.len() && grid[gi] == n {
                    let w = weighted.then(|| {
                        // exact integer numerator x*S - T, divided at report time
                        let num = s * n as i128 - t;
                        num as f64 / n as f64
                    });
                    checkpoints.push(Checkpoint {
                        x: n,
                        plain: SumValue::Int(s),
                        weighted: w,
                    });
                    gi += 1;
                }
            }
        }
        ValueSeq::Real(vals) => {
            let mut s = CompensatedSum::default();
            let mut t = CompensatedSum::default();
            let mut gi = 0usize;
            for n in 1..=xmax {
                let v = vals[n as usize];
                s.add(v);
                t.add(v * n as f64);
                while gi < grid.len() && grid[gi] == n {
                    let w = weighted.then(|| s.total() - t.total() / n as f64);
                    checkpoints.push(Checkpoint {
                        x: n,
                        plain: SumValue::Real(s.total()),
                        weighted: w,
                    });
                    gi += 1;
                }
            }
        }
    }
    Ok(SummatorySeries {
        fn_id,
        b: b.get(),
        checkpoints,
        exact: fn_id.is_integer_valued(),
    })
}

/// Exact multiplicative integer functions, given by prime-power values.
pub trait Multiplicative: Sync {
    fn prime_power(&self, p: u64, e: u32) -> i128;
}

/// `f(n) = n^r`.
pub struct IdPow(pub u32);

impl Multiplicative for IdPow {
    fn prime_power(&self, p: u64, e: u32) -> i128 {
        (p as i128).pow(e * self.0)
    }
}

/// `sum_{d <= x^(1/b)} (f*mu)(d) floor(x/d^b)^k`, exact.
///
/// `(f*mu)(d)` is `prod_p (f(p^e) - f(p^(e-1)))` over the factorization
/// of d (Mobius kills every higher divisor).
pub fn lattice_gcd_sum(
    f: &dyn Multiplicative,
    k: u32,
    b: Exponent,
    x: u64,
    table: &SieveTable,
) -> Result<i128> {
    if k < 2 {
        return Err(Error::InvalidParam("lattice gcd sum needs k >= 2".into()));
    }
    if x == 0 {
        return Err(Error::ZeroInput);
    }
    let b = b.get();
    let dmax = iroot(x, b);
    if table.n() < dmax {
        return Err(Error::InvalidParam(format!(
            "sieve covers {} < x^(1/b) = {dmax}",
            table.n()
        )));
    }
    let mut total: i128 = 0;
    let mut factors: Vec<(u64, u32)> = Vec::with_capacity(10);
    for d in 1..=dmax {
        table.factor_into(d, &mut factors);
        let mut fmu: i128 = 1;
        for &(p, e) in &factors {
            let term = f.prime_power(p, e) - f.prime_power(p, e - 1);
            fmu = fmu.checked_mul(term).ok_or(Error::Overflow("lattice_gcd_sum"))?;
        }
        let q = x / d.pow(b); // d <= x^(1/b), so d^b <= x fits u64
        let mut qk: i128 = 1;
        for _ in 0..k {
            qk = qk
                .checked_mul(q as i128)
                .ok_or(Error::Overflow("lattice_gcd_sum"))?;
        }
        total = total
            .checked_add(fmu.checked_mul(qk).ok_or(Error::Overflow("lattice_gcd_sum"))?)
            .ok_or(Error::Overflow("lattice_gcd_sum"))?;
    }
    Ok(total)
}

/// Two-way check for the Klee totient summatory: `sum_{d<=x^(1/b)} mu(d) T(floor(x/d^b))`
/// with `T(q) = q(q+1)/2`.
pub fn phi_sum_via_mobius(b: Exponent, x: u64, table: &SieveTable) -> Result<i128> {
    let bb = b.get();
    let dmax = iroot(x, bb);
    if table.n() < dmax {
        return Err(Error::InvalidParam("sieve too small".into()));
    }
    let mut total: i128 = 0;
    for d in 1..=dmax {
        let mu = table.mobius(d) as i128;
        if mu == 0 {
            continue;
        }
        let q = (x / (d as u128).pow(bb) as u64) as i128;
        total += mu * (q * (q + 1) / 2);
    }
    Ok(total)
}

/// Exact `sum_{n_1..n_k <= x} [n_1..n_k]_b^r` by chunked full scan over the
/// k-cube; n_1 ranges are partitioned across threads.
pub fn lattice_lcm_sum(
    k: u32,
    b: Exponent,
    r: u32,
    x: u64,
    table: &SieveTable,
    threads: u32,
) -> Result<u128> {
    if k == 0 || x == 0 {
        return Err(Error::InvalidParam("k >= 1 and x >= 1 required".into()));
    }
    let mut tuples: u128 = 1;
    for _ in 0..k {
        tuples = tuples.saturating_mul(x as u128);
    }
    if tuples > LCM_WORK_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{k}-cube scan to x={x} needs {tuples} tuples > {LCM_WORK_BUDGET}"
        )));
    }
    if table.n() < x {
        return Err(Error::InvalidParam("sieve too small for lcm scan".into()));
    }
    let bb = b.get();
    // factor lists once; merged per tuple
    let factor_lists: Vec<Vec<(u64, u32)>> = (0..=x).map(|m| if m < 1 { Vec::new() } else { table.factor(m) }).collect();
    let chunks = chunk_ranges(1..x + 1, threads);
    let partials: Vec<Result<u128>> = if chunks.len() <= 1 {
        vec![lcm_scan_chunk(1..x + 1, k, bb, r, x, &factor_lists)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|range| {
                    let range = range.clone();
                    let fl = &factor_lists;
                    scope.spawn(move || lcm_scan_chunk(range, k, bb, r, x, fl))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    // combine in fixed chunk order
    let mut total: u128 = 0;
    for p in partials {
        total = total
            .checked_add(p?)
            .ok_or(Error::Overflow("lattice_lcm_sum"))?;
    }
    Ok(total)
}

fn lcm_scan_chunk(
    n1_range: Range<u64>,
    k: u32,
    b: u32,
    r: u32,
    x: u64,
    factor_lists: &[Vec<(u64, u32)>],
) -> Result<u128> {
    let mut total: u128 = 0;
    let mut merged: Vec<(u64, u32)> = Vec::with_capacity(16);
    let mut buf: Vec<(u64, u32)> = Vec::with_capacity(16);
    for n1 in n1_range {
        let mut rest = vec![1u64; (k - 1) as usize];
        'tuples: loop {
            merged.clear();
            merged.extend_from_slice(&factor_lists[n1 as usize]);
            for &m in &rest {
                merge_max(&merged, &factor_lists[m as usize], &mut buf);
                std::mem::swap(&mut merged, &mut buf);
            }
            let mut val: u128 = 1;
            for &(p, e) in &merged {
                val = val
                    .checked_mul((p as u128).pow(e.div_ceil(b)))
                    .ok_or(Error::Overflow("lattice_lcm_sum"))?;
            }
            let mut vr: u128 = 1;
            for _ in 0..r {
                vr = vr.checked_mul(val).ok_or(Error::Overflow("lattice_lcm_sum"))?;
            }
            total = total.checked_add(vr).ok_or(Error::Overflow("lattice_lcm_sum"))?;
            // advance the (k-1)-digit odometer; a full wrap ends this n1
            let mut i = 0usize;
            loop {
                if i == rest.len() {
                    break 'tuples;
                }
                if rest[i] < x {
                    rest[i] += 1;
                    continue 'tuples;
                }
                rest[i] = 1;
                i += 1;
            }
        }
    }
    Ok(total)
}

fn merge_max(a: &[(u64, u32)], b: &[(u64, u32)], out: &mut Vec<(u64, u32)>) {
    out.clear();
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1.max(b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}
