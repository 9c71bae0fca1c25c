//! Streaming prime enumeration for Euler products, plus a rigorous bound
//! on prime power-sum tails.

/// Visit every prime <= limit in increasing order. Odd-only segmented
//  sieve; memory stays at the segment size.
pub fn for_primes_upto(limit: u64, mut visit: impl FnMut(u64)) {
    if limit < 2 {
        return;
    }
    visit(2);
    if limit < 3 {
        return;
    }
    // base primes to sqrt(limit)
    let root = (limit as f64).sqrt() as u64 + 2;
    let mut base_is_comp = vec![false; root as usize + 1];
    let mut base_primes: Vec<u64> = Vec::new();
    for i in 3..=root {
        if i % 2 == 0 {
            continue;
        }
        if !base_is_comp[i as usize] {
            base_primes.push(i);
            let mut j = i * i;
            while j <= root {
                base_is_comp[j as usize] = true;
                j += 2 * i;
            }
        }
    }
    const SEG: u64 = 1 << 20; // odd numbers per segment
    let top = if limit % 2 == 0 { limit - 1 } else { limit };
    let mut seg = vec![false; SEG as usize];
    let mut low = 3u64; // segment covers odds low, low+2, ..., low+2(SEG-1)
    while low <= top {
        let high = (low + 2 * (SEG - 1)).min(top);
        seg.iter_mut().for_each(|x| *x = false);
        for &p in &base_primes {
            if p * p > high {
                break;
            }
            // first odd multiple of p in [low, high] that is >= p*p
            let mut start = p * p;
            if start < low {
                let q = low.div_ceil(p);
                start = p * (q | 1); // q|1 is the least odd >= q
            }
            let mut j = start;
            while j <= high {
                seg[((j - low) / 2) as usize] = true;
                j += 2 * p;
            }
        }
        let count = (high - low) / 2 + 1;
        for idx in 0..count {
            if !seg[idx as usize] {
                visit(low + 2 * idx);
            }
        }
        low = high + 2;
    }
}

/// Upper bound on `sum_{p > limit} p^(-sigma)` over primes, `sigma > 1`.
///
/// From `pi(x) < 1.2551 x / ln x` (valid for all x > 1) and integration by
/// parts: the tail is at most `1.2551 * sigma / (sigma - 1) * P^(1-sigma) / ln P`.
pub fn prime_tail_bound(limit: f64, sigma: f64) -> f64 {
    assert!(sigma > 1.0, "prime tail needs sigma > 1");
    assert!(limit >= 3.0);
    1.2551 * sigma / (sigma - 1.0) * limit.powf(1.0 - sigma) / limit.ln()
}
