//! Exact binomial variates by inversion started at the mode.
//!
//! The pmf at the mode is computed in log space; neighbouring masses follow
//! from the ratio recurrence, alternating upward and downward, so the
//! expected number of steps is `O(1 + sqrt(n p (1 - p)))`.

use rand::Rng;
use rustc_hash::FxHashMap;

fn ln_factorial(k: u64) -> f64 {
    libm::lgamma(k as f64 + 1.0)
}

/// One draw from `Binomial(n, p)`.
pub fn binomial_sample<R: Rng + ?Sized>(n: u64, p: f64, rng: &mut R) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    let q = 1.0 - p;
    let mode = (((n + 1) as f64 * p).floor() as u64).min(n);
    let ln_pmf_mode = ln_factorial(n) - ln_factorial(mode) - ln_factorial(n - mode)
        + mode as f64 * p.ln()
        + (n - mode) as f64 * (-p).ln_1p();
    let p_mode = ln_pmf_mode.exp();
    let up_ratio = p / q;
    let down_ratio = q / p;

    loop {
        let mut u: f64 = rng.random();
        u -= p_mode;
        if u < 0.0 {
            return mode;
        }
        let (mut hi, mut p_hi) = (mode, p_mode);
        let (mut lo, mut p_lo) = (mode, p_mode);
        loop {
            let mut moved = false;
            if hi < n && p_hi > 0.0 {
                p_hi *= (n - hi) as f64 / (hi + 1) as f64 * up_ratio;
                hi += 1;
                u -= p_hi;
                if u < 0.0 {
                    return hi;
                }
                moved = true;
            }
            if lo > 0 && p_lo > 0.0 {
                p_lo *= lo as f64 / (n - lo + 1) as f64 * down_ratio;
                lo -= 1;
                u -= p_lo;
                if u < 0.0 {
                    return lo;
                }
                moved = true;
            }
            if !moved {
                // Leftover is floating-point slack only; redraw.
                break;
            }
        }
    }
}

/// `count` distinct values drawn uniformly from `0..range` by a partial
/// Fisher–Yates shuffle over a sparse swap map. `O(count)` expected time.
pub fn sample_distinct<R: Rng + ?Sized>(
    range: usize,
    count: usize,
    rng: &mut R,
    scratch: &mut FxHashMap<usize, usize>,
    out: &mut Vec<usize>,
) {
    assert!(count <= range);
    scratch.clear();
    out.clear();
    for j in 0..count {
        let r = rng.random_range(j..range);
        let at_r = scratch.get(&r).copied().unwrap_or(r);
        let at_j = scratch.get(&j).copied().unwrap_or(j);
        scratch.insert(r, at_j);
        out.push(at_r);
    }
}
