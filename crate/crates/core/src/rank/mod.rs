//! Edge ranks: i.i.d. uniform values in `[0, 1)` that induce the random edge
//! permutation driving greedy matching.
//!
//! A rank is a 64-bit fixed-point fraction `r / 2^64` paired with the edge key
//! as tiebreak, so every two distinct edges compare strictly. All ordering in
//! the crate goes through [`RankValue`]'s `Ord`.

mod binomial;
mod explicit;
mod lazy;

pub use binomial::{binomial_sample, sample_distinct};
pub use explicit::ExplicitRanks;
pub use lazy::{LazyRanks, LazyStats};

use rand::Rng;

use crate::graph::{AccessCounter, EdgeKey, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankValue {
    pub r: u64,
    pub tiebreak: EdgeKey,
}

impl RankValue {
    /// The rank as a real in `[0, 1)`.
    pub fn as_unit(&self) -> f64 {
        self.r as f64 / TWO_POW_64 as f64
    }
}

const TWO_POW_64: u128 = 1 << 64;

/// An edge seen from one endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incident {
    pub neighbor: Vertex,
    pub edge: EdgeKey,
    pub rank: RankValue,
}

/// Source of incident edges in increasing rank order.
pub trait RankSource {
    fn vertex_count(&self) -> usize;

    fn degree(&mut self, v: Vertex) -> usize;

    /// The `i`-th lowest-rank edge at `v` (1-indexed), or `None` if
    /// `i > deg(v)` or `i == 0`.
    fn lowest(&mut self, v: Vertex, i: usize) -> Option<Incident>;

    /// Queries charged so far.
    fn counter(&self) -> AccessCounter;
}

impl<R: RankSource + ?Sized> RankSource for &mut R {
    fn vertex_count(&self) -> usize {
        (**self).vertex_count()
    }
    fn degree(&mut self, v: Vertex) -> usize {
        (**self).degree(v)
    }
    fn lowest(&mut self, v: Vertex, i: usize) -> Option<Incident> {
        (**self).lowest(v, i)
    }
    fn counter(&self) -> AccessCounter {
        (**self).counter()
    }
}

/// Dyadic partition of `[0, 1)` into `I_0 = [0, 1/D)`, `I_i = [2^{i-1}/D, 2^i/D)`
/// for `1 <= i <= log2 D`, where `D` is the smallest power of two `>= Δ`.
///
/// Boundaries are exact in the 64-bit fixed-point representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalLadder {
    levels: u32,
}

impl IntervalLadder {
    pub fn for_max_degree(max_degree: usize) -> Self {
        let d = max_degree.max(1).next_power_of_two();
        IntervalLadder {
            levels: d.trailing_zeros(),
        }
    }

    /// `log2 D`; the last interval index.
    pub fn last(&self) -> usize {
        self.levels as usize
    }

    /// Number of intervals, `log2 D + 1`.
    pub fn len(&self) -> usize {
        self.levels as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `s_k * 2^64` for `0 <= k <= log2 D + 1`.
    pub fn start(&self, k: usize) -> u128 {
        let l = self.levels as usize;
        assert!(k <= l + 1, "interval index {k} beyond ladder of {l} levels");
        if k == 0 {
            0
        } else if k == l + 1 {
            TWO_POW_64
        } else {
            1u128 << (64 - l + k - 1)
        }
    }

    pub fn width(&self, k: usize) -> u128 {
        self.start(k + 1) - self.start(k)
    }

    /// Probability that a rank lies in `I_k` given it lies in `[s_k, 1)`.
    pub fn conditional_probability(&self, k: usize) -> f64 {
        self.width(k) as f64 / (TWO_POW_64 - self.start(k)) as f64
    }

    /// Index of the interval containing fixed-point value `r`.
    pub fn index_of(&self, r: u64) -> usize {
        let r = r as u128;
        (0..self.len())
            .find(|&k| r < self.start(k + 1))
            .expect("intervals cover [0, 1)")
    }

    /// Uniform fixed-point value in `I_k`.
    pub fn draw<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> u64 {
        let lo = self.start(k);
        let width = self.width(k);
        if width == TWO_POW_64 {
            rng.random::<u64>()
        } else {
            (lo + rng.random_range(0..width as u64) as u128) as u64
        }
    }
}
