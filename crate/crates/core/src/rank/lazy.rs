//! Lazy rank exposure.
//!
//! Each vertex `v` keeps a frontier `k(v)`: every incident edge whose rank
//! falls in `I_0 ∪ … ∪ I_{k(v)-1}` has been revealed and is stored in
//! `exposed(v)`. Opening the next interval samples the adjacency positions
//! whose ranks land there, conditioned on what is already known, so the
//! revealed ranks are jointly i.i.d. uniform while the work stays
//! proportional to the number of edges actually revealed.

use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use std::collections::hash_map::Entry;

use super::binomial::{binomial_sample, sample_distinct};
use super::{Incident, IntervalLadder, RankSource, RankValue};
use crate::error::{Error, Result};
use crate::graph::{AccessCounter, AdjacencyList, EdgeKey, Vertex};
use crate::seed::rng_from;

/// Work counters for the exposure machinery.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LazyStats {
    pub expose_calls: u64,
    /// Adjacency positions sampled by `expose_next`.
    pub sampled_indices: u64,
    /// Sampled positions answered from earlier neighbor queries.
    pub cached_lookups: u64,
    pub ranks_drawn: u64,
    pub lowest_calls: u64,
    /// Evaluations of the frontier condition inside `lowest`.
    pub lowest_checks: u64,
}

#[derive(Debug, Clone, Default)]
struct VertexState {
    degree: Option<usize>,
    k: usize,
    /// `exposed(v)` ordered by rank. Membership by neighbor goes through the
    /// shared `revealed` map, which holds the same rank for both endpoints.
    by_rank: Vec<(RankValue, Vertex)>,
    counts: Vec<u32>,
    /// `count(v, 0) + … + count(v, k(v) - 1)`.
    below_frontier: usize,
}

impl VertexState {
    fn insert(&mut self, rank: RankValue, neighbor: Vertex, interval: usize, intervals: usize) {
        let pos = self.by_rank.partition_point(|&(r, _)| r < rank);
        self.by_rank.insert(pos, (rank, neighbor));
        if self.counts.is_empty() {
            self.counts.resize(intervals, 0);
        }
        self.counts[interval] += 1;
    }
}

pub struct LazyRanks<A: AdjacencyList> {
    access: A,
    ladder: IntervalLadder,
    rng: ChaCha8Rng,
    counter: AccessCounter,
    stats: LazyStats,
    states: FxHashMap<Vertex, VertexState>,
    revealed: FxHashMap<EdgeKey, RankValue>,
    /// Answers of neighbor queries already made, by `(vertex, position)`.
    lookups: FxHashMap<(Vertex, usize), (Vertex, EdgeKey)>,
    scratch_map: FxHashMap<usize, usize>,
    scratch_indices: Vec<usize>,
}

impl<A: AdjacencyList> LazyRanks<A> {
    /// No rank is drawn and no query is made until the first `lowest` call.
    pub fn new(access: A, seed: u64) -> Self {
        let ladder = IntervalLadder::for_max_degree(access.max_degree());
        LazyRanks {
            access,
            ladder,
            rng: rng_from(seed),
            counter: AccessCounter::default(),
            stats: LazyStats::default(),
            states: FxHashMap::default(),
            revealed: FxHashMap::default(),
            lookups: FxHashMap::default(),
            scratch_map: FxHashMap::default(),
            scratch_indices: Vec::new(),
        }
    }

    /// Forget all revealed state and restart from `seed`, keeping allocations.
    pub fn reset(&mut self, seed: u64) {
        self.rng = rng_from(seed);
        self.counter = AccessCounter::default();
        self.stats = LazyStats::default();
        self.states.clear();
        self.revealed.clear();
        self.lookups.clear();
    }

    pub fn access(&self) -> &A {
        &self.access
    }

    pub fn ladder(&self) -> IntervalLadder {
        self.ladder
    }

    pub fn stats(&self) -> LazyStats {
        self.stats
    }

    /// Current frontier `k(v)`; 0 for untouched vertices.
    pub fn frontier(&self, v: Vertex) -> usize {
        self.states.get(&v).map_or(0, |s| s.k)
    }

    pub fn touched_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.states.keys().copied()
    }

    /// `count(v, i)` for every interval.
    pub fn counts(&self, v: Vertex) -> Vec<u32> {
        let mut c = self
            .states
            .get(&v)
            .map(|s| s.counts.clone())
            .unwrap_or_default();
        c.resize(self.ladder.len(), 0);
        c
    }

    /// `exposed(v)` in increasing rank order.
    pub fn exposed(&self, v: Vertex) -> Vec<(RankValue, Vertex)> {
        self.states
            .get(&v)
            .map(|s| s.by_rank.clone())
            .unwrap_or_default()
    }

    pub fn revealed_count(&self) -> usize {
        self.revealed.len()
    }

    pub fn revealed(&self) -> impl Iterator<Item = (EdgeKey, RankValue)> + '_ {
        self.revealed.iter().map(|(&k, &r)| (k, r))
    }

    /// The rank of an edge, which must already have been revealed.
    pub fn rank_of(&self, edge: EdgeKey) -> Result<RankValue> {
        self.revealed
            .get(&edge)
            .copied()
            .ok_or_else(|| Error::Contract(format!("rank of edge {edge} not yet revealed")))
    }

    fn degree_of(&mut self, v: Vertex) -> usize {
        let state = self.states.entry(v).or_default();
        match state.degree {
            Some(d) => d,
            None => {
                let d = self.access.degree(v, &mut self.counter);
                state.degree = Some(d);
                d
            }
        }
    }

    /// Open the next interval at `v`: reveal every incident edge whose rank
    /// falls in `I_{k(v)}`, then advance `k(v)`.
    pub fn expose_next(&mut self, v: Vertex) -> Result<()> {
        let degree = self.degree_of(v);
        let k = self.states[&v].k;
        if k > self.ladder.last() {
            return Err(Error::Contract(format!(
                "vertex {v} has already opened all {} intervals",
                self.ladder.len()
            )));
        }
        self.stats.expose_calls += 1;
        let p = self.ladder.conditional_probability(k);
        let size = if p >= 1.0 {
            degree
        } else {
            binomial_sample(degree as u64, p, &mut self.rng) as usize
        };
        let mut indices = std::mem::take(&mut self.scratch_indices);
        if size == degree {
            indices.clear();
            indices.extend(0..degree);
        } else {
            sample_distinct(
                degree,
                size,
                &mut self.rng,
                &mut self.scratch_map,
                &mut indices,
            );
        }
        let intervals = self.ladder.len();
        for &idx in &indices {
            self.stats.sampled_indices += 1;
            let (u, key) = match self.lookups.entry((v, idx)) {
                Entry::Occupied(e) => {
                    self.stats.cached_lookups += 1;
                    *e.get()
                }
                Entry::Vacant(e) => *e.insert(self.access.neighbor(v, idx + 1, &mut self.counter)),
            };
            if self.revealed.contains_key(&key) {
                continue;
            }
            // If u has already passed I_k, the edge would have been revealed
            // from u's side had its rank been in I_k.
            if self.frontier(u) > k {
                continue;
            }
            let rank = RankValue {
                r: self.ladder.draw(k, &mut self.rng),
                tiebreak: key,
            };
            self.stats.ranks_drawn += 1;
            self.revealed.insert(key, rank);
            self.states
                .get_mut(&v)
                .expect("state exists")
                .insert(rank, u, k, intervals);
            self.states
                .entry(u)
                .or_default()
                .insert(rank, v, k, intervals);
        }
        self.scratch_indices = indices;
        let state = self.states.get_mut(&v).expect("state exists");
        state.below_frontier += state.counts.get(k).copied().unwrap_or(0) as usize;
        state.k += 1;
        Ok(())
    }

    /// Reveal every edge incident to every vertex.
    pub fn reveal_all(&mut self) {
        for v in 0..self.access.vertex_count() {
            let d = self.degree_of(v);
            if d > 0 {
                self.lowest(v, d);
            }
        }
    }

    /// Full consistency sweep of the exposure invariants. Uncounted.
    pub fn audit(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Contract(msg));
        let mut scratch = AccessCounter::default();
        for (&v, state) in &self.states {
            let frontier = self.ladder.start(state.k);
            let mut counts = vec![0u32; self.ladder.len()];
            for &(rank, u) in &state.by_rank {
                counts[self.ladder.index_of(rank.r)] += 1;
                match self.states.get(&u) {
                    Some(su) if su.by_rank.contains(&(rank, v)) => {}
                    _ => return fail(format!("edge ({v},{u}) exposed at {v} only")),
                }
                if self.revealed.get(&rank.tiebreak) != Some(&rank) {
                    return fail(format!("exposed rank of ({v},{u}) disagrees with revealed"));
                }
            }
            if !state.counts.is_empty() && state.counts != counts {
                return fail(format!("counts at {v} out of sync"));
            }
            if !state.by_rank.windows(2).all(|w| w[0].0 < w[1].0) {
                return fail(format!("exposed({v}) not sorted"));
            }
            let below: usize = counts[..state.k].iter().map(|&c| c as usize).sum();
            if below != state.below_frontier {
                return fail(format!("frontier tally at {v} out of sync"));
            }
            for i in 1..=self.access.degree(v, &mut scratch) {
                let (u, key) = self.access.neighbor(v, i, &mut scratch);
                if let Some(rank) = self.revealed.get(&key) {
                    if (rank.r as u128) < frontier && !state.by_rank.contains(&(*rank, u)) {
                        return fail(format!("edge ({v},{u}) below frontier but not exposed"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl<A: AdjacencyList> RankSource for LazyRanks<A> {
    fn vertex_count(&self) -> usize {
        self.access.vertex_count()
    }

    fn degree(&mut self, v: Vertex) -> usize {
        self.degree_of(v)
    }

    fn lowest(&mut self, v: Vertex, i: usize) -> Option<Incident> {
        let degree = self.degree_of(v);
        if i == 0 || i > degree {
            return None;
        }
        self.stats.lowest_calls += 1;
        loop {
            self.stats.lowest_checks += 1;
            let state = &self.states[&v];
            if state.below_frontier >= i {
                let (rank, u) = state.by_rank[i - 1];
                return Some(Incident {
                    neighbor: u,
                    edge: rank.tiebreak,
                    rank,
                });
            }
            self.expose_next(v)
                .expect("frontier covers all edges once every interval is open");
        }
    }

    fn counter(&self) -> AccessCounter {
        self.counter
    }
}
