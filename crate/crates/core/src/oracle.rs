//! Local simulation of greedy maximal matching: vertex and edge oracles with
//! per-session caching and query-path instrumentation.
//!
//! `EO(e, u)` decides whether `e = (x, u)` is in the greedy matching by
//! scanning `u`'s incident edges in increasing rank until it reaches `e`
//! itself, recursing on each lower edge `(u, w)` at its far endpoint `w`.
//! Recursion runs on an explicit stack, so adversarially deep query paths
//! never touch the thread stack.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::graph::{AccessCounter, EdgeKey, Vertex};
use crate::rank::{RankSource, RankValue};

#[derive(Debug, Clone, Copy)]
struct Frame {
    edge: EdgeKey,
    rank: RankValue,
    at: Vertex,
    from: Vertex,
    scanned: usize,
}

/// Scratch state and instrumentation for one top-level oracle call.
///
/// Each call to [`vertex_oracle`](Self::vertex_oracle) or
/// [`edge_oracle`](Self::edge_oracle) starts a fresh session: the cache and
/// counters are cleared, so answers are never shared between sessions. The
/// value can be reused to keep its allocations.
#[derive(Debug, Default)]
pub struct OracleSession {
    cache: FxHashMap<(EdgeKey, Vertex), bool>,
    q: FxHashMap<EdgeKey, u64>,
    stack: Vec<Frame>,
    on_path: FxHashSet<Vertex>,
    t: u64,
    max_path: usize,
    root: Option<Vertex>,
    partner: Option<Vertex>,
    queries_before: AccessCounter,
    queries: AccessCounter,
}

/// Instrumentation of a finished session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionReport {
    pub root: Option<Vertex>,
    pub partner: Option<Vertex>,
    /// Edge-oracle invocations, cache hits included.
    pub t: u64,
    /// Invocations per edge, sorted by edge key.
    pub q: Vec<(EdgeKey, u64)>,
    /// Deepest stack of edge-oracle calls, a cache hit counting as one level.
    pub max_path: usize,
    /// Queries charged to the rank source during the session.
    pub queries: AccessCounter,
}

impl OracleSession {
    pub fn new() -> Self {
        Self::default()
    }

    fn begin<R: RankSource + ?Sized>(&mut self, ranks: &R, root: Vertex) {
        self.cache.clear();
        self.q.clear();
        self.stack.clear();
        self.on_path.clear();
        self.t = 0;
        self.max_path = 0;
        self.root = Some(root);
        self.partner = None;
        self.queries_before = ranks.counter();
        self.queries = AccessCounter::default();
    }

    fn end<R: RankSource + ?Sized>(&mut self, ranks: &R) {
        let after = ranks.counter();
        let before = self.queries_before;
        self.queries = AccessCounter {
            degree_queries: after.degree_queries - before.degree_queries,
            neighbor_queries: after.neighbor_queries - before.neighbor_queries,
            pair_queries: after.pair_queries - before.pair_queries,
        };
        let bound = 2 * ranks.vertex_count() as u64 - 1;
        for (&e, &count) in &self.q {
            assert!(
                count <= bound,
                "edge {e} invoked {count} times, above 2n-1 = {bound}"
            );
        }
    }

    /// Whether `v` is matched in the greedy matching induced by `ranks`.
    pub fn vertex_oracle<R: RankSource + ?Sized>(&mut self, ranks: &mut R, v: Vertex) -> bool {
        self.vertex_oracle_partner(ranks, v).is_some()
    }

    /// `v`'s partner in the greedy matching, if matched.
    pub fn vertex_oracle_partner<R: RankSource + ?Sized>(
        &mut self,
        ranks: &mut R,
        v: Vertex,
    ) -> Option<Vertex> {
        self.begin(ranks, v);
        let mut j = 1;
        while let Some(inc) = ranks.lowest(v, j) {
            if self.run(ranks, inc.edge, inc.rank, inc.neighbor, v) {
                self.partner = Some(inc.neighbor);
                break;
            }
            j += 1;
        }
        self.end(ranks);
        self.partner
    }

    /// Whether the edge `(from, at)` is in the greedy matching, evaluated by
    /// `EO((from, at), at)` in a fresh session rooted at `from`.
    ///
    /// # Panics
    /// If `from` and `at` are not adjacent.
    pub fn edge_oracle<R: RankSource + ?Sized>(
        &mut self,
        ranks: &mut R,
        from: Vertex,
        at: Vertex,
    ) -> bool {
        self.begin(ranks, from);
        // The walk below visits the same prefix of `at`'s list, so locating
        // the edge first reveals nothing extra.
        let target = (1..)
            .map_while(|j| ranks.lowest(at, j))
            .find(|inc| inc.neighbor == from)
            .expect("edge_oracle called on a non-edge");
        let answer = self.run(ranks, target.edge, target.rank, at, from);
        if answer {
            self.partner = Some(at);
        }
        self.end(ranks);
        answer
    }

    fn record_call(&mut self, edge: EdgeKey, depth: usize) {
        self.t += 1;
        *self.q.entry(edge).or_insert(0) += 1;
        self.max_path = self.max_path.max(depth);
    }

    fn push(&mut self, frame: Frame) {
        if let Some(top) = self.stack.last() {
            assert!(
                frame.rank < top.rank,
                "query path ranks must strictly decrease"
            );
        }
        assert!(
            self.on_path.insert(frame.at),
            "query path revisits vertex {}",
            frame.at
        );
        self.stack.push(frame);
    }

    /// Evaluates `EO((from, at), at)` with the current stack empty.
    fn run<R: RankSource + ?Sized>(
        &mut self,
        ranks: &mut R,
        edge: EdgeKey,
        rank: RankValue,
        at: Vertex,
        from: Vertex,
    ) -> bool {
        debug_assert!(self.stack.is_empty());
        self.record_call(edge, 1);
        if let Some(&hit) = self.cache.get(&(edge, at)) {
            return hit;
        }
        self.on_path.insert(from);
        self.push(Frame {
            edge,
            rank,
            at,
            from,
            scanned: 0,
        });
        let answer = self.drive(ranks);
        self.on_path.remove(&from);
        answer
    }

    fn drive<R: RankSource + ?Sized>(&mut self, ranks: &mut R) -> bool {
        'frames: loop {
            let top = self.stack.len() - 1;
            let frame = &mut self.stack[top];
            frame.scanned += 1;
            let (at, from, j) = (frame.at, frame.from, frame.scanned);
            let inc = ranks
                .lowest(at, j)
                .expect("the scan reaches the edge itself before running out");
            let mut result = if inc.neighbor == from {
                // Every lower edge at `at` is out of the matching.
                debug_assert_eq!(self.stack[top].edge, inc.edge);
                true
            } else {
                let depth = self.stack.len() + 1;
                self.record_call(inc.edge, depth);
                match self.cache.get(&(inc.edge, inc.neighbor)) {
                    Some(&true) => false,
                    Some(&false) => continue 'frames,
                    None => {
                        self.push(Frame {
                            edge: inc.edge,
                            rank: inc.rank,
                            at: inc.neighbor,
                            from: at,
                            scanned: 0,
                        });
                        continue 'frames;
                    }
                }
            };
            // Pop finished frames; a `true` child settles its parent as `false`.
            loop {
                let done = self.stack.pop().expect("non-empty stack");
                self.on_path.remove(&done.at);
                self.cache.insert((done.edge, done.at), result);
                if self.stack.is_empty() {
                    return result;
                }
                if !result {
                    continue 'frames;
                }
                result = false;
            }
        }
    }

    /// Edge-oracle invocations in the last session, cache hits included.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn max_path(&self) -> usize {
        self.max_path
    }

    pub fn q(&self, edge: EdgeKey) -> u64 {
        self.q.get(&edge).copied().unwrap_or(0)
    }

    pub fn queries(&self) -> AccessCounter {
        self.queries
    }

    pub fn partner(&self) -> Option<Vertex> {
        self.partner
    }

    pub fn report(&self) -> SessionReport {
        let mut q: Vec<_> = self.q.iter().map(|(&e, &c)| (e, c)).collect();
        q.sort_unstable();
        SessionReport {
            root: self.root,
            partner: self.partner,
            t: self.t,
            q,
            max_path: self.max_path,
            queries: self.queries,
        }
    }
}
