//! A virtual graph `H` that turns adjacency-matrix probes of `G` into
//! adjacency-list access, so list-model oracles can run on matrix inputs.
//!
//! `H` has vertex sets `V1 = [0, n)` and `V2 = [n, 2n)`, two copies of `V`,
//! and for each `v` a block `U_v` of `s` degree-one vertices hanging off
//! `v`'s copy in `V2`. For `v, w` in `V`:
//!
//! * `v1 ~ w1` and `v2 ~ w2` iff `(v, w)` is an edge of `G`;
//! * `v1 ~ w2` iff `(v, w)` is not an edge of `G` (including `v = w`).
//!
//! Every `V1` vertex has degree `n`, every `V2` vertex `n + s`, and any
//! list position is answered with at most one pair probe to `G`.

use crate::error::{Error, Result};
use crate::graph::{AccessCounter, AdjacencyList, EdgeKey, Graph, Vertex};
use crate::oracle::OracleSession;
use crate::rank::RankSource;

#[derive(Debug, Clone, Copy)]
pub struct HView<'g> {
    graph: &'g Graph,
    n: usize,
    eps: f64,
    s: usize,
}

/// Which part of `H` a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HVertex {
    V1(Vertex),
    V2(Vertex),
    /// The `j`-th (0-based) absorber of `U_v`.
    U {
        owner: Vertex,
        j: usize,
    },
}

impl<'g> HView<'g> {
    /// Requires `1/n <= eps <= 1`.
    pub fn new(graph: &'g Graph, eps: f64) -> Result<Self> {
        let n = graph.vertex_count();
        if n == 0 {
            return Err(Error::InvalidArgument("graph has no vertices".into()));
        }
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::Epsilon {
                eps,
                reason: "must lie in (0, 1]".into(),
            });
        }
        if eps * (n as f64) < 1.0 {
            return Err(Error::Epsilon {
                eps,
                reason: format!("must be at least 1/n = {}", 1.0 / n as f64),
            });
        }
        let s = (10.0 * n as f64 / eps).ceil() as usize;
        Ok(HView { graph, n, eps, s })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn base_vertex_count(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Size of each absorber block.
    pub fn block_size(&self) -> usize {
        self.s
    }

    pub fn h_vertex_count(&self) -> usize {
        2 * self.n + self.n * self.s
    }

    pub fn classify(&self, x: Vertex) -> HVertex {
        if x < self.n {
            HVertex::V1(x)
        } else if x < 2 * self.n {
            HVertex::V2(x - self.n)
        } else {
            let off = x - 2 * self.n;
            HVertex::U {
                owner: off / self.s,
                j: off % self.s,
            }
        }
    }

    fn check_vertex(&self, x: Vertex) -> Result<()> {
        if x >= self.h_vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                n: self.h_vertex_count(),
            });
        }
        Ok(())
    }

    fn degree_of(&self, x: Vertex) -> usize {
        match self.classify(x) {
            HVertex::V1(_) => self.n,
            HVertex::V2(_) => self.n + self.s,
            HVertex::U { .. } => 1,
        }
    }

    fn probe(&self, v: Vertex, w: Vertex, counter: &mut AccessCounter) -> bool {
        counter.pair_queries += 1;
        self.graph.has_edge(v, w)
    }

    fn neighbor_of(&self, x: Vertex, i: usize, counter: &mut AccessCounter) -> Vertex {
        let n = self.n;
        match self.classify(x) {
            HVertex::V1(v) => {
                if self.probe(v, i - 1, counter) {
                    i - 1
                } else {
                    n + i - 1
                }
            }
            HVertex::V2(v) if i <= n => {
                if self.probe(v, i - 1, counter) {
                    n + i - 1
                } else {
                    i - 1
                }
            }
            HVertex::V2(v) => 2 * n + v * self.s + (i - n - 1),
            HVertex::U { owner, .. } => n + owner,
        }
    }

    fn edge_key(&self, a: Vertex, b: Vertex) -> EdgeKey {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        a as EdgeKey * self.h_vertex_count() as EdgeKey + b as EdgeKey
    }

    /// Degree of `x` in `H`; no probes.
    pub fn h_degree(&self, x: Vertex) -> Result<usize> {
        self.check_vertex(x)?;
        Ok(self.degree_of(x))
    }

    /// The `i`-th neighbor of `x` in `H` (1-indexed), charging at most one
    /// pair query to `counter`.
    pub fn h_neighbor(&self, x: Vertex, i: usize, counter: &mut AccessCounter) -> Result<Vertex> {
        self.check_vertex(x)?;
        let degree = self.degree_of(x);
        if i == 0 || i > degree {
            return Err(Error::IndexOutOfRange {
                vertex: x,
                index: i,
                degree,
            });
        }
        Ok(self.neighbor_of(x, i, counter))
    }

    /// Whether `v1` is matched to another `V1` vertex in the greedy matching
    /// of `H` under `ranks`, which must be a rank source over this view.
    pub fn v1_matched_within_v1<R: RankSource + ?Sized>(
        &self,
        ranks: &mut R,
        session: &mut OracleSession,
        v: Vertex,
    ) -> bool {
        debug_assert!(v < self.n);
        session
            .vertex_oracle_partner(ranks, v)
            .is_some_and(|p| p < self.n)
    }
}

impl AdjacencyList for HView<'_> {
    fn vertex_count(&self) -> usize {
        self.h_vertex_count()
    }

    fn max_degree(&self) -> usize {
        self.n + self.s
    }

    fn degree(&self, x: Vertex, counter: &mut AccessCounter) -> usize {
        counter.degree_queries += 1;
        self.degree_of(x)
    }

    fn neighbor(&self, x: Vertex, i: usize, counter: &mut AccessCounter) -> (Vertex, EdgeKey) {
        counter.neighbor_queries += 1;
        let w = self.neighbor_of(x, i, counter);
        (w, self.edge_key(x, w))
    }
}
