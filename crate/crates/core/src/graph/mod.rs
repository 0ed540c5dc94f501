//! Simple undirected graphs and the instrumented query models over them.
//!
//! A [`Graph`] is immutable after construction. Adjacency order is the order
//! in which edges were supplied, and that order is what the adjacency-list
//! model exposes through [`Graph::neighbor_query`].

mod gen;
mod io;

pub use gen::{
    complete, complete_bipartite, disjoint_union, gnp, petersen, structured, StructuredKind,
};
pub use io::{load_edge_list, parse_edge_list, write_edge_list};

use std::ops::AddAssign;

use num_rational::Ratio;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// Globally unique edge identifier used for rank tie-breaking and caching.
/// For a [`Graph`] this is the dense edge id; virtual graphs pick their own
/// injective encoding.
pub type EdgeKey = u64;

/// Tally of queries charged against a query model.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AccessCounter {
    pub degree_queries: u64,
    pub neighbor_queries: u64,
    pub pair_queries: u64,
}

impl AccessCounter {
    pub fn total(&self) -> u64 {
        self.degree_queries + self.neighbor_queries + self.pair_queries
    }
}

impl AddAssign for AccessCounter {
    fn add_assign(&mut self, rhs: Self) {
        self.degree_queries += rhs.degree_queries;
        self.neighbor_queries += rhs.neighbor_queries;
        self.pair_queries += rhs.pair_queries;
    }
}

impl std::iter::Sum for AccessCounter {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(AccessCounter::default(), |mut acc, c| {
            acc += c;
            acc
        })
    }
}

/// Exact average degree `2m/n` and maximum degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub avg_degree: Ratio<u64>,
    pub max_degree: usize,
}

impl GraphStats {
    pub fn avg_degree_f64(&self) -> f64 {
        *self.avg_degree.numer() as f64 / *self.avg_degree.denom() as f64
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    edges: Vec<(Vertex, Vertex)>,
    pairs: FxHashSet<u64>,
    max_degree: usize,
}

#[inline]
fn pair_key(u: Vertex, v: Vertex) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    ((a as u64) << 32) | b as u64
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            pairs: FxHashSet::default(),
            max_degree: 0,
        }
    }

    /// Builds a graph from an edge sequence. Edge ids follow sequence order.
    /// On error, the returned position is the 0-based index of the offending
    /// edge in the input.
    pub fn try_from_edges<I>(n: usize, edges: I) -> std::result::Result<Self, (usize, Error)>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n > u32::MAX as usize {
            return Err((0, Error::InvalidArgument(format!("too many vertices: {n}"))));
        }
        let mut g = Graph::empty(n);
        for (pos, (u, v)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err((pos, Error::VertexOutOfRange { vertex: x, n }));
                }
            }
            if u == v {
                return Err((pos, Error::Contract(format!("self-loop at vertex {u}"))));
            }
            if !g.pairs.insert(pair_key(u, v)) {
                return Err((pos, Error::Contract(format!("duplicate edge {{{u}, {v}}}"))));
            }
            let id = g.edges.len();
            g.edges.push((u, v));
            g.adj[u].push((v, id));
            g.adj[v].push((u, id));
        }
        g.max_degree = g.adj.iter().map(Vec::len).max().unwrap_or(0);
        Ok(g)
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::try_from_edges(n, edges).map_err(|(_, e)| e)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// Adjacency list of `v` as `(neighbor, edge id)` pairs. Uncounted.
    pub fn adjacency(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.pairs.contains(&pair_key(u, v))
    }

    pub fn stats(&self) -> GraphStats {
        let avg_degree = if self.n == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(2 * self.edges.len() as u64, self.n as u64)
        };
        GraphStats {
            avg_degree,
            max_degree: self.max_degree,
        }
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Adjacency-list model: degree of `v`.
    pub fn degree_query(&self, v: Vertex, counter: &mut AccessCounter) -> Result<usize> {
        self.check_vertex(v)?;
        counter.degree_queries += 1;
        Ok(self.adj[v].len())
    }

    /// Adjacency-list model: the `i`-th neighbor of `v`, 1-indexed.
    pub fn neighbor_query(
        &self,
        v: Vertex,
        i: usize,
        counter: &mut AccessCounter,
    ) -> Result<(Vertex, EdgeId)> {
        self.check_vertex(v)?;
        let degree = self.adj[v].len();
        if i == 0 || i > degree {
            return Err(Error::IndexOutOfRange {
                vertex: v,
                index: i,
                degree,
            });
        }
        counter.neighbor_queries += 1;
        Ok(self.adj[v][i - 1])
    }

    /// Adjacency-matrix model: whether `{u, v}` is an edge. `(v, v)` is `false`.
    pub fn pair_query(&self, u: Vertex, v: Vertex, counter: &mut AccessCounter) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        counter.pair_queries += 1;
        Ok(self.has_edge(u, v))
    }
}

/// Adjacency-list access to a (possibly virtual) simple graph. This is the
/// only view of the input that local oracles and the lazy rank source use.
///
/// Callers guarantee `v < vertex_count()` and `1 <= i <= degree(v)`.
pub trait AdjacencyList {
    fn vertex_count(&self) -> usize;

    /// Upper bound on the maximum degree, known without queries.
    fn max_degree(&self) -> usize;

    fn degree(&self, v: Vertex, counter: &mut AccessCounter) -> usize;

    /// The `i`-th neighbor of `v` (1-indexed) and the key of the joining edge.
    fn neighbor(&self, v: Vertex, i: usize, counter: &mut AccessCounter) -> (Vertex, EdgeKey);
}

impl AdjacencyList for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }

    #[inline]
    fn degree(&self, v: Vertex, counter: &mut AccessCounter) -> usize {
        counter.degree_queries += 1;
        self.adj[v].len()
    }

    #[inline]
    fn neighbor(&self, v: Vertex, i: usize, counter: &mut AccessCounter) -> (Vertex, EdgeKey) {
        counter.neighbor_queries += 1;
        let (w, e) = self.adj[v][i - 1];
        (w, e as EdgeKey)
    }
}

impl<A: AdjacencyList + ?Sized> AdjacencyList for &A {
    fn vertex_count(&self) -> usize {
        (**self).vertex_count()
    }
    fn max_degree(&self) -> usize {
        (**self).max_degree()
    }
    fn degree(&self, v: Vertex, counter: &mut AccessCounter) -> usize {
        (**self).degree(v, counter)
    }
    fn neighbor(&self, v: Vertex, i: usize, counter: &mut AccessCounter) -> (Vertex, EdgeKey) {
        (**self).neighbor(v, i, counter)
    }
}
