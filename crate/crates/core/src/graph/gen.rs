//! Deterministic graph generators.

use rand::Rng;

use super::{Graph, Vertex};
use crate::error::{Error, Result};
use crate::seed::{derived_rng, Stream};

/// Erdős–Rényi `G(n, p)`. Edges are emitted in lexicographic `(u, v)` order,
/// `u < v`, using geometric skips so the cost is `O(n + m)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidGenerator(format!("p = {p} not in [0, 1]")));
    }
    let mut edges = Vec::new();
    if n >= 2 && p > 0.0 {
        let mut rng = derived_rng(seed, Stream::Graph, 0);
        let log_q = (1.0 - p).ln();
        // (u, v) is the last visited position; v = u means "before (u, u+1)".
        let (mut u, mut v) = (0usize, 0usize);
        loop {
            let skip = if p >= 1.0 {
                0
            } else {
                let x: f64 = 1.0 - rng.random::<f64>();
                let s = (x.ln() / log_q).floor();
                if s >= (n * n) as f64 {
                    break;
                }
                s as usize
            };
            v += skip + 1;
            while u + 1 < n && v >= n {
                v = v - n + u + 2;
                u += 1;
            }
            if u + 1 >= n {
                break;
            }
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidGenerator(
            "both parts must be non-empty".into(),
        ));
    }
    let edges = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y)));
    Graph::from_edges(a + b, edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuredKind {
    Path,
    Cycle,
    /// Vertex 0 joined to every other vertex.
    Star,
    /// `n/2` disjoint edges `{2i, 2i+1}`.
    PerfectMatching,
}

pub fn structured(kind: StructuredKind, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidGenerator("n must be at least 1".into()));
    }
    let edges: Vec<(Vertex, Vertex)> = match kind {
        StructuredKind::Path => (0..n - 1).map(|i| (i, i + 1)).collect(),
        StructuredKind::Cycle => {
            if n < 3 {
                return Err(Error::InvalidGenerator("cycle needs n >= 3".into()));
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        StructuredKind::Star => (1..n).map(|i| (0, i)).collect(),
        StructuredKind::PerfectMatching => {
            if !n.is_multiple_of(2) {
                return Err(Error::InvalidGenerator(
                    "perfect matching needs even n".into(),
                ));
            }
            (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect()
        }
    };
    Graph::from_edges(n, edges)
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, edges).expect("petersen graph is simple")
}

/// Disjoint union; vertices of `b` are shifted by `a.vertex_count()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.vertex_count();
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    Graph::from_edges(shift + b.vertex_count(), edges).expect("union of simple graphs is simple")
}
