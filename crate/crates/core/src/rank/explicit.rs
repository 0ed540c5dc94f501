use rand::Rng;

use super::{Incident, RankSource, RankValue};
use crate::error::{Error, Result};
use crate::graph::{AccessCounter, EdgeId, Graph, Vertex};
use crate::seed::{derived_rng, Stream};

/// Every edge rank drawn up front. Reference mode: no queries are charged.
#[derive(Debug, Clone)]
pub struct ExplicitRanks<'g> {
    graph: &'g Graph,
    ranks: Vec<RankValue>,
    /// Per-vertex adjacency sorted by rank.
    sorted: Vec<Vec<(Vertex, EdgeId)>>,
}

impl<'g> ExplicitRanks<'g> {
    pub fn new(graph: &'g Graph, seed: u64) -> Self {
        let mut rng = derived_rng(seed, Stream::Ranks, 0);
        let ranks = (0..graph.edge_count())
            .map(|e| RankValue {
                r: rng.random(),
                tiebreak: e as u64,
            })
            .collect();
        Self::build(graph, ranks)
    }

    /// Ranks realizing a given permutation: `order[i]` is the edge in
    /// position `i` (lowest rank first).
    pub fn from_order(graph: &'g Graph, order: &[EdgeId]) -> Result<Self> {
        let m = graph.edge_count();
        if order.len() != m {
            return Err(Error::InvalidArgument(format!(
                "order has {} entries, graph has {m} edges",
                order.len()
            )));
        }
        let mut ranks = vec![None; m];
        for (pos, &e) in order.iter().enumerate() {
            if e >= m || ranks[e].is_some() {
                return Err(Error::InvalidArgument(format!(
                    "order is not a permutation at {e}"
                )));
            }
            ranks[e] = Some(RankValue {
                r: (pos as u64 + 1) << 32,
                tiebreak: e as u64,
            });
        }
        Ok(Self::build(
            graph,
            ranks.into_iter().map(Option::unwrap).collect(),
        ))
    }

    /// Explicit ranks from given values, indexed by edge id. Used to replay
    /// ranks revealed by a lazy source.
    pub fn from_values(graph: &'g Graph, ranks: Vec<RankValue>) -> Result<Self> {
        if ranks.len() != graph.edge_count() {
            return Err(Error::InvalidArgument("one rank per edge required".into()));
        }
        if let Some(e) = ranks
            .iter()
            .enumerate()
            .find(|(e, r)| r.tiebreak != *e as u64)
        {
            return Err(Error::InvalidArgument(format!(
                "rank of edge {} has wrong tiebreak",
                e.0
            )));
        }
        Ok(Self::build(graph, ranks))
    }

    fn build(graph: &'g Graph, ranks: Vec<RankValue>) -> Self {
        let sorted = (0..graph.vertex_count())
            .map(|v| {
                let mut adj = graph.adjacency(v).to_vec();
                adj.sort_unstable_by_key(|&(_, e)| ranks[e]);
                adj
            })
            .collect();
        ExplicitRanks {
            graph,
            ranks,
            sorted,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn rank_of(&self, e: EdgeId) -> RankValue {
        self.ranks[e]
    }

    pub fn ranks(&self) -> &[RankValue] {
        &self.ranks
    }

    /// Edge ids in increasing rank order: the permutation.
    pub fn order(&self) -> Vec<EdgeId> {
        let mut order: Vec<EdgeId> = (0..self.ranks.len()).collect();
        order.sort_unstable_by_key(|&e| self.ranks[e]);
        order
    }
}

impl RankSource for ExplicitRanks<'_> {
    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn degree(&mut self, v: Vertex) -> usize {
        self.sorted[v].len()
    }

    fn lowest(&mut self, v: Vertex, i: usize) -> Option<Incident> {
        if i == 0 {
            return None;
        }
        self.sorted[v].get(i - 1).map(|&(w, e)| Incident {
            neighbor: w,
            edge: e as u64,
            rank: self.ranks[e],
        })
    }

    fn counter(&self) -> AccessCounter {
        AccessCounter::default()
    }
}
