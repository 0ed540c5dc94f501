//! Ground truth: global greedy maximal matching, its parallel-round
//! implementation, exact optima for small graphs and exhaustive enumeration
//! over edge permutations.

mod corpus;
mod enumerate;
mod exact;

pub use corpus::{connected_graphs_up_to, fixture_graphs, CorpusGraph};
pub use enumerate::{enumerate_permutation_behavior, for_each_permutation, PermutationRecord};
pub use exact::{exact_maximum_matching, exact_min_vertex_cover, EXACT_VERTEX_LIMIT};

use num_rational::Ratio;

use crate::graph::{EdgeId, Graph, GraphStats, Vertex};
use crate::rank::ExplicitRanks;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Matched edge ids, in the order they were added.
    pub edges: Vec<EdgeId>,
    pub matched: Vec<bool>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn sorted_edges(&self) -> Vec<EdgeId> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Partner of `v`, if matched.
    pub fn partner(&self, g: &Graph, v: Vertex) -> Option<Vertex> {
        self.edges.iter().find_map(|&e| {
            let (a, b) = g.endpoints(e);
            (a == v).then_some(b).or((b == v).then_some(a))
        })
    }

    /// True when no two edges share a vertex and flags agree with the edges.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        for &e in &self.edges {
            let (a, b) = g.endpoints(e);
            if seen[a] || seen[b] {
                return false;
            }
            seen[a] = true;
            seen[b] = true;
        }
        seen == self.matched
    }

    /// True when every edge has a matched endpoint.
    pub fn is_maximal(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|&(a, b)| self.matched[a] || self.matched[b])
    }
}

/// Greedy maximal matching over edges in increasing rank order.
pub fn greedy_matching(g: &Graph, ranks: &ExplicitRanks<'_>) -> Matching {
    let mut matched = vec![false; g.vertex_count()];
    let mut edges = Vec::new();
    for e in ranks.order() {
        let (a, b) = g.endpoints(e);
        if !matched[a] && !matched[b] {
            matched[a] = true;
            matched[b] = true;
            edges.push(e);
        }
    }
    Matching { edges, matched }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundProfile {
    /// Number of rounds until the graph is empty.
    pub rho: usize,
    /// 1-based round in which each edge left the graph.
    pub round_of_edge: Vec<usize>,
    pub matching: Matching,
}

/// Parallel greedy: in every round each live edge that is a strict local
/// minimum among its live neighbours joins the matching, and the endpoints of
/// joined edges are deleted.
pub fn parallel_rounds(g: &Graph, ranks: &ExplicitRanks<'_>) -> RoundProfile {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut round_of_edge = vec![0usize; m];
    let mut live: Vec<EdgeId> = (0..m).collect();
    let mut alive_vertex = vec![true; n];
    let mut matched = vec![false; n];
    let mut edges = Vec::new();
    let mut best = vec![None; n];
    let mut round = 0;
    while !live.is_empty() {
        round += 1;
        best.iter_mut().for_each(|b| *b = None);
        for &e in &live {
            let r = ranks.rank_of(e);
            for x in [g.endpoints(e).0, g.endpoints(e).1] {
                if best[x].is_none_or(|b| r < b) {
                    best[x] = Some(r);
                }
            }
        }
        let winners: Vec<EdgeId> = live
            .iter()
            .copied()
            .filter(|&e| {
                let r = Some(ranks.rank_of(e));
                let (a, b) = g.endpoints(e);
                best[a] == r && best[b] == r
            })
            .collect();
        for &e in &winners {
            let (a, b) = g.endpoints(e);
            matched[a] = true;
            matched[b] = true;
            alive_vertex[a] = false;
            alive_vertex[b] = false;
            edges.push(e);
        }
        live.retain(|&e| {
            let (a, b) = g.endpoints(e);
            let keep = alive_vertex[a] && alive_vertex[b];
            if !keep {
                round_of_edge[e] = round;
            }
            keep
        });
    }
    RoundProfile {
        rho: round,
        round_of_edge,
        matching: Matching { edges, matched },
    }
}

/// `n * d̄ / (4 Δ)`, a lower bound on the maximum matching size; 0 when Δ = 0.
pub fn vizing_floor(stats: &GraphStats, n: usize) -> Ratio<u64> {
    if stats.max_degree == 0 {
        return Ratio::from_integer(0);
    }
    stats.avg_degree * Ratio::from_integer(n as u64)
        / Ratio::from_integer(4 * stats.max_degree as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, gnp, structured, StructuredKind};

    fn path4() -> Graph {
        structured(StructuredKind::Path, 4).unwrap()
    }

    #[test]
    fn greedy_examples() {
        let p3 = structured(StructuredKind::Path, 3).unwrap();
        let r = ExplicitRanks::from_order(&p3, &[0, 1]).unwrap();
        assert_eq!(greedy_matching(&p3, &r).edges, vec![0]);

        let tri = complete(3).unwrap();
        for seed in 0..10 {
            assert_eq!(
                greedy_matching(&tri, &ExplicitRanks::new(&tri, seed)).len(),
                1
            );
        }

        // Path 0-1-2-3 has e01 = 0, e12 = 1, e23 = 2.
        let p4 = path4();
        let r = ExplicitRanks::from_order(&p4, &[1, 0, 2]).unwrap();
        assert_eq!(greedy_matching(&p4, &r).edges, vec![1]);
        let r = ExplicitRanks::from_order(&p4, &[0, 2, 1]).unwrap();
        assert_eq!(greedy_matching(&p4, &r).sorted_edges(), vec![0, 2]);
    }

    #[test]
    fn rounds_examples() {
        let pm = structured(StructuredKind::PerfectMatching, 8).unwrap();
        assert_eq!(parallel_rounds(&pm, &ExplicitRanks::new(&pm, 3)).rho, 1);
        let single = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(
            parallel_rounds(&single, &ExplicitRanks::new(&single, 3)).rho,
            1
        );

        let p4 = path4();
        let r = ExplicitRanks::from_order(&p4, &[0, 1, 2]).unwrap();
        let prof = parallel_rounds(&p4, &r);
        assert_eq!(prof.rho, 2);
        assert_eq!(prof.round_of_edge, vec![1, 1, 2]);
        assert_eq!(prof.matching.sorted_edges(), vec![0, 2]);

        let empty = Graph::empty(3);
        assert_eq!(
            parallel_rounds(&empty, &ExplicitRanks::new(&empty, 0)).rho,
            0
        );
    }

    #[test]
    fn rounds_agree_with_greedy_on_random_graphs() {
        for seed in 0..100 {
            let g = gnp(20 + (seed as usize % 180), 0.05, seed).unwrap();
            let r = ExplicitRanks::new(&g, seed);
            let greedy = greedy_matching(&g, &r);
            let prof = parallel_rounds(&g, &r);
            assert_eq!(greedy.sorted_edges(), prof.matching.sorted_edges());
            assert_eq!(greedy.matched, prof.matching.matched);
            assert!(greedy.is_valid(&g) && greedy.is_maximal(&g));
            let max_round = prof.round_of_edge.iter().copied().max().unwrap_or(0);
            assert_eq!(max_round, prof.rho);
        }
    }

    #[test]
    fn vizing_examples() {
        let k22 = complete_bipartite(2, 2).unwrap();
        assert_eq!(vizing_floor(&k22.stats(), 4), Ratio::from_integer(1));
        let pm = structured(StructuredKind::PerfectMatching, 6).unwrap();
        assert_eq!(vizing_floor(&pm.stats(), 6), Ratio::new(3, 2));
        let k13 = complete_bipartite(1, 3).unwrap();
        assert_eq!(vizing_floor(&k13.stats(), 4), Ratio::new(1, 2));
        let e = Graph::empty(3);
        assert_eq!(vizing_floor(&e.stats(), 3), Ratio::from_integer(0));
    }

    #[test]
    fn partner_lookup() {
        let p4 = path4();
        let r = ExplicitRanks::from_order(&p4, &[0, 2, 1]).unwrap();
        let m = greedy_matching(&p4, &r);
        assert_eq!(m.partner(&p4, 0), Some(1));
        assert_eq!(m.partner(&p4, 3), Some(2));
    }
}
