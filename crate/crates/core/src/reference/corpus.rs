//! Small-graph corpora for exhaustive checks.

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::graph::{complete, structured, Graph, StructuredKind};
use crate::reference::for_each_permutation;

#[derive(Debug, Clone)]
pub struct CorpusGraph {
    pub name: String,
    pub graph: Graph,
}

const MAX_CORPUS_EDGES: usize = 6;

fn pair_index(a: usize, b: usize) -> u32 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (b * (b - 1) / 2 + a) as u32
}

fn canonical(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut best = u64::MAX;
    for_each_permutation(n, |p| {
        let code = edges
            .iter()
            .fold(0u64, |acc, &(a, b)| acc | 1 << pair_index(p[a], p[b]));
        best = best.min(code);
    });
    best
}

/// Every connected simple graph with `0..=max_edges` edges, one per
/// isomorphism class, ordered by edge count. Includes the one-vertex graph.
///
/// Graphs with `m` edges are obtained from those with `m - 1` edges by adding
/// either a chord or a pendant edge, which reaches every connected graph.
pub fn connected_graphs_up_to(max_edges: usize) -> Result<Vec<CorpusGraph>> {
    if max_edges > MAX_CORPUS_EDGES {
        return Err(Error::Budget(format!(
            "corpus limited to m <= {MAX_CORPUS_EDGES}, got {max_edges}"
        )));
    }
    let mut layer: Vec<(usize, Vec<(usize, usize)>)> = vec![(1, Vec::new())];
    let mut all = layer.clone();
    for _ in 1..=max_edges {
        let mut seen = FxHashSet::default();
        let mut next = Vec::new();
        for (n, edges) in &layer {
            let mut candidates = Vec::new();
            for a in 0..*n {
                for b in a + 1..*n {
                    if !edges.contains(&(a, b)) {
                        candidates.push((*n, (a, b)));
                    }
                }
                candidates.push((*n + 1, (a, *n)));
            }
            for (n2, e) in candidates {
                let mut es = edges.clone();
                es.push(e);
                if seen.insert((n2, canonical(n2, &es))) {
                    next.push((n2, es));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all
        .into_iter()
        .enumerate()
        .map(|(i, (n, edges))| CorpusGraph {
            name: format!("conn{i}_n{n}_m{}", edges.len()),
            graph: Graph::from_edges(n, edges).expect("generated graphs are simple"),
        })
        .collect())
}

/// Paths, cycles and stars with up to `max_edges` edges, plus the triangle.
pub fn fixture_graphs(max_edges: usize) -> Vec<CorpusGraph> {
    let mut out = vec![CorpusGraph {
        name: "triangle".into(),
        graph: complete(3).expect("K3"),
    }];
    for m in 1..=max_edges {
        out.push(CorpusGraph {
            name: format!("path{m}"),
            graph: structured(StructuredKind::Path, m + 1).expect("path"),
        });
        out.push(CorpusGraph {
            name: format!("star{m}"),
            graph: structured(StructuredKind::Star, m + 1).expect("star"),
        });
        if m >= 3 {
            out.push(CorpusGraph {
                name: format!("cycle{m}"),
                graph: structured(StructuredKind::Cycle, m).expect("cycle"),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn connected(g: &Graph) -> bool {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in g.adjacency(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    #[test]
    fn counts_match_known_sequence() {
        // Connected graphs by edge count: 1, 1, 1, 3, 5, 12, 30 for m = 0..=6.
        let corpus = connected_graphs_up_to(6).unwrap();
        let mut by_m = [0usize; 7];
        for c in &corpus {
            assert!(connected(&c.graph), "{}", c.name);
            by_m[c.graph.edge_count()] += 1;
        }
        assert_eq!(by_m, [1, 1, 1, 3, 5, 12, 30]);
        assert!(connected_graphs_up_to(7).is_err());
    }

    #[test]
    fn fixtures() {
        let f = fixture_graphs(7);
        assert!(f.iter().all(|c| c.graph.edge_count() <= 7));
        assert!(f
            .iter()
            .any(|c| c.name == "cycle7" && c.graph.edge_count() == 7));
        assert!(f
            .iter()
            .any(|c| c.name == "path7" && c.graph.vertex_count() == 8));
    }
}
