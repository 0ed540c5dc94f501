//! Exact maximum matching and minimum vertex cover for small graphs by
//! memoized branching over vertex subsets.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const EXACT_VERTEX_LIMIT: usize = 24;

fn neighbor_masks(g: &Graph) -> Result<Vec<u32>> {
    let n = g.vertex_count();
    if n > EXACT_VERTEX_LIMIT {
        return Err(Error::Budget(format!(
            "exact oracle limited to n <= {EXACT_VERTEX_LIMIT}, got n = {n}"
        )));
    }
    let mut masks = vec![0u32; n];
    for &(a, b) in g.edges() {
        masks[a] |= 1 << b;
        masks[b] |= 1 << a;
    }
    Ok(masks)
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Size of a maximum matching, μ(G).
pub fn exact_maximum_matching(g: &Graph) -> Result<usize> {
    let adj = neighbor_masks(g)?;
    let mut memo = FxHashMap::default();
    Ok(matching_in(full_mask(g.vertex_count()), &adj, &mut memo) as usize)
}

fn matching_in(mask: u32, adj: &[u32], memo: &mut FxHashMap<u32, u8>) -> u8 {
    // Drop vertices with no neighbour inside the mask.
    let mut live = mask;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & mask == 0 {
            live &= !(1 << v);
        }
    }
    if live.count_ones() < 2 {
        return 0;
    }
    if let Some(&r) = memo.get(&live) {
        return r;
    }
    let v = live.trailing_zeros() as usize;
    let without_v = live & !(1 << v);
    let mut best = matching_in(without_v, adj, memo);
    let cap = (live.count_ones() / 2) as u8;
    let mut nbrs = adj[v] & without_v;
    while nbrs != 0 && best < cap {
        let u = nbrs.trailing_zeros() as usize;
        nbrs &= nbrs - 1;
        best = best.max(1 + matching_in(without_v & !(1 << u), adj, memo));
    }
    memo.insert(live, best);
    best
}

/// Size of a minimum vertex cover, ν(G).
pub fn exact_min_vertex_cover(g: &Graph) -> Result<usize> {
    let adj = neighbor_masks(g)?;
    let mut memo = FxHashMap::default();
    Ok(cover_in(full_mask(g.vertex_count()), &adj, &mut memo) as usize)
}

fn cover_in(mask: u32, adj: &[u32], memo: &mut FxHashMap<u32, u8>) -> u8 {
    // Branch on a max-degree vertex v: either v is in the cover, or all of
    // its neighbours are.
    let mut best_v = None;
    let mut best_deg = 0;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & mask).count_ones();
        if d > best_deg {
            best_deg = d;
            best_v = Some(v);
        }
    }
    let Some(v) = best_v else {
        return 0;
    };
    if let Some(&r) = memo.get(&mask) {
        return r;
    }
    let take_v = 1 + cover_in(mask & !(1 << v), adj, memo);
    let nbrs = adj[v] & mask;
    let take_nbrs = nbrs.count_ones() as u8 + cover_in(mask & !(1 << v) & !nbrs, adj, memo);
    let best = take_v.min(take_nbrs);
    memo.insert(mask, best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, gnp, petersen, structured, StructuredKind};

    /// Brute force over all edge subsets / vertex subsets.
    fn brute_matching(g: &Graph) -> usize {
        let m = g.edge_count();
        (0u32..1 << m)
            .filter(|&s| {
                let mut used = 0u32;
                (0..m).filter(|&e| s >> e & 1 == 1).all(|e| {
                    let (a, b) = g.endpoints(e);
                    let bits = 1 << a | 1 << b;
                    let ok = used & bits == 0;
                    used |= bits;
                    ok
                })
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn brute_cover(g: &Graph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|&c| {
                g.edges()
                    .iter()
                    .all(|&(a, b)| c >> a & 1 == 1 || c >> b & 1 == 1)
            })
            .map(|c| c.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn examples() {
        let c5 = structured(StructuredKind::Cycle, 5).unwrap();
        assert_eq!(exact_maximum_matching(&c5).unwrap(), 2);
        assert_eq!(exact_min_vertex_cover(&c5).unwrap(), 3);
        let k22 = complete_bipartite(2, 2).unwrap();
        assert_eq!(exact_maximum_matching(&k22).unwrap(), 2);
        assert_eq!(exact_min_vertex_cover(&k22).unwrap(), 2);
        let single = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(exact_min_vertex_cover(&single).unwrap(), 1);
        let p = petersen();
        assert_eq!(exact_maximum_matching(&p).unwrap(), 5);
        assert_eq!(brute_matching(&p), 5);
        assert_eq!(exact_maximum_matching(&Graph::empty(4)).unwrap(), 0);
        assert_eq!(exact_min_vertex_cover(&Graph::empty(4)).unwrap(), 0);
    }

    #[test]
    fn agrees_with_brute_force() {
        for seed in 0..60 {
            let g = gnp(9, 0.35, seed).unwrap();
            if g.edge_count() > 18 {
                continue;
            }
            assert_eq!(
                exact_maximum_matching(&g).unwrap(),
                brute_matching(&g),
                "seed {seed}"
            );
            assert_eq!(
                exact_min_vertex_cover(&g).unwrap(),
                brute_cover(&g),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn budget_refusal_and_limit() {
        let big = Graph::empty(25);
        assert!(matches!(
            exact_maximum_matching(&big),
            Err(Error::Budget(_))
        ));
        assert!(matches!(
            exact_min_vertex_cover(&big),
            Err(Error::Budget(_))
        ));
        let k = complete(24).unwrap();
        assert_eq!(exact_maximum_matching(&k).unwrap(), 12);
        assert_eq!(exact_min_vertex_cover(&k).unwrap(), 23);
        let g = gnp(24, 0.2, 1).unwrap();
        let mu = exact_maximum_matching(&g).unwrap();
        let nu = exact_min_vertex_cover(&g).unwrap();
        assert!(mu <= nu && nu <= 2 * mu);
    }
}
