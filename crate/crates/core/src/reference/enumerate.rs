use super::{greedy_matching, parallel_rounds};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::rank::ExplicitRanks;

/// Largest edge count accepted for exhaustive permutation enumeration.
pub const ENUMERATION_EDGE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationRecord {
    /// Edge ids, lowest rank first.
    pub order: Vec<EdgeId>,
    /// Greedy matching edges, sorted by id.
    pub matching: Vec<EdgeId>,
    pub matched: Vec<bool>,
    pub rho: usize,
}

/// Calls `f` once per permutation of `0..m` (Heap's algorithm).
pub fn for_each_permutation<F: FnMut(&[usize])>(m: usize, mut f: F) {
    let mut perm: Vec<usize> = (0..m).collect();
    let mut c = vec![0usize; m];
    f(&perm);
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Greedy matching and round count under every one of the `m!` edge orders.
pub fn enumerate_permutation_behavior(g: &Graph) -> Result<Vec<PermutationRecord>> {
    let m = g.edge_count();
    if m > ENUMERATION_EDGE_LIMIT {
        return Err(Error::Budget(format!(
            "enumeration limited to m <= {ENUMERATION_EDGE_LIMIT}, got m = {m}"
        )));
    }
    let mut out = Vec::new();
    for_each_permutation(m, |order| {
        let ranks = ExplicitRanks::from_order(g, order).expect("valid permutation");
        let matching = greedy_matching(g, &ranks);
        let rho = parallel_rounds(g, &ranks).rho;
        out.push(PermutationRecord {
            order: order.to_vec(),
            matching: matching.sorted_edges(),
            matched: matching.matched,
            rho,
        });
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, structured, StructuredKind};
    use std::collections::HashSet;

    #[test]
    fn heap_visits_every_permutation_once() {
        for m in 0..=6 {
            let mut seen = HashSet::new();
            for_each_permutation(m, |p| {
                assert!(seen.insert(p.to_vec()));
            });
            assert_eq!(seen.len(), (1..=m).product::<usize>());
        }
    }

    #[test]
    fn examples() {
        let single = Graph::from_edges(2, [(0, 1)]).unwrap();
        let recs = enumerate_permutation_behavior(&single).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].matching.len(), 1);

        let tri = complete(3).unwrap();
        let recs = enumerate_permutation_behavior(&tri).unwrap();
        assert_eq!(recs.len(), 6);
        assert!(recs.iter().all(|r| r.matching.len() == 1));

        // Path 0-1-2-3: the middle edge (id 1) first gives a size-1 matching.
        let p4 = structured(StructuredKind::Path, 4).unwrap();
        let recs = enumerate_permutation_behavior(&p4).unwrap();
        assert_eq!(recs.len(), 6);
        for r in &recs {
            let expect = if r.order[0] == 1 { 1 } else { 2 };
            assert_eq!(r.matching.len(), expect, "order {:?}", r.order);
        }
        assert_eq!(recs.iter().filter(|r| r.matching.len() == 1).count(), 2);
    }

    #[test]
    fn refuses_large_inputs() {
        let k5 = complete(5).unwrap();
        assert!(matches!(
            enumerate_permutation_behavior(&k5),
            Err(Error::Budget(_))
        ));
    }
}
