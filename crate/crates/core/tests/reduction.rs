//! Statistical properties of greedy matching on the virtual graph `H`.

use sublinear_match::graph::{
    complete, complete_bipartite, petersen, structured, Graph, StructuredKind,
};
use sublinear_match::oracle::OracleSession;
use sublinear_match::par::{map_indexed_init, Execution};
use sublinear_match::rank::{LazyRanks, RankSource};
use sublinear_match::reduction::{HVertex, HView};
use sublinear_match::reference::{exact_maximum_matching, exact_min_vertex_cover};
use sublinear_match::seed::{derive, Stream};

const MASTER: u64 = 0x5eed_0005;

fn small_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", complete(2).unwrap()),
        ("P4", structured(StructuredKind::Path, 4).unwrap()),
        ("C5", structured(StructuredKind::Cycle, 5).unwrap()),
        ("K4", complete(4).unwrap()),
        ("K1,5", complete_bipartite(1, 5).unwrap()),
        ("K3,3", complete_bipartite(3, 3).unwrap()),
        ("petersen", petersen()),
    ]
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// `|M1|` under each of `seeds` rankings, counted by asking the oracle about
/// every `V1` vertex.
fn m1_sizes(h: HView<'_>, seeds: u64) -> Vec<usize> {
    let n = h.base_vertex_count();
    map_indexed_init(
        Execution::Parallel,
        seeds,
        || (LazyRanks::new(h, 0), OracleSession::new()),
        |(ranks, session), i| {
            ranks.reset(derive(MASTER, Stream::Ranks, i));
            let matched = (0..n)
                .filter(|&v| h.v1_matched_within_v1(ranks, session, v))
                .count();
            assert_eq!(matched % 2, 0, "V1 partners come in pairs");
            matched / 2
        },
    )
}

#[test]
fn expected_m1_is_sandwiched() {
    let eps = 0.5;
    for (name, g) in small_graphs() {
        let n = g.vertex_count() as f64;
        let mu = exact_maximum_matching(&g).unwrap();
        let nu = exact_min_vertex_cover(&g).unwrap();
        let h = HView::new(&g, eps).unwrap();
        let sizes = m1_sizes(h, 10_000);
        // M1 is a matching of a copy of G, so these hold for every ranking.
        assert!(sizes.iter().all(|&m| m <= mu && m <= nu), "{name}");
        let xs: Vec<f64> = sizes.iter().map(|&m| m as f64).collect();
        let (mean, se) = mean_and_se(&xs);
        let slack = 3.0 * se;
        let mu = mu as f64;
        let nu = nu as f64;
        assert!(mean >= mu / 2.0 - eps * n / 20.0 - slack, "{name}: {mean}");
        assert!(mean <= mu + slack, "{name}: {mean}");
        assert!(
            2.0 * mean >= nu - eps * n / 10.0 - 2.0 * slack,
            "{name}: {mean}"
        );
        assert!(2.0 * mean <= 2.0 * nu + 2.0 * slack, "{name}: {mean}");
    }
}

#[test]
fn single_edge_hit_rate() {
    // K2 has mu = nu = 1, so both V1 vertices match inside V1 exactly when
    // |M1| = 1, and the sandwich pins Pr[hit] to [1/2 - eps/10, 1].
    let g = complete(2).unwrap();
    let eps = 0.5;
    let h = HView::new(&g, eps).unwrap();
    let hits: Vec<f64> = m1_sizes(h, 10_000).iter().map(|&m| m as f64).collect();
    let (p, se) = mean_and_se(&hits);
    assert!(p >= 0.5 - eps / 10.0 - 3.0 * se, "{p}");
    assert!(p > 0.0 && p <= 1.0);
}

#[test]
fn most_v2_vertices_are_absorbed() {
    let eps = 0.5;
    let g = petersen();
    let n = g.vertex_count();
    let h = HView::new(&g, eps).unwrap();
    let s = h.block_size();
    let seeds = 2_000u64;
    let per_seed = map_indexed_init(
        Execution::Parallel,
        seeds,
        || (LazyRanks::new(h, 0), OracleSession::new()),
        |(ranks, session), i| {
            ranks.reset(derive(MASTER, Stream::Ranks, 1_000_000 + i));
            let mut absorbed = 0u64;
            for v in 0..n {
                let x = n + v;
                let lowest = ranks.lowest(x, 1).expect("V2 vertices have edges");
                if let HVertex::U { owner, .. } = h.classify(lowest.neighbor) {
                    assert_eq!(owner, v);
                    // A degree-one neighbour makes the edge a local minimum.
                    let partner = session.vertex_oracle_partner(ranks, x);
                    assert_eq!(partner, Some(lowest.neighbor));
                    absorbed += 1;
                }
            }
            absorbed
        },
    );
    let trials = (seeds as usize * n) as f64;
    let rate = per_seed.iter().sum::<u64>() as f64 / trials;
    let p = s as f64 / (n + s) as f64;
    let sigma = (p * (1.0 - p) / trials).sqrt();
    assert!(rate >= 1.0 - eps / 10.0 - 3.0 * sigma, "{rate}");
    assert!((rate - p).abs() <= 4.0 * sigma, "{rate} vs {p}");
}

#[test]
fn probes_never_exceed_list_queries() {
    let g = petersen();
    let h = HView::new(&g, 0.25).unwrap();
    let mut ranks = LazyRanks::new(h, 3);
    let mut session = OracleSession::new();
    for seed in 0..20 {
        ranks.reset(seed);
        for v in 0..g.vertex_count() {
            h.v1_matched_within_v1(&mut ranks, &mut session, v);
            let q = session.queries();
            assert!(q.pair_queries <= q.neighbor_queries);
        }
    }
}
