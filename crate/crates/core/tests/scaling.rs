//! How total estimator cost scales with the average degree.

use sublinear_match::estimate::{estimate, EstimatorConfig, EstimatorKind};
use sublinear_match::graph::gnp;
use sublinear_match::par::Execution;
use sublinear_match::seed::{derive, Stream};

const MASTER: u64 = 0x00e5_7173;

#[test]
fn additive_query_budget_shape() {
    // Total queries against 30 (d̄ + 1)/eps^2 log2(n)^2 with the sample
    // constant the guarantee is proved for.
    let n = 10_000;
    let eps = 0.2;
    let mut report = Vec::new();
    let mut within = true;
    for (i, dbar) in [2.0, 8.0, 32.0].into_iter().enumerate() {
        let g = gnp(
            n,
            dbar / (n - 1) as f64,
            derive(MASTER, Stream::Graph, 50 + i as u64),
        )
        .unwrap();
        let avg = g.stats().avg_degree_f64();
        let e = estimate(
            EstimatorKind::ListAdditive,
            &g,
            eps,
            derive(MASTER, Stream::Instance, 50 + i as u64),
            &EstimatorConfig::default(),
            Execution::Parallel,
        )
        .unwrap();
        let limit = 30.0 * (avg + 1.0) / (eps * eps) * (n as f64).log2().powi(2);
        let total = e.cost.total() as f64;
        within &= total <= limit;
        report.push(format!(
            "d={dbar}: {total} vs {limit:.0} ({:.2})",
            total / limit
        ));
    }
    assert!(within, "{}", report.join("; "));
}
