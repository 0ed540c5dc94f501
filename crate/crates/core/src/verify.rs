//! Exhaustive and randomized self-checks against the reference
//! implementations. Shared by the `verify` command and the test suites.

use std::collections::BTreeSet;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{gnp, Graph};
use crate::oracle::OracleSession;
use crate::par::{map_indexed_init, Execution};
use crate::rank::{ExplicitRanks, LazyRanks};
use crate::reference::{
    connected_graphs_up_to, enumerate_permutation_behavior, exact_maximum_matching, fixture_graphs,
    for_each_permutation, greedy_matching, parallel_rounds, vizing_floor, CorpusGraph,
};
use crate::seed::{derive, derived_rng, Stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Rounds,
    Vizing,
    Lazy,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.name, self.detail)
    }
}

/// Wall-clock allowance shared by all checks of a run.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn within(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
        }
    }

    pub fn check(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Budget("time budget exhausted".into())),
            _ => Ok(()),
        }
    }
}

fn outcome(name: &str, failures: &[String], summary: String) -> CheckOutcome {
    let detail = match failures.first() {
        None => summary,
        Some(first) => format!("{} failures, first: {first}", failures.len()),
    };
    CheckOutcome {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail,
    }
}

/// Runs `check`, turning a panic (a violated internal assertion) into a
/// failed outcome. Budget errors propagate.
pub fn guarded<F>(name: &str, check: F) -> Result<CheckOutcome>
where
    F: FnOnce() -> Result<CheckOutcome>,
{
    match catch_unwind(AssertUnwindSafe(check)) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Ok(CheckOutcome {
                name: name.to_string(),
                passed: false,
                detail: format!("invariant violated: {msg}"),
            })
        }
    }
}

/// Every connected graph with at most 5 edges plus path, cycle, star and
/// triangle fixtures with at most 7 edges.
pub fn oracle_corpus() -> Vec<CorpusGraph> {
    let mut graphs = connected_graphs_up_to(5).expect("within corpus limit");
    graphs.extend(fixture_graphs(7));
    graphs
}

/// Vertex oracle against greedy matching for every permutation and vertex.
/// Also confirms `Σ_e Q(e) = T` per session; the `2n - 1` bound on `Q` and
/// the query-path invariants are asserted inside every session.
pub fn oracle_exhaustive(graphs: &[CorpusGraph], budget: &Budget) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let (mut perms, mut answers) = (0u64, 0u64);
    let mut session = OracleSession::new();
    for c in graphs {
        budget.check()?;
        let g = &c.graph;
        for_each_permutation(g.edge_count(), |order| {
            perms += 1;
            let mut ranks = ExplicitRanks::from_order(g, order).expect("permutation");
            let matching = greedy_matching(g, &ranks);
            for v in 0..g.vertex_count() {
                answers += 1;
                let got = session.vertex_oracle_partner(&mut ranks, v);
                if got != matching.partner(g, v) {
                    failures.push(format!("{} order {order:?} vertex {v}", c.name));
                }
                let report = session.report();
                if report.q.iter().map(|x| x.1).sum::<u64>() != report.t {
                    failures.push(format!("{} order {order:?} vertex {v}: sum Q != T", c.name));
                }
            }
        });
    }
    Ok(outcome(
        "oracle-vs-greedy",
        &failures,
        format!(
            "{} graphs, {perms} permutations, {answers} vertex answers agree",
            graphs.len()
        ),
    ))
}

/// Explicit sweep of `Q(e) <= 2n - 1` over every session of the oracle
/// corpus (all orders) and of `random` lazily ranked random graphs.
pub fn q_bound(
    graphs: &[CorpusGraph],
    random: u64,
    seed: u64,
    budget: &Budget,
) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut sessions = 0u64;
    let mut worst = 0.0f64;
    let mut session = OracleSession::new();
    let mut inspect = |session: &OracleSession, n: usize, what: &dyn Fn() -> String| {
        sessions += 1;
        let bound = (2 * n - 1) as f64;
        for &(e, q) in &session.report().q {
            worst = worst.max(q as f64 / bound);
            if q as f64 > bound {
                failures.push(format!("{} edge {e}: Q = {q}", what()));
            }
        }
    };
    for c in graphs {
        budget.check()?;
        let g = &c.graph;
        for_each_permutation(g.edge_count(), |order| {
            let mut ranks = ExplicitRanks::from_order(g, order).expect("permutation");
            for v in 0..g.vertex_count() {
                session.vertex_oracle(&mut ranks, v);
                inspect(&session, g.vertex_count(), &|| {
                    format!("{} order {order:?} root {v}", c.name)
                });
            }
        });
    }
    for i in 0..random {
        budget.check()?;
        let mut rng = derived_rng(seed, Stream::Trial, i);
        let n = rng.random_range(20..=300usize);
        let dbar = rng.random_range(1.0..16.0);
        let g = gnp(n, dbar / (n - 1) as f64, derive(seed, Stream::Graph, i))?;
        let mut ranks = LazyRanks::new(&g, derive(seed, Stream::Ranks, i));
        for v in 0..n {
            session.vertex_oracle(&mut ranks, v);
            inspect(&session, n, &|| format!("random graph {i} root {v}"));
        }
    }
    Ok(outcome(
        "cache-bound",
        &failures,
        format!("{sessions} sessions, largest Q/(2n-1) = {worst:.3}"),
    ))
}

/// Largest `max_path` and `ρ` seen, and the violations of
/// `max_path <= 2ρ + 1`, over every vertex session of one ranking.
fn path_round_violations(
    g: &Graph,
    ranks: &mut ExplicitRanks<'_>,
    session: &mut OracleSession,
) -> (usize, usize, Vec<usize>) {
    let rho = parallel_rounds(g, ranks).rho;
    let mut worst = 0;
    let mut bad = Vec::new();
    for v in 0..g.vertex_count() {
        session.vertex_oracle(ranks, v);
        worst = worst.max(session.max_path());
        if session.max_path() > 2 * rho + 1 {
            bad.push(v);
        }
    }
    (worst, rho, bad)
}

/// `max_path <= 2ρ + 1` for every permutation of every corpus graph.
pub fn path_rounds_exhaustive(graphs: &[CorpusGraph], budget: &Budget) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut sessions = 0u64;
    let mut session = OracleSession::new();
    for c in graphs {
        budget.check()?;
        let g = &c.graph;
        for_each_permutation(g.edge_count(), |order| {
            let mut ranks = ExplicitRanks::from_order(g, order).expect("permutation");
            let (_, rho, bad) = path_round_violations(g, &mut ranks, &mut session);
            sessions += g.vertex_count() as u64;
            for v in bad {
                failures.push(format!("{} order {order:?} vertex {v} rho {rho}", c.name));
            }
        });
    }
    Ok(outcome(
        "path-vs-rounds-exhaustive",
        &failures,
        format!("{sessions} sessions satisfy max_path <= 2 rho + 1"),
    ))
}

/// `max_path <= 2ρ + 1` on `trials` random graphs `G(n, d̄/(n-1))` with
/// `n` in `[10, 200]` and `d̄` alternating between 2 and 8.
pub fn path_rounds_random(trials: u64, seed: u64, budget: &Budget) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut worst_ratio = 0.0f64;
    let mut session = OracleSession::new();
    for i in 0..trials {
        budget.check()?;
        let mut rng = derived_rng(seed, Stream::Trial, i);
        let n = rng.random_range(10..=200usize);
        let dbar = if i % 2 == 0 { 2.0 } else { 8.0 };
        let g = gnp(n, dbar / (n - 1) as f64, derive(seed, Stream::Graph, i))?;
        let mut ranks = ExplicitRanks::new(&g, derive(seed, Stream::Ranks, i));
        let (worst, rho, bad) = path_round_violations(&g, &mut ranks, &mut session);
        worst_ratio = worst_ratio.max(worst as f64 / (2 * rho + 1).max(1) as f64);
        for v in bad {
            failures.push(format!(
                "trial {i} (n={n}, dbar={dbar}) vertex {v} rho {rho}"
            ));
        }
    }
    Ok(outcome(
        "path-vs-rounds-random",
        &failures,
        format!("{trials} graphs, largest max_path/(2 rho + 1) = {worst_ratio:.3}"),
    ))
}

/// Sequential and parallel greedy select identical edge sets: every
/// permutation of every connected graph with at most `max_edges` edges, then
/// `random` larger random instances.
pub fn sequential_parallel_agreement(
    max_edges: usize,
    random: u64,
    seed: u64,
    budget: &Budget,
) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut cases = 0u64;
    let agree = |g: &Graph, ranks: &ExplicitRanks<'_>| {
        let a: BTreeSet<_> = greedy_matching(g, ranks).edges.into_iter().collect();
        let b: BTreeSet<_> = parallel_rounds(g, ranks)
            .matching
            .edges
            .into_iter()
            .collect();
        a == b
    };
    for c in connected_graphs_up_to(max_edges)? {
        budget.check()?;
        let g = &c.graph;
        for_each_permutation(g.edge_count(), |order| {
            cases += 1;
            let ranks = ExplicitRanks::from_order(g, order).expect("permutation");
            if !agree(g, &ranks) {
                failures.push(format!("{} order {order:?}", c.name));
            }
        });
    }
    for i in 0..random {
        budget.check()?;
        cases += 1;
        let mut rng = derived_rng(seed, Stream::Trial, i);
        let n = rng.random_range(50..=400usize);
        let p = rng.random_range(1.0..12.0) / n as f64;
        let g = gnp(n, p, derive(seed, Stream::Graph, i))?;
        let ranks = ExplicitRanks::new(&g, derive(seed, Stream::Ranks, i));
        if !agree(&g, &ranks) {
            failures.push(format!("random instance {i} (n={n})"));
        }
    }
    Ok(outcome(
        "sequential-vs-parallel",
        &failures,
        format!("{cases} rankings give identical matchings"),
    ))
}

/// Exact maximum matching is at least `n d̄ / (4Δ)` on every graph.
pub fn vizing_check(graphs: &[CorpusGraph], budget: &Budget) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut tightest: Option<Ratio<u64>> = None;
    for c in graphs {
        budget.check()?;
        let g = &c.graph;
        let mu = Ratio::from_integer(exact_maximum_matching(g)? as u64);
        let floor = vizing_floor(&g.stats(), g.vertex_count());
        if mu < floor {
            failures.push(format!("{}: mu = {mu} < {floor}", c.name));
        } else if floor > Ratio::from_integer(0) {
            let slack = mu / floor;
            tightest = Some(tightest.map_or(slack, |t| t.min(slack)));
        }
    }
    let tight = tightest.map_or("-".to_string(), |t| {
        format!("{:.3}", *t.numer() as f64 / *t.denom() as f64)
    });
    Ok(outcome(
        "vizing-floor",
        &failures,
        format!("{} graphs, smallest mu / floor = {tight}", graphs.len()),
    ))
}

/// Vertex answers from lazily drawn ranks agree with an explicit replay of
/// the same ranks, on `count` small random graphs.
pub fn lazy_replay(count: u64, seed: u64, budget: &Budget) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut session = OracleSession::new();
    for i in 0..count {
        budget.check()?;
        let mut rng = derived_rng(seed, Stream::Trial, i);
        let n = rng.random_range(2..=20usize);
        let p = rng.random_range(0.1..0.7);
        let g = gnp(n, p, derive(seed, Stream::Graph, i))?;
        let mut lazy = LazyRanks::new(&g, derive(seed, Stream::Ranks, i));
        let answers: Vec<_> = (0..n)
            .map(|v| session.vertex_oracle_partner(&mut lazy, v))
            .collect();
        lazy.audit()?;
        lazy.reveal_all();
        let values = (0..g.edge_count())
            .map(|e| lazy.rank_of(e as u64))
            .collect::<Result<Vec<_>>>()?;
        let mut explicit = ExplicitRanks::from_values(&g, values)?;
        for (v, expect) in answers.into_iter().enumerate() {
            if session.vertex_oracle_partner(&mut explicit, v) != expect {
                failures.push(format!("graph {i} (n={n}) vertex {v}"));
            }
        }
    }
    Ok(outcome(
        "lazy-vs-explicit-replay",
        &failures,
        format!("{count} graphs agree vertex by vertex"),
    ))
}

/// Total variation distance between two distributions given as counts.
pub fn total_variation(a: &[u64], b: &[u64]) -> f64 {
    let (sa, sb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let len = a.len().max(b.len());
    let at = |x: &[u64], i: usize, s: f64| x.get(i).copied().unwrap_or(0) as f64 / s;
    (0..len)
        .map(|i| (at(a, i, sa) - at(b, i, sb)).abs())
        .sum::<f64>()
        / 2.0
}

/// Greedy matching size counts under `seeds` lazily drawn rankings.
pub fn lazy_size_counts(g: &Graph, seeds: u64, master: u64, exec: Execution) -> Vec<u64> {
    let sizes = map_indexed_init(
        exec,
        seeds,
        || (LazyRanks::new(g, 0), OracleSession::new()),
        |(ranks, session), i| {
            ranks.reset(derive(master, Stream::Trial, i));
            (0..g.vertex_count())
                .filter(|&v| session.vertex_oracle(ranks, v))
                .count()
                / 2
        },
    );
    let mut counts = vec![0u64; g.vertex_count() / 2 + 1];
    for s in sizes {
        counts[s] += 1;
    }
    counts
}

/// Greedy matching size counts over all `m!` orders.
pub fn exact_size_counts(g: &Graph) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; g.vertex_count() / 2 + 1];
    for rec in enumerate_permutation_behavior(g)? {
        counts[rec.matching.len()] += 1;
    }
    Ok(counts)
}

/// TV distance between lazy-mode Monte Carlo and exact enumeration of the
/// greedy matching size is below `tolerance` on every graph.
pub fn lazy_distribution(
    graphs: &[CorpusGraph],
    seeds: u64,
    tolerance: f64,
    master: u64,
    budget: &Budget,
) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for c in graphs {
        budget.check()?;
        let exact = exact_size_counts(&c.graph)?;
        let lazy = lazy_size_counts(&c.graph, seeds, master, Execution::Parallel);
        let tv = total_variation(&exact, &lazy);
        worst = worst.max(tv);
        if tv >= tolerance {
            failures.push(format!("{}: TV = {tv:.4}", c.name));
        }
    }
    Ok(outcome(
        "lazy-size-distribution",
        &failures,
        format!(
            "{} graphs x {seeds} seeds, largest TV = {worst:.4} < {tolerance}",
            graphs.len()
        ),
    ))
}

/// Result of a suite run cut short by the budget.
#[derive(Debug, Clone)]
pub struct Interrupted {
    pub completed: Vec<CheckOutcome>,
    pub during: String,
}

/// Runs a suite with the default workload, stopping at the first check that
/// runs out of budget.
pub fn run_suite(
    suite: Suite,
    budget: &Budget,
) -> std::result::Result<Vec<CheckOutcome>, Interrupted> {
    type Check = (&'static str, Box<dyn Fn(&Budget) -> Result<CheckOutcome>>);
    let corpus5 = || connected_graphs_up_to(5).expect("within corpus limit");
    let mut checks: Vec<Check> = Vec::new();
    let want = |s: Suite| suite == s || suite == Suite::All;
    if want(Suite::Oracle) {
        checks.push((
            "cache-bound",
            Box::new(|b| q_bound(&oracle_corpus(), 50, 1, b)),
        ));
        checks.push((
            "oracle-vs-greedy",
            Box::new(move |b| oracle_exhaustive(&oracle_corpus(), b)),
        ));
    }
    if want(Suite::Rounds) {
        checks.push((
            "path-vs-rounds-exhaustive",
            Box::new(move |b| path_rounds_exhaustive(&corpus5(), b)),
        ));
        checks.push((
            "path-vs-rounds-random",
            Box::new(|b| path_rounds_random(100, 1, b)),
        ));
        checks.push((
            "sequential-vs-parallel",
            Box::new(|b| sequential_parallel_agreement(6, 100, 1, b)),
        ));
    }
    if want(Suite::Vizing) {
        checks.push((
            "vizing-floor",
            Box::new(|b| {
                let mut graphs = connected_graphs_up_to(6)?;
                graphs.extend(fixture_graphs(7));
                vizing_check(&graphs, b)
            }),
        ));
    }
    if want(Suite::Lazy) {
        checks.push((
            "lazy-vs-explicit-replay",
            Box::new(|b| lazy_replay(50, 1, b)),
        ));
        checks.push((
            "lazy-size-distribution",
            Box::new(move |b| lazy_distribution(&corpus5(), 100_000, 0.02, 1, b)),
        ));
    }
    let mut completed = Vec::new();
    for (name, check) in checks {
        match guarded(name, || check(budget)) {
            Ok(o) => completed.push(o),
            Err(_) => {
                return Err(Interrupted {
                    completed,
                    during: name.to_string(),
                })
            }
        }
    }
    Ok(completed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let b = Budget::unlimited();
        let corpus = connected_graphs_up_to(4).unwrap();
        assert!(oracle_exhaustive(&corpus, &b).unwrap().passed);
        assert!(path_rounds_exhaustive(&corpus, &b).unwrap().passed);
        assert!(path_rounds_random(5, 3, &b).unwrap().passed);
        assert!(sequential_parallel_agreement(4, 5, 3, &b).unwrap().passed);
        assert!(vizing_check(&corpus, &b).unwrap().passed);
        assert!(lazy_replay(5, 3, &b).unwrap().passed);
    }

    #[test]
    fn tv_distance() {
        assert_eq!(total_variation(&[1, 1], &[2, 2]), 0.0);
        assert_eq!(total_variation(&[1, 0], &[0, 1]), 1.0);
        assert!((total_variation(&[3, 1], &[1, 1, 0]) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn panics_become_failures() {
        let o = guarded("boom", || panic!("bad path")).unwrap();
        assert!(!o.passed);
        assert!(o.detail.contains("bad path"));
    }

    #[test]
    fn expired_budget_interrupts() {
        let b = Budget::within(Duration::ZERO);
        std::thread::sleep(Duration::from_millis(2));
        let err = run_suite(Suite::Rounds, &b).unwrap_err();
        assert!(err.completed.is_empty());
        assert_eq!(err.during, "path-vs-rounds-exhaustive");
    }
}
