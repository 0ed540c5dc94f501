//! Trial loops behind the benchmark commands: per-vertex query complexity
//! and round complexity versus query-path length.

use rand::Rng;

use crate::graph::{AccessCounter, Graph, Vertex};
use crate::oracle::OracleSession;
use crate::par::{map_indexed_init, Execution};
use crate::rank::{ExplicitRanks, LazyRanks};
use crate::reference::parallel_rounds;
use crate::seed::{derive, derived_rng, Stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryTrial {
    pub trial: u64,
    pub vertex: Vertex,
    pub matched: bool,
    /// Edge-oracle invocations, cache hits included.
    pub t: u64,
    pub max_path: usize,
    pub queries: AccessCounter,
}

/// One vertex-oracle session per trial on a uniformly random vertex, each
/// with fresh lazily drawn ranks. An empty vertex set yields no trials.
pub fn query_trials(g: &Graph, trials: u64, seed: u64, exec: Execution) -> Vec<QueryTrial> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    map_indexed_init(
        exec,
        trials,
        || (LazyRanks::new(g, 0), OracleSession::new()),
        |(ranks, session), i| {
            let vertex = derived_rng(seed, Stream::Sample, i).random_range(0..n);
            ranks.reset(derive(seed, Stream::Ranks, i));
            let matched = session.vertex_oracle(ranks, vertex);
            QueryTrial {
                trial: i,
                vertex,
                matched,
                t: session.t(),
                max_path: session.max_path(),
                queries: session.queries(),
            }
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub p50: u64,
    pub p99: u64,
    pub max: u64,
}

/// Nearest-rank percentile of sorted data, `q` in `(0, 1]`.
fn percentile(sorted: &[u64], q: f64) -> u64 {
    let rank = (q * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1]
}

/// Mean, median, 99th percentile and maximum; all zero for no data.
pub fn summarize(values: impl IntoIterator<Item = u64>) -> Summary {
    let mut v: Vec<u64> = values.into_iter().collect();
    if v.is_empty() {
        return Summary {
            mean: 0.0,
            p50: 0,
            p99: 0,
            max: 0,
        };
    }
    v.sort_unstable();
    Summary {
        mean: v.iter().sum::<u64>() as f64 / v.len() as f64,
        p50: percentile(&v, 0.5),
        p99: percentile(&v, 0.99),
        max: *v.last().expect("non-empty"),
    }
}

/// `mean_t / (d̄ ln n)`; zero when the denominator is zero.
pub fn normalized_ratio(mean_t: f64, avg_degree: f64, n: usize) -> f64 {
    let denom = avg_degree * (n.max(1) as f64).ln();
    if denom > 0.0 {
        mean_t / denom
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundTrial {
    pub trial: u64,
    pub rho: usize,
    pub matching_size: usize,
    /// Deepest query path over sessions rooted at every vertex, if measured.
    pub max_path: Option<usize>,
}

/// Round complexity of parallel greedy under `trials` independent rankings,
/// optionally with the longest query path over all vertex sessions.
pub fn round_trials(
    g: &Graph,
    trials: u64,
    seed: u64,
    measure_paths: bool,
    exec: Execution,
) -> Vec<RoundTrial> {
    map_indexed_init(exec, trials, OracleSession::new, |session, i| {
        let mut ranks = ExplicitRanks::new(g, derive(seed, Stream::Ranks, i));
        let profile = parallel_rounds(g, &ranks);
        let max_path = measure_paths.then(|| {
            (0..g.vertex_count())
                .map(|v| {
                    session.vertex_oracle(&mut ranks, v);
                    session.max_path()
                })
                .max()
                .unwrap_or(0)
        });
        RoundTrial {
            trial: i,
            rho: profile.rho,
            matching_size: profile.matching.len(),
            max_path,
        }
    })
}
