use std::io::Write;
use std::time::Instant;

use super::{
    graph_fields, header, BenchQueriesArgs, BenchRoundsArgs, Context, Failure, GraphInput,
    GRAPH_COLUMNS,
};
use crate::experiment::{normalized_ratio, query_trials, round_trials, summarize};
use crate::graph::{gnp, Graph};
use crate::seed::{derive, Stream};

/// A benchmark input: descriptor, graph, and the seed its trials draw from.
struct Workload {
    name: String,
    graph: Graph,
    trial_seed: u64,
}

/// Either the one graph named on the command line, or `G(n, d̄/(n-1))` for
/// each requested average degree.
fn workloads(
    input: &GraphInput,
    n: usize,
    dbar: &[f64],
    seed: u64,
) -> Result<Vec<Workload>, Failure> {
    if let Some(source) = input.source() {
        return Ok(vec![Workload {
            name: source.describe(),
            graph: source.load(seed)?,
            trial_seed: derive(seed, Stream::Trial, 0),
        }]);
    }
    dbar.iter()
        .enumerate()
        .map(|(i, &d)| {
            if d.is_nan() || d < 0.0 {
                return Err(Failure::Usage(format!("average degree {d} is negative")));
            }
            let p = if n > 1 { d / (n - 1) as f64 } else { 0.0 };
            if p > 1.0 {
                return Err(Failure::Usage(format!(
                    "average degree {d} needs more than {n} vertices"
                )));
            }
            Ok(Workload {
                name: format!("gnp:{n}:{p}"),
                graph: gnp(n, p, derive(seed, Stream::Graph, i as u64))?,
                trial_seed: derive(seed, Stream::Trial, i as u64),
            })
        })
        .collect()
}

fn elapsed_ms(start: Instant) -> String {
    format!("{:.3}", start.elapsed().as_secs_f64() * 1e3)
}

pub(super) fn queries(
    args: &BenchQueriesArgs,
    ctx: Context,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let loads = workloads(&args.input, args.n, &args.dbar, args.seed)?;
    let mut w = csv::Writer::from_writer(out);
    let columns: &[&str] = if args.per_trial {
        &[
            "seed",
            "trial",
            "vertex",
            "matched",
            "t",
            "max_path",
            "degree_queries",
            "neighbor_queries",
            "total_queries",
        ]
    } else {
        &[
            "seed",
            "trials",
            "mean_t",
            "p50_t",
            "p99_t",
            "max_t",
            "p99_max_path",
            "max_max_path",
            "matched_fraction",
            "mean_queries",
            "ratio",
        ]
    };
    let all: Vec<&str> = GRAPH_COLUMNS.iter().chain(columns).copied().collect();
    w.write_record(header(&all, ctx.timing))?;

    for load in &loads {
        let start = Instant::now();
        let trials = query_trials(&load.graph, args.trials, load.trial_seed, ctx.exec);
        let took = elapsed_ms(start);
        let base = graph_fields(&load.name, &load.graph);
        let mut emit = |fields: Vec<String>| -> Result<(), Failure> {
            let mut row = base.clone();
            row.extend(fields);
            if ctx.timing {
                row.push(took.clone());
            }
            w.write_record(&row)?;
            Ok(())
        };
        if args.per_trial {
            for t in &trials {
                emit(vec![
                    args.seed.to_string(),
                    t.trial.to_string(),
                    t.vertex.to_string(),
                    t.matched.to_string(),
                    t.t.to_string(),
                    t.max_path.to_string(),
                    t.queries.degree_queries.to_string(),
                    t.queries.neighbor_queries.to_string(),
                    t.queries.total().to_string(),
                ])?;
            }
        } else {
            let t = summarize(trials.iter().map(|t| t.t));
            let path = summarize(trials.iter().map(|t| t.max_path as u64));
            let q = summarize(trials.iter().map(|t| t.queries.total()));
            let matched = trials.iter().filter(|t| t.matched).count();
            let fraction = if trials.is_empty() {
                0.0
            } else {
                matched as f64 / trials.len() as f64
            };
            let avg = load.graph.stats().avg_degree_f64();
            emit(vec![
                args.seed.to_string(),
                trials.len().to_string(),
                t.mean.to_string(),
                t.p50.to_string(),
                t.p99.to_string(),
                t.max.to_string(),
                path.p99.to_string(),
                path.max.to_string(),
                fraction.to_string(),
                q.mean.to_string(),
                normalized_ratio(t.mean, avg, load.graph.vertex_count()).to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub(super) fn rounds(
    args: &BenchRoundsArgs,
    ctx: Context,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let loads = workloads(&args.input, args.n, &args.dbar, args.seed)?;
    let mut w = csv::Writer::from_writer(out);
    let all: Vec<&str> = GRAPH_COLUMNS
        .iter()
        .chain(&[
            "seed",
            "trial",
            "rho",
            "matching_size",
            "max_path",
            "path_within_rounds",
        ])
        .copied()
        .collect();
    w.write_record(header(&all, ctx.timing))?;
    for load in &loads {
        let start = Instant::now();
        let trials = round_trials(
            &load.graph,
            args.trials,
            load.trial_seed,
            !args.no_paths,
            ctx.exec,
        );
        let took = elapsed_ms(start);
        let base = graph_fields(&load.name, &load.graph);
        for r in &trials {
            let mut row = base.clone();
            row.extend([
                args.seed.to_string(),
                r.trial.to_string(),
                r.rho.to_string(),
                r.matching_size.to_string(),
                r.max_path.map(|p| p.to_string()).unwrap_or_default(),
                r.max_path
                    .map(|p| (p / 2 <= r.rho).to_string())
                    .unwrap_or_default(),
            ]);
            if ctx.timing {
                row.push(took.clone());
            }
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}
