use std::io::Write;

use super::{graph_fields, header, Context, EstimateArgs, Failure, Mode, Model, GRAPH_COLUMNS};
use crate::estimate::{estimate, race_instances, EstimatorConfig, EstimatorKind, EstimatorRun};
use crate::reference::{exact_maximum_matching, exact_min_vertex_cover, EXACT_VERTEX_LIMIT};
use crate::seed::{derive, Stream};

const COLUMNS: [&str; 17] = [
    "model",
    "mode",
    "eps",
    "seed",
    "race",
    "winner",
    "samples",
    "hits",
    "mu_tilde",
    "nu_tilde",
    "exact_mu",
    "exact_nu",
    "degree_queries",
    "neighbor_queries",
    "pair_queries",
    "total_queries",
    "edge_oracle_calls",
];

pub(super) fn run(args: &EstimateArgs, ctx: Context, out: &mut dyn Write) -> Result<(), Failure> {
    let kind = match (args.model, args.mode) {
        (Model::List, Mode::Mult) => EstimatorKind::ListMultiplicative,
        (Model::List, Mode::Additive) => EstimatorKind::ListAdditive,
        (Model::Matrix, Mode::Additive) => EstimatorKind::MatrixAdditive,
        (Model::Matrix, Mode::Mult) => {
            return Err(Failure::Usage(
                "the matrix model has no multiplicative estimator; use --mode additive".into(),
            ))
        }
    };
    let source = args
        .input
        .source()
        .ok_or_else(|| Failure::Usage("one of --graph or --gen is required".into()))?;
    let g = source.load(args.seed)?;
    let config = EstimatorConfig {
        samples: args.samples,
        ..Default::default()
    };
    let instance_seed = |j: u64| derive(args.seed, Stream::Instance, j);

    let (winner, est) = if args.race == 1 {
        let est = estimate(kind, &g, args.eps, instance_seed(0), &config, ctx.exec)?;
        (0, est)
    } else {
        let race = race_instances(args.race as usize, args.quantum, |j| {
            EstimatorRun::new(kind, &g, args.eps, instance_seed(j as u64), &config)
        })?;
        (race.winner, race.estimate)
    };

    let (exact_mu, exact_nu) = if g.vertex_count() <= EXACT_VERTEX_LIMIT {
        (
            exact_maximum_matching(&g)?.to_string(),
            exact_min_vertex_cover(&g)?.to_string(),
        )
    } else {
        (String::new(), String::new())
    };

    let mut w = csv::Writer::from_writer(out);
    let columns: Vec<&str> = GRAPH_COLUMNS.iter().chain(&COLUMNS).copied().collect();
    w.write_record(header(&columns, ctx.timing))?;
    let mut row = graph_fields(&source.describe(), &g);
    row.extend([
        match args.model {
            Model::List => "list",
            Model::Matrix => "matrix",
        }
        .to_string(),
        match args.mode {
            Mode::Mult => "mult",
            Mode::Additive => "additive",
        }
        .to_string(),
        args.eps.to_string(),
        args.seed.to_string(),
        args.race.to_string(),
        winner.to_string(),
        est.samples.to_string(),
        est.hits.to_string(),
        est.mu_tilde.to_string(),
        est.nu_tilde.to_string(),
        exact_mu,
        exact_nu,
        est.cost.degree_queries.to_string(),
        est.cost.neighbor_queries.to_string(),
        est.cost.pair_queries.to_string(),
        est.cost.total().to_string(),
        est.edge_oracle_calls.to_string(),
    ]);
    if ctx.timing {
        row.push(format!("{:.3}", est.elapsed.as_secs_f64() * 1e3));
    }
    w.write_record(&row)?;
    w.flush()?;
    Ok(())
}
