//! Racing independent estimator instances to turn an expected query bound
//! into a high-probability one.

use super::{Estimate, EstimatorRun};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RaceOutcome {
    /// Index of the cheapest instance among those completing in the
    /// earliest round.
    pub winner: usize,
    pub estimate: Estimate,
    /// Queries each instance had spent when the race ended.
    pub spent: Vec<u64>,
}

/// Builds `count` instances with `factory(j)` and advances them round-robin
/// until one completes. After round `r` every instance may have spent
/// `r * quantum` queries in total.
///
/// Instances yield only between samples, so a turn may overshoot its
/// allowance by one sample; the overshoot is taken out of the next turn
/// rather than accumulating. When several instances complete in the same
/// round, the one that spent the fewest queries wins, ties going to the
/// lower index. Scheduling is fully deterministic.
pub fn race_instances<'g, F>(count: usize, quantum: u64, mut factory: F) -> Result<RaceOutcome>
where
    F: FnMut(usize) -> Result<EstimatorRun<'g>>,
{
    if count == 0 {
        return Err(Error::InvalidArgument(
            "race needs at least one instance".into(),
        ));
    }
    if quantum == 0 {
        return Err(Error::InvalidArgument(
            "race quantum must be positive".into(),
        ));
    }
    let mut runs = (0..count).map(&mut factory).collect::<Result<Vec<_>>>()?;
    let mut allowance = 0u64;
    loop {
        allowance = allowance.saturating_add(quantum);
        let mut best: Option<(u64, usize)> = None;
        for (j, run) in runs.iter_mut().enumerate() {
            let budget = allowance.saturating_sub(run.spent());
            if run.step(budget) && best.is_none_or(|(cost, _)| run.spent() < cost) {
                best = Some((run.spent(), j));
            }
        }
        if let Some((_, j)) = best {
            return Ok(RaceOutcome {
                winner: j,
                estimate: runs[j].finish(),
                spent: runs.iter().map(EstimatorRun::spent).collect(),
            });
        }
    }
}
