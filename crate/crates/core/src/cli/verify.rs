use std::io::Write;
use std::time::Duration;

use super::{Failure, SuiteArg, VerifyArgs};
use crate::verify::{run_suite, Budget, Suite};

pub(super) fn run(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let suite = match args.suite {
        SuiteArg::Oracle => Suite::Oracle,
        SuiteArg::Rounds => Suite::Rounds,
        SuiteArg::Vizing => Suite::Vizing,
        SuiteArg::Lazy => Suite::Lazy,
        SuiteArg::All => Suite::All,
    };
    let budget = match args.budget {
        None => Budget::unlimited(),
        Some(s) if s.is_finite() && s >= 0.0 => Budget::within(Duration::from_secs_f64(s)),
        Some(s) => return Err(Failure::Usage(format!("budget {s} is not a duration"))),
    };
    match run_suite(suite, &budget) {
        Ok(outcomes) => {
            for o in &outcomes {
                writeln!(out, "{o}")?;
            }
            if outcomes.iter().all(|o| o.passed) {
                Ok(())
            } else {
                Err(Failure::ChecksFailed)
            }
        }
        Err(stopped) => {
            for o in &stopped.completed {
                writeln!(out, "{o}")?;
            }
            writeln!(
                out,
                "BUDGET {}: time budget exhausted after {} completed check(s)",
                stopped.during,
                stopped.completed.len()
            )?;
            Err(Failure::BudgetExceeded)
        }
    }
}
