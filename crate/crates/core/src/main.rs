use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sublinear_match::cli::{run, Cli, Failure};
use sublinear_match::par::configure_threads;

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(&cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) | Failure::Run(msg) => eprintln!("error: {msg}"),
                Failure::ChecksFailed => eprintln!("error: some checks failed"),
                Failure::BudgetExceeded => eprintln!("error: verification budget exceeded"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
