//! Command-line harness: single evaluations, sweeps with certificates, and
//! the proof-step grid.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::io::Write;

use args::{Cli, Command};
use commands::Sink;
pub use error::{CliError, Exit};

/// Runs a parsed command line, writing reports to `stdout` (unless `--out`
/// is given) and diagnostics to `stderr`.
pub fn run(cli: &Cli, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> Exit {
    let go = |stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)| -> Result<Exit, CliError> {
        let mut sink = Sink {
            out: cli.global.out.clone(),
            stdout,
        };
        match &cli.command {
            Command::Moment(a) => commands::cmd_moment(a, &cli.global, &mut sink),
            Command::Bound(a) => commands::cmd_bound(a, &cli.global, &mut sink),
            Command::Verify(a) => commands::cmd_verify(a, &cli.global, &mut sink, stderr),
            Command::ProofSteps(a) => commands::cmd_proof_steps(a, &cli.global, &mut sink, stderr),
        }
    };
    let result = match cli.global.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| go(stdout, stderr)),
            Err(e) => Err(CliError::Usage(format!("cannot start {t} threads: {e}"))),
        },
        None => go(stdout, stderr),
    };
    match result {
        Ok(exit) => exit,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit()
        }
    }
}
