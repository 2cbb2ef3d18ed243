//! Command-line harness for the GHZ block erasure code: encoding tables,
//! single erasure scenarios, exhaustive sweeps and circuit export, with JSON
//! or CSV reports.

pub mod circuit;
pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod spec;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use config::{Cli, RunConfig};
pub use error::{exit, HarnessError};
pub use run::{run, write_outcome, Outcome};

/// Parses `args`, runs, writes the output and returns the exit status.
/// Diagnostics go to `diag`; help and version text go to stdout.
pub fn main_with_args<I, T>(args: I, diag: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(diag, "{}", e.render());
            return exit::USAGE;
        }
        Err(e) => {
            let _ = e.print();
            return exit::PASS;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| {
        let outcome = run(&config)?;
        write_outcome(&outcome, &config)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            if let Outcome::Report(r) = &outcome {
                let s = &r.summary;
                let _ = writeln!(
                    diag,
                    "{} cases, min fidelity {:.15}, mean {:.15}: {}",
                    s.cases,
                    s.min_fidelity,
                    s.mean_fidelity,
                    if s.pass { "pass" } else { "FAIL" }
                );
            }
            if outcome.passed() {
                exit::PASS
            } else {
                exit::FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(diag, "error: {e}");
            e.exit_code()
        }
    }
}
