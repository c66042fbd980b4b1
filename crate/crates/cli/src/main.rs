mod args;
mod output;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use run::Failure;

const THREADS_VAR: &str = "SPECTRA_BOUNDS_THREADS";

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize =
        value.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
            Failure::Input(format!("{THREADS_VAR} must be a positive integer, got {value:?}"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Bound(a) => Ok(output::render_rows(&run::bound(a)?, a.format)),
        Command::Sweep(a) => Ok(output::render_sweep(&run::sweep(a)?, a.format)),
        Command::Verify(a) => {
            let report = run::verify(a)?;
            let text = output::render_verify(&report, a.format);
            if report.violations.is_empty() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Numeric(format!(
                    "{} bound violation(s)",
                    report.violations.len()
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
