//! `zonal` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a computation or output write fails,
//! 2 when the command line or configuration is invalid.

mod commands;
mod config;

use clap::Parser;
use std::io::Write;
use std::process::ExitCode;

use config::{resolve, threads_from_env, Cli, CommandKind};

const EXIT_COMPUTE: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let (kind, flags) = cli.command.parts();
    let cfg = match resolve(kind, flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("zonal: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match threads_from_env() {
        Ok(Some(t)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
                eprintln!("zonal: thread pool: {e}");
                return ExitCode::from(EXIT_COMPUTE);
            }
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("zonal: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }

    let result = match kind {
        CommandKind::Eval => commands::eval(&cfg),
        CommandKind::Compare => commands::compare(&cfg),
        CommandKind::Oracle => commands::oracle(&cfg),
        CommandKind::Scaling => commands::scaling(&cfg),
        CommandKind::Bench => commands::bench(&cfg),
    };
    let text = match result {
        Ok(t) => t,
        Err(e) => {
            eprintln!("zonal: {e}");
            return ExitCode::from(EXIT_COMPUTE);
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("zonal: writing output: {e}");
        return ExitCode::from(EXIT_COMPUTE);
    }
    ExitCode::SUCCESS
}
