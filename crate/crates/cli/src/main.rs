mod args;
mod batch;
mod commands;
mod dot;
mod error;
mod input;

use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use args::{Cli, Command};
use error::CliError;

fn print(value: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", text.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Batch { manifest, jobs } => batch::run_batch(manifest, *jobs),
        other => commands::execute(other).map(|v| (v, true)),
    };
    match outcome {
        Ok((value, ok)) => {
            print(&value, cli.pretty);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(&e, cli.pretty),
    }
}

fn fail(e: &CliError, pretty: bool) -> ExitCode {
    eprintln!("szf: {e}");
    print(&e.to_json(), pretty);
    ExitCode::from(e.exit_code())
}
