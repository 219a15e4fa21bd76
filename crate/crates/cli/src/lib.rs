//! Front end for the `falconer` binary: argument parsing, config files,
//! point-set ingestion and JSON/CSV reports.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};
use error::{exit, CliError, CliResult};
use output::{to_json_text, write_report, Report};

/// Parses `argv` (program name first), expanding `run CONFIG` into the
/// equivalent flags with any trailing flags taking precedence.
pub fn parse(argv: Vec<OsString>) -> Result<Cli, clap::Error> {
    Cli::try_parse_from(argv)
}

fn expand_run(cli: Cli) -> CliResult<Cli> {
    let Command::Run(run) = &cli.command else {
        return Ok(cli);
    };
    let cfg = config::read_config(&run.config)?;
    let mut argv: Vec<String> = vec!["falconer".into()];
    if let Some(out) = &cli.out {
        argv.push("--out".into());
        argv.push(out.display().to_string());
    }
    argv.extend(cfg.to_args());
    argv.extend(run.overrides.iter().cloned());
    Cli::try_parse_from(&argv).map_err(|e| {
        let first = e.to_string();
        let first = first.lines().next().unwrap_or_default().trim_start_matches("error: ");
        CliError::bad_input(format!("{}: {first}", run.config.display()))
    })
}

/// Runs a parsed command and returns the report without writing files.
pub fn execute(cli: Cli) -> CliResult<(Cli, Report)> {
    let cli = expand_run(cli)?;
    let report = commands::dispatch(&cli.command)?;
    Ok((cli, report))
}

/// Full binary behavior; returns the process exit code.
pub fn main_with(argv: Vec<OsString>) -> i32 {
    let cli = match parse(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return exit::OK;
            }
            let msg = e.to_string();
            let msg = msg.lines().next().unwrap_or_default().trim_start_matches("error: ");
            eprintln!("{}", CliError::Usage(msg.to_string()).record());
            return exit::USAGE;
        }
    };
    match execute(cli).and_then(|(cli, report)| finish(&cli, &report)) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("{}", e.record());
            e.code()
        }
    }
}

fn finish(cli: &Cli, report: &Report) -> CliResult<()> {
    for w in &report.warnings {
        eprintln!("{}", serde_json::json!({"warning": w}));
    }
    if let Some(dir) = &cli.out {
        write_report(report, dir)?;
    }
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(to_json_text(&report.payload).as_bytes())
        .map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e))
}
