mod commands;
mod config;
mod polyparse;
mod report;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use commands::CliError;
use config::{Cli, Command, RunConfig};

/// Reads a bare `RunConfig` or a JSON report carrying one under `config`.
fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    let text = std::fs::read_to_string(path).map_err(io)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
    let value = match value.get("config") {
        Some(inner) => inner.clone(),
        None => value,
    };
    serde_json::from_value(value).map_err(|e| CliError::Config(e.to_string()))
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let config = match &cli.command {
        Command::Task(task) => RunConfig { format: cli.format, command: task.clone() },
        Command::Replay { path } => load_config(path)?,
    };
    let report = commands::run(&config.command)?;
    let text = report::render(&config, &report);
    // a closed stdout (e.g. `| head`) is not an error of the run
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if let Some(path) = &cli.plot {
        report::emit_plotdata(&config, &report, path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
