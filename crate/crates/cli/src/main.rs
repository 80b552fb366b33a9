mod args;
mod commands;

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;
use swlie_core::curvature::Conventions;
use swlie_core::{Error, Result};

use args::{Cli, Command, Output};
use commands::{Body, Outcome, ScanArgs};

const USAGE_ERROR: u8 = 2;

fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Validate { file, .. } => commands::validate(file),
        Command::Curvature { source, output } => commands::curvature(source, output.strict),
        Command::Sw { source, output } => commands::sw(source, output.strict),
        Command::Predicate {
            source,
            which,
            vector,
            output,
        } => commands::predicate(source, *which, vector.as_deref(), output.strict),
        Command::System {
            source,
            predicate,
            compare,
            seed,
            output,
        } => commands::system(source, predicate, compare.is_some(), *seed, output.strict),
        Command::Table { id, .. } => commands::table(*id),
        Command::Audit { .. } => commands::audit(),
        Command::Scan {
            source,
            bounds,
            grid,
            samples,
            seed,
            predicate,
            eps_zero,
            eps_nonzero,
            absolute,
            locus_tol,
            csv,
            ..
        } => commands::scan(
            source,
            &ScanArgs {
                bounds,
                grid: *grid,
                samples: *samples,
                seed: *seed,
                predicate: *predicate,
                eps_zero: *eps_zero,
                eps_nonzero: *eps_nonzero,
                absolute: *absolute,
                locus_tol: *locus_tol,
                csv: *csv,
            },
        ),
    }
}

fn output_of(command: &Command) -> &Output {
    match command {
        Command::Validate { output, .. }
        | Command::Curvature { output, .. }
        | Command::Sw { output, .. }
        | Command::Predicate { output, .. }
        | Command::System { output, .. }
        | Command::Table { output, .. }
        | Command::Audit { output, .. }
        | Command::Scan { output, .. } => output,
    }
}

fn name_of(command: &Command) -> &'static str {
    match command {
        Command::Validate { .. } => "validate",
        Command::Curvature { .. } => "curvature",
        Command::Sw { .. } => "sw",
        Command::Predicate { .. } => "predicate",
        Command::System { .. } => "system",
        Command::Table { .. } => "table",
        Command::Audit { .. } => "audit",
        Command::Scan { .. } => "scan",
    }
}

fn render(command: &Command, outcome: Outcome, elapsed_ms: Option<u128>) -> String {
    match outcome.body {
        Body::Text(text) => text,
        Body::Json(payload) => {
            let mut report = json!({
                "tool": "swlie",
                "version": swlie_core::VERSION,
                "conventions": Conventions::PINNED.tag(),
                "command": name_of(command),
                "input": outcome.input,
                "status": outcome.status.code(),
                "payload": payload,
            });
            if let Some(ms) = elapsed_ms {
                report["timing_ms"] = json!(ms);
            }
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            text
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let output = output_of(&cli.command);
    let status = outcome.status;
    let elapsed = output.timing.then(|| start.elapsed().as_millis());
    let text = render(&cli.command, outcome, elapsed);
    match &output.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: {}", Error::Input(format!("cannot write {}: {e}", path.display())));
                return ExitCode::from(USAGE_ERROR);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(status.code() as u8)
}
