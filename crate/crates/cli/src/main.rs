mod args;
mod commands;
mod corpus;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::{Cli, Command, Format};
use report::{CommandReport, Outcome, Res, Status};

fn dispatch(command: &Command) -> Res<Outcome> {
    match command {
        Command::Biquandle(c) => commands::biquandle(c),
        Command::Bracket(c) => commands::bracket(c),
        Command::Cocycle(c) => commands::cocycle(c),
        Command::Analyze(c) => commands::analyze(c),
        Command::Diagram(c) => commands::diagram(c),
        Command::Invariant(c) => commands::invariant(c),
        Command::Search(c) => corpus::search(c),
        Command::Fixtures(c) => corpus::fixtures_cmd(c),
        Command::VerifyAll { dir } => corpus::verify_all(dir),
    }
}

fn emit(format: Format, command: String, outcome: Outcome, wall_time_ms: f64) -> ExitCode {
    let status = outcome.status;
    match format {
        Format::Json => {
            let report = CommandReport {
                command,
                status,
                payload: outcome.payload,
                wall_time_ms,
            };
            // A closed pipe (e.g. `| head`) is not worth a panic.
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report).expect("serializable"));
            let _ = writeln!(std::io::stderr(), "{status}: {}", outcome.summary);
        }
        Format::Text => {
            let _ = writeln!(std::io::stdout(), "{status}: {}", outcome.summary);
        }
    }
    ExitCode::from(status.exit_code())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let text = rendered.trim().trim_start_matches("error: ");
            let wants_text = std::env::args().any(|a| a == "text" || a == "--format=text");
            let outcome = Outcome {
                status: Status::Error,
                payload: json!({ "error": text }),
                summary: text.to_string(),
            };
            let format = if wants_text { Format::Text } else { Format::Json };
            return emit(format, "bqlab".into(), outcome, start.elapsed().as_secs_f64() * 1e3);
        }
    };
    let outcome = dispatch(&cli.command).unwrap_or_else(|e| e.into_outcome());
    emit(cli.format, cli.command.name(), outcome, start.elapsed().as_secs_f64() * 1e3)
}
