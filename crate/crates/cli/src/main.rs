mod args;
mod commands;
mod input;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Command, OutputFormat};
use commands::Report;

const EXIT_INVALID: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_IO: u8 = 3;

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Validate { input, spindle } => commands::validate(input, *spindle),
        Command::Homology { input, variant, degrees, budget } => commands::homology_cmd(input, variant, degrees, budget),
        Command::ClosedForm { input, form, degrees } => commands::closed_form_cmd(input, *form, degrees),
        Command::Crosscheck { input, sweep, degrees } => commands::crosscheck(input, *sweep, degrees),
        Command::Identities { input, degrees } => commands::identities(input, degrees),
        Command::Conjectures { input, all_of_size, nmax } => commands::conjectures(input, *all_of_size, *nmax),
        Command::Enumerate { size, up_to_iso, shelves } => commands::enumerate(*size, *up_to_iso, *shelves),
        Command::Acyclicity { input, witness, nmax } => commands::acyclicity(input, witness.as_deref(), *nmax),
        Command::ExportMatrix { input, variant, degree, budget } => {
            commands::export_matrix(input, variant, *degree, budget)
        }
    }
}

fn render(cli: &Cli, report: &Report) -> String {
    match cli.format {
        OutputFormat::Table => report.text.clone(),
        OutputFormat::Json => {
            let mut envelope = json!({ "config": cli, "result": report.json, "exit_code": report.code });
            if let Some(input) = &report.input {
                envelope["input"] = input.clone();
            }
            let mut out = String::new();
            for line in report.lines.iter().flatten() {
                out.push_str(&serde_json::to_string(line).expect("serializable"));
                out.push('\n');
            }
            out.push_str(&serde_json::to_string(&envelope).expect("serializable"));
            out.push('\n');
            out
        }
    }
}

/// Writes through a sibling temporary file so readers never see a partial report.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.chain().any(|e| e.downcast_ref::<std::io::Error>().is_some()) {
        return EXIT_IO;
    }
    match err.chain().find_map(|e| e.downcast_ref::<spindle_homology::Error>()) {
        Some(e) if e.is_resource() => EXIT_RESOURCE,
        Some(spindle_homology::Error::Parse(_)) => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_IO) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = render(&cli, &report);
            let written = match &cli.output {
                Some(path) => write_atomically(path, &text),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_IO);
            }
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
