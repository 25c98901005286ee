use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cubenet_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &output.body),
        None => std::io::stdout().lock().write_all(output.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::FAILURE;
    }
    for note in &output.notes {
        eprintln!("{note}");
    }
    ExitCode::SUCCESS
}
