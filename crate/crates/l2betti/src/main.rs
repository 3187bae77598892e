use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use l2betti::cli::Cli;
use l2betti::{run, CliError};

fn execute(cli: Cli) -> Result<u8, CliError> {
    let config = cli.into_config()?;
    let outcome = run(&config)?;
    let mut buf = Vec::new();
    outcome.output.write(config.format, &mut buf)?;
    match &config.out {
        Some(path) => BufWriter::new(File::create(path)?).write_all(&buf)?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
