mod args;
mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use output::{Metadata, Table};

/// Directory for output files when `--output` is not given.
const OUTPUT_DIR_ENV: &str = "BHBOUNDS_OUTPUT_DIR";

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn destination(cli: &Cli) -> Option<PathBuf> {
    if let Some(path) = &cli.output {
        return Some(path.clone());
    }
    let dir = std::env::var_os(OUTPUT_DIR_ENV).filter(|d| !d.is_empty())?;
    Some(PathBuf::from(dir).join(format!("{}.{}", cli.command.slug(), cli.format.extension())))
}

fn emit(cli: &Cli, table: &Table) -> Result<(), Box<dyn std::error::Error + Send + Sync>> {
    let meta = Metadata { seed: cli.seed, version: env!("CARGO_PKG_VERSION"), config: cli };
    let mut sink: Box<dyn Write> = match destination(cli) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            Box::new(BufWriter::new(File::create(path)?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match cli.format {
        Format::Csv => output::write_csv(table, &meta, &mut sink)?,
        Format::Json => output::write_json(table, &meta, &mut sink)?,
    }
    sink.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let table = match commands::dispatch(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(e) = emit(&cli, &table) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if table.failures > 0 {
        eprintln!("{} check(s) failed", table.failures);
        ExitCode::from(EXIT_FAILED_CHECK)
    } else {
        ExitCode::SUCCESS
    }
}
