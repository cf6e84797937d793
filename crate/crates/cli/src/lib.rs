//! Command-line front end: SNR sweeps, envelope densities and figure data.

pub mod args;
pub mod error;
pub mod figures;
pub mod output;
pub mod pdf;
pub mod sweep;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use args::{Cli, Command, OutputArgs};
use error::CliError;
use output::Table;

fn emit(table: &Table, out: &OutputArgs) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut w = BufWriter::new(file);
            table.write(out.format, &mut w).and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
        }
        None => {
            let mut w = io::stdout().lock();
            table.write(out.format, &mut w).and_then(|_| w.flush()).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

/// Executes a parsed command. Output is written before any numerical failure
/// is reported, so partially evaluated tables are never lost.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(a) => {
            let spec = sweep::SweepSpec::from_args(&a)?;
            let outcome = sweep::run_sweep(&spec);
            emit(&outcome.table, &a.out)?;
            if outcome.failures > 0 {
                return Err(CliError::Numerical(format!("{} cell(s) could not be evaluated", outcome.failures)));
            }
            Ok(())
        }
        Command::Pdf(a) => emit(&pdf::pdf_table(&a)?, &a.out),
        Command::Figures(a) => {
            let (names, failures) = figures::write_figures(&a)?;
            eprintln!("wrote {} files to {}", names.len(), a.output_dir.display());
            if failures > 0 {
                return Err(CliError::Numerical(format!("{failures} cell(s) could not be evaluated")));
            }
            Ok(())
        }
    }
}
