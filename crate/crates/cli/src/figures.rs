//! Data sets for the standard comparison plots, one CSV per curve family.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use twdp::ModulationScheme;

use crate::args::{FiguresArgs, Mode};
use crate::error::CliError;
use crate::output::{Format, Table};
use crate::sweep::{run_sweep, SweepSpec};

const SEED: u64 = 2024;

fn snr_grid(stop: f64, step: f64) -> Vec<f64> {
    let n = (stop / step).round() as usize;
    (0..=n).map(|i| i as f64 * step).collect()
}

struct Curve {
    file: String,
    spec: SweepSpec,
}

fn curve(file: String, scheme: ModulationScheme, k: f64, gamma: f64, modes: &[Mode], symbols: u64) -> Curve {
    Curve {
        file,
        spec: SweepSpec {
            scheme,
            k_factor: k,
            gamma_ratio: gamma,
            delta: None,
            snr_db: snr_grid(40.0, 5.0),
            modes: modes.to_vec(),
            seed: SEED,
            symbols,
            verbose: false,
        },
    }
}

fn curves(symbols: u64) -> Vec<Curve> {
    use ModulationScheme::*;
    let es = [Mode::Exact, Mode::Sim];
    let rqam = Rqam { m_i: 4, m_q: 2, beta: 1.0 };
    let mut out = Vec::new();

    for g in [0.0, 0.25, 0.5, 1.0] {
        out.push(curve(format!("fig1a_rqam4x2_K10_G{g}.csv"), rqam, 10.0, g, &es, symbols));
    }
    for (tag, g) in [("fig1b", 0.5), ("fig1c", 1.0)] {
        for k in [0.0, 1.0, 3.0, 10.0] {
            out.push(curve(format!("{tag}_rqam4x2_G{g}_K{k}.csv"), rqam, k, g, &es, symbols));
        }
    }
    for m in [4, 16, 64] {
        out.push(curve(format!("fig2_sqam{m}.csv"), Sqam { m }, 10.0, 0.5, &es, symbols));
        out.push(curve(format!("fig2_ask{m}.csv"), Ask { m }, 10.0, 0.5, &es, symbols));
        out.push(curve(format!("fig2_dpsk{m}.csv"), Dpsk { m }, 10.0, 0.5, &es, symbols));
    }
    for (mi, mq) in [(2, 2), (8, 2), (16, 4)] {
        let s = Rqam { m_i: mi, m_q: mq, beta: 1.0 };
        out.push(curve(format!("fig2_rqam{mi}x{mq}.csv"), s, 10.0, 0.5, &es, symbols));
    }
    for g in [0.5, 1.0] {
        for beta in [0.5, 1.0, 2.0] {
            let s = Rqam { m_i: 4, m_q: 2, beta };
            out.push(curve(format!("fig3_rqam4x2_K10_G{g}_beta{beta}.csv"), s, 10.0, g, &es, symbols));
        }
    }
    let ea = [Mode::Exact, Mode::Asym];
    for (name, s) in [("sqam16", Sqam { m: 16 }), ("rqam4x2", rqam), ("dpsk8", Dpsk { m: 8 })] {
        for g in [0.0, 1.0] {
            let mut c = curve(format!("fig5_{name}_K3_G{g}.csv"), s, 3.0, g, &ea, symbols);
            c.spec.snr_db = snr_grid(60.0, 5.0);
            out.push(c);
        }
    }
    out
}

/// Writes every curve into `dir`, creating it if needed; returns the file names.
/// Cells that cannot be evaluated are written as NaN and counted as failures.
pub fn write_figures(args: &FiguresArgs) -> Result<(Vec<String>, usize), CliError> {
    let dir: &Path = &args.output_dir;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut names = Vec::new();
    let mut failures = 0;
    for c in curves(args.symbols) {
        if c.spec.modes.contains(&Mode::Sim) {
            twdp::SimConfig {
                num_symbols: args.symbols,
                ..Default::default()
            }
            .validate()?;
        }
        let out = run_sweep(&c.spec);
        failures += out.failures;
        let path = dir.join(&c.file);
        let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
        write_table(&out.table, BufWriter::new(file)).map_err(|e| CliError::io(&path, e))?;
        names.push(c.file);
    }
    Ok((names, failures))
}

fn write_table(t: &Table, mut w: impl std::io::Write) -> std::io::Result<()> {
    t.write(Format::Csv, &mut w)?;
    w.flush()
}
