//! Error probability versus average SNR.

use rayon::prelude::*;
use twdp::{
    asep_asymptotic, asep_exact, asep_quadrature, db_to_linear, run_ser, ModulationScheme, QuadConfig, SeriesConfig,
    SimConfig, TwdpParams,
};

use crate::args::{Mode, SweepArgs};
use crate::error::CliError;
use crate::output::Table;

/// Quadrature tolerance used for the `oracle` column.
pub const ORACLE_QUAD: QuadConfig = QuadConfig {
    abs_tol: 0.0,
    rel_tol: 1e-11,
    max_depth: 50,
};

/// A fully resolved sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub scheme: ModulationScheme,
    pub k_factor: f64,
    pub gamma_ratio: f64,
    /// `Δ` as given on the command line, when `Γ` was derived from it.
    pub delta: Option<f64>,
    pub snr_db: Vec<f64>,
    pub modes: Vec<Mode>,
    pub seed: u64,
    pub symbols: u64,
    pub verbose: bool,
}

impl SweepSpec {
    pub fn from_args(a: &SweepArgs) -> Result<Self, CliError> {
        let scheme = a.scheme()?;
        let (k_factor, gamma_ratio, delta) = a.channel.resolve()?;
        TwdpParams::new(k_factor, gamma_ratio, 1.0)?;
        let mut modes = Vec::new();
        for &m in &a.mode {
            if !modes.contains(&m) {
                modes.push(m);
            }
        }
        let spec = SweepSpec {
            scheme,
            k_factor,
            gamma_ratio,
            delta,
            snr_db: a.snr.points(),
            modes,
            seed: a.seed,
            symbols: a.symbols,
            verbose: a.verbose,
        };
        if spec.modes.contains(&Mode::Sim) {
            spec.sim_config(0).validate()?;
        }
        Ok(spec)
    }

    fn sim_config(&self, point: usize) -> SimConfig {
        SimConfig {
            num_symbols: self.symbols,
            seed: self.seed.wrapping_add(point as u64),
            ..SimConfig::default()
        }
    }

    fn columns(&self) -> Vec<String> {
        let mut cols = vec!["snr_db".to_string()];
        for &m in &self.modes {
            cols.push(m.name().to_string());
            if m == Mode::Sim {
                cols.push("sim_stderr".to_string());
            }
        }
        cols
    }
}

/// The finished table and the number of cells that could not be evaluated.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub table: Table,
    pub failures: usize,
}

struct Point {
    row: Vec<f64>,
    notes: Vec<String>,
    failures: usize,
}

fn eval_point(spec: &SweepSpec, index: usize, snr_db: f64) -> Point {
    let params = TwdpParams {
        k_factor: spec.k_factor,
        gamma_ratio: spec.gamma_ratio,
        avg_snr: db_to_linear(snr_db),
    };
    let mut p = Point {
        row: vec![snr_db],
        notes: Vec::new(),
        failures: 0,
    };
    let fail = |p: &mut Point, mode: Mode, e: twdp::Error| {
        p.notes.push(format!("snr_db={snr_db} {}: failed: {e}", mode.name()));
        p.failures += 1;
    };
    for &mode in &spec.modes {
        match mode {
            Mode::Exact => match asep_exact(&params, &spec.scheme, &SeriesConfig::default()) {
                Ok(r) => {
                    p.row.push(r.value);
                    if spec.verbose {
                        p.notes.push(format!(
                            "snr_db={snr_db} exact: terms_used={} trunc_err_est={:e} round_err_est={:e}",
                            r.terms_used, r.trunc_err_est, r.round_err_est
                        ));
                    }
                }
                Err(e) => {
                    p.row.push(f64::NAN);
                    fail(&mut p, mode, e);
                }
            },
            Mode::Asym => match asep_asymptotic(&params, &spec.scheme) {
                Ok(v) => p.row.push(v),
                Err(e) => {
                    p.row.push(f64::NAN);
                    fail(&mut p, mode, e);
                }
            },
            Mode::Oracle => match asep_quadrature(&params, &spec.scheme, &ORACLE_QUAD) {
                Ok(v) => p.row.push(v),
                Err(e) => {
                    p.row.push(f64::NAN);
                    fail(&mut p, mode, e);
                }
            },
            Mode::Sim => match run_ser(&params, &spec.scheme, &spec.sim_config(index)) {
                Ok(est) => {
                    p.row.push(est.ser);
                    p.row.push(est.std_err);
                    if spec.verbose {
                        p.notes.push(format!(
                            "snr_db={snr_db} sim: symbols={} errors={}",
                            est.n_symbols, est.n_errors
                        ));
                    }
                }
                Err(e) => {
                    p.row.push(f64::NAN);
                    p.row.push(f64::NAN);
                    fail(&mut p, mode, e);
                }
            },
        }
    }
    p
}

/// Evaluates every requested column at every SNR point; points run in parallel
/// and rows keep the input order. Failed cells hold NaN and are explained in
/// the footer.
pub fn run_sweep(spec: &SweepSpec) -> SweepOutcome {
    let points: Vec<Point> = spec
        .snr_db
        .par_iter()
        .enumerate()
        .map(|(i, &db)| eval_point(spec, i, db))
        .collect();

    let mut table = Table::new(spec.columns());
    table.header.push(format!("modulation: {}", spec.scheme));
    table.header.push(format!("K={} Gamma={}", spec.k_factor, spec.gamma_ratio));
    if let Some(d) = spec.delta {
        table.header.push(format!("Gamma resolved from Delta={d}"));
    }
    if spec.modes.contains(&Mode::Sim) {
        table.header.push(format!(
            "simulation: {} symbols per point, seed {} + point index",
            spec.symbols, spec.seed
        ));
    }
    let mut failures = 0;
    for p in points {
        table.rows.push(p.row);
        table.footer.extend(p.notes);
        failures += p.failures;
    }
    SweepOutcome { table, failures }
}
