//! Command-line flags.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twdp::channel::gamma_from_delta;
use twdp::ModulationScheme;

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "twdp", version, about = "Symbol error probabilities over TWDP fading channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Error probability versus average SNR for one modulation and channel.
    Sweep(SweepArgs),
    /// Envelope probability density on a grid of amplitudes.
    Pdf(PdfArgs),
    /// Write the data sets behind the standard comparison plots.
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeKind {
    Rqam,
    Sqam,
    Ask,
    Qpsk,
    Bpsk,
    Dpsk,
}

/// How each table column is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Mode {
    /// Exact series.
    Exact,
    /// High-SNR closed form.
    Asym,
    /// Monte-Carlo simulation.
    Sim,
    /// Quadrature of the MGF integral.
    Oracle,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Asym => "asym",
            Mode::Sim => "sim",
            Mode::Oracle => "oracle",
        }
    }
}

/// Channel parameters; `--delta` is the legacy parameterisation converted to `Γ`.
#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    /// Ratio of specular to diffuse power K.
    #[arg(long)]
    pub k: f64,
    /// Ratio of the specular magnitudes Γ = V₂/V₁ in [0, 1].
    #[arg(long, conflicts_with = "delta")]
    pub gamma: Option<f64>,
    /// Legacy parameter Δ = 2V₁V₂/(V₁²+V₂²) in [0, 1], converted to Γ.
    #[arg(long)]
    pub delta: Option<f64>,
}

impl ChannelArgs {
    /// `(K, Γ, Δ given on the command line)`.
    pub fn resolve(&self) -> Result<(f64, f64, Option<f64>), CliError> {
        match (self.gamma, self.delta) {
            (_, Some(d)) => Ok((self.k, gamma_from_delta(d)?, Some(d))),
            (Some(g), None) => Ok((self.k, g, None)),
            (None, None) => Ok((self.k, 0.0, None)),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// SNR grid `start:step:stop` in dB, both ends inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrRange {
    pub start: f64,
    pub step: f64,
    pub stop: f64,
}

impl SnrRange {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for SnrRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, step, stop] = parts[..] else {
            return Err(format!("expected start:step:stop in dB, got '{s}'"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number '{t}': {e}"));
        let r = SnrRange {
            start: num(start)?,
            step: num(step)?,
            stop: num(stop)?,
        };
        if ![r.start, r.step, r.stop].iter().all(|v| v.is_finite()) {
            return Err("SNR bounds must be finite".into());
        }
        if !(r.step > 0.0) {
            return Err(format!("SNR step must be > 0, got {}", r.step));
        }
        if r.start > r.stop {
            return Err(format!("SNR start {} exceeds stop {}", r.start, r.stop));
        }
        if (r.stop - r.start) / r.step > 1e6 {
            return Err("SNR grid has more than a million points".into());
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Modulation scheme.
    #[arg(long = "mod", value_enum)]
    pub modulation: SchemeKind,
    /// Modulation order (SQAM, ASK, DPSK).
    #[arg(long)]
    pub m: Option<u32>,
    /// In-phase levels (RQAM).
    #[arg(long)]
    pub mi: Option<u32>,
    /// Quadrature levels (RQAM).
    #[arg(long)]
    pub mq: Option<u32>,
    /// Quadrature/in-phase decision-distance ratio (RQAM).
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Average SNR grid in dB as start:step:stop.
    #[arg(long)]
    pub snr: SnrRange,
    /// Comma-separated columns to compute.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub mode: Vec<Mode>,
    /// Simulation seed; SNR point i uses seed + i.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Simulated symbols per SNR point.
    #[arg(long, default_value_t = 100_000)]
    pub symbols: u64,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Add series diagnostics as comment lines.
    #[arg(long)]
    pub verbose: bool,
}

impl SweepArgs {
    pub fn scheme(&self) -> Result<ModulationScheme, CliError> {
        let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--mod {:?} requires {flag}", self.modulation).to_lowercase()));
        let s = match self.modulation {
            SchemeKind::Rqam => ModulationScheme::Rqam {
                m_i: need(self.mi, "--mi")?,
                m_q: need(self.mq, "--mq")?,
                beta: self.beta,
            },
            SchemeKind::Sqam => ModulationScheme::Sqam { m: need(self.m, "--m")? },
            SchemeKind::Ask => ModulationScheme::Ask { m: need(self.m, "--m")? },
            SchemeKind::Dpsk => ModulationScheme::Dpsk { m: need(self.m, "--m")? },
            SchemeKind::Qpsk => ModulationScheme::Qpsk,
            SchemeKind::Bpsk => ModulationScheme::Bpsk,
        };
        s.validate()?;
        Ok(s)
    }
}

#[derive(Debug, Clone, Args)]
pub struct PdfArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Mean power E[R²].
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Largest amplitude on the grid.
    #[arg(long, default_value_t = 4.0)]
    pub r_max: f64,
    /// Number of equally spaced grid points on [0, r_max].
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FiguresArgs {
    /// Directory receiving one CSV file per curve family.
    #[arg(long)]
    pub output_dir: PathBuf,
    /// Simulated symbols per SNR point.
    #[arg(long, default_value_t = 100_000)]
    pub symbols: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snr_ranges() {
        let r: SnrRange = "0:5:40".parse().unwrap();
        assert_eq!(r.points().len(), 9);
        assert_eq!(r.points()[8], 40.0);
        let r: SnrRange = "10:10:10".parse().unwrap();
        assert_eq!(r.points(), vec![10.0]);
        let r: SnrRange = "0:0.1:1".parse().unwrap();
        assert_eq!(r.points().len(), 11);
        assert!("0:5".parse::<SnrRange>().is_err());
        assert!("10:1:0".parse::<SnrRange>().is_err());
        assert!("0:0:10".parse::<SnrRange>().is_err());
        assert!("0:x:10".parse::<SnrRange>().is_err());
    }

    #[test]
    fn parses_sweep_flags() {
        let cli = Cli::try_parse_from([
            "twdp", "sweep", "--mod", "rqam", "--mi", "4", "--mq", "2", "--k", "10", "--gamma", "1", "--snr", "0:5:40", "--mode",
            "exact,sim",
        ])
        .unwrap();
        let Command::Sweep(a) = cli.command else { panic!("not a sweep") };
        assert_eq!(a.mode, vec![Mode::Exact, Mode::Sim]);
        assert_eq!(a.scheme().unwrap(), ModulationScheme::Rqam { m_i: 4, m_q: 2, beta: 1.0 });
        assert!(Cli::try_parse_from(["twdp", "sweep", "--mod", "bpsk", "--k", "1", "--gamma", "0", "--delta", "0", "--snr", "0:1:1", "--mode", "exact"]).is_err());
    }

    #[test]
    fn missing_order_is_usage_error() {
        let cli = Cli::try_parse_from(["twdp", "sweep", "--mod", "sqam", "--k", "1", "--snr", "0:1:1", "--mode", "exact"]).unwrap();
        let Command::Sweep(a) = cli.command else { panic!("not a sweep") };
        assert!(matches!(a.scheme(), Err(CliError::Usage(_))));
    }

    #[test]
    fn delta_converts_to_gamma() {
        let c = ChannelArgs { k: 3.0, gamma: None, delta: Some(0.8) };
        let (_, g, d) = c.resolve().unwrap();
        assert!((2.0 * g / (1.0 + g * g) - 0.8).abs() < 1e-12);
        assert_eq!(d, Some(0.8));
    }
}
