//! Monte-Carlo symbol error rate over the TWDP channel.
//!
//! Each symbol sees an independent channel gain `h` (unit mean power), complex AWGN
//! with `N₀ = 1/γ₀`, and a unit-energy constellation. Coherent schemes are detected
//! after perfect-CSI equalisation `y/h` with per-axis nearest-level thresholds.
//! DPSK symbols are sent as independent (reference, data) pairs sharing one gain
//! and detected from `arg(y₁·conj(y₀))`.
//!
//! Symbols are simulated in batches on the rayon pool. Batch `b` draws from a
//! ChaCha8 stream keyed by `(seed, b)`, so results do not depend on the thread count.
//! Per symbol the draws are, in order: symbol index (DPSK: data then reference
//! index), the channel gain (two specular phases, two diffuse normals), then the
//! noise normals (in-phase, quadrature; DPSK: reference pair then data pair).

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::channel::{component_magnitudes, sample_gain_from, ComponentMagnitudes, TwdpParams};
use crate::error::{Error, Result};
use crate::scheme::{ModulationScheme, RqamConstants};

/// Simulation size, seed and parallel chunking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub num_symbols: u64,
    pub seed: u64,
    pub batch_size: u64,
    /// Replace the fading gain by `h ≡ 1` (pure AWGN), for calibration.
    pub ideal_channel: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            num_symbols: 100_000,
            seed: 0,
            batch_size: 8192,
            ideal_channel: false,
        }
    }
}

impl SimConfig {
    /// Smallest sample size accepted by [`run_ser`].
    pub const MIN_SYMBOLS: u64 = 1000;

    pub fn validate(&self) -> Result<()> {
        if self.num_symbols < Self::MIN_SYMBOLS {
            return Err(Error::Config(format!(
                "num_symbols must be >= {}, got {}",
                Self::MIN_SYMBOLS,
                self.num_symbols
            )));
        }
        if self.batch_size == 0 {
            return Err(Error::Config("batch_size must be >= 1".into()));
        }
        Ok(())
    }
}

/// Estimated symbol error rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEstimate {
    pub ser: f64,
    /// Binomial standard error `√(ser(1−ser)/n)`.
    pub std_err: f64,
    pub n_symbols: u64,
    pub n_errors: u64,
}

impl SimEstimate {
    pub fn from_counts(n_errors: u64, n_symbols: u64) -> Self {
        let ser = n_errors as f64 / n_symbols as f64;
        SimEstimate {
            ser,
            std_err: (ser * (1.0 - ser) / n_symbols as f64).sqrt(),
            n_symbols,
            n_errors,
        }
    }
}

/// How received samples are mapped back to symbol indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Detector {
    /// Nearest level per axis on levels `(2i−1−M)δ`; symbol index `i·M_Q + j`.
    PerAxis { m_i: u32, m_q: u32, delta_i: f64, delta_q: f64 },
    /// Nearest multiple of `2π/M` of the phase difference of consecutive samples.
    Differential { m: u32 },
}

/// Unit-average-energy constellation with its decision rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    pub points: Vec<Complex64>,
    pub detector: Detector,
}

impl Constellation {
    pub fn average_energy(&self) -> f64 {
        self.points.iter().map(|p| p.norm_sqr()).sum::<f64>() / self.points.len() as f64
    }

    /// Coherent decision on an equalised sample. `None` for differential schemes.
    pub fn detect(&self, z: Complex64) -> Option<usize> {
        match self.detector {
            Detector::PerAxis { m_i, m_q, delta_i, delta_q } => {
                let i = nearest_level(z.re / delta_i, m_i);
                let j = nearest_level(z.im / delta_q, m_q);
                Some(i * m_q as usize + j)
            }
            Detector::Differential { .. } => None,
        }
    }
}

/// Index `i − 1` of the level `2i−1−M` nearest to `v`, `i ∈ 1..=M`.
fn nearest_level(v: f64, m: u32) -> usize {
    let idx = ((v + (m as f64 - 1.0)) * 0.5).round();
    idx.clamp(0.0, m as f64 - 1.0) as usize
}

/// Builds the constellation of `scheme`. Rectangular schemes use levels
/// `(2i−1−M_I)δ_I` and `(2j−1−M_Q)δ_Q` with `δ_I = A_I/√2`, `δ_Q = βδ_I`;
/// DPSK uses the unit-circle `M`-PSK points.
pub fn build_constellation(scheme: &ModulationScheme) -> Result<Constellation> {
    scheme.validate()?;
    match scheme.rqam_shape() {
        Some((m_i, m_q, beta)) => {
            let c = RqamConstants::new(m_i, m_q, beta)?;
            let delta_i = c.amp_i / 2f64.sqrt();
            let delta_q = beta * delta_i;
            let level = |k: u32, m: u32, d: f64| (2.0 * k as f64 + 1.0 - m as f64) * d;
            let points = (0..m_i)
                .flat_map(|i| (0..m_q).map(move |j| Complex64::new(level(i, m_i, delta_i), level(j, m_q, delta_q))))
                .collect();
            Ok(Constellation {
                points,
                detector: Detector::PerAxis { m_i, m_q, delta_i, delta_q },
            })
        }
        None => {
            let m = scheme.order();
            let points = (0..m).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)).collect();
            Ok(Constellation {
                points,
                detector: Detector::Differential { m },
            })
        }
    }
}

/// Estimates the symbol error rate of `scheme` at average SNR `params.avg_snr`.
pub fn run_ser(params: &TwdpParams, scheme: &ModulationScheme, cfg: &SimConfig) -> Result<SimEstimate> {
    params.validate()?;
    cfg.validate()?;
    let con = build_constellation(scheme)?;
    let cm = component_magnitudes(params, 1.0)?;
    let noise_sd = (0.5 / params.avg_snr).sqrt();
    let n_batches = cfg.num_symbols.div_ceil(cfg.batch_size);
    let n_errors = (0..n_batches)
        .into_par_iter()
        .map(|b| {
            let len = cfg.batch_size.min(cfg.num_symbols - b * cfg.batch_size);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(b);
            let link = Link { cm: &cm, noise_sd, ideal: cfg.ideal_channel };
            (0..len).filter(|_| link.symbol_error(&con, &mut rng)).count() as u64
        })
        .sum();
    Ok(SimEstimate::from_counts(n_errors, cfg.num_symbols))
}

struct Link<'a> {
    cm: &'a ComponentMagnitudes,
    noise_sd: f64,
    ideal: bool,
}

impl Link<'_> {
    fn gain<R: Rng>(&self, rng: &mut R) -> Complex64 {
        if self.ideal {
            Complex64::new(1.0, 0.0)
        } else {
            sample_gain_from(self.cm, rng)
        }
    }

    fn noise<R: Rng>(&self, rng: &mut R) -> Complex64 {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * self.noise_sd
    }

    /// Transmits one symbol and reports whether it was detected in error.
    fn symbol_error<R: Rng>(&self, con: &Constellation, rng: &mut R) -> bool {
        let m = con.points.len();
        match con.detector {
            Detector::PerAxis { .. } => {
                let k = rng.random_range(0..m);
                let h = self.gain(rng);
                let y = h * con.points[k] + self.noise(rng);
                con.detect(y / h) != Some(k)
            }
            Detector::Differential { m: order } => {
                let d = rng.random_range(0..m);
                let r = rng.random_range(0..m);
                let h = self.gain(rng);
                let y0 = h * con.points[r] + self.noise(rng);
                let y1 = h * con.points[(r + d) % m] + self.noise(rng);
                let step = 2.0 * PI / order as f64;
                let turns = ((y1 * y0.conj()).arg() / step).round() as i64;
                turns.rem_euclid(order as i64) as usize != d
            }
        }
    }
}
