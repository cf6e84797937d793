//! TWDP fading channel: parameterisation, envelope PDF, SNR moment generating
//! function and complex-gain sampling.
//!
//! The received gain is `V₁e^{jΦ₁} + V₂e^{jΦ₂} + n`, with `Φ₁, Φ₂` independent
//! uniform phases and `n` circularly symmetric complex Gaussian of variance `2σ²`.
//! The model is described by `K = (V₁²+V₂²)/(2σ²)`, `Γ = V₂/V₁ ∈ [0, 1]` and the
//! average SNR `γ₀`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};
use crate::series::{SeriesConfig, SeriesSum};
use crate::specfun::{bessel_i_scaled, bessel_i_scaled_seq, gauss_2f1_poly};

/// Relative rounding error below which an alternating series is trusted as is.
const ROUNDING: f64 = 4.0 * f64::EPSILON;

/// Channel triple `(K, Γ, γ₀)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwdpParams {
    pub k_factor: f64,
    pub gamma_ratio: f64,
    pub avg_snr: f64,
}

impl TwdpParams {
    /// Validated constructor; `avg_snr` is linear.
    pub fn new(k_factor: f64, gamma_ratio: f64, avg_snr: f64) -> Result<Self> {
        let p = TwdpParams {
            k_factor,
            gamma_ratio,
            avg_snr,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k_factor >= 0.0 && self.k_factor.is_finite()) {
            return Err(Error::domain("TwdpParams", format!("K must be finite and >= 0, got {}", self.k_factor)));
        }
        if !(0.0..=1.0).contains(&self.gamma_ratio) {
            return Err(Error::domain("TwdpParams", format!("Γ must lie in [0, 1], got {}", self.gamma_ratio)));
        }
        if !(self.avg_snr > 0.0 && self.avg_snr.is_finite()) {
            return Err(Error::domain("TwdpParams", format!("average SNR must be finite and > 0, got {}", self.avg_snr)));
        }
        Ok(())
    }

    /// Same channel at a different average SNR.
    pub fn with_snr(&self, avg_snr: f64) -> Self {
        TwdpParams { avg_snr, ..*self }
    }

    /// Legacy parameter `Δ = 2Γ/(1+Γ²)`.
    pub fn delta(&self) -> f64 {
        delta_from_gamma_unchecked(self.gamma_ratio)
    }

    /// `(K/(1+Γ²))`, the weight of the specular index in the series expansions.
    pub(crate) fn specular_weight(&self) -> f64 {
        self.k_factor / (1.0 + self.gamma_ratio * self.gamma_ratio)
    }
}

/// Specular amplitudes and diffuse standard deviation for a given total power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentMagnitudes {
    pub v1: f64,
    pub v2: f64,
    /// Per-dimension standard deviation of the diffuse component.
    pub sigma: f64,
}

/// Splits the total power `omega` into `V₁`, `V₂` and `σ`:
/// `2σ² = Ω/(1+K)`, `V₁² = 2σ²K/(1+Γ²)`, `V₂ = ΓV₁`.
pub fn component_magnitudes(params: &TwdpParams, omega: f64) -> Result<ComponentMagnitudes> {
    params.validate()?;
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain("component_magnitudes", format!("Ω must be finite and > 0, got {omega}")));
    }
    let two_sigma2 = omega / (1.0 + params.k_factor);
    let v1 = (two_sigma2 * params.specular_weight()).sqrt();
    Ok(ComponentMagnitudes {
        v1,
        v2: params.gamma_ratio * v1,
        sigma: (0.5 * two_sigma2).sqrt(),
    })
}

fn delta_from_gamma_unchecked(g: f64) -> f64 {
    2.0 * g / (1.0 + g * g)
}

/// `Δ = 2Γ/(1+Γ²)` for `Γ ∈ [0, 1]`.
pub fn delta_from_gamma(gamma_ratio: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&gamma_ratio) {
        return Err(Error::domain("delta_from_gamma", format!("Γ must lie in [0, 1], got {gamma_ratio}")));
    }
    Ok(delta_from_gamma_unchecked(gamma_ratio))
}

/// Inverse of [`delta_from_gamma`] on `[0, 1]`: `Γ = (1 − √(1−Δ²))/Δ`, with `Δ = 0 → 0`.
pub fn gamma_from_delta(delta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::domain("gamma_from_delta", format!("Δ must lie in [0, 1], got {delta}")));
    }
    if delta == 0.0 {
        return Ok(0.0);
    }
    // (1 − √(1−Δ²))/Δ = Δ/(1 + √(1−Δ²)), the latter free of cancellation.
    Ok(delta / (1.0 + ((1.0 - delta) * (1.0 + delta)).sqrt()))
}

/// Envelope density `f_R(r)` of the TWDP channel with total power `omega`.
///
/// Evaluates the Bessel-product series
/// `f_R(r) = (r/σ²) e^{−r²/(2σ²) − K} Σ_m ε_m (−1)^m I_m(rV₁/σ²) I_m(rV₂/σ²) I_m(V₁V₂/σ²)`
/// with exponentially scaled Bessel functions. The series alternates, and for
/// strong, nearly equal specular components its terms exceed the sum by many
/// orders of magnitude. When the observed cancellation would spoil `cfg.rel_tol`
/// the same quantity is computed from its phase-integral form
/// `(1/π)∫₀^π (r/σ²) e^{−(r−ρ)²/(2σ²)} Ĩ₀(rρ/σ²) dφ`, `ρ = |V₁ − V₂e^{jφ}|`,
/// where `Ĩ₀` is the scaled Bessel function; that integrand is positive.
pub fn envelope_pdf(params: &TwdpParams, omega: f64, r: f64, cfg: &SeriesConfig) -> Result<f64> {
    cfg.validate()?;
    let cm = component_magnitudes(params, omega)?;
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::domain("envelope_pdf", format!("r must be finite and >= 0, got {r}")));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let s2 = cm.sigma * cm.sigma;
    let (a, b, c) = (r * cm.v1 / s2, r * cm.v2 / s2, cm.v1 * cm.v2 / s2);

    // Exponent of the scaled product: −r²/(2σ²) − K + a + b + c = −(r−V₁−V₂)²/(2σ²) + 2c.
    let d = r - cm.v1 - cm.v2;
    let log_pre = (r / s2).ln() - d * d / (2.0 * s2) + 2.0 * c;

    let top = a.max(b).max(c);
    let nmax = ((top + 30.0 + 10.0 * top.sqrt()).ceil() as usize).min(cfg.max_terms_m);
    let ia = bessel_i_scaled_seq(nmax as u32, a)?;
    let ib = bessel_i_scaled_seq(nmax as u32, b)?;
    let ic = bessel_i_scaled_seq(nmax as u32, c)?;
    let mut acc = SeriesSum::new(cfg.rel_tol);
    let mut converged = false;
    for m in 0..=nmax {
        let eps = if m == 0 { 1.0 } else { 2.0 };
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * eps * ia[m] * ib[m] * ic[m];
        if acc.push(term) || (m > 0 && ia[m] * ib[m] * ic[m] == 0.0) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            what: "envelope PDF series",
            partial: log_pre.exp() * acc.value(),
            terms: acc.terms(),
        });
    }
    if acc.cancellation() * ROUNDING <= 0.1 * cfg.rel_tol {
        return Ok((log_pre.exp() * acc.value()).max(0.0));
    }
    envelope_pdf_phase_integral(&cm, r, cfg)
}

fn envelope_pdf_phase_integral(cm: &ComponentMagnitudes, r: f64, cfg: &SeriesConfig) -> Result<f64> {
    let s2 = cm.sigma * cm.sigma;
    let integrand = |phi: f64| {
        let rho = (cm.v1 * cm.v1 + cm.v2 * cm.v2 - 2.0 * cm.v1 * cm.v2 * phi.cos()).max(0.0).sqrt();
        let d = r - rho;
        let i0 = bessel_i_scaled(0, r * rho / s2).unwrap_or(0.0);
        (r / s2) * (-d * d / (2.0 * s2)).exp() * i0
    };
    let qcfg = QuadConfig {
        abs_tol: 0.0,
        rel_tol: 0.1 * cfg.rel_tol,
        max_depth: 50,
    };
    Ok(integrate(integrand, 0.0, PI, &qcfg)?.value / PI)
}

/// Moment generating function `E[e^{sγ}]` of the instantaneous SNR, `s·γ₀ < 1+K`.
///
/// Evaluates the specular-index series
/// `(1+K)/(1+K−sγ₀) Σ_m (1/m!) (K/(1+Γ²))^m x^m ₂F₁(−m,−m;1;Γ²)`, `x = sγ₀/(1+K−sγ₀)`.
/// For `s < 0` the terms alternate with a cancellation of roughly `e^{2K|x|}`; when
/// that would exceed the rounding budget of `cfg.rel_tol`, the sum is taken from
/// its generating function `e^{Kx} I₀(ΔKx)`, to which the series is identical.
pub fn snr_mgf(params: &TwdpParams, s: f64, cfg: &SeriesConfig) -> Result<f64> {
    params.validate()?;
    cfg.validate()?;
    let k = params.k_factor;
    let g0 = params.avg_snr;
    if !s.is_finite() || !(s * g0 < 1.0 + k) {
        return Err(Error::domain("snr_mgf", format!("requires s·γ₀ < 1 + K, got s = {s}")));
    }
    let den = 1.0 + k - s * g0;
    let lead = (1.0 + k) / den;
    let x = s * g0 / den;
    if k == 0.0 || x == 0.0 {
        return Ok(lead);
    }
    let predicted_cancellation = if x < 0.0 { (-2.0 * k * x).exp() } else { 1.0 };
    if predicted_cancellation * ROUNDING > 0.1 * cfg.rel_tol {
        return Ok(lead * mgf_generating_function(params, x));
    }

    let g2 = params.gamma_ratio * params.gamma_ratio;
    let kx = params.specular_weight() * x;
    let mut acc = SeriesSum::new(cfg.rel_tol);
    let mut weight = 1.0; // (Kx/(1+Γ²))^m / m!
    for m in 0..cfg.max_terms_m as u32 {
        if m > 0 {
            weight *= kx / m as f64;
        }
        let term = weight * gauss_2f1_poly(m, g2)?;
        if acc.push(term) {
            return Ok(lead * acc.value());
        }
    }
    Err(Error::Convergence {
        what: "SNR MGF series",
        partial: lead * acc.value(),
        terms: acc.terms(),
    })
}

/// `e^{Kx} I₀(ΔK|x|)`, evaluated without overflow.
fn mgf_generating_function(params: &TwdpParams, x: f64) -> f64 {
    let k = params.k_factor;
    let arg = params.delta() * k * x.abs();
    let i0 = bessel_i_scaled(0, arg).expect("nonnegative finite argument");
    (k * x + arg).exp() * i0
}

/// Draws one complex channel gain for total power `omega`.
///
/// Random numbers are consumed in a fixed order: `Φ₁`, `Φ₂` (uniform), then the
/// in-phase and quadrature diffuse components (standard normal).
pub fn sample_gain<R: Rng + ?Sized>(params: &TwdpParams, omega: f64, rng: &mut R) -> Result<Complex64> {
    Ok(sample_gain_from(&component_magnitudes(params, omega)?, rng))
}

/// [`sample_gain`] with the component magnitudes already resolved.
pub fn sample_gain_from<R: Rng + ?Sized>(cm: &ComponentMagnitudes, rng: &mut R) -> Complex64 {
    let phi1 = 2.0 * PI * rng.random::<f64>();
    let phi2 = 2.0 * PI * rng.random::<f64>();
    let ni: f64 = rng.sample(StandardNormal);
    let nq: f64 = rng.sample(StandardNormal);
    Complex64::from_polar(cm.v1, phi1) + Complex64::from_polar(cm.v2, phi2) + Complex64::new(cm.sigma * ni, cm.sigma * nq)
}
