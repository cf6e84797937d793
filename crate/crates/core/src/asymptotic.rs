//! High-SNR closed forms of the average symbol error probability.
//!
//! For `γ₀ → ∞` the SNR moment generating function behaves as
//! `𝓜(−A²/(2sin²θ)) ≈ 2(1+K)E sin²θ/(A²γ₀)` with the channel factor
//! `E = e^{−K} I₀(2ΓK/(1+Γ²))`, evaluated here as a fused, exponentially scaled
//! product so it stays finite for large `K`.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::channel::TwdpParams;
use crate::error::Result;
use crate::scheme::{ModulationScheme, RqamConstants};
use crate::specfun::bessel_i_scaled;

/// `e^{−K} I₀(ΔK)`, `Δ = 2Γ/(1+Γ²)`, without forming `e^{K}`.
pub fn channel_factor(params: &TwdpParams) -> Result<f64> {
    params.validate()?;
    let k = params.k_factor;
    let arg = params.delta() * k;
    Ok((arg - k).exp() * bessel_i_scaled(0, arg)?)
}

fn prefactor(params: &TwdpParams) -> Result<f64> {
    Ok((1.0 + params.k_factor) * channel_factor(params)? / params.avg_snr)
}

/// `M_I × M_Q` rectangular QAM, derived from the high-SNR limit of the MGF integrals:
///
/// `((1+K)E/γ₀)·[p/(M_Q A_I²) + q/A_Q² + (2pq/π)·φ·(1/A_I² − 1/A_Q²) + (2pq/π)/(A_I A_Q)]`
///
/// with `p = (M_I−1)/M_I`, `q = (M_Q−1)/M_Q` and `φ = atan(A_Q/A_I)`.
pub fn asym_rqam(params: &TwdpParams, m_i: u32, m_q: u32, beta: f64) -> Result<f64> {
    let c = RqamConstants::new(m_i, m_q, beta)?;
    let (p, q) = (c.p(), c.q());
    let (ai2, aq2) = (c.amp_i * c.amp_i, c.amp_q * c.amp_q);
    let phi = (c.amp_q / c.amp_i).atan();
    let bracket = p / (m_q as f64 * ai2) + q / aq2 + FRAC_2_PI * p * q * (phi * (1.0 / ai2 - 1.0 / aq2) + 1.0 / (c.amp_i * c.amp_q));
    Ok(prefactor(params)? * bracket)
}

/// Square `M`-QAM: `(1 + π(1+√M)/(2(√M−1)))·(2(√M−1)²(M−1)/(3M))·(K+1)E/(πγ₀)`.
pub fn asym_sqam(params: &TwdpParams, m: u32) -> Result<f64> {
    ModulationScheme::Sqam { m }.validate()?;
    let r = (m.isqrt()) as f64;
    let mf = m as f64;
    let shape = (1.0 + PI * (1.0 + r) / (2.0 * (r - 1.0))) * 2.0 * (r - 1.0) * (r - 1.0) * (mf - 1.0) / (3.0 * mf);
    Ok(shape * prefactor(params)? / PI)
}

/// `M`-ary ASK: `(K+1)(M−1)(M²−1)/(6γ₀M)·E`.
pub fn asym_ask(params: &TwdpParams, m: u32) -> Result<f64> {
    ModulationScheme::Ask { m }.validate()?;
    let mf = m as f64;
    Ok((mf - 1.0) * (mf * mf - 1.0) / (6.0 * mf) * prefactor(params)?)
}

/// QPSK: `(3 + 2/π)(K+1)/(4γ₀)·E`.
pub fn asym_qpsk(params: &TwdpParams) -> Result<f64> {
    Ok((3.0 + FRAC_2_PI) / 4.0 * prefactor(params)?)
}

/// BPSK: `(K+1)/(4γ₀)·E`.
pub fn asym_bpsk(params: &TwdpParams) -> Result<f64> {
    Ok(0.25 * prefactor(params)?)
}

/// `M`-ary DPSK:
///
/// `(1 − 1/M + cos(π/M)sin(π/M)/π)·(1−Ā)·e^{−KĀ}·I₀(ΔKĀ)`,
/// `Ā = γ₀sin²(π/M)/(1+K+γ₀sin²(π/M))`.
///
/// The leading factor is `(1/π)∫₀^{π−π/M}(1 + cos(π/M)cosθ)dθ`, the high-SNR limit
/// of the DPSK MGF integral. [`asym_dpsk_reduced`] keeps only its first part.
pub fn asym_dpsk(params: &TwdpParams, m: u32) -> Result<f64> {
    ModulationScheme::Dpsk { m }.validate()?;
    let (s, c) = (PI / m as f64).sin_cos();
    Ok((1.0 - 1.0 / m as f64 + c * s / PI) * dpsk_channel_part(params, m)?)
}

/// The DPSK closed form with the leading factor truncated to `(M−1)/M`:
/// `(1/M)(K+1)(M−1)/(K+1+γ₀sin²(π/M))·e^{−KĀ}·I₀(ΔKĀ)`.
///
/// Exact for `M = 2`; for `M > 2` it underestimates the high-SNR error probability
/// by the factor `(1−1/M)/(1−1/M+cos(π/M)sin(π/M)/π)` (about 11% at `M = 8`).
pub fn asym_dpsk_reduced(params: &TwdpParams, m: u32) -> Result<f64> {
    ModulationScheme::Dpsk { m }.validate()?;
    Ok((1.0 - 1.0 / m as f64) * dpsk_channel_part(params, m)?)
}

/// `(1−Ā)·e^{−KĀ}·I₀(ΔKĀ)`.
fn dpsk_channel_part(params: &TwdpParams, m: u32) -> Result<f64> {
    params.validate()?;
    let s = (PI / m as f64).sin();
    let k1 = 1.0 + params.k_factor;
    let g = params.avg_snr * s * s;
    let abar = g / (k1 + g);
    let ka = params.k_factor * abar;
    let arg = params.delta() * ka;
    Ok(k1 / (k1 + g) * (arg - ka).exp() * bessel_i_scaled(0, arg)?)
}

/// High-SNR approximation for any supported scheme.
pub fn asep_asymptotic(params: &TwdpParams, scheme: &ModulationScheme) -> Result<f64> {
    scheme.validate()?;
    params.validate()?;
    match *scheme {
        ModulationScheme::Rqam { m_i, m_q, beta } => asym_rqam(params, m_i, m_q, beta),
        ModulationScheme::Sqam { m } => asym_sqam(params, m),
        ModulationScheme::Ask { m } => asym_ask(params, m),
        ModulationScheme::Qpsk => asym_qpsk(params),
        ModulationScheme::Bpsk => asym_bpsk(params),
        ModulationScheme::Dpsk { m } => asym_dpsk(params, m),
    }
}
