//! Reference values by direct quadrature of the MGF-form error-probability integrals.
//!
//! These routines use only [`snr_mgf`] and elementary functions, so they share no
//! series or special-function code with [`crate::exact`] and serve as its
//! independent check. At `θ → 0` the MGF argument tends to `−∞` and the integrand
//! to 0; the Gauss–Kronrod rule never samples the endpoint itself.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::channel::{snr_mgf, TwdpParams};
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};
use crate::scheme::{ModulationScheme, RqamConstants};
use crate::series::SeriesConfig;

/// Tolerance for the MGF evaluations inside the integrands.
fn mgf_config(qcfg: &QuadConfig) -> SeriesConfig {
    SeriesConfig {
        rel_tol: (0.01 * qcfg.rel_tol).clamp(1e-15, 1e-3),
        ..SeriesConfig::default()
    }
}

/// Integrates `θ ↦ 𝓜(s(θ))` over `[lo, hi]`. `s_of` returns `None` where the
/// argument diverges to `−∞`, and the integrand is 0 there.
fn mgf_integral<S>(params: &TwdpParams, lo: f64, hi: f64, qcfg: &QuadConfig, s_of: S) -> Result<f64>
where
    S: Fn(f64) -> Option<f64>,
{
    if hi <= lo {
        return Ok(0.0);
    }
    let scfg = mgf_config(qcfg);
    let mut failure = None;
    let res = integrate(
        |theta| match s_of(theta) {
            Some(s) if s.is_finite() => match snr_mgf(params, s, &scfg) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            _ => 0.0,
        },
        lo,
        hi,
        qcfg,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(res.value),
    }
}

/// `∫₀^ϑ 𝓜(−A²/(2 sin²θ)) dθ`.
fn coherent_integral(params: &TwdpParams, amp: f64, upper: f64, qcfg: &QuadConfig) -> Result<f64> {
    let half_a2 = 0.5 * amp * amp;
    mgf_integral(params, 0.0, upper, qcfg, |theta| {
        let s = theta.sin();
        (s != 0.0).then(|| -half_a2 / (s * s))
    })
}

/// ASEP of `M_I × M_Q` rectangular QAM from the four MGF integrals
/// `a_I J(A_I, π/2) + a_Q J(A_Q, π/2) − (π/2) a_I a_Q [J(A_I, π/2−φ) + J(A_Q, φ)]`,
/// `J(A, ϑ) = ∫₀^ϑ 𝓜(−A²/(2sin²θ)) dθ`, `φ = atan(A_Q/A_I)`.
pub fn rqam_asep_quadrature(params: &TwdpParams, m_i: u32, m_q: u32, beta: f64, qcfg: &QuadConfig) -> Result<f64> {
    params.validate()?;
    qcfg.validate()?;
    let c = RqamConstants::new(m_i, m_q, beta)?;
    let mut p = c.a_i * coherent_integral(params, c.amp_i, FRAC_PI_2, qcfg)?;
    if c.a_q > 0.0 {
        let phi = (c.amp_q / c.amp_i).atan();
        p += c.a_q * coherent_integral(params, c.amp_q, FRAC_PI_2, qcfg)?;
        let cross = coherent_integral(params, c.amp_i, FRAC_PI_2 - phi, qcfg)?
            + coherent_integral(params, c.amp_q, phi, qcfg)?;
        p -= FRAC_PI_2 * c.a_i * c.a_q * cross;
    }
    Ok(p)
}

/// ASEP of `M`-ary DPSK:
/// `(1/π) ∫₀^{(1−1/M)π} 𝓜(−sin²(π/M)/(1 + cos(π/M) cos θ)) dθ`.
pub fn dpsk_asep_quadrature(params: &TwdpParams, m: u32, qcfg: &QuadConfig) -> Result<f64> {
    params.validate()?;
    qcfg.validate()?;
    ModulationScheme::Dpsk { m }.validate()?;
    let (sn, b) = (PI / m as f64).sin_cos();
    let upper = PI - PI / m as f64;
    let v = mgf_integral(params, 0.0, upper, qcfg, |theta| Some(-sn * sn / (1.0 + b * theta.cos())))?;
    Ok(v / PI)
}

/// ASEP of coherent `M`-PSK:
/// `(1/π) ∫₀^{(M−1)π/M} 𝓜(−sin²(π/M)/sin²θ) dθ`.
pub fn mpsk_asep_quadrature(params: &TwdpParams, m: u32, qcfg: &QuadConfig) -> Result<f64> {
    params.validate()?;
    qcfg.validate()?;
    if m < 2 {
        return Err(Error::domain("mpsk_asep_quadrature", format!("order must be >= 2, got {m}")));
    }
    let sn = (PI / m as f64).sin();
    let upper = PI - PI / m as f64;
    let v = mgf_integral(params, 0.0, upper, qcfg, |theta| {
        let s = theta.sin();
        (s != 0.0).then(|| -sn * sn / (s * s))
    })?;
    Ok(v / PI)
}

/// Direct quadrature of `∫₀^ϑ (as)^m/(1−as)^{m+1} dθ`, `s = −A²/(2 sin²θ)`.
pub fn cal_i_quadrature(a: f64, amp: f64, theta_upper: f64, m: u32, qcfg: &QuadConfig) -> Result<f64> {
    qcfg.validate()?;
    if !(a > 0.0 && a.is_finite() && amp > 0.0 && amp.is_finite()) {
        return Err(Error::domain("cal_i_quadrature", format!("requires finite a > 0 and A > 0, got a = {a}, A = {amp}")));
    }
    if !(theta_upper >= 0.0 && theta_upper <= FRAC_PI_2) {
        return Err(Error::domain("cal_i_quadrature", format!("upper limit must lie in [0, π/2], got {theta_upper}")));
    }
    if theta_upper == 0.0 {
        return Ok(0.0);
    }
    let half_aa2 = 0.5 * a * amp * amp;
    let res = integrate(
        |theta| {
            let s2 = theta.sin().powi(2);
            // with t = −as: 1/(1+t) = s2/(s2 + aA²/2) and as/(1−as) = −t/(1+t)
            let inv = s2 / (s2 + half_aa2);
            let ratio = -half_aa2 / (s2 + half_aa2);
            ratio.powi(m as i32) * inv
        },
        0.0,
        theta_upper,
        qcfg,
    )?;
    Ok(res.value)
}

/// Quadrature ASEP of any supported scheme.
pub fn asep_quadrature(params: &TwdpParams, scheme: &ModulationScheme, qcfg: &QuadConfig) -> Result<f64> {
    scheme.validate()?;
    match scheme.rqam_shape() {
        Some((m_i, m_q, beta)) => rqam_asep_quadrature(params, m_i, m_q, beta, qcfg),
        None => dpsk_asep_quadrature(params, scheme.order(), qcfg),
    }
}
