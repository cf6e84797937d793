//! Exact average symbol error probabilities as series over the specular index `m`.
//!
//! Every expression has the shape `Σ_m G_m ξ^m B_m` with
//! `G_m = (K/(1+Γ²))^m ₂F₁(−m,−m;1;Γ²)/m!`, a scheme-dependent ratio `ξ` and a
//! bracket `B_m` built from Gauss ₂F₁ and Appell F₁ values. The factors `G_m` are
//! produced by a multiplicative recurrence and the terms are accumulated with
//! compensated summation: for coherent schemes the series alternates with a
//! cancellation of about `e^{2K}` at high SNR, so every ulp counts.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::channel::TwdpParams;
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};
use crate::scheme::{ModulationScheme, RqamConstants};
use crate::series::{SeriesConfig, SeriesSum};
use crate::specfun::{appell_f1, gauss_2f1_poly, hyp2f1_three_halves, EvalConfig};

/// Kernel accuracy used inside the series. Tighter than the public default
/// because the alternating outer sum amplifies per-term errors.
const KERNEL: EvalConfig = EvalConfig {
    rel_tol: 1e-15,
    max_terms: 10_000,
    quad_max_depth: 40,
};

/// Largest accepted ratio of the rounding bound to the series value. The
/// alternating sums lose about `e^{2K}` to cancellation at high SNR; beyond this
/// ratio (in practice `K ≳ 12` at 30 dB) the result is refused.
pub const PRECISION_LIMIT: f64 = 1e-5;

/// A series value with its convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsepResult {
    pub value: f64,
    pub terms_used: usize,
    pub converged: bool,
    /// Magnitude of the trailing terms that met the stopping rule.
    pub trunc_err_est: f64,
    /// Rounding error bound from cancellation: `ε·Σ|terms|`.
    pub round_err_est: f64,
}

/// Sums `Σ_m G_m ξ^m B_m` until three consecutive terms fall below `rel_tol`
/// of the partial sum.
fn specular_series<B>(params: &TwdpParams, xi: f64, cfg: &SeriesConfig, what: &'static str, mut bracket: B) -> Result<AsepResult>
where
    B: FnMut(u32) -> Result<f64>,
{
    let g2 = params.gamma_ratio * params.gamma_ratio;
    let step = params.specular_weight() * xi;
    let mut acc = SeriesSum::new(cfg.rel_tol);
    let mut weight = 1.0; // (ξK/(1+Γ²))^m / m!
    let mut abs_sum = 0.0;
    for m in 0..cfg.max_terms_m as u32 {
        if m > 0 {
            weight *= step / m as f64;
        }
        let term = if weight == 0.0 {
            0.0
        } else {
            weight * gauss_2f1_poly(m, g2)? * bracket(m)?
        };
        abs_sum += term.abs();
        if acc.push(term) {
            let round_err_est = 4.0 * f64::EPSILON * abs_sum;
            if !(round_err_est <= PRECISION_LIMIT * acc.value().abs()) {
                return Err(Error::Precision {
                    what,
                    value: acc.value(),
                    err_bound: round_err_est,
                });
            }
            return Ok(AsepResult {
                value: acc.value(),
                terms_used: acc.terms(),
                converged: true,
                trunc_err_est: acc.tail(),
                round_err_est,
            });
        }
        if !acc.value().is_finite() {
            break;
        }
    }
    Err(Error::Convergence {
        what,
        partial: acc.value(),
        terms: acc.terms(),
    })
}

/// `𝓘(a, A, ϑ, m) = ∫₀^ϑ (as)^m/(1−as)^{m+1} dθ` with `s = −A²/(2 sin²θ)`,
/// the `m`-th specular-index component of `∫₀^ϑ 𝓜(−A²/(2sin²θ)) dθ` for `a = γ₀/(1+K)`.
///
/// Closed form `(−1)^m (2/3) sin³ϑ/(aA²) F₁(3/2; m+1, 1/2; 5/2; −2sin²ϑ/(aA²), sin²ϑ)`,
/// and at `ϑ = π/2` the Gauss form `(−1)^m π/(2aA²) ₂F₁(3/2, m+1; 2; −2/(aA²))`.
pub fn cal_i(a: f64, amp: f64, theta_upper: f64, m: u32, cfg: &EvalConfig) -> Result<f64> {
    if !(theta_upper > 0.0 && theta_upper <= FRAC_PI_2) {
        return Err(Error::domain("cal_i", format!("upper limit must lie in (0, π/2], got {theta_upper}")));
    }
    let s = theta_upper.sin();
    let s2 = if theta_upper == FRAC_PI_2 { 1.0 } else { s * s };
    cal_i_sin2(a, amp, s2, m, cfg)
}

/// [`cal_i`] parameterised by `sin²ϑ ∈ (0, 1]`.
fn cal_i_sin2(a: f64, amp: f64, s2: f64, m: u32, cfg: &EvalConfig) -> Result<f64> {
    if !(a > 0.0 && a.is_finite() && amp > 0.0 && amp.is_finite()) {
        return Err(Error::domain("cal_i", format!("requires finite a > 0 and A > 0, got a = {a}, A = {amp}")));
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let aa = a * amp * amp;
    if s2 >= 1.0 {
        return Ok(sign * FRAC_PI_2 / aa * hyp2f1_three_halves(m, -2.0 / aa)?);
    }
    let f1 = appell_f1(1.5, m as f64 + 1.0, 0.5, 2.5, -2.0 * s2 / aa, s2, cfg)?;
    Ok(sign * (2.0 / 3.0) * s2 * s2.sqrt() / aa * f1)
}

/// Exact ASEP of `M_I × M_Q` rectangular QAM with decision-distance ratio `β`.
///
/// `P = Σ_m G_m [a_I 𝓘(A_I, π/2) + a_Q 𝓘(A_Q, π/2) − (π/2) a_I a_Q (𝓘(A_I, π/2−φ) + 𝓘(A_Q, φ))]`,
/// `φ = atan(A_Q/A_I)`, with `𝓘` from [`cal_i`].
pub fn asep_rqam(params: &TwdpParams, m_i: u32, m_q: u32, beta: f64, cfg: &SeriesConfig) -> Result<AsepResult> {
    params.validate()?;
    cfg.validate()?;
    let c = RqamConstants::new(m_i, m_q, beta)?;
    let a = params.avg_snr / (1.0 + params.k_factor);
    let total = c.amp_i * c.amp_i + c.amp_q * c.amp_q;
    // sin² of the split angles π/2 − φ and φ
    let (s2_i, s2_q) = (c.amp_i * c.amp_i / total, c.amp_q * c.amp_q / total);
    specular_series(params, 1.0, cfg, "RQAM specular series", |m| {
        let mut b = c.a_i * cal_i_sin2(a, c.amp_i, 1.0, m, &KERNEL)?;
        if c.a_q > 0.0 {
            b += c.a_q * cal_i_sin2(a, c.amp_q, 1.0, m, &KERNEL)?;
            let cross = cal_i_sin2(a, c.amp_i, s2_i, m, &KERNEL)? + cal_i_sin2(a, c.amp_q, s2_q, m, &KERNEL)?;
            b -= FRAC_PI_2 * c.a_i * c.a_q * cross;
        }
        Ok(b)
    })
}

/// Exact ASEP of square `M`-QAM: the `√M × √M`, `β = 1` case of [`asep_rqam`].
///
/// With `A = √(3/(M−1))` and `p = (√M−1)/√M` the series reads
/// `(1+K)/γ₀ Σ_m (−1)^m G_m [2p/A² ₂F₁(3/2, m+1; 2; −2(1+K)/(A²γ₀))
///  − (2√2 p²/(3π A²)) F₁(3/2; 1/2, m+1; 5/2; 1/2, −(1+K)/(A²γ₀))]`.
pub fn asep_sqam(params: &TwdpParams, m: u32, cfg: &SeriesConfig) -> Result<AsepResult> {
    ModulationScheme::Sqam { m }.validate()?;
    let r = m.isqrt();
    asep_rqam(params, r, r, 1.0, cfg)
}

/// Exact ASEP of `M`-ary ASK: the `M × 1` case of [`asep_rqam`],
/// `(1+K)/γ₀ · ((M−1)/M)/A² · Σ_m (−1)^m G_m ₂F₁(3/2, m+1; 2; −2(1+K)/(A²γ₀))`, `A² = 6/(M²−1)`.
pub fn asep_ask(params: &TwdpParams, m: u32, cfg: &SeriesConfig) -> Result<AsepResult> {
    ModulationScheme::Ask { m }.validate()?;
    asep_rqam(params, m, 1, 1.0, cfg)
}

/// Exact ASEP of QPSK: the `2 × 2` case of [`asep_rqam`],
/// `(1+K)/γ₀ Σ_m (−1)^m G_m [₂F₁(3/2, m+1; 2; −2(1+K)/γ₀) − (√2/(6π)) F₁(3/2; 1/2, m+1; 5/2; 1/2, −(1+K)/γ₀)]`.
pub fn asep_qpsk(params: &TwdpParams, cfg: &SeriesConfig) -> Result<AsepResult> {
    asep_rqam(params, 2, 2, 1.0, cfg)
}

/// Exact ASEP of BPSK: the `2 × 1` case of [`asep_rqam`],
/// `(1+K)/(4γ₀) Σ_m (−1)^m G_m ₂F₁(3/2, m+1; 2; −(1+K)/γ₀)`.
pub fn asep_bpsk(params: &TwdpParams, cfg: &SeriesConfig) -> Result<AsepResult> {
    asep_rqam(params, 2, 1, 1.0, cfg)
}

/// `C_p = (1/π) ∫₀^{π−π/M} cos^p θ dθ` for `p = 0..len`, by the forward recurrence
/// `C_p = (−b)^{p−1} sin(π/M)/(πp) + ((p−1)/p) C_{p−2}`, `b = cos(π/M)`.
pub(crate) fn dpsk_cos_moments(m: u32, len: usize) -> Vec<f64> {
    let mf = m as f64;
    let (sn, b) = (PI / mf).sin_cos();
    let mut c = Vec::with_capacity(len);
    let mut pow = 1.0; // (−b)^{p−1}
    for p in 0..len {
        let v = match p {
            0 => 1.0 - 1.0 / mf,
            1 => sn / PI,
            _ => {
                pow *= -b;
                pow * sn / (PI * p as f64) + (p as f64 - 1.0) / p as f64 * c[p - 2]
            }
        };
        c.push(v);
    }
    c
}

/// Largest cancellation `Σ|terms|/|sum|` accepted from the inner DPSK series before
/// its closed integral form is used instead. The outer alternating sum amplifies
/// any inner error, so the inner value must be accurate to a few ulps.
const DPSK_INNER_CANCELLATION: f64 = 4.0;

/// Exact ASEP of `M`-ary DPSK as a double series:
///
/// `P = Σ_m G_m (−Ā)^m S_m`, `S_m = Σ_p C(m+p, p) (−r)^p (m/(m+p) − Ā) C_p`,
/// `Ā = γ₀ sin²(π/M)/(1+K+γ₀ sin²(π/M))`, `r = (1+K)cos(π/M)/(1+K+γ₀ sin²(π/M))`,
/// with `m/(m+p) = 1` at `m = p = 0` and `C_p` from the cosine moments above.
///
/// Summing the binomial series inside the moment integral gives the closed form
/// `S_m = (1/π) ∫₀^{π−π/M} (1 − Ā + r cosθ)(1 + r cosθ)^{−(m+1)} dθ` with a positive
/// integrand. The `p`-series alternates and for `r` near 1 loses up to
/// `((1+r)/(1−r))^{m+1}` to cancellation; whenever its observed cancellation exceeds
/// a few ulps, or it does not converge within `cfg.max_terms_p` terms, `S_m` is
/// taken from the integral. Both forms are scaled by `(1 − r cos(π/M))^m`, which is
/// absorbed into the outer ratio `−Ā/(1 − r cos(π/M))` to keep them finite.
pub fn asep_dpsk(params: &TwdpParams, m: u32, cfg: &SeriesConfig) -> Result<AsepResult> {
    params.validate()?;
    cfg.validate()?;
    ModulationScheme::Dpsk { m }.validate()?;
    let k1 = 1.0 + params.k_factor;
    let (sn, b) = (PI / m as f64).sin_cos();
    let g = params.avg_snr * sn * sn;
    let abar = g / (k1 + g);
    let r = k1 * b / (k1 + g);
    // 1 − r·b, formed without cancellation
    let floor = (g + k1 * sn * sn) / (k1 + g);
    let ln_floor = floor.ln();
    let moments = dpsk_cos_moments(m, cfg.max_terms_p);
    let inner_tol = KERNEL.rel_tol.min(cfg.rel_tol);
    let mut inner_terms = 0usize;
    let res = specular_series(params, -abar / floor, cfg, "DPSK outer series", |mm| {
        if let Some((v, terms)) = dpsk_inner_series(mm, r, abar, &moments, inner_tol) {
            inner_terms = inner_terms.max(terms);
            return Ok(v * (mm as f64 * ln_floor).exp());
        }
        dpsk_inner_integral(mm, r, abar, floor, PI - PI / m as f64)
    })?;
    Ok(AsepResult {
        terms_used: res.terms_used.max(inner_terms),
        ..res
    })
}

/// The inner `p`-series, or `None` if it cancels or does not converge.
fn dpsk_inner_series(mm: u32, r: f64, abar: f64, moments: &[f64], tol: f64) -> Option<(f64, usize)> {
    let mut acc = SeriesSum::new(tol);
    let mut abs_sum = 0.0;
    let mut binom_pow = 1.0; // C(m+p, p)(−r)^p
    for (p, &cp) in moments.iter().enumerate() {
        if p > 0 {
            binom_pow *= -r * (mm as f64 + p as f64) / p as f64;
        }
        let frac = if mm == 0 && p == 0 { 1.0 } else { mm as f64 / (mm as f64 + p as f64) };
        let term = binom_pow * (frac - abar) * cp;
        abs_sum += term.abs();
        if acc.push(term) {
            let v = acc.value();
            return (abs_sum <= DPSK_INNER_CANCELLATION * v.abs()).then_some((v, acc.terms()));
        }
    }
    None
}

/// `(1 − rb)^m S_m` from its integral form
/// `(1/π) ∫₀^Θ (1−Ā+r cosθ)/(1+r cosθ) · ((1−rb)/(1+r cosθ))^m dθ`.
fn dpsk_inner_integral(mm: u32, r: f64, abar: f64, floor: f64, upper: f64) -> Result<f64> {
    let q = QuadConfig {
        abs_tol: 0.0,
        rel_tol: KERNEL.rel_tol,
        max_depth: 50,
    };
    let res = integrate(
        |theta| {
            let d = 1.0 + r * theta.cos();
            (1.0 - abar + r * theta.cos()) / d * (floor / d).powi(mm as i32)
        },
        0.0,
        upper,
        &q,
    )?;
    Ok(res.value / PI)
}

/// Exact ASEP of any supported scheme.
pub fn asep_exact(params: &TwdpParams, scheme: &ModulationScheme, cfg: &SeriesConfig) -> Result<AsepResult> {
    scheme.validate()?;
    match *scheme {
        ModulationScheme::Rqam { m_i, m_q, beta } => asep_rqam(params, m_i, m_q, beta, cfg),
        ModulationScheme::Sqam { m } => asep_sqam(params, m, cfg),
        ModulationScheme::Ask { m } => asep_ask(params, m, cfg),
        ModulationScheme::Qpsk => asep_qpsk(params, cfg),
        ModulationScheme::Bpsk => asep_bpsk(params, cfg),
        ModulationScheme::Dpsk { m } => asep_dpsk(params, m, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, QuadConfig};
    use crate::specfun::gauss_2f1;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn p(k: f64, g: f64, snr: f64) -> TwdpParams {
        TwdpParams::new(k, g, snr).unwrap()
    }

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    // Direct quadrature of the defining integral of 𝓘.
    fn cal_i_by_quadrature(a: f64, amp: f64, theta: f64, m: u32) -> f64 {
        let q = QuadConfig {
            abs_tol: 0.0,
            rel_tol: 1e-13,
            max_depth: 60,
        };
        integrate(
            |t: f64| {
                let s = -amp * amp / (2.0 * t.sin().powi(2));
                if !s.is_finite() {
                    return 0.0;
                }
                (a * s / (1.0 - a * s)).powi(m as i32) / (1.0 - a * s)
            },
            0.0,
            theta,
            &q,
        )
        .unwrap()
        .value
    }

    #[test]
    fn cal_i_matches_defining_integral() {
        let cases = [(1.0, 2f64.sqrt(), FRAC_PI_2, 0), (0.5, 1.0, 1f64.atan(), 2), (3.0, 0.4, 0.3, 7), (20.0, 0.7, 1.2, 15)];
        for (a, amp, th, m) in cases {
            let got = cal_i(a, amp, th, m, &EvalConfig::default()).unwrap();
            let want = cal_i_by_quadrature(a, amp, th, m);
            assert!(rel(got, want) < 1e-8, "𝓘({a}, {amp}, {th}, {m}) = {got}, want {want}");
        }
    }

    #[test]
    fn cal_i_special_case_is_the_limit_of_the_general_form() {
        let cfg = EvalConfig::default();
        for m in [0u32, 1, 4, 12] {
            let full = cal_i(0.8, 1.3, FRAC_PI_2, m, &cfg).unwrap();
            let near = cal_i(0.8, 1.3, FRAC_PI_2 - 1e-9, m, &cfg).unwrap();
            assert!(rel(near, full) < 1e-8, "m = {m}: {near} vs {full}");
        }
        assert!(cal_i(1.0, 1.0, 0.0, 0, &cfg).is_err());
        assert!(cal_i(1.0, 1.0, 2.0, 0, &cfg).is_err());
    }

    #[test]
    fn rayleigh_closed_forms() {
        let want = 0.5 * (1.0 - (10.0f64 / 11.0).sqrt());
        for g in [0.0, 0.5, 1.0] {
            let prm = p(0.0, g, 10.0);
            assert!((asep_bpsk(&prm, &cfg()).unwrap().value - want).abs() < 1e-12);
            assert!((asep_rqam(&prm, 2, 1, 1.0, &cfg()).unwrap().value - want).abs() < 1e-12);
            assert!((asep_dpsk(&prm, 2, &cfg()).unwrap().value - 1.0 / 22.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reference_values() {
        // High-precision quadrature of the MGF integrals.
        let cases = [
            (5.0, 0.5, 10.0, ModulationScheme::Rqam { m_i: 4, m_q: 2, beta: 1.0 }, 0.181_353_264_713_742_08),
            (5.0, 0.5, 10.0, ModulationScheme::Dpsk { m: 8 }, 0.308_477_928_978_248_55),
            (10.0, 0.5, 1.0, ModulationScheme::Rqam { m_i: 4, m_q: 2, beta: 1.0 }, 0.604_638_664_097_006_4),
            (10.0, 0.5, 1.0, ModulationScheme::Dpsk { m: 8 }, 0.725_622_881_028_142_9),
            (10.0, 1.0, 100.0, ModulationScheme::Dpsk { m: 8 }, 0.067_649_084_440_520_17),
        ];
        for (k, g, snr, scheme, want) in cases {
            let got = asep_exact(&p(k, g, snr), &scheme, &cfg()).unwrap();
            assert!(got.converged);
            assert!(rel(got.value, want) < 1e-9, "{scheme} K={k} Γ={g}: {} vs {want}", got.value);
        }
    }

    // The simplified single-scheme forms, written out independently of the RQAM engine.
    fn simplified(prm: &TwdpParams, scheme: ModulationScheme) -> AsepResult {
        let e = EvalConfig {
            rel_tol: 1e-15,
            ..EvalConfig::default()
        };
        let ia = (1.0 + prm.k_factor) / prm.avg_snr;
        let (pre, r) = match scheme {
            ModulationScheme::Bpsk => (0.25 * ia, specular_series(prm, -1.0, &cfg(), "t", |m| hyp2f1_three_halves(m, -ia))),
            ModulationScheme::Qpsk => {
                let cross = std::f64::consts::SQRT_2 / (6.0 * PI);
                (
                    ia,
                    specular_series(prm, -1.0, &cfg(), "t", |m| {
                        Ok(hyp2f1_three_halves(m, -2.0 * ia)? - cross * appell_f1(1.5, 0.5, m as f64 + 1.0, 2.5, 0.5, -ia, &e)?)
                    }),
                )
            }
            ModulationScheme::Sqam { m } => {
                let root = (m as f64).sqrt();
                let (a2, pp) = (3.0 / (m as f64 - 1.0), (root - 1.0) / root);
                let z = -2.0 * ia / a2;
                let cross = 2.0 * std::f64::consts::SQRT_2 * pp * pp / (3.0 * PI * a2);
                (
                    ia,
                    specular_series(prm, -1.0, &cfg(), "t", |mm| {
                        Ok(2.0 * pp / a2 * hyp2f1_three_halves(mm, z)? - cross * appell_f1(1.5, 0.5, mm as f64 + 1.0, 2.5, 0.5, 0.5 * z, &e)?)
                    }),
                )
            }
            ModulationScheme::Ask { m } => {
                let mf = m as f64;
                let a2 = 6.0 / (mf * mf - 1.0);
                (ia * (mf - 1.0) / mf / a2, specular_series(prm, -1.0, &cfg(), "t", |mm| hyp2f1_three_halves(mm, -2.0 * ia / a2)))
            }
            _ => unreachable!(),
        };
        let r = r.unwrap();
        AsepResult {
            value: pre * r.value,
            round_err_est: pre * r.round_err_est,
            ..r
        }
    }

    #[test]
    fn special_case_collapses() {
        for &(k, g, snr) in &[(0.0, 0.0, 1.0), (5.0, 0.5, 10.0), (10.0, 1.0, 100.0), (10.0, 0.5, 1e4)] {
            let prm = p(k, g, snr);
            let bpsk = asep_bpsk(&prm, &cfg()).unwrap().value;
            let qpsk = asep_qpsk(&prm, &cfg()).unwrap().value;
            assert_eq!(asep_rqam(&prm, 2, 1, 1.0, &cfg()).unwrap().value, bpsk);
            assert_eq!(asep_ask(&prm, 2, &cfg()).unwrap().value, bpsk);
            assert_eq!(asep_rqam(&prm, 2, 2, 1.0, &cfg()).unwrap().value, qpsk);
            assert_eq!(asep_sqam(&prm, 4, &cfg()).unwrap().value, qpsk);
        }
    }

    #[test]
    fn simplified_forms_agree_with_the_rqam_engine() {
        // Agreement is limited by the cancellation in the alternating series, so the
        // tolerance is the larger of 1e-10 and a multiple of the rounding estimate.
        let schemes = [ModulationScheme::Bpsk, ModulationScheme::Qpsk, ModulationScheme::Sqam { m: 16 }, ModulationScheme::Sqam { m: 64 }, ModulationScheme::Ask { m: 8 }];
        for &(k, g, snr) in &[(0.0, 0.0, 1.0), (5.0, 0.5, 10.0), (3.0, 1.0, 1e3), (10.0, 1.0, 100.0), (10.0, 0.5, 1e4)] {
            let prm = p(k, g, snr);
            for scheme in schemes {
                let engine = asep_exact(&prm, &scheme, &cfg()).unwrap();
                let reference = simplified(&prm, scheme);
                let tol = (1e-10 * engine.value).max(20.0 * (engine.round_err_est + reference.round_err_est));
                assert!(
                    (engine.value - reference.value).abs() <= tol,
                    "{scheme} K={k} Γ={g} γ₀={snr}: {} vs {} (tol {tol:e})",
                    engine.value,
                    reference.value
                );
            }
        }
    }

    #[test]
    fn cosine_moments_match_hypergeometric_form() {
        // C_p = Γ((p+1)/2)/(2√π Γ(p/2+1)) − (−b)^{p+1}/(π(p+1)) ₂F₁(1/2, (p+1)/2; (p+3)/2; b²)
        let e = EvalConfig::default();
        for m in [2u32, 4, 8, 16] {
            let b = (PI / m as f64).cos();
            let c = dpsk_cos_moments(m, 60);
            for (pp, &cp) in c.iter().enumerate() {
                let pf = pp as f64;
                let lead = (crate::specfun::ln_gamma((pf + 1.0) / 2.0).unwrap() - crate::specfun::ln_gamma(pf / 2.0 + 1.0).unwrap()).exp()
                    / (2.0 * PI.sqrt());
                let tail = (-b).powi(pp as i32 + 1) / (PI * (pf + 1.0)) * gauss_2f1(0.5, (pf + 1.0) / 2.0, (pf + 3.0) / 2.0, b * b, &e).unwrap();
                let want = lead - tail;
                assert!((cp - want).abs() < 1e-11 * want.abs().max(1e-3), "M={m} p={pp}: {cp} vs {want}");
            }
        }
    }

    #[test]
    fn dpsk_near_unit_ratio() {
        // r → 1: the p-series cancels catastrophically and the integral form takes over
        let q = crate::quad::QuadConfig { abs_tol: 0.0, rel_tol: 1e-11, max_depth: 50 };
        for (k, g, snr, m) in [(5.0, 0.5, 1e-3, 256), (10.0, 0.5, 1.0, 64), (10.0, 1.0, 10.0, 64), (0.0, 0.0, 1.0, 1024)] {
            let prm = p(k, g, snr);
            let got = asep_dpsk(&prm, m, &cfg()).unwrap().value;
            let want = crate::oracle::dpsk_asep_quadrature(&prm, m, &q).unwrap();
            assert!(rel(got, want) < 1e-9, "M={m} K={k}: {got} vs {want}");
        }
    }

    #[test]
    fn dpsk_inner_forms_agree() {
        let moments = dpsk_cos_moments(8, 2000);
        let mut compared = 0;
        for (r, abar) in [(0.05, 0.3), (0.2, 0.6)] {
            let b = (PI / 8.0).cos();
            let floor = 1.0 - r * b;
            for mm in [0u32, 1, 2, 5] {
                if let Some((series, _)) = dpsk_inner_series(mm, r, abar, &moments, 1e-16) {
                    let integral = dpsk_inner_integral(mm, r, abar, floor, PI - PI / 8.0).unwrap() / floor.powi(mm as i32);
                    assert!(rel(series, integral) < 1e-13, "m={mm} r={r}: {series} vs {integral}");
                    compared += 1;
                }
            }
        }
        assert!(compared >= 6, "only {compared} series evaluations accepted");
        assert!(dpsk_inner_series(40, 0.9, 0.05, &moments, 1e-16).is_none());
    }

    #[test]
    fn k_zero_is_gamma_invariant() {
        for scheme in [ModulationScheme::Sqam { m: 16 }, ModulationScheme::Dpsk { m: 4 }, ModulationScheme::Rqam { m_i: 4, m_q: 2, beta: 2.0 }] {
            let a = asep_exact(&p(0.0, 0.0, 30.0), &scheme, &cfg()).unwrap().value;
            let b = asep_exact(&p(0.0, 1.0, 30.0), &scheme, &cfg()).unwrap().value;
            assert!(rel(a, b) < 1e-12);
        }
    }

    #[test]
    fn convergence_failure_reports_partial_value() {
        let tight = SeriesConfig {
            max_terms_m: 3,
            ..SeriesConfig::default()
        };
        match asep_bpsk(&p(10.0, 1.0, 100.0), &tight) {
            Err(Error::Convergence { partial, terms, .. }) => {
                assert!(partial.is_finite());
                assert_eq!(terms, 3);
            }
            other => panic!("expected a convergence error, got {other:?}"),
        }
    }

    #[test]
    fn cancellation_beyond_double_precision_is_refused() {
        for s in [ModulationScheme::Sqam { m: 16 }, ModulationScheme::Dpsk { m: 8 }] {
            match asep_exact(&p(30.0, 1.0, 1000.0), &s, &cfg()) {
                Err(Error::Precision { err_bound, value, .. }) => assert!(err_bound > PRECISION_LIMIT * value.abs()),
                other => panic!("{s}: expected a precision error, got {other:?}"),
            }
        }
        // without cancellation large K is fine
        let r = asep_dpsk(&p(50.0, 1.0, 1.0), 8, &cfg()).unwrap();
        assert!(r.round_err_est < 1e-12 * r.value);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn decreasing_in_snr(k in 0.0f64..10.0, g in 0.0f64..=1.0, db in 0.0f64..35.0) {
            let lo = crate::units::db_to_linear(db);
            let hi = crate::units::db_to_linear(db + 2.0);
            for scheme in [ModulationScheme::Rqam { m_i: 4, m_q: 2, beta: 1.0 }, ModulationScheme::Dpsk { m: 4 }, ModulationScheme::Ask { m: 4 }] {
                let a = asep_exact(&p(k, g, lo), &scheme, &cfg()).unwrap().value;
                let b = asep_exact(&p(k, g, hi), &scheme, &cfg()).unwrap().value;
                prop_assert!(a > b && b > 0.0 && a < 1.0, "{} {} {}", scheme, a, b);
            }
        }
    }
}
