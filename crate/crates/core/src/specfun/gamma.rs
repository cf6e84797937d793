use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;

/// ln Γ(x) for x ≥ 0.5 by the Lanczos series.
fn ln_gamma_lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + acc.ln()
}

fn ln_factorial_small(n: usize) -> Option<f64> {
    if n > 30 {
        return None;
    }
    let mut f = 1.0f64;
    for k in 2..=n {
        f *= k as f64;
    }
    Some(f.ln())
}

/// Natural logarithm of the Gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("ln_gamma", format!("argument must be positive and finite, got {x}")));
    }
    if x.fract() == 0.0 {
        if let Some(v) = ln_factorial_small(x as usize - 1) {
            return Ok(v);
        }
    }
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx)
        return Ok(PI.ln() - (PI * x).sin().ln() - ln_gamma_lanczos(1.0 - x));
    }
    Ok(ln_gamma_lanczos(x))
}

/// ln of the Pochhammer symbol (a)_n = Γ(a+n)/Γ(a) for `a > 0`.
pub fn ln_pochhammer(a: f64, n: usize) -> Result<f64> {
    Ok(ln_gamma(a + n as f64)? - ln_gamma(a)?)
}
