//! Modified Bessel functions of the first kind, integer order, real argument.
//!
//! Values come from Miller's backward recurrence
//! `I_{k−1}(x) = I_{k+1}(x) + (2k/x)·I_k(x)`, normalised with the sum rule
//! `e^x = I_0(x) + 2·Σ_{k≥1} I_k(x)`. The normalisation yields the exponentially
//! scaled values `e^{−x}·I_k(x)` directly, so nothing overflows for large `x`.
//! Small arguments use the ascending series.

use crate::error::{Error, Result};

use super::gamma::ln_gamma;

/// Largest supported order.
pub const MAX_ORDER: u32 = 10_000;

const RESCALE: f64 = 1e250;

fn check_args(func: &'static str, order: u32, x: f64) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::domain(func, format!("order {order} exceeds {MAX_ORDER}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(func, format!("argument must be finite and >= 0, got {x}")));
    }
    Ok(())
}

/// Ascending series for `e^{−x}·I_n(x)`, used for `x < 1`.
fn scaled_series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = if n == 0 {
        0.0
    } else {
        n as f64 * half.ln() - ln_gamma(n as f64 + 1.0).expect("positive argument")
    };
    let lead = (lead - x).exp();
    if lead == 0.0 {
        return 0.0;
    }
    let q = half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * (n as f64 + k));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
        k += 1.0;
    }
    lead * sum
}

/// `e^{−x}·I_k(x)` for `k = 0..=nmax`.
pub fn bessel_i_scaled_seq(nmax: u32, x: f64) -> Result<Vec<f64>> {
    check_args("bessel_i_scaled_seq", nmax, x)?;
    let len = nmax as usize + 1;
    if x == 0.0 {
        let mut out = vec![0.0; len];
        out[0] = 1.0;
        return Ok(out);
    }
    if x < 1.0 {
        let mut out = Vec::with_capacity(len);
        for k in 0..=nmax {
            let v = scaled_series(k, x);
            out.push(v);
            if v == 0.0 {
                out.resize(len, 0.0);
                break;
            }
        }
        return Ok(out);
    }

    let top = (nmax as f64).max(x);
    let start = top as usize + 20 + (8.0 * (top + 1.0).sqrt()).ceil() as usize;
    let mut out = vec![0.0; len];
    let mut next = 0.0; // f_{k+1}
    let mut cur = 1e-280; // f_k
    let mut sum = 0.0; // 2·Σ_{j>k} f_j
    for k in (1..=start).rev() {
        if k < len {
            out[k] = cur;
        }
        sum += 2.0 * cur;
        let prev = next + (2.0 * k as f64 / x) * cur;
        next = cur;
        cur = prev;
        if cur > RESCALE {
            cur /= RESCALE;
            next /= RESCALE;
            sum /= RESCALE;
            for v in out.iter_mut().skip(k) {
                *v /= RESCALE;
            }
        }
    }
    out[0] = cur;
    sum += cur;
    for v in out.iter_mut() {
        *v /= sum;
    }
    Ok(out)
}

/// Exponentially scaled modified Bessel function `e^{−x}·I_order(x)`.
pub fn bessel_i_scaled(order: u32, x: f64) -> Result<f64> {
    check_args("bessel_i_scaled", order, x)?;
    if x < 1.0 {
        return Ok(if x == 0.0 {
            if order == 0 { 1.0 } else { 0.0 }
        } else {
            scaled_series(order, x)
        });
    }
    Ok(bessel_i_scaled_seq(order, x)?[order as usize])
}

/// Modified Bessel function of the first kind `I_order(x)` for `x ≥ 0`.
///
/// Fails with a range error once `I_order(x)` exceeds the `f64` range
/// (around `x ≈ 713` for order 0); use [`bessel_i_scaled`] there.
pub fn bessel_i(order: u32, x: f64) -> Result<f64> {
    let scaled = bessel_i_scaled(order, x)?;
    let v = scaled * x.exp();
    if !v.is_finite() {
        return Err(Error::range(
            "bessel_i",
            format!("I_{order}({x}) overflows; use the scaled variant"),
        ));
    }
    Ok(v)
}
