//! Gauss hypergeometric function ₂F₁ for real parameters and real `z < 1`.

use crate::error::{Error, Result};
use crate::series::SeriesSum;

use super::appell::euler_integral;
use super::EvalConfig;

/// Above this `|argument|` the power series is too slow and an integral
/// representation takes over when one is available.
const SERIES_LIMIT: f64 = 0.9;

/// The terminating series `₂F₁(−m, −m; 1; x) = Σ_k C(m,k)² x^k` for `x ∈ [0, 1]`.
///
/// All terms are positive, so the sum is accurate to a few ulps.
pub fn gauss_2f1_poly(m: u32, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain("gauss_2f1_poly", format!("x must lie in [0, 1], got {x}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..m {
        let r = (m - k) as f64 / (k + 1) as f64;
        term *= r * r * x;
        if term == 0.0 {
            break;
        }
        sum += term;
    }
    if !sum.is_finite() {
        return Err(Error::range("gauss_2f1_poly", format!("overflow at m = {m}")));
    }
    Ok(sum)
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// Direct Gauss series `Σ (a)_k(b)_k/((c)_k k!) z^k`.
fn direct_series(a: f64, b: f64, c: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    // Tighten the stopping rule by the geometric tail factor so the truncation
    // error, not just the last term, stays below rel_tol.
    let mut acc = SeriesSum::new(0.5 * cfg.rel_tol * (1.0 - z.abs().min(0.999)));
    let mut term = 1.0;
    acc.push(term);
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        if term == 0.0 && (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
            return Ok(acc.value());
        }
        if acc.push(term) {
            return Ok(acc.value());
        }
        if !acc.value().is_finite() {
            break;
        }
    }
    Err(Error::Convergence {
        what: "Gauss hypergeometric series",
        partial: acc.value(),
        terms: acc.terms(),
    })
}

/// Euler integral `Γ(c)/(Γ(b)Γ(c−b)) ∫ t^{b−1}(1−t)^{c−b−1}(1−zt)^{−a} dt`, trying
/// both parameter orders. `None` when neither satisfies `c > b > 0`.
fn euler(a: f64, b: f64, c: f64, z: f64, cfg: &EvalConfig) -> Option<Result<f64>> {
    if c > b && b > 0.0 {
        Some(euler_integral(b, c, &[(z, a)], cfg))
    } else if c > a && a > 0.0 {
        Some(euler_integral(a, c, &[(z, b)], cfg))
    } else {
        None
    }
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` for real parameters and `z < 1`.
///
/// * `0 < z ≤ 0.9`: the power series directly. `z < 0`: the Pfaff
///   transformation `(1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1))`, whose series has a
///   positive argument (no alternating terms) for all `z ≥ −9`.
/// * `z` closer to one, or `z < −9` (Pfaff argument above 0.9): the Euler integral
///   when `c > b > 0` or `c > a > 0`, otherwise the (slowly convergent) series,
///   which reports a convergence error if it exhausts `max_terms`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    cfg.validate()?;
    if ![a, b, c, z].iter().all(|v| v.is_finite()) {
        return Err(Error::domain("gauss_2f1", "arguments must be finite"));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::domain("gauss_2f1", format!("c must not be a nonpositive integer, got {c}")));
    }
    if !(z < 1.0) {
        return Err(Error::domain("gauss_2f1", format!("requires z < 1, got {z}")));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if a == c {
        return Ok((1.0 - z).powf(-b));
    }
    if b == c {
        return Ok((1.0 - z).powf(-a));
    }
    // Terminating series are finite sums; evaluate them as they stand.
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return direct_series(a, b, c, z, cfg);
    }

    if z > 0.0 {
        if z <= SERIES_LIMIT {
            return direct_series(a, b, c, z, cfg);
        }
        return match euler(a, b, c, z, cfg) {
            Some(r) => r,
            None => direct_series(a, b, c, z, cfg),
        };
    }

    let w = z / (z - 1.0);
    if w <= SERIES_LIMIT {
        return pfaff(a, b, c, z, w, cfg);
    }
    match euler(a, b, c, z, cfg) {
        Some(r) => r,
        None => pfaff(a, b, c, z, w, cfg),
    }
}

/// Pfaff transformation for `z < 0`, `w = z/(z−1)`. Of the two equivalent forms
/// `(1−z)^{−a} ₂F₁(a, c−b; c; w)` and `(1−z)^{−b} ₂F₁(c−a, b; c; w)` the one whose
/// upper parameters are nonnegative is used, so its terms do not alternate.
fn pfaff(a: f64, b: f64, c: f64, z: f64, w: f64, cfg: &EvalConfig) -> Result<f64> {
    let l = (-z).ln_1p();
    let negatives = |p: f64, q: f64| (p < 0.0) as u8 + (q < 0.0) as u8;
    if negatives(a, c - b) <= negatives(c - a, b) {
        Ok((-a * l).exp() * direct_series(a, c - b, c, w, cfg)?)
    } else {
        Ok((-b * l).exp() * direct_series(c - a, b, c, w, cfg)?)
    }
}

/// `₂F₁(3/2, m+1; 2; z)` for `z ≤ 0`.
///
/// For `m = 0` this is `2((1−z)^{−1/2} − 1)/z`. For `m ≥ 1` the transformation to
/// `u = 1/(1−z)` leaves a single terminating series (the companion term carries
/// `1/Γ(1−m) = 0`):
///
/// ```text
/// ₂F₁(3/2, m+1; 2; z) = R_m (1−z)^{−3/2} Σ_{k<m} (3/2)_k (1−m)_k / ((3/2−m)_k k!) u^k,
/// R_m = Γ(m−1/2)/(Γ(m+1)Γ(1/2)),
/// ```
///
/// whose terms are all positive, so the value is accurate to a few ulps for every
/// `m` and every `z ≤ 0`.
pub fn hyp2f1_three_halves(m: u32, z: f64) -> Result<f64> {
    if !(z <= 0.0) || !z.is_finite() {
        return Err(Error::domain("hyp2f1_three_halves", format!("requires finite z <= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let l = (-z).ln_1p(); // ln(1−z)
    if m == 0 {
        return Ok(2.0 * (-0.5 * l).exp_m1() / z);
    }
    let u = 1.0 / (1.0 - z);
    let mut r = 1.0;
    for j in 1..m {
        r *= (j as f64 - 0.5) / (j + 1) as f64;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..m - 1 {
        let kf = k as f64;
        let mf = m as f64;
        term *= (1.5 + kf) * (1.0 - mf + kf) / ((1.5 - mf + kf) * (kf + 1.0)) * u;
        sum += term;
    }
    Ok(r * (-1.5 * l).exp() * sum)
}
