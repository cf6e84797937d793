//! Appell F₁ through its one-dimensional Euler integral
//!
//! ```text
//! F₁(a; b1, b2; c; x, y) = Γ(c)/(Γ(a)Γ(c−a)) ∫₀¹ t^{a−1}(1−t)^{c−a−1}(1−xt)^{−b1}(1−yt)^{−b2} dt
//! ```
//!
//! valid for `c > a > 0`, `x < 1`, `y < 1`. The substitution `t = u²(3−2u)`
//! flattens both endpoints, so the algebraic endpoint factors become mild powers
//! of `u` and `1−u`, and the adaptive rule only has to resolve the interior.

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};

use super::gamma::ln_gamma;
use super::EvalConfig;

/// `(1 − x·t)` evaluated without cancellation when `x` is close to one,
/// given `one_minus_t = 1 − t` computed separately.
#[inline]
fn one_minus_xt(x: f64, t: f64, one_minus_t: f64) -> f64 {
    if x > 0.5 {
        (1.0 - x) + x * one_minus_t
    } else {
        1.0 - x * t
    }
}

/// Normalised Euler integral
/// `Γ(c)/(Γ(α)Γ(c−α)) ∫₀¹ t^{α−1}(1−t)^{c−α−1} Π_k (1 − x_k t)^{−b_k} dt`
/// for `c > α > 0` and every `x_k < 1`.
pub(crate) fn euler_integral(alpha: f64, c: f64, factors: &[(f64, f64)], cfg: &EvalConfig) -> Result<f64> {
    let beta = c - alpha;
    let norm = (ln_gamma(c)? - ln_gamma(alpha)? - ln_gamma(beta)?).exp();
    let integrand = |u: f64| {
        let v = 1.0 - u;
        let t = u * u * (3.0 - 2.0 * u);
        let one_minus_t = v * v * (1.0 + 2.0 * u);
        // t^{α−1}(1−t)^{β−1} dt/du with dt/du = 6u(1−u)
        let mut f = 6.0
            * u.powf(2.0 * alpha - 1.0)
            * (3.0 - 2.0 * u).powf(alpha - 1.0)
            * v.powf(2.0 * beta - 1.0)
            * (1.0 + 2.0 * u).powf(beta - 1.0);
        for &(x, b) in factors {
            if b != 0.0 && x != 0.0 {
                f *= one_minus_xt(x, t, one_minus_t).powf(-b);
            }
        }
        f
    };
    let qcfg = QuadConfig {
        abs_tol: 0.0,
        rel_tol: cfg.rel_tol,
        max_depth: cfg.quad_max_depth,
    };
    let r = integrate(integrand, 0.0, 1.0, &qcfg).map_err(|e| match e {
        Error::Convergence { partial, terms, .. } => Error::Convergence {
            what: "Euler integral quadrature",
            partial: partial * norm,
            terms,
        },
        other => other,
    })?;
    Ok(norm * r.value)
}

/// Appell's first hypergeometric function of two variables,
/// `F₁(a; b1, b2; c; x, y)`, for `c > a > 0`, `x < 1` and `y < 1`.
pub fn appell_f1(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64, cfg: &EvalConfig) -> Result<f64> {
    cfg.validate()?;
    if ![a, b1, b2, c, x, y].iter().all(|v| v.is_finite()) {
        return Err(Error::domain("appell_f1", "arguments must be finite"));
    }
    if !(c > a && a > 0.0) {
        return Err(Error::domain("appell_f1", format!("requires c > a > 0, got a = {a}, c = {c}")));
    }
    if !(x < 1.0 && y < 1.0) {
        return Err(Error::domain("appell_f1", format!("requires x < 1 and y < 1, got x = {x}, y = {y}")));
    }
    if (x == 0.0 || b1 == 0.0) && (y == 0.0 || b2 == 0.0) {
        return Ok(1.0);
    }
    euler_integral(a, c, &[(x, b1), (y, b2)], cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss_2f1;
    use proptest::prelude::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // Independent oracle: truncated double power series
    // Σ_{i,j} (a)_{i+j}(b1)_i(b2)_j / ((c)_{i+j} i! j!) x^i y^j, valid for |x|, |y| < 1.
    fn double_series(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64) -> f64 {
        let n = 120;
        let mut total = 0.0;
        // row_start = (a)_i (b1)_i / ((c)_i i!) x^i
        let mut row_start = 1.0;
        for i in 0..n {
            let ai = a + i as f64;
            let ci = c + i as f64;
            let mut term = row_start;
            for j in 0..n {
                total += term;
                let jf = j as f64;
                term *= (ai + jf) * (b2 + jf) / ((ci + jf) * (jf + 1.0)) * y;
            }
            let fi = i as f64;
            row_start *= (a + fi) * (b1 + fi) / ((c + fi) * (fi + 1.0)) * x;
        }
        total
    }

    #[test]
    fn trivial_points() {
        assert_eq!(appell_f1(1.5, 0.5, 3.0, 2.5, 0.0, 0.0, &cfg()).unwrap(), 1.0);
        let f = appell_f1(1.5, 0.5, 2.0, 2.5, 0.3, 0.0, &cfg()).unwrap();
        let g = gauss_2f1(1.5, 0.5, 2.5, 0.3, &cfg()).unwrap();
        assert!(rel(f, g) < 1e-12, "{f} vs {g}");
        let f = appell_f1(1.5, 0.5, 2.0, 2.5, 0.2, 0.2, &cfg()).unwrap();
        let g = gauss_2f1(1.5, 2.5, 2.5, 0.2, &cfg()).unwrap();
        assert!(rel(f, g) < 1e-12, "{f} vs {g}");
    }

    #[test]
    fn matches_double_series_on_a_grid() {
        for &x in &[-0.5, -0.2, 0.1, 0.45] {
            for &y in &[-0.5, 0.0, 0.3, 0.5] {
                for &(b1, b2) in &[(0.5, 1.0), (0.5, 7.0), (2.0, 0.5)] {
                    let want = double_series(1.5, b1, b2, 2.5, x, y);
                    let got = appell_f1(1.5, b1, b2, 2.5, x, y, &cfg()).unwrap();
                    assert!(rel(got, want) < 1e-9, "F1(x={x}, y={y}, b=({b1},{b2})) = {got}, want {want}");
                }
            }
        }
    }

    #[test]
    fn argument_near_one_is_handled() {
        // F₁(a; b1, 0; c; x, ·) = ₂F₁(a, b1; c; x) = (1−x)^{-1/2}·… at b1 = 1/2, a = 1/2, c = 3/2:
        // ₂F₁(1/2, 1/2; 3/2; x) = asin(√x)/√x
        let x: f64 = 1.0 - 1e-9;
        let got = appell_f1(0.5, 0.5, 1.0, 1.5, x, 0.0, &cfg()).unwrap();
        let want = x.sqrt().asin() / x.sqrt();
        assert!(rel(got, want) < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn large_negative_argument() {
        // F₁(a; 0, b2; c; ·, y) = ₂F₁(a, b2; c; y); with b2 = c this is (1−y)^{−a}.
        let y = -1e4;
        let got = appell_f1(1.5, 0.0, 2.5, 2.5, 0.3, y, &cfg()).unwrap();
        let want = (1.0 - y).powf(-1.5);
        assert!(rel(got, want) < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn domain_errors() {
        assert!(appell_f1(1.5, 0.5, 1.0, 2.5, 1.0, 0.0, &cfg()).is_err());
        assert!(appell_f1(1.5, 0.5, 1.0, 2.5, 0.0, 1.5, &cfg()).is_err());
        assert!(appell_f1(2.5, 0.5, 1.0, 2.5, 0.1, 0.1, &cfg()).is_err());
        assert!(appell_f1(-0.5, 0.5, 1.0, 2.5, 0.1, 0.1, &cfg()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn symmetric_under_swapping_variables(b1 in 0.1f64..4.0, b2 in 0.1f64..4.0,
                                             x in -5.0f64..0.9, y in -5.0f64..0.9) {
            let f = appell_f1(1.5, b1, b2, 2.5, x, y, &cfg()).unwrap();
            let g = appell_f1(1.5, b2, b1, 2.5, y, x, &cfg()).unwrap();
            prop_assert!(rel(f, g) < 1e-11);
        }

        #[test]
        fn monotone_in_x_for_positive_b1(b1 in 0.1f64..4.0, x in -5.0f64..0.8, y in -5.0f64..0.8) {
            let f = appell_f1(1.5, b1, 1.0, 2.5, x, y, &cfg()).unwrap();
            let g = appell_f1(1.5, b1, 1.0, 2.5, x + 0.1, y, &cfg()).unwrap();
            prop_assert!(g > f);
        }
    }
}
