//! Globally adaptive Gauss–Kronrod (G10/K21) quadrature on finite intervals.
//!
//! The interval with the largest error estimate is bisected until the total
//! estimate meets the tolerance. The 21 Kronrod nodes are interior, so the
//! integrand is never evaluated at an endpoint; integrable endpoint
//! singularities and limits such as `f(θ→0)` are handled by refinement.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::series::NeumaierSum;

/// Kronrod abscissae, descending, the last one is the centre.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_460,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_958_109_831,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

/// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7, 9).
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections applied to any one subinterval.
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_depth: 50,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0) || (self.abs_tol == 0.0 && self.rel_tol == 0.0)
        {
            return Err(Error::Config(format!(
                "quadrature tolerances must be nonnegative and not both zero (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_depth == 0 {
            return Err(Error::Config("quadrature max_depth must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    depth: u32,
    at_floor: bool,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    let fc = f(center);
    let mut res_k = WGK[10] * fc;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    if !res_k.is_finite() {
        return Err(Error::range(
            "integrate",
            format!("integrand not finite on [{a:e}, {b:e}]"),
        ));
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    let at_floor = err <= floor;
    if at_floor {
        err = floor;
    }
    Ok(Segment {
        a,
        b,
        value,
        err,
        depth: 0,
        at_floor,
    })
}

/// Integrate `f` over `[a, b]`.
///
/// Stops when the summed error estimate is below `max(abs_tol, rel_tol·|I|)`, or when
/// every remaining estimate has reached the rounding floor of the rule. Fails with
/// [`Error::Convergence`] when the worst subinterval can no longer be bisected.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integrate", "bounds must be finite"));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_err: 0.0,
            evals: 0,
        });
    }
    if b < a {
        let r = integrate(f, b, a, cfg)?;
        return Ok(QuadResult {
            value: -r.value,
            ..r
        });
    }

    let mut evals = 21;
    let first = gk21(&mut f, a, b)?;
    let mut total = first.value;
    let mut total_err = first.err;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    loop {
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if total_err <= tol {
            break;
        }
        let worst = *heap.peek().expect("heap is never empty");
        if worst.at_floor {
            break;
        }
        if worst.depth >= cfg.max_depth {
            return Err(Error::Convergence {
                what: "adaptive quadrature",
                partial: total,
                terms: evals,
            });
        }
        heap.pop();
        let mid = 0.5 * (worst.a + worst.b);
        let mut left = gk21(&mut f, worst.a, mid)?;
        let mut right = gk21(&mut f, mid, worst.b)?;
        evals += 42;
        left.depth = worst.depth + 1;
        right.depth = worst.depth + 1;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }

    let mut sum = NeumaierSum::default();
    let mut err = 0.0;
    for s in heap.iter() {
        sum.add(s.value);
        err += s.err;
    }
    Ok(QuadResult {
        value: sum.value(),
        abs_err: err,
        evals,
    })
}
