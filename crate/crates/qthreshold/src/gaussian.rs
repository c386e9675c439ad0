//! Standard normal machinery and the sharp-threshold bound curves.
//!
//! The CDF is computed through the complementary error function with a
//! split evaluation: a stable all-positive power series below |z| = 2 and a
//! Lentz continued fraction in the tails, giving absolute error well below
//! 1e-12 over the whole line. The quantile uses Acklam's rational initial
//! guess polished by Newton steps against that CDF.

use crate::{Error, Result};

pub const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Standard normal density.
pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

/// Standard normal CDF, absolute error <= 1e-12.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

fn erfc(z: f64) -> f64 {
    if z < 0.0 {
        return 2.0 - erfc(-z);
    }
    if z < 2.0 {
        1.0 - erf_series(z)
    } else {
        erfc_continued_fraction(z)
    }
}

/// erf via the all-positive series
/// `erf(z) = 2/sqrt(pi) * e^{-z^2} * sum_k (2 z^2)^k z / (2k+1)!!`,
/// free of the cancellation the alternating Taylor series suffers from.
fn erf_series(z: f64) -> f64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let mut odd = 1.0;
    loop {
        odd += 2.0;
        term *= 2.0 * z2 / odd;
        sum += term;
        if term <= sum * 1e-18 {
            break;
        }
    }
    2.0 * FRAC_1_SQRT_PI * (-z2).exp() * sum
}

/// erfc for z >= 2 through the continued fraction
/// `erfc(z) = e^{-z^2}/sqrt(pi) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))`
/// evaluated with the modified Lentz algorithm.
fn erfc_continued_fraction(z: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = z;
    let mut c = f;
    let mut d = 0.0;
    for j in 1..200 {
        let a = j as f64 / 2.0;
        d = z + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = z + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    FRAC_1_SQRT_PI * (-z * z).exp() / f
}

/// Inverse standard normal CDF: Acklam's rational approximation refined by
/// Newton iterations until `|Phi(x) - u| <= 1e-12` (or the step degenerates).
pub fn std_normal_quantile(u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::InvalidParams(format!(
            "quantile argument u = {u} outside (0, 1)"
        )));
    }
    let mut x = acklam_estimate(u);
    for _ in 0..8 {
        let err = std_normal_cdf(x) - u;
        if err.abs() <= 1e-15 {
            break;
        }
        let pdf = std_normal_pdf(x);
        if pdf <= 0.0 {
            break;
        }
        x -= err / pdf;
    }
    Ok(x)
}

fn acklam_estimate(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.38357751867269e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

/// Which transition a bound curve describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// The measure of an increasing set; `gap` is the boundary gap Delta
    /// (every member has 0 or >= Delta exit neighbours) and `pivot` the
    /// half-measure point theta.
    IncreasingSet,
    /// A decoding error probability; `gap` is the minimum distance d and
    /// `pivot` the half-error point p_c.
    ErrorProbability,
}

/// Parameters of a sharp-threshold bound curve.
#[derive(Clone, Copy, Debug)]
pub struct BoundCurveSpec {
    gap: f64,
    pivot: f64,
    orientation: Orientation,
}

impl BoundCurveSpec {
    pub fn new(gap: f64, pivot: f64, orientation: Orientation) -> Result<Self> {
        if gap.is_nan() || gap <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "gap = {gap} must be positive"
            )));
        }
        if !(pivot > 0.0 && pivot < 1.0) {
            return Err(Error::InvalidParams(format!(
                "pivot = {pivot} outside (0, 1)"
            )));
        }
        Ok(BoundCurveSpec {
            gap,
            pivot,
            orientation,
        })
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn pivot(&self) -> f64 {
        self.pivot
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
}

fn check_open_unit(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParams(format!("p = {p} outside (0, 1)")));
    }
    Ok(())
}

/// Bound on the measure of an increasing set with boundary gap Delta:
/// `g_theta(p) = Phi(sqrt(2 Delta) (sqrt(-ln theta) - sqrt(-ln p)))`.
/// Upper bound for p <= theta, lower bound for p >= theta.
pub fn increasing_set_bound(p: f64, spec: &BoundCurveSpec) -> Result<f64> {
    if spec.orientation != Orientation::IncreasingSet {
        return Err(Error::InvalidParams(
            "curve spec is not increasing-set oriented".into(),
        ));
    }
    check_open_unit(p)?;
    let arg = (2.0 * spec.gap).sqrt() * ((-spec.pivot.ln()).sqrt() - (-p.ln()).sqrt());
    Ok(std_normal_cdf(arg))
}

/// Bound on the decoding error probability of a code with minimum distance
/// d: `1 - Phi(sqrt(d) (sqrt(-ln(1-p_c)) - sqrt(-ln(1-p))))`.
/// Upper bound for p <= p_c, lower bound for p >= p_c.
pub fn error_probability_bound(p: f64, spec: &BoundCurveSpec) -> Result<f64> {
    if spec.orientation != Orientation::ErrorProbability {
        return Err(Error::InvalidParams(
            "curve spec is not error-probability oriented".into(),
        ));
    }
    check_open_unit(p)?;
    let arg = spec.gap.sqrt() * ((-(1.0 - spec.pivot).ln()).sqrt() - (-(1.0 - p).ln()).sqrt());
    // 1 - Phi(arg), evaluated as Phi(-arg) so the near-zero tail keeps its
    // magnitude instead of cancelling against 1.
    Ok(std_normal_cdf(-arg))
}

/// Closed-form steepness of the error-probability transition at its pivot:
/// `sqrt(d) / (sqrt(2 pi) (1 - p_c))`.
///
/// This is the exact derivative at p_c of the log-ratio transition curve
/// `Phi(sqrt(d) ln((1 - p_c)/(1 - p)))`; the displayed bound curve itself is
/// shallower at the pivot by the factor `2 sqrt(-ln(1 - p_c))`.
pub fn error_probability_slope(spec: &BoundCurveSpec) -> f64 {
    spec.gap.sqrt() / (SQRT_2PI * (1.0 - spec.pivot))
}
