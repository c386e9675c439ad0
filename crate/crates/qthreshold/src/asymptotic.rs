//! First-order exponent analysis for short codes over very large fields.
//!
//! When q dominates n, every quantity in the error-ratio curve is a power
//! of q up to factors polynomial in n, so the curve is governed by a
//! base-q exponent. The confusability count contributes the linear-program
//! value
//!
//! ```text
//! n*mu(w, t) = max { beta + gamma : (alpha, beta, gamma) satisfies the
//!                    nine confusability inequalities }
//! ```
//!
//! solved here by exact-rational enumeration of the polytope vertices
//! (selecting 3 of the 9 hyperplanes gives at most C(9,3) = 84 candidate
//! vertices). The resulting curve exponent is
//!
//! ```text
//! iota(t) = max_{l in [d, min(n, 2t)]} (1 + l - d - t + n*mu(l, t))
//! ```
//!
//! and the smallest t/n with iota >= 0 estimates the threshold from below.
//! The grid cap min(n, 2t) mirrors the exact curve: weights above n do not
//! exist, even where the bare exponent algebra would allow 2t > n.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::confusability::ConstraintSystem;
use crate::exact::ExactRatio;
use crate::mds::CodeParams;

/// A vertex of the confusability polytope: exact rational coordinates plus
/// the indices of the three hyperplanes that define it.
#[derive(Clone, Debug)]
pub struct PolytopeVertex {
    pub alpha: ExactRatio,
    pub beta: ExactRatio,
    pub gamma: ExactRatio,
    pub active: [usize; 3],
}

/// One sample of the exponent curve; `iota` is None below the d/2 radius
/// where no codeword weight is reachable (conceptually minus infinity).
#[derive(Clone, Debug)]
pub struct ExponentPoint {
    pub t: u64,
    pub iota: Option<ExactRatio>,
}

fn det3(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All feasible vertices of the nine-inequality system, with exact
/// arithmetic throughout: singular 3x3 selections are skipped, infeasible
/// intersections discarded, and coincident vertices coalesced (keeping the
/// first defining triple).
pub fn enumerate_vertices(w: u64, t: u64, n: u64) -> Vec<PolytopeVertex> {
    let system = ConstraintSystem::new(w, t, n).expect("w, t <= n");
    let rows = system.inequalities();
    let mut vertices: Vec<PolytopeVertex> = Vec::new();
    let mut seen: std::collections::HashSet<(i128, i128, i128, i128)> =
        std::collections::HashSet::new();

    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            for k in (j + 1)..rows.len() {
                let m = [
                    [
                        rows[i].0[0] as i128,
                        rows[i].0[1] as i128,
                        rows[i].0[2] as i128,
                    ],
                    [
                        rows[j].0[0] as i128,
                        rows[j].0[1] as i128,
                        rows[j].0[2] as i128,
                    ],
                    [
                        rows[k].0[0] as i128,
                        rows[k].0[1] as i128,
                        rows[k].0[2] as i128,
                    ],
                ];
                let det = det3(&m);
                if det == 0 {
                    continue;
                }
                let rhs = [rows[i].1 as i128, rows[j].1 as i128, rows[k].1 as i128];
                // Cramer numerators.
                let mut nums = [0i128; 3];
                for col in 0..3 {
                    let mut replaced = m;
                    for r in 0..3 {
                        replaced[r][col] = rhs[r];
                    }
                    nums[col] = det3(&replaced);
                }
                // Feasibility against all nine rows, scaled by det to stay
                // in integers.
                let feasible = rows.iter().all(|(a, b)| {
                    let lhs =
                        a[0] as i128 * nums[0] + a[1] as i128 * nums[1] + a[2] as i128 * nums[2];
                    let rhs = *b as i128 * det;
                    if det > 0 {
                        lhs <= rhs
                    } else {
                        lhs >= rhs
                    }
                });
                if !feasible {
                    continue;
                }
                // Canonical key with positive determinant and reduced gcd.
                let sign = if det < 0 { -1 } else { 1 };
                let g = gcd(gcd(nums[0], nums[1]), gcd(nums[2], det));
                let scale = sign * g.max(1);
                let key = (
                    nums[0] / scale,
                    nums[1] / scale,
                    nums[2] / scale,
                    det / scale,
                );
                if !seen.insert(key) {
                    continue;
                }
                let ratio = |num: i128| BigRational::new(BigInt::from(num), BigInt::from(det));
                vertices.push(PolytopeVertex {
                    alpha: ratio(nums[0]),
                    beta: ratio(nums[1]),
                    gamma: ratio(nums[2]),
                    active: [i, j, k],
                });
            }
        }
    }
    vertices
}

/// The linear-program value `max(beta + gamma)` over the confusability
/// polytope, attained at a vertex; None when the polytope is empty.
pub fn mu_exponent(w: u64, t: u64, n: u64) -> Option<ExactRatio> {
    enumerate_vertices(w, t, n)
        .into_iter()
        .map(|v| v.beta + v.gamma)
        .max()
}

/// The curve exponent at radius t: the maximum of
/// `1 + l - d - t + n*mu(l, t)` over reachable codeword weights l.
pub fn iota(params: &CodeParams, t: u64) -> ExponentPoint {
    let d = params.d();
    let hi = params.n().min(2 * t);
    if hi < d {
        return ExponentPoint { t, iota: None };
    }
    let mut best: Option<ExactRatio> = None;
    for l in d..=hi {
        let mu = mu_exponent(l, t, params.n())
            .expect("weights in [d, 2t] always admit a feasible triple");
        let value = ExactRatio::from_integer(BigInt::from(1 + l as i64 - d as i64 - t as i64)) + mu;
        if best.as_ref().is_none_or(|b| value > *b) {
            best = Some(value);
        }
    }
    ExponentPoint { t, iota: best }
}

/// The smallest grid error rate t/n whose exponent is nonnegative: a
/// lower estimate of the decoding threshold for q much larger than n.
/// The scan starts at the first radius with any reachable weight and always
/// terminates (iota(n) >= 1).
pub fn asymptotic_threshold(params: &CodeParams) -> ExactRatio {
    scan_exponents(params).1
}

/// The evaluated exponent points of the scan plus the estimate itself.
pub fn scan_exponents(params: &CodeParams) -> (Vec<ExponentPoint>, ExactRatio) {
    let n = params.n();
    let mut curve = Vec::new();
    for t in params.d().div_ceil(2)..=n {
        let point = iota(params, t);
        let nonnegative = point.iota.as_ref().is_some_and(|v| !v.is_negative());
        curve.push(point);
        if nonnegative {
            let estimate = ExactRatio::new(BigInt::from(t), BigInt::from(n));
            return (curve, estimate);
        }
    }
    unreachable!("iota(n) is at least 1 for every valid parameter set")
}
