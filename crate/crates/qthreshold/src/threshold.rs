//! The exact error-ratio curve and its threshold crossing.
//!
//! For an MDS code and an integer radius t, the ratio
//!
//! ```text
//! g(t/n) = sum_{l=d}^{min(n, 2t)} A_l * nu_t(l)   /   |B(t)|
//! ```
//!
//! over-counts the fraction of weight-at-most-t words that maximum
//! likelihood decodes wrongly (a word close to several codewords is counted
//! once per codeword, and g can exceed 1). Its first crossing of 1/2 along
//! the radius grid t = 0..n lower-bounds the decoding threshold. The radius
//! grid exists because the sum needs an integer radius; real-valued error
//! rates are reported as the rational bracket ((t*-1)/n, t*/n).
//!
//! Everything is exact: numerators are big integers, the ratio is a big
//! rational, and floats only appear as renderings. Full-length evaluations
//! are hours of work, so term computation parallelizes over l with a
//! deterministic reduction and can checkpoint each finished `(t, l)` term
//! to a resumable file.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::confusability::nu;
use crate::exact::{ball_volume, ratio_to_f64, ExactRatio, Natural};
use crate::mds::{weight_distribution, CodeParams};
use crate::{Error, Result};

/// One exactly evaluated sample of the error-ratio curve.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCurvePoint {
    /// Integer radius.
    pub t: u64,
    /// The error rate t/n this radius stands for.
    pub p: ExactRatio,
    /// Exact curve value at this radius.
    pub value: ExactRatio,
    /// Float rendering of `value` (accurate to ~1 ulp; saturates on values
    /// beyond f64 range).
    pub value_float: f64,
}

/// How the crossing is searched for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Evaluate every radius from the bottom of the grid upwards.
    Linear,
    /// Bisect on the radius grid; an order of magnitude fewer evaluations,
    /// valid when the curve is nondecreasing. Monotonicity is audited on
    /// every evaluated point and a violation forces a linear re-scan.
    Bisection,
}

impl SearchStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchStrategy::Linear => "linear",
            SearchStrategy::Bisection => "bisect",
        }
    }
}

/// Options for [`find_threshold`].
pub struct SearchOptions {
    pub strategy: SearchStrategy,
    /// Lowest radius of the grid (default 0).
    pub t_min: u64,
    /// Highest radius of the grid (default n).
    pub t_max: Option<u64>,
    /// Term-level checkpoint for long runs.
    pub checkpoint: Option<Checkpoint>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            strategy: SearchStrategy::Bisection,
            t_min: 0,
            t_max: None,
            checkpoint: None,
        }
    }
}

/// Outcome of a threshold search: the adjacent-radius bracket around the
/// first crossing of 1/2, the local slope, and every evaluated point.
#[derive(Clone, Debug)]
pub struct ThresholdReport {
    /// First radius with g >= 1/2.
    pub crossing_t: u64,
    /// (crossing_t - 1)/n; g is below 1/2 here.
    pub bracket_low: ExactRatio,
    /// crossing_t/n; g reaches 1/2 here. Always bracket_low + 1/n.
    pub bracket_high: ExactRatio,
    /// Central-difference slope of g at the crossing, in d/dp units; absent
    /// when the grid has no point above the crossing.
    pub slope: Option<f64>,
    /// Every evaluated point, sorted by radius.
    pub points: Vec<ExactCurvePoint>,
    /// Whether the evaluated points were nondecreasing in t.
    pub monotone_on_evaluated: bool,
    /// The strategy that produced the result (bisection falls back to
    /// linear when the monotonicity audit fails).
    pub search_used: SearchStrategy,
}

/// Append-only store of finished numerator terms, one line per term:
/// `t,l,<decimal partial numerator>`. Reloading the file skips those terms
/// exactly, making multi-hour runs resumable.
pub struct Checkpoint {
    path: PathBuf,
    done: HashMap<(u64, u64), Natural>,
}

impl Checkpoint {
    /// Opens (or creates) a checkpoint file and loads every complete line.
    pub fn open(path: &Path) -> Result<Checkpoint> {
        let mut done = HashMap::new();
        match File::open(path) {
            Ok(file) => {
                for line in BufReader::new(file).lines() {
                    let line = line?;
                    let trimmed = line.trim();
                    if trimmed.is_empty() {
                        continue;
                    }
                    let mut parts = trimmed.splitn(3, ',');
                    let (Some(t), Some(l), Some(value)) =
                        (parts.next(), parts.next(), parts.next())
                    else {
                        return Err(Error::InvalidParams(format!(
                            "malformed checkpoint line: {trimmed:?}"
                        )));
                    };
                    let parse_u64 = |s: &str| {
                        s.parse::<u64>().map_err(|e| {
                            Error::InvalidParams(format!("bad checkpoint index {s:?}: {e}"))
                        })
                    };
                    let value = Natural::from_str(value)
                        .map_err(|e| Error::InvalidParams(format!("bad checkpoint value: {e}")))?;
                    done.insert((parse_u64(t)?, parse_u64(l)?), value);
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        Ok(Checkpoint {
            path: path.to_path_buf(),
            done,
        })
    }

    pub fn len(&self) -> usize {
        self.done.len()
    }

    pub fn is_empty(&self) -> bool {
        self.done.is_empty()
    }

    fn get(&self, t: u64, l: u64) -> Option<&Natural> {
        self.done.get(&(t, l))
    }

    fn record(&mut self, t: u64, l: u64, value: &Natural) -> Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{t},{l},{value}")?;
        file.flush()?;
        self.done.insert((t, l), value.clone());
        Ok(())
    }
}

/// Reusable curve evaluator: the weight distribution is computed once and
/// every radius evaluation parallelizes over codeword weights.
pub struct CurveEvaluator {
    params: CodeParams,
    weights: Vec<Natural>,
    checkpoint: Option<Mutex<Checkpoint>>,
}

impl CurveEvaluator {
    pub fn new(params: CodeParams) -> Self {
        Self::with_checkpoint(params, None)
    }

    pub fn with_checkpoint(params: CodeParams, checkpoint: Option<Checkpoint>) -> Self {
        let weights = weight_distribution(&params);
        CurveEvaluator {
            params,
            weights,
            checkpoint: checkpoint.map(Mutex::new),
        }
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    /// Exact numerator `sum_l A_l nu_t(l)`; the l-terms are independent and
    /// reduced in a fixed order, so the result is identical for any worker
    /// count.
    fn numerator(&self, t: u64) -> Result<Natural> {
        let d = self.params.d();
        let hi = self.params.n().min(2 * t);
        if hi < d {
            return Ok(Natural::zero());
        }
        let terms: Vec<(u64, Option<Natural>)> = (d..=hi)
            .map(|l| {
                let cached = self
                    .checkpoint
                    .as_ref()
                    .and_then(|c| c.lock().unwrap().get(t, l).cloned());
                (l, cached)
            })
            .collect();
        let computed: Result<Vec<(u64, Natural)>> = terms
            .into_par_iter()
            .map(|(l, cached)| {
                if let Some(v) = cached {
                    return Ok((l, v));
                }
                let term = &self.weights[l as usize] * nu(self.params.q(), self.params.n(), l, t);
                if let Some(ckpt) = &self.checkpoint {
                    ckpt.lock().unwrap().record(t, l, &term)?;
                }
                Ok((l, term))
            })
            .collect();
        let mut computed = computed?;
        computed.sort_by_key(|(l, _)| *l);
        Ok(computed.into_iter().map(|(_, v)| v).sum())
    }

    /// The exact curve value at radius t.
    pub fn value_at(&self, t: u64) -> Result<ExactRatio> {
        let numerator = self.numerator(t)?;
        let ball = ball_volume(self.params.q(), self.params.n(), t)?;
        Ok(ExactRatio::new(BigInt::from(numerator), BigInt::from(ball)))
    }

    pub fn point_at(&self, t: u64) -> Result<ExactCurvePoint> {
        let value = self.value_at(t)?;
        Ok(ExactCurvePoint {
            t,
            p: ExactRatio::new(BigInt::from(t), BigInt::from(self.params.n())),
            value_float: ratio_to_f64(&value),
            value,
        })
    }
}

/// Exact value of the error-ratio estimate at radius t (one-shot form of
/// [`CurveEvaluator::value_at`]).
pub fn g_upper(params: &CodeParams, t: u64) -> ExactRatio {
    CurveEvaluator::new(params.clone())
        .value_at(t)
        .expect("t <= n guaranteed by caller")
}

fn half() -> ExactRatio {
    ExactRatio::new(BigInt::from(1), BigInt::from(2))
}

/// Locates the first radius grid point where the curve reaches 1/2 and
/// reports the adjacent-radius bracket around it.
pub fn find_threshold(params: &CodeParams, options: SearchOptions) -> Result<ThresholdReport> {
    let evaluator = CurveEvaluator::with_checkpoint(params.clone(), options.checkpoint);
    let n = params.n();
    let t_max = options.t_max.unwrap_or(n);
    let t_min = options.t_min;
    if t_min > t_max || t_max > n {
        return Err(Error::InvalidParams(format!(
            "radius grid [{t_min}, {t_max}] must sit inside [0, {n}]"
        )));
    }

    let mut evaluated: HashMap<u64, ExactCurvePoint> = HashMap::new();
    let mut eval = |cache: &mut HashMap<u64, ExactCurvePoint>, t: u64| -> Result<ExactRatio> {
        if let Some(point) = cache.get(&t) {
            return Ok(point.value.clone());
        }
        let point = evaluator.point_at(t)?;
        let value = point.value.clone();
        cache.insert(t, point);
        Ok(value)
    };

    let first = eval(&mut evaluated, t_min)?;
    if first >= half() {
        return Err(Error::NoCrossing(format!(
            "the curve already reaches {first} >= 1/2 at the bottom of the grid (t = {t_min})"
        )));
    }

    let mut search_used = options.strategy;
    let mut crossing = match options.strategy {
        SearchStrategy::Linear => linear_scan(&mut evaluated, &mut eval, t_min + 1, t_max)?,
        SearchStrategy::Bisection => {
            let last = eval(&mut evaluated, t_max)?;
            if last < half() {
                return Err(Error::NoCrossing(format!(
                    "the curve stays below 1/2 over the whole grid (g({t_max}) = {last})"
                )));
            }
            let mut lo = t_min;
            let mut hi = t_max;
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if eval(&mut evaluated, mid)? < half() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        }
    };

    // Audit: bisection only finds the first crossing of a nondecreasing
    // curve. If the evaluated points are out of order, fall back to the
    // exhaustive scan.
    let mut monotone = points_nondecreasing(&evaluated);
    if !monotone && options.strategy == SearchStrategy::Bisection {
        search_used = SearchStrategy::Linear;
        crossing = linear_scan(&mut evaluated, &mut eval, t_min + 1, t_max)?;
        monotone = points_nondecreasing(&evaluated);
    }

    debug_assert!(crossing > t_min);
    // Slope needs both neighbours of the crossing.
    let _ = eval(&mut evaluated, crossing - 1)?;
    let slope = if crossing < n {
        let _ = eval(&mut evaluated, crossing + 1)?;
        let lo = &evaluated[&(crossing - 1)].value;
        let hi = &evaluated[&(crossing + 1)].value;
        Some(ratio_to_f64(
            &((hi - lo) * ExactRatio::new(BigInt::from(n), BigInt::from(2))),
        ))
    } else {
        None
    };

    let mut points: Vec<ExactCurvePoint> = evaluated.into_values().collect();
    points.sort_by_key(|p| p.t);

    Ok(ThresholdReport {
        crossing_t: crossing,
        bracket_low: ExactRatio::new(BigInt::from(crossing - 1), BigInt::from(n)),
        bracket_high: ExactRatio::new(BigInt::from(crossing), BigInt::from(n)),
        slope,
        points,
        monotone_on_evaluated: monotone,
        search_used,
    })
}

fn linear_scan(
    evaluated: &mut HashMap<u64, ExactCurvePoint>,
    eval: &mut impl FnMut(&mut HashMap<u64, ExactCurvePoint>, u64) -> Result<ExactRatio>,
    from: u64,
    to: u64,
) -> Result<u64> {
    for t in from..=to {
        if eval(evaluated, t)? >= half() {
            return Ok(t);
        }
    }
    Err(Error::NoCrossing(format!(
        "the curve stays below 1/2 over the whole grid (scanned up to t = {to})"
    )))
}

fn points_nondecreasing(evaluated: &HashMap<u64, ExactCurvePoint>) -> bool {
    let mut points: Vec<&ExactCurvePoint> = evaluated.values().collect();
    points.sort_by_key(|p| p.t);
    points.windows(2).all(|w| w[0].value <= w[1].value)
}

/// Central-difference slope `(g(t+1) - g(t-1)) * n / 2` of a curve sample
/// at radius t, in d/dp units. Both neighbours must be present.
pub fn slope_at(points: &[ExactCurvePoint], t: u64, n: u64) -> Result<f64> {
    let find = |radius: u64| -> Result<&ExactCurvePoint> {
        points.iter().find(|p| p.t == radius).ok_or_else(|| {
            Error::InvalidParams(format!(
                "slope at t = {t} needs an evaluated point at {radius}"
            ))
        })
    };
    if t == 0 {
        return Err(Error::InvalidParams("slope needs t >= 1".into()));
    }
    let lo = find(t - 1)?;
    let hi = find(t + 1)?;
    let diff = (&hi.value - &lo.value) * ExactRatio::new(BigInt::from(n), BigInt::from(2));
    Ok(ratio_to_f64(&diff))
}
