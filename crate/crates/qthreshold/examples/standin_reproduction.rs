//! Scaled-down run of the full pipeline: a length-256 rate-1/8 code over a
//! 2^31-sized counting alphabet. Finishes in seconds and shows the same
//! structure as the multi-hour full-scale job (which is
//! `qthreshold threshold --q 2^64 --n 2048 --k 256 --confirm-long-run`).
//!
//! ```text
//! cargo run --example standin_reproduction
//! ```

use std::time::Instant;

use qthreshold::asymptotic::asymptotic_threshold;
use qthreshold::exact::{ratio_to_f64, ratio_to_string, Natural};
use qthreshold::gaussian::{error_probability_slope, BoundCurveSpec, Orientation};
use qthreshold::mds::CodeParams;
use qthreshold::threshold::{find_threshold, SearchOptions};

fn main() {
    let params = CodeParams::new(Natural::from((1u64 << 31) - 1), 256, 32).unwrap();
    println!(
        "code (q=2^31-1, n=256, k=32): d = {}, delta = {} ~ {:.4}",
        params.d(),
        ratio_to_string(&params.delta()),
        ratio_to_f64(&params.delta())
    );

    let start = Instant::now();
    let report = find_threshold(&params, SearchOptions::default()).unwrap();
    println!(
        "threshold bracket ({}, {}) = ({:.6}, {:.6}) after {} evaluations in {:.2?}",
        ratio_to_string(&report.bracket_low),
        ratio_to_string(&report.bracket_high),
        ratio_to_f64(&report.bracket_low),
        ratio_to_f64(&report.bracket_high),
        report.points.len(),
        start.elapsed()
    );

    // Where the transition sits relative to the two analytic anchors.
    let estimate = asymptotic_threshold(&params);
    println!(
        "large-field exponent estimate: {} = {:.4} (exact in the q >> n limit)",
        ratio_to_string(&estimate),
        ratio_to_f64(&estimate)
    );
    let p_c = ratio_to_f64(&report.bracket_high);
    let spec = BoundCurveSpec::new(params.d() as f64, p_c, Orientation::ErrorProbability).unwrap();
    println!(
        "bound-curve steepness at the bracket: {:.1} (the d-driven sharpness scale)",
        error_probability_slope(&spec)
    );
    println!(
        "raw grid-step slope of the exact curve: {:?} (each radius step multiplies g by ~q)",
        report.slope
    );
}
