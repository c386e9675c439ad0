//! The exact error-ratio curve of an MDS code and its threshold bracket.
//!
//! ```text
//! cargo run --example error_ratio_scan
//! ```

use qthreshold::exact::{ratio_to_string, Natural};
use qthreshold::mds::CodeParams;
use qthreshold::threshold::{find_threshold, g_upper, SearchOptions, SearchStrategy};

fn main() {
    // A 25-codeword toy: every value checkable by enumeration.
    let toy = CodeParams::new(Natural::from(5u32), 4, 2).unwrap();
    println!("exact curve for (q=5, n=4, k=2):");
    for t in 0..=4u64 {
        let value = g_upper(&toy, t);
        println!("  t = {t}, p = {t}/4: g = {}", ratio_to_string(&value));
    }

    let report = find_threshold(&toy, SearchOptions::default()).unwrap();
    println!(
        "crossing bracket: ({}, {})\n",
        ratio_to_string(&report.bracket_low),
        ratio_to_string(&report.bracket_high)
    );

    // A mid-size code, found by bisection: the curve is evaluated at a
    // handful of radii only.
    let mid = CodeParams::new(Natural::from(2u32).pow(16), 64, 8).unwrap();
    let report = find_threshold(
        &mid,
        SearchOptions {
            strategy: SearchStrategy::Bisection,
            ..SearchOptions::default()
        },
    )
    .unwrap();
    println!(
        "(q=2^16, n=64, k=8), d = {}, delta = {}:",
        mid.d(),
        ratio_to_string(&mid.delta())
    );
    println!(
        "  bracket ({}, {}) from {} curve evaluations, monotone on all of them: {}",
        ratio_to_string(&report.bracket_low),
        ratio_to_string(&report.bracket_high),
        report.points.len(),
        report.monotone_on_evaluated
    );
    for point in &report.points {
        println!("    t = {:>3}: g = {:.6e}", point.t, point.value_float);
    }
}
