//! Large-field exponent analysis: the base-q exponent of the error-ratio
//! curve and the threshold estimate it yields.
//!
//! ```text
//! cargo run --example asymptotic_exponent
//! ```

use qthreshold::asymptotic::{enumerate_vertices, mu_exponent, scan_exponents};
use qthreshold::exact::{ratio_to_f64, ratio_to_string, Natural};
use qthreshold::mds::CodeParams;

fn main() {
    // The confusability polytope and its linear program for one (w, t, n).
    let (w, t, n) = (6u64, 5u64, 10u64);
    println!("polytope vertices for w = {w}, t = {t}, n = {n}:");
    for v in enumerate_vertices(w, t, n) {
        println!(
            "  ({}, {}, {})  from rows {:?}",
            ratio_to_string(&v.alpha),
            ratio_to_string(&v.beta),
            ratio_to_string(&v.gamma),
            v.active
        );
    }
    println!(
        "max(beta + gamma) = {}\n",
        ratio_to_string(&mu_exponent(w, t, n).unwrap())
    );

    // Exponent scan for a short code over an enormous field.
    let params = CodeParams::new(Natural::from(2u32).pow(64), 48, 12).unwrap();
    let (curve, estimate) = scan_exponents(&params);
    println!(
        "(q=2^64, n=48, k=12), d = {}, delta = {}:",
        params.d(),
        ratio_to_string(&params.delta())
    );
    for point in &curve {
        match &point.iota {
            Some(iota) => println!("  t = {:>2}: iota = {:>6.2}", point.t, ratio_to_f64(iota)),
            None => println!("  t = {:>2}: iota = -inf", point.t),
        }
    }
    println!(
        "estimate: {} (= (d-1)/n; always within [delta/2, delta])",
        ratio_to_string(&estimate)
    );
}
