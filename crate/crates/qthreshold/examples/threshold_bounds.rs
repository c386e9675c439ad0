//! The sharp-threshold bound curves around a pivot.
//!
//! Reproduces the classic transition picture for a minimum distance of 400
//! and a pivot of 0.7: the error-probability bound hugs 0 below the pivot,
//! crosses 1/2 exactly there, and hugs 1 above it.
//!
//! ```text
//! cargo run --example threshold_bounds
//! ```

use qthreshold::gaussian::{
    error_probability_bound, error_probability_slope, increasing_set_bound, BoundCurveSpec,
    Orientation,
};

fn main() {
    let spec = BoundCurveSpec::new(400.0, 0.7, Orientation::ErrorProbability).unwrap();
    println!("error-probability transition, d = 400, pivot 0.7:");
    for i in 1..20 {
        let p = i as f64 / 20.0;
        let value = error_probability_bound(p, &spec).unwrap();
        let bar = "#".repeat((value * 60.0).round() as usize);
        println!("  p = {p:>4.2}  {value:>12.6e}  {bar}");
    }
    println!(
        "closed-form slope at the pivot: {:.4} (sharper with larger d)",
        error_probability_slope(&spec)
    );

    println!("\nincreasing-set bound, Delta = 200, pivot 0.3:");
    let set_spec = BoundCurveSpec::new(200.0, 0.3, Orientation::IncreasingSet).unwrap();
    for p in [0.1, 0.2, 0.28, 0.3, 0.32, 0.4, 0.5] {
        println!(
            "  g(p = {p:>4.2}) = {:.6}",
            increasing_set_bound(p, &set_spec).unwrap()
        );
    }
}
