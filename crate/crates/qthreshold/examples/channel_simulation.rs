//! Ground truth on a toy code: exact error polynomial, Monte-Carlo
//! estimates, and the sharp-threshold bound, side by side.
//!
//! ```text
//! cargo run --example channel_simulation
//! ```

use qthreshold::channel::{estimate_pe, exact_pe, rs_build};
use qthreshold::exact::ratio_to_f64;
use qthreshold::gaussian::{error_probability_bound, BoundCurveSpec, Orientation};

fn main() {
    let code = rs_build(5, 4, 2).unwrap();
    println!(
        "(q=5, n=4, k=2) Reed-Solomon: {} codewords, d = {}",
        code.codebook().len(),
        code.d()
    );

    let pe = exact_pe(&code).unwrap();
    println!(
        "exact P_e coefficients: {:?}",
        pe.coeffs().iter().map(ratio_to_f64).collect::<Vec<_>>()
    );

    let p_c = pe.half_crossing(40).unwrap();
    let p_c_f = ratio_to_f64(&p_c);
    println!("exact half-error point p_c = {p_c_f:.10}\n");

    let spec = BoundCurveSpec::new(code.d() as f64, p_c_f, Orientation::ErrorProbability).unwrap();
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>10}",
        "p", "exact P_e", "monte-carlo", "3s half-w", "bound"
    );
    for i in 1..=9u32 {
        let p = i as f64 / 10.0;
        let exact = pe.eval_f64(p);
        let report = estimate_pe(&code, p, 100_000, 42).unwrap();
        let bound = error_probability_bound(p, &spec).unwrap();
        let side = if p < p_c_f { "<=" } else { ">=" };
        println!(
            "{p:>5.2} {exact:>12.6} {:>12.6} {:>12.6} {side} {bound:>10.6}",
            report.p_e_hat, report.half_width_3sigma
        );
        assert!((report.p_e_hat - exact).abs() <= report.half_width_3sigma.max(1e-3));
    }
    println!("\nevery estimate within its 3-sigma band; the bound brackets P_e around p_c");
}
