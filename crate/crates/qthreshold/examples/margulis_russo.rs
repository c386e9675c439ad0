//! Exact verification of the q-ary Margulis-Russo identity.
//!
//! For an increasing set A, the derivative of its measure equals the
//! boundary integral: p * d/dp mu_p(A) - sum_{x in A} h_A(x) mu_p(x) is the
//! zero polynomial. Both sides are expanded with exact rational
//! coefficients, so "equal" means coefficient-wise identical.
//!
//! ```text
//! cargo run --example margulis_russo
//! ```

use qthreshold::exact::ratio_to_string;
use qthreshold::hamming::{random_increasing_set, IncreasingSet, Word};
use qthreshold::rng::SplitMix64;

fn main() {
    // A set with a known closed form: all words with a nonzero first
    // coordinate has measure exactly p.
    let first = IncreasingSet::up_closure(4, 3, &[Word::new(vec![1, 0, 0])]).unwrap();
    let coeffs: Vec<String> = first
        .measure_poly()
        .coeffs()
        .iter()
        .map(ratio_to_string)
        .collect();
    println!("mu_p({{x : x_1 != 0}}) coefficients: {coeffs:?}");
    println!(
        "residual is zero: {}\n",
        first.margulis_russo_residual().is_zero()
    );

    let mut rng = SplitMix64::new(7);
    let mut verified = 0;
    for q in [3u16, 4, 5] {
        for n in [2usize, 3, 4] {
            for _ in 0..5 {
                let set = random_increasing_set(q, n, &mut rng).unwrap();
                let residual = set.margulis_russo_residual();
                assert!(residual.is_zero(), "identity failed on q={q} n={n}");
                verified += 1;
                if verified % 15 == 0 {
                    let poly = set.measure_poly();
                    println!(
                        "q = {q}, n = {n}: |A| = {:>3}, deg mu_p = {:?}, residual = 0",
                        set.len(),
                        poly.degree()
                    );
                }
            }
        }
    }
    println!("\nresidual identically zero on all {verified} random increasing sets");
}
