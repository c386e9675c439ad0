//! Exact MDS weight distributions, from toy codes to cryptographic sizes.
//!
//! ```text
//! cargo run --example weight_enumerator
//! ```

use num_bigint::BigInt;
use qthreshold::exact::Natural;
use qthreshold::mds::{weight_distribution, weight_distribution_formula, CodeParams};

fn main() {
    // Small enough to check against a full codebook by hand.
    let toy = CodeParams::new(Natural::from(5u32), 4, 2).unwrap();
    println!("(q=5, n=4, k=2), d = {}:", toy.d());
    for (l, count) in weight_distribution(&toy).iter().enumerate() {
        println!("  A_{l} = {count}");
    }

    // A mid-size code: counts run to dozens of digits but stay exact.
    let mid = CodeParams::new(Natural::from(2u32).pow(16), 32, 8).unwrap();
    let dist = weight_distribution(&mid);
    let total: Natural = dist.iter().cloned().sum();
    println!("\n(q=2^16, n=32, k=8), d = {}:", mid.d());
    println!("  A_d     = {}", dist[mid.d() as usize]);
    println!("  A_n     = {}", dist[32]);
    println!("  sum A_l = {total}");
    println!("  q^k     = {}", mid.q().pow(8));

    // The closed form is a formal identity: its signed total is q^k even
    // where no MDS code exists (here none does: n is far beyond q + 1).
    let phantom = CodeParams::new(Natural::from(4u32), 12, 3).unwrap();
    let signed = weight_distribution_formula(&phantom);
    let negatives = signed
        .iter()
        .filter(|v| v.sign() == num_bigint::Sign::Minus)
        .count();
    let total: BigInt = signed.into_iter().sum();
    println!("\n(q=4, n=12, k=3): {negatives} negative closed-form counts (no such code), signed total still {total} = 4^3");
}
