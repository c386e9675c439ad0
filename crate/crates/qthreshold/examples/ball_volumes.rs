//! Exact Hamming-ball volumes and their entropy approximation.
//!
//! ```text
//! cargo run --example ball_volumes
//! ```

use qthreshold::exact::{ball_volume, entropy_q, vol, Natural};

fn main() {
    let q = Natural::from(3u32);

    println!("exact ball volumes over the ternary alphabet, n = 12:");
    println!(
        "{:>4} {:>10} {:>12} {:>12}",
        "t", "|B(t)|", "vol(q,n,t)", "H_q(t/n)"
    );
    let n = 12u64;
    for t in 0..=n {
        let ball = ball_volume(&q, n, t).unwrap();
        let v = vol(&q, n, t).unwrap();
        let h = entropy_q(&q, t as f64 / n as f64).unwrap();
        println!("{t:>4} {ball:>10} {v:>12.6} {h:>12.6}");
    }

    // The normalized log-volume converges to the entropy as blocks grow.
    println!("\nvol vs entropy at t/n = 1/3:");
    for n in [30u64, 90, 300, 900] {
        let t = n / 3;
        let v = vol(&q, n, t).unwrap();
        let h = entropy_q(&q, t as f64 / n as f64).unwrap();
        println!(
            "  n = {n:>4}: vol = {v:.6}, H_q = {h:.6}, gap = {:.6}",
            (v - h).abs()
        );
    }

    // Counts stay exact at any magnitude.
    let big = ball_volume(&Natural::from(2u32).pow(64), 2048, 1792).unwrap();
    println!(
        "\n|B(1792)| for q = 2^64, n = 2048 has {} decimal digits",
        big.to_string().len()
    );
}
