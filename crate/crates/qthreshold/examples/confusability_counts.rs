//! Confusability counts: how many weight-bounded words sit at least as
//! close to a fixed codeword as to the origin.
//!
//! The closed form is cross-checked against brute-force enumeration of the
//! whole space, and its governing lattice cells are shown for one case.
//!
//! ```text
//! cargo run --example confusability_counts
//! ```

use qthreshold::confusability::{feasible_cells, nu, nu_bruteforce, ConstraintSystem};
use qthreshold::exact::Natural;

fn main() {
    let q = Natural::from(5u32);
    let n = 6u64;

    println!("nu_t(w) over q = 5, n = 6 (rows w, columns t):");
    print!("{:>6}", "");
    for t in 0..=n {
        print!("{t:>8}");
    }
    println!();
    for w in 0..=n {
        print!("w = {w:>2}");
        for t in 0..=n {
            print!("{:>8}", nu(&q, n, w, t));
        }
        println!();
    }

    // Every entry recounted by sweeping all 5^6 words.
    let mut checked = 0;
    for w in 0..=n {
        for t in 0..=n {
            assert_eq!(nu(&q, n, w, t), nu_bruteforce(5, n, w, t).unwrap());
            checked += 1;
        }
    }
    println!("\nall {checked} entries match brute-force enumeration");

    // The lattice cells behind one entry.
    let s = ConstraintSystem::new(3, 2, 6).unwrap();
    println!("\nlattice cells (alpha, beta, gamma) for w = 3, t = 2, n = 6:");
    for cell in feasible_cells(&s) {
        println!("  {cell:?}");
    }
    println!("nu = {}", nu(&q, 6, 3, 2));
}
