//! Confusability counts.
//!
//! Fix a word c of weight w in `{0..q-1}^n`. A transmitted zero word that
//! arrives as some x with `w(x) <= t` is wrongly decodable towards c when
//! `d(x, c) <= w(x) = d(x, 0)` (ties decode wrongly, the conservative
//! convention). The number of such x depends on c only through w; it is
//! counted exactly by classifying coordinates of x against c:
//!
//! - `alpha`: coordinates where c is nonzero and x is zero,
//! - `beta`:  coordinates where c is nonzero and x disagrees with a nonzero symbol,
//! - `gamma`: coordinates outside the support of c where x is nonzero.
//!
//! The admissible triples form the lattice points of nine inequalities
//! ([`ConstraintSystem`]), and each triple contributes
//! `C(w, a+b) C(a+b, b) (q-2)^b C(n-w, g) (q-1)^g` words. [`nu`] evaluates
//! that sum; [`nu_bruteforce`] recounts it by sweeping the whole space and
//! is the oracle the closed form is tested against.

use num_traits::{One, Zero};

use crate::exact::{binomial_row_uncached, Natural};
use crate::hamming::{space_size, space_words, Word};
use crate::Result;

/// Brute-force enumeration budget: q^n words up to 2^22.
pub const BRUTE_FORCE_BUDGET_LOG2: u32 = 22;

/// The nine inequalities over the coordinate-type counts (alpha, beta,
/// gamma) of a word confusable with a fixed weight-`w` word at radius `t`
/// in length `n`:
///
/// ```text
/// 0 <= alpha <= w        0 <= beta <= w       0 <= gamma <= n - w
/// gamma <= t + alpha - w      beta + gamma <= t      2 alpha + beta <= w
/// ```
///
/// `beta + gamma <= t` is implied by the others on every lattice point but
/// belongs to the system and is kept for the polytope analysis.
#[derive(Clone, Copy, Debug)]
pub struct ConstraintSystem {
    pub w: u64,
    pub t: u64,
    pub n: u64,
}

impl ConstraintSystem {
    pub fn new(w: u64, t: u64, n: u64) -> crate::Result<Self> {
        if w > n || t > n {
            return Err(crate::Error::InvalidParams(format!(
                "weight w = {w} and radius t = {t} must lie in [0, n = {n}]"
            )));
        }
        Ok(ConstraintSystem { w, t, n })
    }

    /// The system as rows `(a, b)` meaning `a . (alpha, beta, gamma) <= b`.
    pub fn inequalities(&self) -> [([i64; 3], i64); 9] {
        let w = self.w as i64;
        let t = self.t as i64;
        let n = self.n as i64;
        [
            ([-1, 0, 0], 0),
            ([1, 0, 0], w),
            ([0, -1, 0], 0),
            ([0, 1, 0], w),
            ([0, 0, -1], 0),
            ([0, 0, 1], n - w),
            ([-1, 0, 1], t - w),
            ([0, 1, 1], t),
            ([2, 1, 0], w),
        ]
    }

    /// Whether an integer triple satisfies every inequality.
    pub fn contains(&self, alpha: i64, beta: i64, gamma: i64) -> bool {
        self.inequalities()
            .iter()
            .all(|(a, b)| a[0] * alpha + a[1] * beta + a[2] * gamma <= *b)
    }
}

/// All lattice points of the system, in lexicographic (alpha, beta, gamma)
/// order.
pub fn feasible_cells(s: &ConstraintSystem) -> Vec<(u64, u64, u64)> {
    let mut cells = Vec::new();
    for alpha in 0..=s.w {
        for beta in 0..=s.w {
            for gamma in 0..=(s.n - s.w) {
                if s.contains(alpha as i64, beta as i64, gamma as i64) {
                    cells.push((alpha, beta, gamma));
                }
            }
        }
    }
    cells
}

/// Exact number of words x with `w(x) <= t` and `d(x, c) <= w(x)` for a
/// fixed word c of weight `w`.
///
/// The triple sum is regrouped before evaluation: with
/// `C(w, a+b) C(a+b, b) = C(w, a) C(w-a, b)` and the redundant
/// `beta + gamma <= t` dropped, the count factors as
///
/// ```text
/// nu = sum_a C(w, a) * [sum_{b <= w-2a} C(w-a, b) (q-2)^b]
///                    * [sum_{g <= min(n-w, t+a-w)} C(n-w, g) (q-1)^g]
/// ```
///
/// where the beta sum runs by Horner steps and the gamma prefix sum grows
/// incrementally with `a`. That keeps every multiplication big-by-small and
/// makes full-length evaluations (n in the thousands) tractable.
pub fn nu(q: &Natural, n: u64, w: u64, t: u64) -> Natural {
    assert!(w <= n && t <= n, "nu requires w <= n and t <= n");
    assert!(*q >= Natural::from(2u32), "nu requires q >= 2");
    let qm1 = q - 1u32;
    let qm2: Natural = if *q == Natural::from(2u32) {
        Natural::zero()
    } else {
        q - 2u32
    };

    let row_w = binomial_row_uncached(w);
    let row_rest = binomial_row_uncached(n - w);

    // gamma prefix sum G(a) = sum_{g=0}^{cap(a)} C(n-w, g) (q-1)^g with
    // cap(a) = min(n - w, t + a - w); grown incrementally as a rises.
    let mut gamma_sum = Natural::zero();
    let mut gamma_next: u64 = 0; // next gamma index to absorb
    let mut gamma_pow = Natural::one(); // (q-1)^gamma_next

    let mut total = Natural::zero();
    for alpha in 0..=(w / 2) {
        // Feasibility of the gamma range: t + alpha - w >= 0.
        if t + alpha < w {
            continue;
        }
        let cap = (t + alpha - w).min(n - w);
        while gamma_next <= cap {
            gamma_sum += &row_rest[gamma_next as usize] * &gamma_pow;
            gamma_pow *= &qm1;
            gamma_next += 1;
        }

        // Horner over beta: sum_{b=0}^{w-2a} C(w-a, b) (q-2)^b.
        let row_inner = binomial_row_uncached(w - alpha);
        let b_cap = (w - 2 * alpha) as usize;
        let mut beta_sum = row_inner[b_cap].clone();
        for b in (0..b_cap).rev() {
            beta_sum = beta_sum * &qm2 + &row_inner[b];
        }

        total += &row_w[alpha as usize] * beta_sum * &gamma_sum;
    }
    total
}

/// Direct enumeration oracle for [`nu`]: sweeps every word of the space
/// against the canonical weight-`w` word (symbol 1 on the first w
/// coordinates) and counts `w(x) <= t && d(x, c) <= w(x)`.
pub fn nu_bruteforce(q: u16, n: u64, w: u64, t: u64) -> Result<Natural> {
    assert!(w <= n && t <= n, "nu_bruteforce requires w <= n and t <= n");
    let size = space_size(q, n as usize, BRUTE_FORCE_BUDGET_LOG2)?;
    let mut center = vec![0u16; n as usize];
    for slot in center.iter_mut().take(w as usize) {
        *slot = 1;
    }
    let center = Word::new(center);
    let mut count = 0u64;
    for word in space_words(q, n as usize, size) {
        let weight = word.weight();
        if weight <= t as usize && word.distance(&center) <= weight {
            count += 1;
        }
    }
    Ok(Natural::from(count))
}

/// The same count from the raw lattice sum over [`feasible_cells`], with no
/// regrouping; used in tests to pin the regrouped evaluator to the
/// cell-by-cell formula.
#[cfg(test)]
pub(crate) fn nu_by_cells(q: &Natural, n: u64, w: u64, t: u64) -> Natural {
    use crate::exact::binomial;

    let s = ConstraintSystem::new(w, t, n).unwrap();
    let qm1 = q - 1u32;
    let qm2: Natural = if *q == Natural::from(2u32) {
        Natural::zero()
    } else {
        q - 2u32
    };
    let mut total = Natural::zero();
    for (a, b, g) in feasible_cells(&s) {
        total += binomial(w, (a + b) as i64)
            * binomial(a + b, b as i64)
            * qm2.pow(b as u32)
            * binomial(n - w, g as i64)
            * qm1.pow(g as u32);
    }
    total
}
