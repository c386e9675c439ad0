//! Explicit small q-ary Hamming spaces.
//!
//! Everything here works on fully enumerated spaces `{0, ..., q-1}^n` with
//! `q^n <= 2^20` words: words and their supports, sets that are upward
//! closed under support inclusion ("increasing" sets), the product measure
//! `mu_p` expanded as an exact polynomial in the symbol-error rate p, and
//! boundary counts.
//!
//! The payoff is [`IncreasingSet::margulis_russo_residual`]: for an
//! increasing set A the identity
//!
//! ```text
//! d/dp mu_p(A) = (1/p) * sum_{x in A} h_A(x) mu_p(x)
//! ```
//!
//! holds, where `h_A(x)` counts the distance-1 neighbours of x outside A.
//! Multiplying through by p makes both sides polynomials, so the identity
//! can be verified by exact coefficient comparison, with zero tolerance.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binomial_row, ratio_to_f64, ExactRatio};
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// Explicit enumeration budget: q^n may not exceed 2^20 words.
pub const SPACE_BUDGET_LOG2: u32 = 20;

/// Returns q^n if the space fits a 2^budget_log2 word enumeration budget.
pub fn space_size(q: u16, n: usize, budget_log2: u32) -> Result<u64> {
    if q < 2 {
        return Err(Error::InvalidParams(format!(
            "alphabet size q = {q} must be at least 2"
        )));
    }
    let budget: u64 = 1 << budget_log2;
    let mut size = 1u64;
    for _ in 0..n {
        size = size.saturating_mul(q as u64);
        if size > budget {
            return Err(Error::BudgetExceeded(format!(
                "q^n = {q}^{n} exceeds the 2^{budget_log2} word budget"
            )));
        }
    }
    Ok(size)
}

/// A word of the q-ary Hamming space. The alphabet size is carried by the
/// surrounding set or code, not the word itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn new(symbols: Vec<u16>) -> Self {
        Word(symbols)
    }

    pub fn zero(n: usize) -> Self {
        Word(vec![0; n])
    }

    pub fn symbols(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&s| s != 0).count()
    }

    /// Support as a bitmask; valid because budgeted spaces have n <= 20.
    fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &s) in self.0.iter().enumerate() {
            if s != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Hamming distance to another word of the same length.
    pub fn distance(&self, other: &Word) -> usize {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

pub(crate) fn index_to_word(mut idx: u64, q: u16, n: usize) -> Word {
    let mut symbols = vec![0u16; n];
    for slot in symbols.iter_mut() {
        *slot = (idx % q as u64) as u16;
        idx /= q as u64;
    }
    Word(symbols)
}

/// Iterates the whole space in a fixed canonical order; `size` comes from
/// a prior [`space_size`] budget check.
pub fn space_words(q: u16, n: usize, size: u64) -> impl Iterator<Item = Word> {
    (0..size).map(move |idx| index_to_word(idx, q, n))
}

fn validate_word(w: &Word, q: u16, n: usize) -> Result<()> {
    if w.len() != n {
        return Err(Error::InvalidParams(format!(
            "word length {} does not match n = {n}",
            w.len()
        )));
    }
    if let Some(&s) = w.symbols().iter().find(|&&s| s >= q) {
        return Err(Error::InvalidParams(format!(
            "symbol {s} outside alphabet of size {q}"
        )));
    }
    Ok(())
}

/// An explicit subset of `{0..q-1}^n` that is upward closed under support
/// inclusion: membership of y implies membership of every x with
/// `supp(y) ⊆ supp(x)`. In particular membership depends only on the
/// support.
#[derive(Clone, Debug)]
pub struct IncreasingSet {
    q: u16,
    n: usize,
    members: HashSet<Word>,
}

impl IncreasingSet {
    /// The smallest increasing set containing all seeds: every word whose
    /// support contains the support of some seed.
    pub fn up_closure(q: u16, n: usize, seeds: &[Word]) -> Result<IncreasingSet> {
        let size = space_size(q, n, SPACE_BUDGET_LOG2)?;
        for seed in seeds {
            validate_word(seed, q, n)?;
        }
        let seed_masks: Vec<u32> = seeds.iter().map(Word::support_mask).collect();
        let covers = |mask: u32| seed_masks.iter().any(|&s| s & !mask == 0);
        let mut members = HashSet::new();
        for word in space_words(q, n, size) {
            if covers(word.support_mask()) {
                members.insert(word);
            }
        }
        Ok(IncreasingSet { q, n, members })
    }

    /// Wraps an explicit member set after verifying that it really is
    /// increasing; rejects it otherwise. The check works support-class by
    /// support-class: a class must be entirely in or entirely out, and a
    /// full class forces all its one-bit-larger superclasses full.
    pub fn from_members(q: u16, n: usize, members: HashSet<Word>) -> Result<IncreasingSet> {
        space_size(q, n, SPACE_BUDGET_LOG2)?;
        for w in &members {
            validate_word(w, q, n)?;
        }
        let classes = 1usize << n;
        let mut in_class = vec![0u64; classes];
        for w in &members {
            in_class[w.support_mask() as usize] += 1;
        }
        let qm1 = (q - 1) as u64;
        let mut full = vec![false; classes];
        for (mask, &count) in in_class.iter().enumerate() {
            let class_size = qm1.pow(mask.count_ones());
            if count == class_size {
                full[mask] = true;
            } else if count != 0 {
                return Err(Error::NotIncreasing(format!(
                    "support class {mask:#b} holds {count} of {class_size} words"
                )));
            }
        }
        for mask in 0..classes {
            if !full[mask] {
                continue;
            }
            for bit in 0..n {
                let sup = mask | (1 << bit);
                if sup != mask && !full[sup] {
                    return Err(Error::NotIncreasing(format!(
                        "class {mask:#b} is in but superclass {sup:#b} is not"
                    )));
                }
            }
        }
        Ok(IncreasingSet { q, n, members })
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.members.iter()
    }

    /// Layer sizes `|A_k| = |A ∩ {weight-k words}|` for k = 0..=n.
    pub fn layer_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        for w in &self.members {
            counts[w.weight()] += 1;
        }
        counts
    }

    /// The measure `mu_p(A) = sum_k |A_k| (p/(q-1))^k (1-p)^(n-k)` expanded
    /// as an exact polynomial in p.
    pub fn measure_poly(&self) -> MeasurePoly {
        layered_poly(self.q, self.n, &self.layer_counts())
    }

    /// Number of words at Hamming distance exactly 1 from `x` that lie
    /// outside the set; `x` itself must be a member.
    pub fn boundary_count(&self, x: &Word) -> Result<usize> {
        if !self.contains(x) {
            return Err(Error::InvalidParams(
                "boundary count requested for a word outside the set".into(),
            ));
        }
        let mut count = 0;
        let mut probe = x.clone();
        for i in 0..self.n {
            let original = probe.0[i];
            for s in 0..self.q {
                if s == original {
                    continue;
                }
                probe.0[i] = s;
                if !self.members.contains(&probe) {
                    count += 1;
                }
            }
            probe.0[i] = original;
        }
        Ok(count)
    }

    /// Boundary mass per weight layer: `D_k = sum_{x in A_k} h_A(x)`.
    pub fn boundary_layer_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.n + 1];
        for w in &self.members {
            sums[w.weight()] += self.boundary_count(w).expect("member") as u64;
        }
        sums
    }

    /// The polynomial `p * d/dp mu_p(A) - sum_{x in A} h_A(x) mu_p(x)`,
    /// expanded exactly. The q-ary Margulis-Russo identity states this is
    /// identically zero for every increasing set (both sides are multiplied
    /// by p to stay polynomial, avoiding the division at p = 0).
    pub fn margulis_russo_residual(&self) -> MeasurePoly {
        let lhs = self.measure_poly().derivative().times_p();
        let rhs = layered_poly(self.q, self.n, &self.boundary_layer_sums());
        lhs.sub(&rhs)
    }
}

/// Exact measure polynomial of an arbitrary explicit word collection; the
/// product measure of a word depends only on its weight, so any subset's
/// measure expands through its layer counts, increasing or not.
pub fn measure_of_words<'a>(
    q: u16,
    n: usize,
    words: impl IntoIterator<Item = &'a Word>,
) -> MeasurePoly {
    let mut counts = vec![0u64; n + 1];
    for w in words {
        counts[w.weight()] += 1;
    }
    layered_poly(q, n, &counts)
}

/// Expands `sum_k counts[k] (p/(q-1))^k (1-p)^(n-k)` into monomial form.
fn layered_poly(q: u16, n: usize, counts: &[u64]) -> MeasurePoly {
    debug_assert_eq!(counts.len(), n + 1);
    let mut coeffs = vec![BigInt::zero(); n + 1];
    let mut dens = vec![BigInt::one(); n + 1];
    let qm1 = BigInt::from(q - 1);
    let mut qm1_pow = BigInt::one();
    for (k, &count) in counts.iter().enumerate() {
        if count != 0 {
            let row = binomial_row((n - k) as u64);
            let scaled = BigInt::from(count);
            for (j, c) in row.iter().enumerate() {
                let mut term = &scaled * BigInt::from(c.clone());
                if j % 2 == 1 {
                    term = -term;
                }
                // term / (q-1)^k contributes to the coefficient of p^(k+j);
                // accumulate over a common power-of-(q-1) denominator.
                let idx = k + j;
                coeffs[idx] = &coeffs[idx] * &qm1_pow + term * &dens[idx];
                dens[idx] *= &qm1_pow;
                // Reduce lazily: exact division keeps numbers small enough
                // for the n <= 20 spaces handled here.
            }
        }
        qm1_pow *= &qm1;
    }
    let coeffs = coeffs
        .into_iter()
        .zip(dens)
        .map(|(num, den)| ExactRatio::new(num, den))
        .collect();
    MeasurePoly::from_coeffs(coeffs)
}

/// Univariate polynomial in the symbol-error rate p with exact rational
/// coefficients; `coeffs[i]` multiplies `p^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurePoly {
    coeffs: Vec<ExactRatio>,
}

impl MeasurePoly {
    pub fn zero() -> Self {
        MeasurePoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactRatio>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        MeasurePoly { coeffs }
    }

    pub fn coeffs(&self) -> &[ExactRatio] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, p: &ExactRatio) -> ExactRatio {
        let mut acc = ExactRatio::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c;
        }
        acc
    }

    pub fn eval_f64(&self, p: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * p + ratio_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> MeasurePoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * ExactRatio::from_integer(BigInt::from(i)))
            .collect();
        MeasurePoly::from_coeffs(coeffs)
    }

    /// Multiplies by p (shifts every coefficient up one power).
    pub fn times_p(&self) -> MeasurePoly {
        if self.is_zero() {
            return MeasurePoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ExactRatio::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        MeasurePoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &MeasurePoly) -> MeasurePoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = ExactRatio::zero();
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        MeasurePoly::from_coeffs(coeffs)
    }

    /// Exact bisection root of `P(p) = 1/2` on [0, 1], for polynomials that
    /// are nondecreasing there. Returns a rational within 2^-bits of the
    /// root, or None when the half level is never bracketed.
    pub fn half_crossing(&self, bits: u32) -> Option<ExactRatio> {
        let half = ExactRatio::new(BigInt::one(), BigInt::from(2));
        let mut lo = ExactRatio::zero();
        let mut hi = ExactRatio::one();
        if self.eval(&lo) >= half || self.eval(&hi) < half {
            return None;
        }
        for _ in 0..bits {
            let mid = (&lo + &hi) / ExactRatio::from_integer(2.into());
            if self.eval(&mid) < half {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some((&lo + &hi) / ExactRatio::from_integer(2.into()))
    }
}

/// Random increasing set: the up-closure of `m ~ uniform{1..=8}` uniformly
/// random words. Deterministic per generator state.
pub fn random_increasing_set(q: u16, n: usize, rng: &mut SplitMix64) -> Result<IncreasingSet> {
    let m = 1 + rng.below(8) as usize;
    let seeds: Vec<Word> = (0..m)
        .map(|_| Word::new((0..n).map(|_| rng.below(q as u64) as u16).collect()))
        .collect();
    IncreasingSet::up_closure(q, n, &seeds)
}
