//! Ground-truth machinery for small codes.
//!
//! Everything the closed forms claim is recheckable here at desk scale:
//! explicit Reed-Solomon codebooks over small prime fields, the exhaustive
//! maximum-likelihood error region around the zero codeword, its exact
//! error-probability polynomial, and a seeded Monte-Carlo simulator of the
//! q-ary symmetric channel.
//!
//! Decoding ties count as errors throughout: a received word that is as
//! close to some other codeword as to the sent one is treated as wrongly
//! decoded, the conservative convention for security analysis.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hamming::{measure_of_words, space_size, space_words, IncreasingSet, MeasurePoly, Word};
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// Codebook budget: q^k explicit codewords up to 2^20.
pub const CODEBOOK_BUDGET_LOG2: u32 = 20;

const SMALL_PRIMES: [u16; 6] = [2, 3, 5, 7, 11, 13];

/// An explicit Reed-Solomon code over a small prime field: the evaluations
/// of all polynomials of degree < k at the first n field elements
/// 0, 1, ..., n-1.
#[derive(Clone, Debug)]
pub struct SmallCode {
    q: u16,
    n: u64,
    k: u64,
    codebook: Vec<Word>,
}

/// Builds the explicit codebook. Requires a prime q <= 13, n <= q and
/// q^k within the codebook budget.
pub fn rs_build(q: u16, n: u64, k: u64) -> Result<SmallCode> {
    if !SMALL_PRIMES.contains(&q) {
        return Err(Error::InvalidParams(format!(
            "explicit simulation needs a prime field of size <= 13, got q = {q}"
        )));
    }
    if n == 0 || n > q as u64 {
        return Err(Error::InvalidParams(format!(
            "evaluation code needs 1 <= n <= q, got n = {n}, q = {q}"
        )));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= k <= n, got k = {k}"
        )));
    }
    let size = space_size(q, k as usize, CODEBOOK_BUDGET_LOG2)?;
    let mut codebook = Vec::with_capacity(size as usize);
    // Coefficient vectors in odometer order; index 0 is the zero codeword.
    for coeffs in space_words(q, k as usize, size) {
        let word = Word::new(
            (0..n as u16)
                .map(|point| eval_poly(coeffs.symbols(), point, q))
                .collect(),
        );
        codebook.push(word);
    }
    Ok(SmallCode { q, n, k, codebook })
}

/// Horner evaluation of `sum coeffs[i] x^i` in F_q.
fn eval_poly(coeffs: &[u16], x: u16, q: u16) -> u16 {
    let mut acc: u32 = 0;
    for &c in coeffs.iter().rev() {
        acc = (acc * x as u32 + c as u32) % q as u32;
    }
    acc as u16
}

impl SmallCode {
    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Minimum distance by the MDS relation; the tests verify it against
    /// the exhaustive pairwise minimum.
    pub fn d(&self) -> u64 {
        self.n - self.k + 1
    }

    pub fn codebook(&self) -> &[Word] {
        &self.codebook
    }

    fn zero_word(&self) -> Word {
        Word::zero(self.n as usize)
    }
}

/// The explicit ML error region around the zero codeword: every word at
/// least as close to some nonzero codeword as to zero.
pub fn bad_region(code: &SmallCode) -> Result<Vec<Word>> {
    let size = space_size(code.q, code.n as usize, CODEBOOK_BUDGET_LOG2)?;
    Ok(space_words(code.q, code.n as usize, size)
        .filter(|x| {
            let to_zero = x.weight();
            code.codebook[1..].iter().any(|c| x.distance(c) <= to_zero)
        })
        .collect())
}

/// The exact error probability `mu_p(A_0)` as a polynomial in the channel
/// error rate p.
///
/// The region is first verified to be upward closed under support
/// inclusion; that property is the load-bearing assumption behind the sharp
/// threshold derivation, so a failure aborts instead of being papered over.
/// It really can fail: the (7, 6, 2) Reed-Solomon code has a weight-3
/// support class with 204 of 216 words in the region. Use
/// [`region_measure`] for the polynomial of the region as it actually is.
pub fn exact_pe(code: &SmallCode) -> Result<MeasurePoly> {
    let region = bad_region(code)?;
    let set = IncreasingSet::from_members(code.q, code.n as usize, region.into_iter().collect())
        .map_err(|e| match e {
            Error::NotIncreasing(m) => Error::NotIncreasing(format!(
                "ML error region of ({}, {}, {}) is not increasing: {m}",
                code.q, code.n, code.k
            )),
            other => other,
        })?;
    Ok(set.measure_poly())
}

/// The exact measure polynomial of the ML error region with no structural
/// assumption on the region at all. Coincides with [`exact_pe`] whenever
/// the region is increasing.
pub fn region_measure(code: &SmallCode) -> Result<MeasurePoly> {
    let region = bad_region(code)?;
    Ok(measure_of_words(code.q, code.n as usize, region.iter()))
}

/// One pass of the q-ary symmetric channel: each coordinate is kept with
/// probability 1 - p and otherwise replaced by a uniformly random different
/// symbol.
pub fn transmit(x: &Word, p: f64, q: u16, rng: &mut SplitMix64) -> Word {
    debug_assert!((0.0..=1.0).contains(&p));
    let symbols = x
        .symbols()
        .iter()
        .map(|&s| {
            if rng.next_f64() < p {
                let offset = 1 + rng.below(q as u64 - 1) as u16;
                (s + offset) % q
            } else {
                s
            }
        })
        .collect();
    Word::new(symbols)
}

/// Nearest codeword; ties resolve to the lowest codebook index. Error
/// accounting never depends on that choice.
pub fn ml_decode<'a>(y: &Word, code: &'a SmallCode) -> &'a Word {
    code.codebook
        .iter()
        .min_by_key(|c| y.distance(c))
        .expect("codebook is nonempty")
}

/// Whether ML decoding of y counts as an error when `sent` was transmitted:
/// some other codeword is at most as far from y as the sent one.
pub fn ml_error(y: &Word, code: &SmallCode, sent: usize) -> bool {
    let own = y.distance(&code.codebook[sent]);
    code.codebook
        .iter()
        .enumerate()
        .any(|(i, c)| i != sent && y.distance(c) <= own)
}

/// Monte-Carlo estimate of the error probability when the zero codeword is
/// sent over the q-ary symmetric channel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub p: f64,
    pub trials: u64,
    pub errors: u64,
    pub p_e_hat: f64,
    pub half_width_3sigma: f64,
    pub seed: u64,
    /// Generator identifier; streams are forked per trial as
    /// `seed ^ trial_index`, so reports do not depend on the worker count.
    pub rng: String,
}

/// Runs `trials` independent transmissions of the zero codeword and counts
/// ML decoding errors. Deterministic for a fixed seed regardless of how
/// the trials are scheduled across threads.
pub fn estimate_pe(code: &SmallCode, p: f64, trials: u64, seed: u64) -> Result<SimulationReport> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!(
            "channel error rate p = {p} outside [0, 1]"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidParams("need at least one trial".into()));
    }
    let zero = code.zero_word();
    let errors: u64 = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = SplitMix64::new(seed ^ trial);
            let received = transmit(&zero, p, code.q, &mut rng);
            u64::from(ml_error(&received, code, 0))
        })
        .sum();
    let p_e_hat = errors as f64 / trials as f64;
    let half_width_3sigma = 3.0 * (p_e_hat * (1.0 - p_e_hat) / trials as f64).sqrt();
    Ok(SimulationReport {
        p,
        trials,
        errors,
        p_e_hat,
        half_width_3sigma,
        seed,
        rng: SplitMix64::ALGORITHM.to_string(),
    })
}
