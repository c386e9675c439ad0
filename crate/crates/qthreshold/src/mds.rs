//! MDS code parameters and exact weight enumerators.
//!
//! An `[n, k, d]` code over an alphabet of size q is MDS when it meets the
//! Singleton bound with equality, `d = n - k + 1`; Reed-Solomon codes are
//! the canonical family. For MDS codes the number of codewords of each
//! weight has a closed form, so the whole weight distribution is computable
//! exactly for parameters far beyond anything enumerable.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{binomial_row, binomial_row_uncached, ExactRatio, Natural};
use crate::{Error, Result};

/// Validated parameters `(q, n, k, d)` of an MDS code, with `d = n - k + 1`
/// always enforced. q is only required to be an integer >= 2 here; field
/// structure matters solely to the explicit simulator in [`crate::channel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    q: Natural,
    n: u64,
    k: u64,
    d: u64,
}

impl CodeParams {
    /// Normalizes `(q, n, k)` into full parameters with `d = n - k + 1`.
    pub fn new(q: Natural, n: u64, k: u64) -> Result<Self> {
        if q < Natural::from(2u32) {
            return Err(Error::InvalidParams(format!(
                "alphabet size q = {q} must be at least 2"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParams(
                "code length n must be at least 1".into(),
            ));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParams(format!(
                "dimension k = {k} must satisfy 1 <= k <= n = {n}"
            )));
        }
        let d = n - k + 1;
        Ok(CodeParams { q, n, k, d })
    }

    /// Like [`CodeParams::new`], but with an explicitly supplied minimum
    /// distance that must agree with the MDS relation.
    pub fn with_distance(q: Natural, n: u64, k: u64, d: u64) -> Result<Self> {
        let params = CodeParams::new(q, n, k)?;
        if params.d != d {
            return Err(Error::InvalidParams(format!(
                "supplied d = {d} violates the MDS relation d = n - k + 1 = {}",
                params.d
            )));
        }
        Ok(params)
    }

    pub fn q(&self) -> &Natural {
        &self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Normalized minimum distance d/n.
    pub fn delta(&self) -> ExactRatio {
        ExactRatio::new(BigInt::from(self.d), BigInt::from(self.n))
    }
}

/// Number of codewords of weight exactly `l`:
///
/// ```text
/// A_l = C(n, l) * sum_{j=0}^{l-d} (-1)^j C(l, j) (q^{1+l-d-j} - 1)   (l >= d)
/// A_0 = 1,   A_l = 0 otherwise
/// ```
///
/// Panics when the closed form is negative, which happens exactly when the
/// parameters admit no MDS code (lengths beyond roughly q + 1); see
/// [`weight_enumerator_formula`] for the raw signed value.
pub fn weight_enumerator(params: &CodeParams, l: u64) -> Natural {
    let value = weight_enumerator_formula(params, l);
    assert!(
        !value.is_negative(),
        "closed-form weight count is negative at l = {l} for {params:?}; \
         no MDS code with these parameters exists"
    );
    value.magnitude().clone()
}

/// The raw signed value of the closed form. It equals the codeword count
/// whenever an MDS code with these parameters exists; it can dip below
/// zero when none does (e.g. q = 4, n = 7, k = 2), yet its total over
/// l = 0..=n is still exactly `q^k` as a formal identity either way.
pub fn weight_enumerator_formula(params: &CodeParams, l: u64) -> BigInt {
    if l == 0 {
        return BigInt::one();
    }
    if l < params.d || l > params.n {
        return BigInt::zero();
    }
    let powers = power_table(&params.q, l - params.d + 1);
    enumerator_from_parts(params, l, &binomial_row_uncached(l), &powers)
}

/// The full distribution `A_0 ..= A_n`. Panics outside the MDS existence
/// range, like [`weight_enumerator`].
pub fn weight_distribution(params: &CodeParams) -> Vec<Natural> {
    weight_distribution_formula(params)
        .into_iter()
        .enumerate()
        .map(|(l, value)| {
            assert!(
                !value.is_negative(),
                "closed-form weight count is negative at l = {l} for {params:?}; \
                 no MDS code with these parameters exists"
            );
            value.magnitude().clone()
        })
        .collect()
}

/// The signed distribution; sums to exactly `q^k` for every parameter set.
pub fn weight_distribution_formula(params: &CodeParams) -> Vec<BigInt> {
    let n = params.n;
    let powers = power_table(&params.q, params.k);
    let mut dist = Vec::with_capacity(n as usize + 1);
    for l in 0..=n {
        if l == 0 {
            dist.push(BigInt::one());
        } else if l < params.d {
            dist.push(BigInt::zero());
        } else {
            dist.push(enumerator_from_parts(
                params,
                l,
                &binomial_row_uncached(l),
                &powers,
            ));
        }
    }
    dist
}

/// `q^0 ..= q^max` (the enumerator needs exponents `1 + l - d - j <= k`).
fn power_table(q: &Natural, max: u64) -> Vec<Natural> {
    let mut powers = Vec::with_capacity(max as usize + 1);
    powers.push(Natural::one());
    for _ in 0..max {
        let next = powers.last().expect("nonempty") * q;
        powers.push(next);
    }
    powers
}

fn enumerator_from_parts(
    params: &CodeParams,
    l: u64,
    row_l: &[Natural],
    powers: &[Natural],
) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=(l - params.d) {
        let exponent = (1 + l - params.d - j) as usize;
        let term = BigInt::from(&row_l[j as usize] * (&powers[exponent] - 1u32));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    BigInt::from(binomial_row(params.n)[l as usize].clone()) * acc
}
