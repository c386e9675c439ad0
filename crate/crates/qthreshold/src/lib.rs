//! Exact decoding-threshold analysis for q-ary MDS codes.
//!
//! Maximum-likelihood decoding over the q-ary symmetric channel exhibits a
//! sharp threshold: below a critical symbol-error rate decoding almost
//! surely succeeds, above it decoding almost surely fails. This crate
//! computes where that transition sits for MDS codes (Reed-Solomon codes in
//! particular), using exact big-integer and rational arithmetic end to end,
//! and validates every closed form against brute-force and simulation
//! oracles.
//!
//! # Modules
//!
//! - [`exact`] — big-integer binomials, Hamming-ball volumes, q-ary entropy
//! - [`hamming`] — explicit small q-ary spaces, increasing sets, exact
//!   measure polynomials, and a Margulis-Russo identity verifier
//! - [`gaussian`] — normal CDF/quantile and the sharp-threshold bound curves
//! - [`mds`] — MDS code parameters and exact weight enumerators
//! - [`confusability`] — counts of words confusable with a fixed codeword
//! - [`threshold`] — the exact error-ratio curve, crossing search, slope
//! - [`asymptotic`] — large-field exponent analysis via exact-rational
//!   vertex enumeration of the confusability polytope
//! - [`channel`] — small Reed-Solomon codebooks, exhaustive ML decoding,
//!   exact error-probability polynomials, Monte-Carlo simulation
//! - [`cli`] — the `qthreshold` command-line front end
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example ball_volumes          # ball volumes vs q-ary entropy
//! cargo run --example margulis_russo        # exact identity verification
//! cargo run --example threshold_bounds      # sharp-threshold bound curves
//! cargo run --example weight_enumerator     # exact MDS weight enumerators
//! cargo run --example confusability_counts  # closed form vs brute force
//! cargo run --example error_ratio_scan      # g-curve and crossing bracket
//! cargo run --example asymptotic_exponent   # large-q exponent and estimate
//! cargo run --example channel_simulation    # exact P_e vs Monte-Carlo
//! cargo run --example standin_reproduction  # scaled-down full pipeline run
//! ```
//!
//! The same functionality is reachable through the thin `qthreshold` binary
//! (`cargo run -- --help`).

use std::fmt;

pub mod asymptotic;
pub mod channel;
pub mod cli;
pub mod confusability;
pub mod exact;
pub mod gaussian;
pub mod hamming;
pub mod mds;
pub mod rng;
pub mod threshold;

pub use exact::{ExactRatio, Natural};
pub use mds::CodeParams;

/// Crate-wide error type.
#[derive(Debug)]
pub enum Error {
    /// Inconsistent or out-of-domain parameters (bad q, k > n, x outside
    /// [0,1], inconsistent minimum distance, ...).
    InvalidParams(String),
    /// An explicit enumeration was requested on a space larger than the
    /// supported budget.
    BudgetExceeded(String),
    /// A set expected to be upward-closed under support inclusion is not.
    NotIncreasing(String),
    /// A threshold search found no crossing on the requested grid.
    NoCrossing(String),
    /// A cross-check between two independent computations disagreed.
    Mismatch(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(m) => write!(f, "invalid parameters: {m}"),
            Error::BudgetExceeded(m) => write!(f, "enumeration budget exceeded: {m}"),
            Error::NotIncreasing(m) => write!(f, "set is not increasing: {m}"),
            Error::NoCrossing(m) => write!(f, "no threshold crossing: {m}"),
            Error::Mismatch(m) => write!(f, "verification mismatch: {m}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
