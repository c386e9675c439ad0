//! Arbitrary-precision combinatorial primitives shared by every other
//! module: binomial coefficients with per-row memoization, q-ary Hamming
//! ball volumes, the normalized log-volume `vol`, and q-ary entropy.
//!
//! All counting is exact. Floating point appears only where a logarithm is
//! explicitly requested, and is then derived from the exact integer by
//! splitting it into a 64-bit mantissa and a power-of-two exponent, which
//! keeps at least 15 significant digits even for integers tens of
//! thousands of bits wide.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision non-negative integer; the carrier of every count in
/// the crate (ball volumes, weight enumerators, confusability counts).
pub type Natural = BigUint;

/// Exact rational number, kept in lowest terms with a positive denominator.
pub type ExactRatio = BigRational;

fn row_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<Natural>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<Natural>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// One full row `C(n, 0..=n)` of Pascal's triangle.
///
/// Rows are built by the multiplicative recurrence
/// `C(n, k+1) = C(n, k) * (n - k) / (k + 1)` (the division is exact) and
/// memoized per `n`, because curve evaluations reuse whole rows. The cache
/// is write-once: concurrent fills of the same row produce identical values.
pub fn binomial_row(n: u64) -> Arc<Vec<Natural>> {
    if let Some(row) = row_cache().lock().unwrap().get(&n) {
        return Arc::clone(row);
    }
    let row = Arc::new(binomial_row_uncached(n));
    Arc::clone(row_cache().lock().unwrap().entry(n).or_insert(row))
}

/// Same row without touching the shared cache. Inner loops that sweep many
/// distinct `n` use this to keep the cache from ballooning.
pub(crate) fn binomial_row_uncached(n: u64) -> Vec<Natural> {
    let len = usize::try_from(n).expect("binomial row too long for this platform") + 1;
    let mut row = Vec::with_capacity(len);
    row.push(Natural::one());
    for k in 0..n {
        let next = (&row[k as usize] * (n - k)) / (k + 1);
        row.push(next);
    }
    row
}

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Natural {
    if k < 0 || k as u64 > n {
        return Natural::zero();
    }
    binomial_row(n)[k as usize].clone()
}

fn check_q(q: &Natural) -> Result<()> {
    if *q < Natural::from(2u32) {
        return Err(Error::InvalidParams(format!(
            "alphabet size q = {q} must be at least 2"
        )));
    }
    Ok(())
}

/// Exact cardinality of the radius-`t` Hamming ball in `{0, ..., q-1}^n`:
/// `|B(t)| = sum_{i=0..=t} C(n, i) (q - 1)^i`.
pub fn ball_volume(q: &Natural, n: u64, t: u64) -> Result<Natural> {
    check_q(q)?;
    if t > n {
        return Err(Error::InvalidParams(format!(
            "radius t = {t} exceeds length n = {n}"
        )));
    }
    let row = binomial_row(n);
    let qm1 = q - 1u32;
    let mut pow = Natural::one();
    let mut total = Natural::one(); // i = 0 term
    for i in 1..=t {
        pow *= &qm1;
        total += &row[i as usize] * &pow;
    }
    Ok(total)
}

/// Natural logarithm of a positive big integer, accurate to a few ulps.
///
/// The integer is split as `m * 2^s` with a 64-bit mantissa `m`, so the
/// result keeps full double precision regardless of the integer's size.
pub fn ln_big(x: &Natural) -> f64 {
    assert!(!x.is_zero(), "logarithm of zero");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().expect("64-bit integer converts").ln();
    }
    let shift = bits - 64;
    let mantissa = (x >> shift).to_f64().expect("64-bit mantissa fits f64");
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Normalized log-volume `vol(q, n, t) = log_q |B(t)| / n`, computed from
/// the exact ball cardinality.
pub fn vol(q: &Natural, n: u64, t: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParams("vol needs n >= 1".into()));
    }
    let ball = ball_volume(q, n, t)?;
    // |B(n)| = q^n and |B(0)| = 1 make the endpoints exact by identity.
    if t == n {
        return Ok(1.0);
    }
    if t == 0 {
        return Ok(0.0);
    }
    Ok(ln_big(&ball) / (n as f64 * ln_big(q)))
}

/// q-ary entropy
/// `H_q(x) = -x log_q(x) - (1 - x) log_q(1 - x) + x log_q(q - 1)`,
/// extended by continuity at x = 0 and x = 1.
pub fn entropy_q(q: &Natural, x: f64) -> Result<f64> {
    check_q(q)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParams(format!(
            "entropy argument x = {x} outside [0, 1]"
        )));
    }
    let ln_q = ln_big(q);
    let qm1 = q - 1u32;
    let ln_qm1 = if qm1.is_one() { 0.0 } else { ln_big(&qm1) };
    let mut h = x * ln_qm1 / ln_q;
    if x > 0.0 {
        h -= x * x.ln() / ln_q;
    }
    if x < 1.0 {
        h -= (1.0 - x) * (1.0 - x).ln() / ln_q;
    }
    Ok(h)
}

/// Nearest f64 to an exact rational, safe for numerators and denominators of
/// any size (overflow saturates to infinity, underflow to zero).
pub fn ratio_to_f64(r: &ExactRatio) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (num_mant, num_exp) = mantissa_exp(r.numer().magnitude());
    let (den_mant, den_exp) = mantissa_exp(r.denom().magnitude());
    let scale = num_exp - den_exp;
    let magnitude = if scale > 1_100 {
        f64::INFINITY
    } else if scale < -1_100 {
        0.0
    } else {
        (num_mant / den_mant) * 2f64.powi(scale as i32)
    };
    if r.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

fn mantissa_exp(x: &BigUint) -> (f64, i64) {
    let bits = x.bits();
    if bits <= 64 {
        (x.to_f64().expect("fits"), 0)
    } else {
        let shift = bits - 64;
        (
            (x >> shift).to_f64().expect("64-bit mantissa fits"),
            shift as i64,
        )
    }
}

/// Renders a rational as `num/den` (always with the denominator, reduced).
pub fn ratio_to_string(r: &ExactRatio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer into an exact rational.
pub fn parse_ratio(s: &str) -> Result<ExactRatio> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::InvalidParams(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::InvalidParams("zero denominator".into()));
            }
            Ok(ExactRatio::new(parse_int(num)?, den))
        }
        None => Ok(ExactRatio::from_integer(parse_int(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn binomial_basic_values() {
        assert_eq!(binomial(4, 2), nat(6));
        assert_eq!(binomial(9, 3), nat(84));
        for n in [0u64, 1, 7, 100, 2000] {
            assert_eq!(binomial(n, 0), nat(1));
        }
        assert_eq!(binomial(5, -1), nat(0));
        assert_eq!(binomial(5, 6), nat(0));
    }

    #[test]
    fn pascal_identity_up_to_256() {
        for n in 1..=256u64 {
            let row = binomial_row(n);
            let prev = binomial_row(n - 1);
            for k in 1..n as usize {
                assert_eq!(
                    row[k],
                    &prev[k] + &prev[k - 1],
                    "pascal failed at ({n}, {k})"
                );
            }
        }
    }

    /// Independent oracle: count words of weight <= t in {0..q-1}^n by
    /// direct enumeration.
    fn ball_by_enumeration(q: u64, n: u32, t: u32) -> u64 {
        let mut count = 0;
        let size = q.pow(n);
        for mut idx in 0..size {
            let mut weight = 0;
            for _ in 0..n {
                if idx % q != 0 {
                    weight += 1;
                }
                idx /= q;
            }
            if weight <= t as u64 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn ball_volume_examples_and_enumeration() {
        assert_eq!(ball_volume(&nat(3), 4, 0).unwrap(), nat(1));
        assert_eq!(ball_volume(&nat(3), 4, 4).unwrap(), nat(81));
        assert_eq!(ball_volume(&nat(3), 4, 1).unwrap(), nat(9));
        for q in 2..=5u64 {
            for n in 1..=5u32 {
                for t in 0..=n {
                    let expected = ball_by_enumeration(q, n, t);
                    assert_eq!(
                        ball_volume(&nat(q), n as u64, t as u64).unwrap(),
                        nat(expected),
                        "ball mismatch at q={q} n={n} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn ball_volume_strictly_increasing_in_radius() {
        for q in [2u64, 3, 7, 64] {
            for n in [1u64, 4, 9] {
                let mut prev = ball_volume(&nat(q), n, 0).unwrap();
                for t in 1..=n {
                    let cur = ball_volume(&nat(q), n, t).unwrap();
                    assert!(cur > prev, "not increasing at q={q} n={n} t={t}");
                    prev = cur;
                }
            }
        }
    }

    #[test]
    fn ball_volume_rejects_bad_input() {
        assert!(ball_volume(&nat(1), 4, 1).is_err());
        assert!(ball_volume(&nat(3), 4, 5).is_err());
    }

    #[test]
    fn vol_endpoints_and_midpoint() {
        assert_eq!(vol(&nat(3), 4, 4).unwrap(), 1.0);
        assert_eq!(vol(&nat(3), 4, 0).unwrap(), 0.0);
        assert!((vol(&nat(3), 4, 1).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(vol(&nat(7), 30, 30).unwrap(), 1.0);
    }

    #[test]
    fn vol_approaches_entropy_for_long_blocks() {
        // t/n = 0.33 at q = 3, n = 200 is inside the t <= n(q-1)/q regime.
        let q = nat(3);
        let n = 200u64;
        let t = 66u64;
        let v = vol(&q, n, t).unwrap();
        let h = entropy_q(&q, t as f64 / n as f64).unwrap();
        assert!((v - h).abs() < 0.05, "vol = {v}, H_q = {h}");
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy_q(&nat(5), 0.0).unwrap(), 0.0);
        for q in [2u64, 3, 5, 64] {
            let x = (q - 1) as f64 / q as f64;
            assert!((entropy_q(&nat(q), x).unwrap() - 1.0).abs() < 1e-12);
        }
        // Independent evaluation of the definition at q = 3, x = 1/3:
        // 1/3 + (2/3) ln(3/2)/ln 3 + (1/3) ln 2 / ln 3.
        let expected = 1.0 / 3.0
            + (2.0 / 3.0) * (1.5_f64.ln() / 3f64.ln())
            + (1.0 / 3.0) * (2f64.ln() / 3f64.ln());
        let got = entropy_q(&nat(3), 1.0 / 3.0).unwrap();
        assert!((got - expected).abs() < 1e-14);
        assert!((got - 0.7897).abs() < 5e-5);
        assert!(entropy_q(&nat(3), 1.2).is_err());
        assert!(entropy_q(&nat(3), -0.1).is_err());
    }

    #[test]
    fn ln_big_matches_f64_for_huge_powers() {
        // ln(2^20000) = 20000 ln 2, a value no f64 conversion could reach.
        let x = Natural::from(2u32).pow(20_000);
        let expected = 20_000.0 * std::f64::consts::LN_2;
        assert!((ln_big(&x) - expected).abs() / expected < 1e-14);
    }

    #[test]
    fn exact_ratio_inverse_product_is_one() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..200 {
            let a = BigInt::from(rng.next_u64() as i64 | 1);
            let b = BigInt::from((rng.next_u64() >> 1) + 1);
            let r = ExactRatio::new(a.clone(), b.clone());
            let inv = ExactRatio::new(b, a);
            assert!((r * inv).is_one());
        }
    }

    #[test]
    fn ratio_to_f64_handles_extremes() {
        let huge = ExactRatio::new(BigInt::from(2).pow(40_000u32), BigInt::one());
        assert_eq!(ratio_to_f64(&huge), f64::INFINITY);
        let tiny = ExactRatio::new(BigInt::one(), BigInt::from(2).pow(40_000u32));
        assert_eq!(ratio_to_f64(&tiny), 0.0);
        let half = ExactRatio::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(ratio_to_f64(&half), 0.5);
        let third = ExactRatio::new(BigInt::from(-1), BigInt::from(3));
        assert!((ratio_to_f64(&third) + 1.0 / 3.0).abs() < 1e-16);
        // Big but representable: accurate to ~1 ulp.
        let r = ExactRatio::new(
            BigInt::from(2).pow(200u32) + BigInt::one(),
            BigInt::from(3).pow(100u32),
        );
        let expect = (200.0 * std::f64::consts::LN_2 - 100.0 * 3f64.ln()).exp();
        assert!((ratio_to_f64(&r) - expect).abs() / expect < 1e-12);
    }

    #[test]
    fn ratio_string_round_trip() {
        let r = ExactRatio::new(BigInt::from(-384), BigInt::from(113));
        let s = ratio_to_string(&r);
        assert_eq!(s, "-384/113");
        assert_eq!(parse_ratio(&s).unwrap(), r);
        assert_eq!(
            parse_ratio("7").unwrap(),
            ExactRatio::from_integer(7.into())
        );
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x/2").is_err());
    }
}
