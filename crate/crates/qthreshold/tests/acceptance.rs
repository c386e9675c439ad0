//! Acceptance suite: every published claim of the crate, one test per
//! criterion, each printing a PASS line with the measured quantities
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//!
//! Criterion 6 has two parts: a mandatory scaled-down stand-in and the
//! full-scale reproduction, the latter `#[ignore]`d because it needs half
//! an hour or more of single-core compute
//! (`cargo test --test acceptance -- --ignored`).

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use qthreshold::asymptotic::{asymptotic_threshold, mu_exponent};
use qthreshold::channel::{estimate_pe, exact_pe, region_measure, rs_build};
use qthreshold::confusability::{nu, nu_bruteforce};
use qthreshold::exact::{ball_volume, ln_big, ratio_to_f64, ExactRatio, Natural};
use qthreshold::gaussian::{
    error_probability_bound, error_probability_slope, std_normal_cdf, std_normal_quantile,
    BoundCurveSpec, Orientation,
};
use qthreshold::hamming::{random_increasing_set, space_size, space_words};
use qthreshold::mds::{weight_distribution, weight_distribution_formula, CodeParams};
use qthreshold::rng::SplitMix64;
use qthreshold::threshold::{find_threshold, SearchOptions};

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

fn ratio(n: i64, d: i64) -> ExactRatio {
    ExactRatio::new(BigInt::from(n), BigInt::from(d))
}

fn params(q: Natural, n: u64, k: u64) -> CodeParams {
    CodeParams::new(q, n, k).unwrap()
}

/// Criterion 1: the Margulis-Russo residual polynomial vanishes identically
/// (exact coefficient equality, zero tolerance) on 100 seeded random
/// increasing sets over q in {3,4,5}, n in {2,3,4}.
#[test]
fn acceptance_01_margulis_identity() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(42);
    let spaces: Vec<(u16, usize)> = [3u16, 4, 5]
        .iter()
        .flat_map(|&q| [2usize, 3, 4].iter().map(move |&n| (q, n)))
        .collect();
    for trial in 0..100u64 {
        let (q, n) = spaces[(trial % spaces.len() as u64) as usize];
        let set = random_increasing_set(q, n, &mut rng).unwrap();
        let residual = set.margulis_russo_residual();
        assert!(
            residual.is_zero(),
            "trial {trial} (q = {q}, n = {n}, |A| = {}): residual {:?}",
            set.len(),
            residual.coeffs()
        );
    }
    println!(
        "acceptance 01 margulis identity: PASS - 100 residuals identically zero ({:.2?})",
        started.elapsed()
    );
}

/// Criterion 2: the closed-form weight distribution matches exhaustive
/// Reed-Solomon codebook counts exactly, and the distribution total is
/// exactly q^k across q in {4, 2^8, 2^16}, n <= 64, all k.
#[test]
fn acceptance_02_weight_enumerator() {
    let started = Instant::now();
    for (q, n, k) in [
        (5u16, 4u64, 2u64),
        (5, 5, 2),
        (7, 6, 2),
        (7, 7, 3),
        (11, 8, 3),
    ] {
        let code = rs_build(q, n, k).unwrap();
        let mut histogram = vec![Natural::zero(); n as usize + 1];
        for word in code.codebook() {
            histogram[word.weight()] += 1u32;
        }
        let closed = weight_distribution(&params(nat(q as u64), n, k));
        assert_eq!(
            closed, histogram,
            "distribution mismatch for ({q}, {n}, {k})"
        );
    }
    for q in [nat(4), nat(2).pow(8), nat(2).pow(16)] {
        for n in 1..=64u64 {
            for k in 1..=n {
                let p = params(q.clone(), n, k);
                let total: BigInt = weight_distribution_formula(&p).into_iter().sum();
                assert_eq!(
                    total,
                    BigInt::from(q.pow(k as u32)),
                    "sum broke at (q = {q}, n = {n}, k = {k})"
                );
            }
        }
    }
    println!(
        "acceptance 02 weight enumerator: PASS - 5 codebook matches, 3x2080 exact q^k totals ({:.2?})",
        started.elapsed()
    );
}

/// Criterion 3: the closed-form confusability count equals brute-force
/// enumeration exactly for q in {3,4,5,7}, n <= 5, all (w, t), plus a spot
/// check at n = 6, q = 3.
#[test]
fn acceptance_03_confusability_oracle() {
    let started = Instant::now();
    let mut checked = 0u64;
    for q in [3u16, 4, 5, 7] {
        for n in 1..=5u64 {
            for w in 0..=n {
                for t in 0..=n {
                    assert_eq!(
                        nu(&nat(q as u64), n, w, t),
                        nu_bruteforce(q, n, w, t).unwrap(),
                        "mismatch at q={q} n={n} w={w} t={t}"
                    );
                    checked += 1;
                }
            }
        }
    }
    for w in 0..=6u64 {
        for t in 0..=6u64 {
            assert_eq!(
                nu(&nat(3), 6, w, t),
                nu_bruteforce(3, 6, w, t).unwrap(),
                "mismatch at q=3 n=6 w={w} t={t}"
            );
            checked += 1;
        }
    }
    println!(
        "acceptance 03 confusability oracle: PASS - {checked} exact (w,t) agreements ({:.2?})",
        started.elapsed()
    );
}

/// Criterion 4: the curve numerator sum A_l * nu_t(l) equals the exhaustive
/// count of confusable (codeword, word) pairs for q in {5,7}, n <= 5,
/// all k, all t, exactly.
#[test]
fn acceptance_04_numerator_pair_oracle() {
    let started = Instant::now();
    let mut checked = 0u64;
    for q in [5u16, 7] {
        for n in 1..=5u64 {
            for k in 1..=n {
                let code = rs_build(q, n, k).unwrap();
                // One sweep: bucket eligible pairs by the word weight.
                let size = space_size(q, n as usize, 22).unwrap();
                let mut by_weight = vec![0u64; n as usize + 1];
                for x in space_words(q, n as usize, size) {
                    let weight = x.weight();
                    let hits = code.codebook()[1..]
                        .iter()
                        .filter(|c| x.distance(c) <= weight)
                        .count() as u64;
                    by_weight[weight] += hits;
                }
                let p = params(nat(q as u64), n, k);
                let dist = weight_distribution(&p);
                let mut pair_count = Natural::zero();
                for t in 0..=n {
                    pair_count += nat(by_weight[t as usize]);
                    let mut numerator = Natural::zero();
                    for l in p.d()..=n.min(2 * t) {
                        numerator += &dist[l as usize] * nu(p.q(), n, l, t);
                    }
                    assert_eq!(
                        numerator, pair_count,
                        "pair oracle mismatch at q={q} n={n} k={k} t={t}"
                    );
                    checked += 1;
                }
            }
        }
    }
    println!(
        "acceptance 04 numerator pair oracle: PASS - {checked} exact (k,t) agreements ({:.2?})",
        started.elapsed()
    );
}

/// Criterion 5: with p_c the exact half-root of the exact error
/// polynomial, the bound curve upper-bounds P_e below p_c and lower-bounds
/// it above, at grid step 0.01, with nonnegative slack everywhere (the only
/// tolerance is 1e-9 on the root location).
#[test]
fn acceptance_05_error_probability_bracketing() {
    let started = Instant::now();
    for (q, n, k) in [(3u16, 2u64, 1u64), (5, 4, 2), (7, 6, 2)] {
        let code = rs_build(q, n, k).unwrap();
        // The (7, 6, 2) error region is not increasing (a falsified
        // structural assumption pinned in the unit tests), so the exact
        // polynomial comes from the unconditional region measure; the
        // verified path must agree with it wherever it exists.
        let pe = region_measure(&code).unwrap();
        if let Ok(verified) = exact_pe(&code) {
            assert_eq!(verified, pe);
        } else {
            assert_eq!((q, n, k), (7, 6, 2), "unexpected non-increasing region");
        }
        let p_c = pe.half_crossing(40).expect("P_e crosses 1/2");
        let p_c_f = ratio_to_f64(&p_c);
        let spec =
            BoundCurveSpec::new(code.d() as f64, p_c_f, Orientation::ErrorProbability).unwrap();
        let mut previous = ExactRatio::zero();
        for i in 1..100i64 {
            let p_exact = ratio(i, 100);
            let value = pe.eval(&p_exact);
            // Empirical uniqueness of the half-crossing: strictly increasing
            // on the grid.
            assert!(
                value > previous,
                "P_e not strictly increasing at p = {i}/100"
            );
            previous = value.clone();

            let p = i as f64 / 100.0;
            if (p - p_c_f).abs() < 1e-9 {
                continue;
            }
            let exact = ratio_to_f64(&value);
            let bound = error_probability_bound(p, &spec).unwrap();
            let slack = if p < p_c_f {
                bound - exact
            } else {
                exact - bound
            };
            assert!(
                slack >= 0.0,
                "bracketing slack {slack} < 0 at p = {p} for ({q},{n},{k}); p_c = {p_c_f}"
            );
        }
    }
    println!(
        "acceptance 05 error probability bracketing: PASS - 3 codes, 99-point grids, slack >= 0 ({:.2?})",
        started.elapsed()
    );
}

/// Criterion 6 (mandatory stand-in): the scaled-down full pipeline —
/// counting alphabet 2^31 - 1, n = 256, k = 32 — finishes in minutes and
/// brackets the crossing inside [delta/2, delta].
#[test]
fn acceptance_06_standin_reproduction() {
    let started = Instant::now();
    let p = params(nat((1u64 << 31) - 1), 256, 32);
    let delta = p.delta();
    let report = find_threshold(&p, SearchOptions::default()).unwrap();
    let elapsed = started.elapsed();
    let half_delta = &delta / ExactRatio::from_integer(2.into());
    assert!(
        report.bracket_low >= half_delta && report.bracket_high <= delta,
        "bracket ({}, {}) escapes [delta/2, delta] = ({}, {})",
        report.bracket_low,
        report.bracket_high,
        half_delta,
        delta
    );
    assert_eq!(
        &report.bracket_high - &report.bracket_low,
        ratio(1, 256),
        "bracket is not one grid step wide"
    );
    assert!(
        elapsed.as_secs() < 600,
        "stand-in took {elapsed:.2?}, over the 10-minute budget"
    );
    let slope = report.slope.map(|s| format!("{s:.3e}")).unwrap_or_default();
    println!(
        "acceptance 06 stand-in reproduction: PASS - bracket ({}, {}) inside ({}, {}), grid-step slope {slope}, {:.2?}",
        report.bracket_low, report.bracket_high, half_delta, delta, elapsed
    );
}

/// Criterion 6 (full scale, opt-in): the (2048, 256, 1793) code over 2^64
/// brackets its crossing inside [0.8, 0.875] with a crossing slope of
/// 115 +- 15%. Checkpointable through the CLI.
///
/// The bracket clause holds: the measured crossing is at radius 1774,
/// bracket (1773/2048, 887/1024), with g jumping from ~1.5e-17 to ~43.9
/// across that single grid step. The slope clause, read as the raw central
/// difference of the exact curve, cannot: near the crossing each radius
/// step multiplies g by a large power-of-q factor, so the grid-step slope
/// is astronomically larger than 115 (already ~2e17 on the q = 2^31 - 1
/// stand-in). The figure 115 is what the d-driven bound-curve steepness
/// sqrt(d)/(sqrt(2 pi)(1 - p_c)) gives at the measured threshold, which
/// the failure message reports alongside the raw value. The assertion
/// keeps the stated form and therefore fails, documenting the mismatch.
#[test]
#[ignore = "full-scale reproduction needs ~30-75 minutes of single-core compute"]
fn acceptance_06_full_scale_reproduction() {
    let started = Instant::now();
    let p = params(nat(2).pow(64), 2048, 256);
    let report = find_threshold(&p, SearchOptions::default()).unwrap();
    assert!(
        report.bracket_low >= ratio(4, 5) && report.bracket_high <= ratio(7, 8),
        "bracket ({}, {}) escapes [4/5, 7/8]",
        report.bracket_low,
        report.bracket_high
    );
    println!(
        "acceptance 06 full-scale reproduction: bracket ({}, {}) inside [4/5, 7/8] after {:.2?}",
        report.bracket_low,
        report.bracket_high,
        started.elapsed()
    );
    let slope = report.slope.expect("interior crossing has both neighbours");
    let bound_steepness = error_probability_slope(
        &BoundCurveSpec::new(
            p.d() as f64,
            ratio_to_f64(&report.bracket_high),
            Orientation::ErrorProbability,
        )
        .unwrap(),
    );
    assert!(
        (97.75..=132.25).contains(&slope),
        "the raw grid-step slope at the crossing is {slope:.3e}, not 115 +- 15%: each radius \
         step multiplies the exact curve by a large power of q, so no central difference of g \
         can sit near 115; the d-driven bound steepness at the measured threshold is \
         {bound_steepness:.1}, which is what matches the quoted figure"
    );
}

/// Criterion 7: the asymptotic estimate lies in [delta/2, delta] for 50
/// random valid parameter sets and equals (d-1)/n = 0.875 on the full-scale
/// parameters.
#[test]
fn acceptance_07_asymptotic_window() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(1729);
    for _ in 0..50 {
        let n = 2 + rng.below(63);
        let k = 1 + rng.below(n);
        let q = nat(2) + nat(rng.below(1 << 40));
        let p = params(q, n, k);
        let estimate = asymptotic_threshold(&p);
        let delta = p.delta();
        let half_delta = &delta / ExactRatio::from_integer(2.into());
        assert!(
            estimate >= half_delta && estimate <= delta,
            "estimate {estimate} escapes [{half_delta}, {delta}] at n = {n}, k = {k}"
        );
    }
    let full = params(nat(2).pow(64), 2048, 256);
    let estimate = asymptotic_threshold(&full);
    assert_eq!(estimate, ratio(7, 8));
    assert_eq!(ratio_to_f64(&estimate), 0.875);
    println!(
        "acceptance 07 asymptotic window: PASS - 50 random sets in [delta/2, delta], full-scale estimate 7/8 ({:.2?})",
        started.elapsed()
    );
}

/// Criterion 8: the exponent sandwich
/// `mu <= log_q(nu) <= mu + log_q((n+1)^3 4^n)` over n <= 12,
/// q in {2^16, 2^31}, all (w, t).
///
/// The upper inequality holds everywhere. The lower inequality, in this
/// bare form, is falsified by corner cases in which the optimal cell has
/// unit binomial factors: already at (w, t) = (1, 1) the count is q - 1
/// while the linear program reaches exactly 1, so log_q(nu) trails mu by
/// log_q(q/(q-1)) > 0. The deficit is bounded by n*log_q(q/(q-2)), and the
/// corrected inequality `mu - n*log_q(q/(q-2)) <= log_q(nu)` holds on every
/// instance; the assertion below keeps the bare form and therefore fails,
/// documenting the gap rather than hiding it.
#[test]
fn acceptance_08_exponent_sandwich() {
    let started = Instant::now();
    let mut bare_lower_violations: Vec<String> = Vec::new();
    let mut checked = 0u64;
    for q in [nat(2).pow(16), nat(2).pow(31)] {
        let ln_q = ln_big(&q);
        // log_q of the worst-case term-count-times-binomial slack.
        let slack_of = |n: u64| ((n as f64 + 1.0).powi(3).ln() + (n as f64) * 4f64.ln()) / ln_q;
        let deficit_of = |n: u64| n as f64 * (ln_q - ln_big(&(&q - 2u32))) / ln_q;
        for n in 1..=12u64 {
            for w in 0..=n {
                for t in 0..=n {
                    let count = nu(&q, n, w, t);
                    let mu = mu_exponent(w, t, n);
                    match mu {
                        None => {
                            assert!(count.is_zero(), "infeasible LP but nonzero count");
                            continue;
                        }
                        Some(mu) => {
                            assert!(
                                !count.is_zero(),
                                "feasible LP but zero count at w={w} t={t} n={n}"
                            );
                            let mu = ratio_to_f64(&mu);
                            let log_count = ln_big(&count) / ln_q;
                            checked += 1;
                            assert!(
                                log_count <= mu + slack_of(n) + 1e-9,
                                "upper sandwich broke at q={q} n={n} w={w} t={t}"
                            );
                            // Corrected lower bound: always holds.
                            assert!(
                                mu - deficit_of(n) <= log_count + 1e-9,
                                "corrected lower bound broke at q={q} n={n} w={w} t={t}"
                            );
                            // Bare lower bound: collected, asserted below.
                            if mu > log_count {
                                bare_lower_violations.push(format!(
                                    "q={q} n={n} w={w} t={t}: mu={mu:.9} > log_q(nu)={log_count:.9}"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    println!(
        "acceptance 08 exponent sandwich: upper bound and corrected lower bound hold on {checked} instances ({:.2?})",
        started.elapsed()
    );
    assert!(
        bare_lower_violations.is_empty(),
        "acceptance 08 exponent sandwich: FAIL - the bare lower inequality mu <= log_q(nu) \
         is falsified on {} of {} instances because the optimal cell's factors are \
         (q-2)^beta (q-1)^gamma rather than q^(beta+gamma); the deficit never exceeds \
         n*log_q(q/(q-2)) and the corrected inequality holds everywhere. First violations:\n{}",
        bare_lower_violations.len(),
        checked,
        bare_lower_violations
            .iter()
            .take(5)
            .cloned()
            .collect::<Vec<_>>()
            .join("\n")
    );
}

/// Criterion 9: Monte-Carlo estimates sit within 3 sigma of the exact
/// error polynomial at p = 0.1 .. 0.9 with 10^5 trials on the (5, 4, 2)
/// code, and reports are bit-identical across worker counts.
#[test]
fn acceptance_09_monte_carlo() {
    let started = Instant::now();
    let code = rs_build(5, 4, 2).unwrap();
    let pe = exact_pe(&code).unwrap();
    let trials = 100_000u64;
    let seed = 2718u64;
    for i in 1..=9u32 {
        let p = i as f64 / 10.0;
        let report = estimate_pe(&code, p, trials, seed).unwrap();
        let exact = pe.eval_f64(p);
        let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!(
            (report.p_e_hat - exact).abs() <= 3.0 * sigma,
            "estimate {} at p = {p} strays beyond 3 sigma of exact {exact}",
            report.p_e_hat
        );

        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| estimate_pe(&code, p, trials, seed).unwrap());
        let quad = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| estimate_pe(&code, p, trials, seed).unwrap());
        assert_eq!(single, quad, "worker count changed the report at p = {p}");
        assert_eq!(single, report);
    }
    println!(
        "acceptance 09 monte carlo: PASS - 9 grid points within 3 sigma, reports worker-count independent ({:.2?})",
        started.elapsed()
    );
}

/// Criterion 10: quantile round-trip to 1e-10, bound value exactly 1/2 at
/// the pivot to 1e-12, and the closed-form pivot slope matching a central
/// finite difference of its transition curve within 1%.
#[test]
fn acceptance_10_gaussian_layer() {
    let started = Instant::now();
    let mut u = 1e-6;
    while u < 1.0 {
        let x = std_normal_quantile(u).unwrap();
        assert!(
            (std_normal_cdf(x) - u).abs() <= 1e-10,
            "round trip strayed at u = {u}"
        );
        u += 1e-3;
    }
    for u in [1e-6, 1.0 - 1e-6] {
        let x = std_normal_quantile(u).unwrap();
        assert!((std_normal_cdf(x) - u).abs() <= 1e-10);
    }

    for (d, p_c) in [(400.0, 0.7), (37.0, 0.21), (2048.0, 0.5)] {
        let spec = BoundCurveSpec::new(d, p_c, Orientation::ErrorProbability).unwrap();
        assert!(
            (error_probability_bound(p_c, &spec).unwrap() - 0.5).abs() <= 1e-12,
            "bound at the pivot is not 1/2 for d = {d}"
        );
    }

    let spec = BoundCurveSpec::new(400.0, 0.7, Orientation::ErrorProbability).unwrap();
    let slope = error_probability_slope(&spec);
    assert!(
        (slope - 26.60).abs() < 0.01 * 26.60,
        "slope {slope} is not ~26.60"
    );
    let transition =
        |p: f64| std_normal_cdf(spec.gap().sqrt() * ((1.0 - spec.pivot()) / (1.0 - p)).ln());
    let h = 1e-5;
    let fd = (transition(0.7 + h) - transition(0.7 - h)) / (2.0 * h);
    assert!(
        ((slope - fd) / fd).abs() < 0.01,
        "slope formula {slope} vs finite difference {fd}"
    );
    println!(
        "acceptance 10 gaussian layer: PASS - round trips to 1e-10, pivot value 1/2 to 1e-12, slope {slope:.4} vs fd {fd:.4} ({:.2?})",
        started.elapsed()
    );
}

/// Structural identity behind the curve denominator: the exact ball volume
/// is what the normalized log-volume exponentiates back to.
#[test]
fn denominator_identity_spot_checks() {
    for (q, n, t) in [(3u64, 10u64, 4u64), (5, 12, 7), (64, 9, 3)] {
        let q = nat(q);
        let ball = ball_volume(&q, n, t).unwrap();
        let v = qthreshold::exact::vol(&q, n, t).unwrap();
        let rebuilt = (v * n as f64 * ln_big(&q)).exp();
        let ball_f = ball.to_f64().unwrap();
        assert!(
            (rebuilt - ball_f).abs() / ball_f < 1e-9,
            "q^(n vol) = {rebuilt} strays from |B| = {ball_f}"
        );
    }
}
