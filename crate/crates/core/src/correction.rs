//! Zero-cell accounting and the sparsity-corrected estimator.
//!
//! A sparse count vector underestimates the probabilities of its empty
//! cells and overestimates the others. The corrected estimator assigns a
//! small mass `a` to each zero cell and deflates nonzero cells to
//! `n_j / n^b - d`, with `d` forcing normalization. The admissible region
//! for (a, b) keeps every component strictly inside (0, 1) and preserves
//! the likelihood inequality that makes the observed vector the most
//! probable allocation.

use serde::{Deserialize, Serialize};

use crate::error::{GofError, Result};
use crate::statistics::{kullback_g, pearson_q, ProbabilityPair};

/// Index partition of a count vector into zero and nonzero cells.
///
/// Original cell order is preserved; cells are never physically reordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPartition {
    pub zero_indices: Vec<usize>,
    pub nonzero_indices: Vec<usize>,
}

impl ZeroPartition {
    /// Number of zero cells.
    pub fn c(&self) -> usize {
        self.zero_indices.len()
    }

    /// Total number of cells R.
    pub fn r(&self) -> usize {
        self.zero_indices.len() + self.nonzero_indices.len()
    }
}

/// Partition the cells of `counts` by zero / nonzero.
pub fn partition_zeros(counts: &[u64]) -> Result<ZeroPartition> {
    if counts.is_empty() {
        return Err(GofError::Domain("count vector is empty".into()));
    }
    let mut zero_indices = Vec::new();
    let mut nonzero_indices = Vec::new();
    for (i, &k) in counts.iter().enumerate() {
        if k == 0 {
            zero_indices.push(i);
        } else {
            nonzero_indices.push(i);
        }
    }
    if nonzero_indices.is_empty() {
        return Err(GofError::AllZero);
    }
    Ok(ZeroPartition {
        zero_indices,
        nonzero_indices,
    })
}

/// Order statistics of the nonzero counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderStats {
    /// Minimum nonzero count.
    pub n_lo: u64,
    /// Maximum nonzero count.
    pub n_hi: u64,
    /// n - n_lo * (R - c); positive whenever the nonzero counts differ.
    pub n_lolo: u64,
    /// n_hi * (R - c) - n; positive whenever the nonzero counts differ.
    pub n_hihi: u64,
}

/// Compute the order statistics over nonzero cells only.
///
/// Errors with [`GofError::UniformNonzero`] when all nonzero counts are
/// equal (the dismissed uniform case), which would make both derived
/// quantities zero.
pub fn order_stats(counts: &[u64], part: &ZeroPartition) -> Result<OrderStats> {
    let n: u64 = counts.iter().sum();
    let nz = &part.nonzero_indices;
    let n_lo = nz.iter().map(|&j| counts[j]).min().expect("nonzero cells");
    let n_hi = nz.iter().map(|&j| counts[j]).max().expect("nonzero cells");
    if n_lo == n_hi {
        return Err(GofError::UniformNonzero);
    }
    let rc = nz.len() as u64;
    Ok(OrderStats {
        n_lo,
        n_hi,
        n_lolo: n - n_lo * rc,
        n_hihi: n_hi * rc - n,
    })
}

/// Lower bound for the deflation exponent b.
///
/// Strictly less than 1 for every non-uniform input.
pub fn compute_b_min(n: u64, r: usize, os: &OrderStats) -> f64 {
    let ln_n = (n as f64).ln();
    let t1 = (os.n_hihi as f64 / (r as f64 - 1.0)).ln() / ln_n;
    let t2 = (os.n_lolo as f64).ln() / ln_n;
    let t3 = ((os.n_hi - os.n_lo) as f64).ln() / ln_n;
    let b_min = t1.max(t2).max(t3).max(0.0);
    debug_assert!(b_min < 1.0, "b_min = {b_min} must be < 1");
    b_min
}

/// Admissible interval (a_min, a_max) for the zero-cell mass a, given b.
///
/// Errors with [`GofError::EmptyInterval`] when the bounds cross; this can
/// happen for very small samples and is reported rather than papered over.
pub fn admissible_a_interval(
    n: u64,
    r: usize,
    c: usize,
    os: &OrderStats,
    b: f64,
) -> Result<(f64, f64)> {
    let nf = n as f64;
    let nb = nf.powf(b);
    let rc = (r - c) as f64;
    let cf = c as f64;
    let a_min = (((os.n_hi as f64 - nb) * rc + nb) / (cf * nb)).max(0.0);
    let a_max = ((nb - os.n_lo as f64) / (cf * nb))
        .min((nb - os.n_lo as f64) / (nb * (nf * rc + cf)))
        .min(1.0);
    if a_max <= a_min {
        return Err(GofError::EmptyInterval {
            n,
            r,
            c,
            b,
            a_min,
            a_max,
        });
    }
    Ok((a_min, a_max))
}

/// How the interior margin epsilon for the parameter a is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EpsilonPolicy {
    /// epsilon = fraction * (a_max - a_min).
    RelativeWidth(f64),
    /// epsilon is a fixed positive constant.
    Absolute(f64),
}

impl Default for EpsilonPolicy {
    fn default() -> Self {
        EpsilonPolicy::RelativeWidth(1e-4)
    }
}

impl EpsilonPolicy {
    fn epsilon(&self, a_min: f64, a_max: f64) -> Result<f64> {
        let width = a_max - a_min;
        let eps = match *self {
            EpsilonPolicy::RelativeWidth(f) => {
                if !(f > 0.0 && f < 1.0) {
                    return Err(GofError::Domain(format!(
                        "relative epsilon fraction {f} must lie in (0, 1)"
                    )));
                }
                f * width
            }
            EpsilonPolicy::Absolute(e) => {
                if !(e > 0.0) {
                    return Err(GofError::Domain(format!("epsilon {e} must be positive")));
                }
                e
            }
        };
        if eps >= width {
            return Err(GofError::Domain(format!(
                "epsilon {eps} does not fit inside the admissible width {width}"
            )));
        }
        Ok(eps)
    }
}

/// The full parameter set of a corrected estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionParams {
    pub c: usize,
    pub b_min: f64,
    pub b: f64,
    pub a_min: f64,
    pub a_max: f64,
    pub a: f64,
    pub epsilon: f64,
    pub h: f64,
    /// The normalization shift (a c + n^(1-b) - 1) / (R - c).
    pub d: f64,
}

/// Parameters for a vector without zeros: a = 0, b = 1, the estimator is
/// exactly the empirical distribution.
pub fn identity_params() -> CorrectionParams {
    CorrectionParams {
        c: 0,
        b_min: 0.0,
        b: 1.0,
        a_min: 0.0,
        a_max: 0.0,
        a: 0.0,
        epsilon: 0.0,
        h: 0.0,
        d: 0.0,
    }
}

/// Choose (a, b) for a vector with c >= 1 zeros and non-uniform nonzero
/// counts: b mixes b_min toward 1 with weight h, and a sits just inside the
/// lower end of the admissible interval.
///
/// The interior margin keeps the estimator components strictly positive and
/// the likelihood condition satisfied on every input we can construct; the
/// upper end of the interval does not guarantee either (see
/// `corrected_estimator`'s range check).
pub fn choose_parameters(
    n: u64,
    r: usize,
    c: usize,
    os: &OrderStats,
    h: f64,
    policy: EpsilonPolicy,
) -> Result<CorrectionParams> {
    if !(h > 0.0 && h < 1.0) {
        return Err(GofError::InvalidH(h));
    }
    if c == 0 {
        return Ok(identity_params());
    }
    let b_min = compute_b_min(n, r, os);
    let b = h * 1.0 + (1.0 - h) * b_min;
    let (a_min, a_max) = admissible_a_interval(n, r, c, os, b)?;
    let epsilon = policy.epsilon(a_min, a_max)?;
    let a = a_min + epsilon;
    let nf = n as f64;
    let d = (a * c as f64 + nf.powf(1.0 - b) - 1.0) / (r - c) as f64;
    debug_assert!(a > 0.0 && a > a_min && a < a_max);
    debug_assert!(d > 0.0);
    Ok(CorrectionParams {
        c,
        b_min,
        b,
        a_min,
        a_max,
        a,
        epsilon,
        h,
        d,
    })
}

/// The corrected probability vector together with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectedEstimator {
    pub probs: Vec<f64>,
    pub params: CorrectionParams,
}

/// Build the corrected estimator: zero cells get mass a, nonzero cells get
/// n_j / n^b - d. With c = 0 (a = 0, b = 1) this is exactly counts / n.
pub fn corrected_estimator(
    counts: &[u64],
    part: &ZeroPartition,
    params: &CorrectionParams,
) -> Result<CorrectedEstimator> {
    let n: u64 = counts.iter().sum();
    let nf = n as f64;
    let nb = nf.powf(params.b);
    let mut probs = vec![0.0; counts.len()];
    for &i in &part.zero_indices {
        probs[i] = params.a;
    }
    for &j in &part.nonzero_indices {
        probs[j] = counts[j] as f64 / nb - params.d;
    }
    for (i, &p) in probs.iter().enumerate() {
        let ok = if part.c() == 0 {
            // The empirical distribution may legitimately put all mass in
            // one cell; require [something in (0, 1]] only for c >= 1.
            p >= 0.0 && p <= 1.0
        } else {
            p > 0.0 && p < 1.0
        };
        if !ok {
            return Err(GofError::EstimatorOutOfRange { index: i, value: p });
        }
    }
    Ok(CorrectedEstimator {
        probs,
        params: *params,
    })
}

/// A corrected statistic evaluated along two independent algebraic routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualStat {
    /// Plugging the corrected estimator into the classical statistic.
    pub direct: f64,
    /// The closed-form rescale-and-subtract expression.
    pub closed: f64,
}

impl DualStat {
    /// The reported value is the direct evaluation.
    pub fn value(&self) -> f64 {
        self.direct
    }
}

const DUAL_TOL: f64 = 1e-9;

fn check_agreement(name: &'static str, direct: f64, closed: f64) -> Result<DualStat> {
    if (direct - closed).abs() > DUAL_TOL * direct.abs().max(1.0) {
        return Err(GofError::Mismatch {
            name,
            direct,
            closed,
        });
    }
    Ok(DualStat { direct, closed })
}

/// Q^ab, computed both by direct substitution and by the closed form
/// n^(2(1-b)) Q - f(a, b). The two must agree within 1e-9 relative; a
/// mismatch signals a transcription bug, not bad data.
pub fn corrected_q(null_probs: &[f64], counts: &[u64], est: &CorrectedEstimator) -> Result<DualStat> {
    let n: u64 = counts.iter().sum();
    let part = partition_zeros(counts)?;
    let pair = ProbabilityPair::new(null_probs.to_vec(), est.probs.clone(), n)?;
    let direct = pearson_q(&pair);

    let nf = n as f64;
    let p = &est.params;
    let e = nf.powf(1.0 - p.b);
    let empirical: Vec<f64> = counts.iter().map(|&k| k as f64 / nf).collect();
    let q_classic = pearson_q(&ProbabilityPair::new(
        null_probs.to_vec(),
        empirical.clone(),
        n,
    )?);
    let closed = if p.c == 0 {
        q_classic
    } else {
        let sum_ratio: f64 = part
            .nonzero_indices
            .iter()
            .map(|&j| empirical[j] / null_probs[j])
            .sum();
        let sum_inv_zero: f64 = part.zero_indices.iter().map(|&i| 1.0 / null_probs[i]).sum();
        let sum_inv_nonzero: f64 = part
            .nonzero_indices
            .iter()
            .map(|&j| 1.0 / null_probs[j])
            .sum();
        let f = nf
            * (1.0 - e * e + 2.0 * e * p.d * sum_ratio
                - p.a * p.a * sum_inv_zero
                - p.d * p.d * sum_inv_nonzero);
        e * e * q_classic - f
    };
    check_agreement("Q^ab", direct, closed)
}

/// G^ab, computed both by direct substitution and by the closed form
/// n^(1-b) G - g(a, b). Same agreement contract as [`corrected_q`].
pub fn corrected_g(null_probs: &[f64], counts: &[u64], est: &CorrectedEstimator) -> Result<DualStat> {
    let n: u64 = counts.iter().sum();
    let part = partition_zeros(counts)?;
    let pair = ProbabilityPair::new(null_probs.to_vec(), est.probs.clone(), n)?;
    let direct = kullback_g(&pair);

    let nf = n as f64;
    let p = &est.params;
    let e = nf.powf(1.0 - p.b);
    let empirical: Vec<f64> = counts.iter().map(|&k| k as f64 / nf).collect();
    let g_classic = kullback_g(&ProbabilityPair::new(
        null_probs.to_vec(),
        empirical.clone(),
        n,
    )?);
    let closed = if p.c == 0 {
        g_classic
    } else {
        let sum_log_null: f64 = part
            .nonzero_indices
            .iter()
            .map(|&j| (est.probs[j] / null_probs[j]).ln())
            .sum();
        let sum_log_zero: f64 = part
            .zero_indices
            .iter()
            .map(|&i| (p.a / null_probs[i]).ln())
            .sum();
        let sum_emp_log: f64 = part
            .nonzero_indices
            .iter()
            .map(|&j| empirical[j] * (est.probs[j] / empirical[j]).ln())
            .sum();
        let g = 2.0 * nf * (p.d * sum_log_null - p.a * sum_log_zero - e * sum_emp_log);
        e * g_classic - g
    };
    check_agreement("G^ab", direct, closed)
}

/// Sufficient condition for the likelihood inequality: every zero-cell
/// probability is at most every nonzero-cell probability divided by n.
/// Vacuously true when there are no zero cells.
pub fn check_likelihood_condition(probs: &[f64], part: &ZeroPartition, n: u64) -> bool {
    let min_nonzero = part
        .nonzero_indices
        .iter()
        .map(|&j| probs[j])
        .fold(f64::INFINITY, f64::min);
    part.zero_indices
        .iter()
        .all(|&i| probs[i] <= min_nonzero / n as f64)
}

/// Exhaustive oracle for the likelihood inequality on small instances.
///
/// Enumerates every alternative allocation that moves counts from nonzero
/// cells into zero cells while keeping the total, and checks that the
/// observed vector is at least as probable under `probs` as each of them.
/// Restricted to n <= 8 and R <= 4.
pub fn verify_inequality_bruteforce(
    probs: &[f64],
    counts: &[u64],
    part: &ZeroPartition,
) -> Result<bool> {
    let n: u64 = counts.iter().sum();
    let r = counts.len();
    if n > 8 || r > 4 {
        return Err(GofError::SizeError);
    }
    if part.c() == 0 {
        return Ok(true);
    }
    let observed_lp = log_multinomial_pmf(counts, probs);

    // Alternative allocations: zero cells may receive anything, nonzero
    // cells may only lose counts (n'_j <= n_j), same total n.
    let caps: Vec<u64> = counts
        .iter()
        .map(|&k| if k == 0 { n } else { k })
        .collect();
    let mut alt = vec![0u64; r];
    let mut ok = true;
    enumerate_bounded(&caps, n, 0, &mut alt, &mut |candidate| {
        let lp = log_multinomial_pmf(candidate, probs);
        if lp > observed_lp + 1e-9 {
            ok = false;
        }
    });
    Ok(ok)
}

fn enumerate_bounded(
    caps: &[u64],
    remaining: u64,
    idx: usize,
    current: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]),
) {
    if idx + 1 == caps.len() {
        if remaining <= caps[idx] {
            current[idx] = remaining;
            visit(current);
        }
        return;
    }
    for k in 0..=caps[idx].min(remaining) {
        current[idx] = k;
        enumerate_bounded(caps, remaining - k, idx + 1, current, visit);
    }
}

fn log_multinomial_pmf(counts: &[u64], probs: &[f64]) -> f64 {
    let n: u64 = counts.iter().sum();
    let mut lp = ln_factorial(n);
    for (&k, &p) in counts.iter().zip(probs) {
        lp -= ln_factorial(k);
        if k > 0 {
            lp += k as f64 * p.ln();
        }
    }
    lp
}

fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE5_COUNTS: [u64; 18] = [0, 0, 3, 0, 3, 2, 2, 1, 0, 2, 1, 0, 2, 0, 3, 1, 1, 0];

    #[test]
    fn partition_basic() {
        let p = partition_zeros(&[0, 0, 3, 1]).unwrap();
        assert_eq!(p.zero_indices, vec![0, 1]);
        assert_eq!(p.c(), 2);
        let p = partition_zeros(&[5, 2, 1]).unwrap();
        assert_eq!(p.c(), 0);
        assert!(matches!(partition_zeros(&[0, 0]), Err(GofError::AllZero)));
    }

    #[test]
    fn partition_table5_has_seven_zeros() {
        let p = partition_zeros(&TABLE5_COUNTS).unwrap();
        assert_eq!(p.c(), 7);
        assert_eq!(p.r(), 18);
    }

    #[test]
    fn order_stats_table5() {
        let part = partition_zeros(&TABLE5_COUNTS).unwrap();
        let os = order_stats(&TABLE5_COUNTS, &part).unwrap();
        assert_eq!(os.n_lo, 1);
        assert_eq!(os.n_hi, 3);
        assert_eq!(os.n_lolo, 10); // 21 - 1 * 11
        assert_eq!(os.n_hihi, 12); // 3 * 11 - 21
    }

    #[test]
    fn order_stats_uniform_is_error() {
        let counts = [2u64, 2, 2, 2];
        let part = partition_zeros(&counts).unwrap();
        assert!(matches!(
            order_stats(&counts, &part),
            Err(GofError::UniformNonzero)
        ));
    }

    #[test]
    fn order_stats_small_example() {
        let counts = [0u64, 1, 7];
        let part = partition_zeros(&counts).unwrap();
        let os = order_stats(&counts, &part).unwrap();
        assert_eq!((os.n_lo, os.n_hi, os.n_lolo, os.n_hihi), (1, 7, 6, 6));
    }

    #[test]
    fn b_min_table5() {
        // max(0, ln(12/17), ln 10, ln 2) / ln 21 = ln 10 / ln 21.
        let part = partition_zeros(&TABLE5_COUNTS).unwrap();
        let os = order_stats(&TABLE5_COUNTS, &part).unwrap();
        let b_min = compute_b_min(21, 18, &os);
        assert!((b_min - 10f64.ln() / 21f64.ln()).abs() < 1e-14);
        assert!((b_min - 0.7563041955).abs() < 1e-9);
        assert!(b_min < 1.0);
    }

    #[test]
    fn b_min_clamps_at_zero() {
        // All three log terms negative: nonzero counts 2 and 3 over a large n
        // is impossible, so build one where the ratios stay below 1.
        // counts (0, 4, 5): n = 9, R - c = 2, n_lolo = 1, n_hihi = 1,
        // n_hi - n_lo = 1 -> terms ln(1/2), 0, 0 -> b_min = 0.
        let counts = [0u64, 4, 5];
        let part = partition_zeros(&counts).unwrap();
        let os = order_stats(&counts, &part).unwrap();
        assert_eq!(compute_b_min(9, 3, &os), 0.0);
    }

    #[test]
    fn interval_table5() {
        let part = partition_zeros(&TABLE5_COUNTS).unwrap();
        let os = order_stats(&TABLE5_COUNTS, &part).unwrap();
        let b = 0.1 + 0.9 * compute_b_min(21, 18, &os);
        assert!((b - 0.78067).abs() < 1e-4);
        let (a_min, a_max) = admissible_a_interval(21, 18, 7, &os, b).unwrap();
        assert_eq!(a_min, 0.0);
        assert!((a_max - 0.003811).abs() < 1e-5);
    }

    #[test]
    fn interval_empty_when_nb_below_min_count() {
        // counts (0, 2, 3): n^b ~ 1.17 < n_lo = 2, so a_max goes nonpositive.
        let counts = [0u64, 2, 3];
        let part = partition_zeros(&counts).unwrap();
        let os = order_stats(&counts, &part).unwrap();
        let b = 0.1 + 0.9 * compute_b_min(5, 3, &os);
        assert!(matches!(
            admissible_a_interval(5, 3, 1, &os, b),
            Err(GofError::EmptyInterval { .. })
        ));
    }

    #[test]
    fn interval_empty_when_lower_bound_dominates() {
        // counts (0, 1, 2): a_min ~ 2.58 exceeds a_max ~ 0.015.
        let counts = [0u64, 1, 2];
        let part = partition_zeros(&counts).unwrap();
        let os = order_stats(&counts, &part).unwrap();
        let b = 0.1 + 0.9 * compute_b_min(3, 3, &os);
        let err = admissible_a_interval(3, 3, 1, &os, b).unwrap_err();
        match err {
            GofError::EmptyInterval { a_min, a_max, .. } => {
                assert!(a_min > a_max);
                assert!(a_min > 2.0);
            }
            other => panic!("expected EmptyInterval, got {other:?}"),
        }
    }

    #[test]
    fn choose_parameters_table5() {
        let part = partition_zeros(&TABLE5_COUNTS).unwrap();
        let os = order_stats(&TABLE5_COUNTS, &part).unwrap();
        let params =
            choose_parameters(21, 18, 7, &os, 0.1, EpsilonPolicy::default()).unwrap();
        assert!((params.b - 0.78067).abs() < 1e-4);
        assert!(params.a > params.a_min && params.a < params.a_max);
        assert!(params.b_min < params.b && params.b < 1.0);
        assert!(params.a > 0.0 && params.d > 0.0);
    }

    #[test]
    fn choose_parameters_c0_identity() {
        let params = identity_params();
        assert_eq!(params.a, 0.0);
        assert_eq!(params.b, 1.0);
        assert_eq!(params.d, 0.0);
    }

    #[test]
    fn choose_parameters_rejects_bad_h() {
        let part = partition_zeros(&TABLE5_COUNTS).unwrap();
        let os = order_stats(&TABLE5_COUNTS, &part).unwrap();
        for h in [0.0, 1.0, -0.2, 1.5] {
            assert!(matches!(
                choose_parameters(21, 18, 7, &os, h, EpsilonPolicy::default()),
                Err(GofError::InvalidH(_))
            ));
        }
    }

    #[test]
    fn estimator_c0_is_empirical() {
        let counts = [3u64, 5, 2];
        let part = partition_zeros(&counts).unwrap();
        let est = corrected_estimator(&counts, &part, &identity_params()).unwrap();
        assert_eq!(est.probs, vec![0.3, 0.5, 0.2]);
    }

    #[test]
    fn estimator_table5_normalizes_and_stays_interior() {
        let part = partition_zeros(&TABLE5_COUNTS).unwrap();
        let os = order_stats(&TABLE5_COUNTS, &part).unwrap();
        let params =
            choose_parameters(21, 18, 7, &os, 0.1, EpsilonPolicy::default()).unwrap();
        let est = corrected_estimator(&TABLE5_COUNTS, &part, &params).unwrap();
        let sum: f64 = est.probs.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        for &i in &part.zero_indices {
            assert_eq!(est.probs[i], params.a);
        }
        for &p in &est.probs {
            assert!(p > 0.0 && p < 1.0);
        }
        assert!(check_likelihood_condition(&est.probs, &part, 21));
    }

    #[test]
    fn likelihood_condition_basic() {
        let counts = [0u64, 5, 5];
        let part = partition_zeros(&counts).unwrap();
        // zero-cell prob 0.001 <= min nonzero 0.05 / 10 = 0.005.
        assert!(check_likelihood_condition(&[0.001, 0.05, 0.949], &part, 10));
        assert!(!check_likelihood_condition(&[0.01, 0.05, 0.94], &part, 10));
        let none = partition_zeros(&[1u64, 2]).unwrap();
        assert!(check_likelihood_condition(&[0.5, 0.5], &none, 10));
    }

    #[test]
    fn bruteforce_oracle_accepts_condition_probs() {
        // counts (0, 1, 7), n = 8; probs satisfying p_i <= p_j / n.
        let counts = [0u64, 1, 7];
        let part = partition_zeros(&counts).unwrap();
        let probs = [0.01, 0.09, 0.90];
        assert!(check_likelihood_condition(&probs, &part, 8));
        assert!(verify_inequality_bruteforce(&probs, &counts, &part).unwrap());
    }

    #[test]
    fn bruteforce_oracle_vacuous_without_zeros() {
        let counts = [4u64, 4];
        let part = partition_zeros(&counts).unwrap();
        assert!(verify_inequality_bruteforce(&[0.5, 0.5], &counts, &part).unwrap());
    }

    #[test]
    fn bruteforce_oracle_rejects_oversized_instances() {
        let counts = [0u64, 9];
        let part = partition_zeros(&counts).unwrap();
        assert!(matches!(
            verify_inequality_bruteforce(&[0.1, 0.9], &counts, &part),
            Err(GofError::SizeError)
        ));
    }

    #[test]
    fn bruteforce_documents_violating_probs() {
        // Probs strongly violating the condition: the zero cell is far more
        // probable than nonzero/n. The inequality may then fail, showing the
        // condition is sufficient, not necessary. Record the outcome only.
        let counts = [0u64, 1, 7];
        let part = partition_zeros(&counts).unwrap();
        let probs = [0.8, 0.1, 0.1];
        assert!(!check_likelihood_condition(&probs, &part, 8));
        let outcome = verify_inequality_bruteforce(&probs, &counts, &part).unwrap();
        assert!(!outcome, "mass on the empty cell makes refills more likely");
    }

    #[test]
    fn dual_routes_agree_on_table5() {
        let part = partition_zeros(&TABLE5_COUNTS).unwrap();
        let os = order_stats(&TABLE5_COUNTS, &part).unwrap();
        let params =
            choose_parameters(21, 18, 7, &os, 0.1, EpsilonPolicy::default()).unwrap();
        let est = corrected_estimator(&TABLE5_COUNTS, &part, &params).unwrap();
        // Independence null of the camargue table, row-major.
        let table = crate::datasets::camargue().preprocess().unwrap();
        let (null, _) = table.independence_null();
        let q = corrected_q(&null, &TABLE5_COUNTS, &est).unwrap();
        let g = corrected_g(&null, &TABLE5_COUNTS, &est).unwrap();
        assert!((q.direct - q.closed).abs() <= 1e-9 * q.direct.abs().max(1.0));
        assert!((g.direct - g.closed).abs() <= 1e-9 * g.direct.abs().max(1.0));
    }

    #[test]
    fn corrected_equals_classical_at_c0() {
        let counts = [10u64, 20, 30, 40];
        let part = partition_zeros(&counts).unwrap();
        let est = corrected_estimator(&counts, &part, &identity_params()).unwrap();
        let null = vec![0.25; 4];
        let n = 100;
        let empirical: Vec<f64> = counts.iter().map(|&k| k as f64 / n as f64).collect();
        let pair = ProbabilityPair::new(null.clone(), empirical, n).unwrap();
        let q = corrected_q(&null, &counts, &est).unwrap();
        let g = corrected_g(&null, &counts, &est).unwrap();
        let qc = pearson_q(&pair);
        let gc = kullback_g(&pair);
        assert!((q.value() - qc).abs() <= 1e-12 * qc.abs().max(1.0));
        assert!((g.value() - gc).abs() <= 1e-12 * gc.abs().max(1.0));
    }
}
