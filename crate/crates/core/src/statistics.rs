//! Classical goodness-of-fit statistics: Pearson's Q, Kullback's G, the
//! Read-Cressie power divergence family RC^lambda, and Ku's legacy
//! subtract-one-per-zero correction.
//!
//! All statistics are evaluated between a strictly positive null vector and
//! an arbitrary test probability vector, so both the empirical distribution
//! and corrected estimators flow through the same code path.

use crate::error::{GofError, Result};

/// A validated (null, test) pair of probability vectors with sample size n.
///
/// The null components must all be strictly positive (structural zeros are
/// excluded); test components may be zero, as for the empirical distribution
/// of a sparse sample.
#[derive(Debug, Clone)]
pub struct ProbabilityPair {
    null_probs: Vec<f64>,
    test_probs: Vec<f64>,
    n: u64,
}

impl ProbabilityPair {
    pub fn new(null_probs: Vec<f64>, test_probs: Vec<f64>, n: u64) -> Result<Self> {
        if null_probs.len() != test_probs.len() {
            return Err(GofError::Domain(format!(
                "vector lengths differ: {} vs {}",
                null_probs.len(),
                test_probs.len()
            )));
        }
        if null_probs.len() < 2 {
            return Err(GofError::Domain("need at least 2 categories".into()));
        }
        if n < 1 {
            return Err(GofError::Domain("sample size n must be >= 1".into()));
        }
        for (i, &p) in null_probs.iter().enumerate() {
            if !(p > 0.0) {
                return Err(GofError::Domain(format!(
                    "null probability {p} at cell {i} violates strict positivity"
                )));
            }
        }
        for (i, &p) in test_probs.iter().enumerate() {
            if !(p >= 0.0) {
                return Err(GofError::Domain(format!(
                    "test probability {p} at cell {i} is negative"
                )));
            }
        }
        for (name, v) in [("null", &null_probs), ("test", &test_probs)] {
            let sum: f64 = v.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(GofError::Domain(format!(
                    "{name} vector sums to {sum}, not 1 within 1e-9"
                )));
            }
        }
        Ok(Self {
            null_probs,
            test_probs,
            n,
        })
    }

    pub fn null_probs(&self) -> &[f64] {
        &self.null_probs
    }

    pub fn test_probs(&self) -> &[f64] {
        &self.test_probs
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

/// Pearson's chi-square statistic Q = n * sum (p'_r - p_r)^2 / p_r.
pub fn pearson_q(pair: &ProbabilityPair) -> f64 {
    let n = pair.n as f64;
    n * pair
        .null_probs
        .iter()
        .zip(&pair.test_probs)
        .map(|(&p, &q)| {
            let d = q - p;
            d * d / p
        })
        .sum::<f64>()
}

/// Kullback's minimum discrimination information statistic
/// G = 2n * sum p'_r ln(p'_r / p_r), with 0 ln 0 = 0.
pub fn kullback_g(pair: &ProbabilityPair) -> f64 {
    let n = pair.n as f64;
    2.0 * n
        * pair
            .null_probs
            .iter()
            .zip(&pair.test_probs)
            .map(|(&p, &q)| if q > 0.0 { q * (q / p).ln() } else { 0.0 })
            .sum::<f64>()
}

/// Read-Cressie power divergence statistic
/// RC^lambda = 2n / (lambda (lambda + 1)) * sum p'_r [(p'_r / p_r)^lambda - 1].
///
/// lambda = 0 and lambda = -1 are taken as their continuity limits. Zero
/// test components contribute 0, extending the lambda > 0 convention to
/// lambda <= 0 (only lambda >= 0 plus lambda = 2/3 are used in the shipped
/// pipelines).
pub fn read_cressie(pair: &ProbabilityPair, lambda: f64) -> f64 {
    let n = pair.n as f64;
    if lambda == 0.0 {
        return kullback_g(pair);
    }
    if lambda == -1.0 {
        // Continuity limit: 2n * sum p_r ln(p_r / p'_r) over nonzero cells.
        return 2.0 * n
            * pair
                .null_probs
                .iter()
                .zip(&pair.test_probs)
                .map(|(&p, &q)| if q > 0.0 { p * (p / q).ln() } else { 0.0 })
                .sum::<f64>();
    }
    2.0 * n / (lambda * (lambda + 1.0))
        * pair
            .null_probs
            .iter()
            .zip(&pair.test_probs)
            .map(|(&p, &q)| {
                if q > 0.0 {
                    q * ((q / p).powf(lambda) - 1.0)
                } else {
                    0.0
                }
            })
            .sum::<f64>()
}

/// Ku's correction: subtract 1 from G for each of the c zero cells.
pub fn ku_corrected_g(g_value: f64, c: usize) -> f64 {
    g_value - c as f64
}
