//! Contingency-table data model, sparsity preprocessing, the composite
//! independence null with its MLE, and the end-to-end test pipeline.

use serde::{Deserialize, Serialize};

use crate::correction::{
    choose_parameters, corrected_estimator, corrected_g, corrected_q, identity_params,
    order_stats, partition_zeros, CorrectionParams, EpsilonPolicy,
};
use crate::distributions::{chi_square_cdf, chi_square_quantile};
use crate::error::{GofError, Result};
use crate::statistics::{kullback_g, ku_corrected_g, pearson_q, read_cressie, ProbabilityPair};

/// A two-way table of nonnegative counts with row and column labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencyTable {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    /// Row-major counts, rows x cols.
    data: Vec<u64>,
}

impl ContingencyTable {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        data: Vec<u64>,
    ) -> Result<Self> {
        if row_labels.is_empty() || col_labels.is_empty() {
            return Err(GofError::Domain("table must have rows and columns".into()));
        }
        if data.len() != row_labels.len() * col_labels.len() {
            return Err(GofError::Domain(format!(
                "data length {} does not match {} x {}",
                data.len(),
                row_labels.len(),
                col_labels.len()
            )));
        }
        if data.iter().all(|&k| k == 0) {
            return Err(GofError::AllZero);
        }
        Ok(Self {
            row_labels,
            col_labels,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols() + j]
    }

    /// Total count n.
    pub fn n(&self) -> u64 {
        self.data.iter().sum()
    }

    /// Row-major flattening of the counts.
    pub fn flat_counts(&self) -> &[u64] {
        &self.data
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.get(i, j)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Remove all-zero rows and columns, so the independence null assigns
    /// strictly positive probability to every remaining cell. Idempotent.
    pub fn preprocess(&self) -> Result<ContingencyTable> {
        let row_keep: Vec<usize> = self
            .row_sums()
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 0)
            .map(|(i, _)| i)
            .collect();
        let col_keep: Vec<usize> = self
            .col_sums()
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 0)
            .map(|(j, _)| j)
            .collect();
        if row_keep.len() < 2 || col_keep.len() < 2 {
            return Err(GofError::DegenerateTable {
                rows: row_keep.len(),
                cols: col_keep.len(),
            });
        }
        let mut data = Vec::with_capacity(row_keep.len() * col_keep.len());
        for &i in &row_keep {
            for &j in &col_keep {
                data.push(self.get(i, j));
            }
        }
        ContingencyTable::new(
            row_keep.iter().map(|&i| self.row_labels[i].clone()).collect(),
            col_keep.iter().map(|&j| self.col_labels[j].clone()).collect(),
            data,
        )
    }

    /// MLE of the independence null: p_ij = (n_i+ / n)(n_+j / n), flattened
    /// row-major, together with the estimated parameter count
    /// s = (I - 1) + (J - 1). Requires a preprocessed table.
    pub fn independence_null(&self) -> (Vec<f64>, usize) {
        let n = self.n() as f64;
        let rs = self.row_sums();
        let cs = self.col_sums();
        let mut probs = Vec::with_capacity(self.data.len());
        for &ri in &rs {
            for &cj in &cs {
                probs.push((ri as f64 / n) * (cj as f64 / n));
            }
        }
        let s = (self.rows() - 1) + (self.cols() - 1);
        (probs, s)
    }
}

/// The hypothesized distribution a test is run against.
#[derive(Debug, Clone, PartialEq)]
pub enum NullSpec {
    /// Fully specified probability vector; no estimated parameters (s = 0).
    FullySpecified(Vec<f64>),
    /// Independence model with margins estimated by MLE;
    /// s = (I - 1) + (J - 1).
    Independence,
}

/// Accept/reject outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn is_reject(&self) -> bool {
        matches!(self, Decision::Reject)
    }

    fn from_stat(value: f64, threshold: f64) -> Self {
        if value > threshold {
            Decision::Reject
        } else {
            Decision::Accept
        }
    }
}

/// One statistic with its p-value and per-statistic decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatResult {
    pub name: String,
    pub value: f64,
    pub p_value: f64,
    pub decision: Decision,
}

/// Counts of expected frequencies below the classical thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityDiagnostics {
    pub zeros: usize,
    pub below_half: usize,
    pub below_one: usize,
    pub below_five: usize,
}

/// Whether the correction could be applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CorrectionStatus {
    Applied { params: CorrectionParams },
    NotApplicable { reason: String },
}

/// Row-major layout record, so flat cell indices map back to (i, j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub rows: usize,
    pub cols: usize,
}

/// Complete outcome of one goodness-of-fit or independence test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub schema_version: u32,
    pub alpha: f64,
    pub df: u32,
    pub threshold: f64,
    pub statistics: Vec<StatResult>,
    pub combined_decision: Decision,
    pub sparsity: SparsityDiagnostics,
    pub correction: CorrectionStatus,
    pub expected: Vec<f64>,
    /// Present for independence tests; maps flat indices back to (i, j).
    pub layout: Option<Layout>,
}

impl TestReport {
    pub fn statistic(&self, name: &str) -> Option<&StatResult> {
        self.statistics.iter().find(|s| s.name == name)
    }
}

/// Tally expected frequencies below 0.5, 1 and 5.
pub fn sparsity_counts(expected: &[f64]) -> (usize, usize, usize) {
    let below = |t: f64| expected.iter().filter(|&&e| e < t).count();
    (below(0.5), below(1.0), below(5.0))
}

fn p_value(stat: f64, df: u32) -> Result<f64> {
    if stat < 0.0 {
        // Corrected statistics may go negative; the chi-square cdf at or
        // below the origin is 0, so the p-value saturates at 1.
        return Ok(1.0);
    }
    Ok(1.0 - chi_square_cdf(stat, df)?)
}

/// Shared pipeline behind [`run_gof_test`] and [`run_independence_test`].
fn build_report(
    counts: &[u64],
    null_probs: &[f64],
    s: usize,
    alpha: f64,
    h: f64,
    policy: EpsilonPolicy,
    layout: Option<Layout>,
) -> Result<TestReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(GofError::Domain(format!("alpha {alpha} must lie in (0, 1)")));
    }
    let n: u64 = counts.iter().sum();
    let r = counts.len();
    if r < s + 2 {
        return Err(GofError::Domain(format!(
            "R = {r} categories leave no degrees of freedom with s = {s}"
        )));
    }
    let df = (r - s - 1) as u32;
    let empirical: Vec<f64> = counts.iter().map(|&k| k as f64 / n as f64).collect();
    let pair = ProbabilityPair::new(null_probs.to_vec(), empirical, n)?;

    let q = pearson_q(&pair);
    let g = kullback_g(&pair);
    let rc23 = read_cressie(&pair, 2.0 / 3.0);

    let part = partition_zeros(counts)?;
    let c = part.c();
    let ku = ku_corrected_g(g, c);

    // Correction: exact identity at c = 0; not applicable when the nonzero
    // counts are uniform; EmptyInterval is a hard error.
    let correction = if c == 0 {
        Ok(identity_params())
    } else {
        match order_stats(counts, &part) {
            Ok(os) => choose_parameters(n, r, c, &os, h, policy),
            Err(GofError::UniformNonzero) => Err(GofError::UniformNonzero),
            Err(e) => return Err(e),
        }
    };

    let threshold = chi_square_quantile(1.0 - alpha, df)?;
    let mut statistics = Vec::new();
    let mut push = |name: &str, value: f64| -> Result<()> {
        statistics.push(StatResult {
            name: name.to_string(),
            value,
            p_value: p_value(value, df)?,
            decision: Decision::from_stat(value, threshold),
        });
        Ok(())
    };
    push("Q", q)?;
    push("G", g)?;
    push("RC23", rc23)?;

    let (status, combined) = match correction {
        Ok(params) => {
            let est = corrected_estimator(counts, &part, &params)?;
            let q_ab = corrected_q(null_probs, counts, &est)?.value();
            let g_ab = corrected_g(null_probs, counts, &est)?.value();
            push("Qab", q_ab)?;
            push("Gab", g_ab)?;
            let combined = if q_ab > threshold || g_ab > threshold {
                Decision::Reject
            } else {
                Decision::Accept
            };
            (CorrectionStatus::Applied { params }, combined)
        }
        Err(GofError::UniformNonzero) => {
            // Classical statistics stand in for the combined decision.
            let combined = if q > threshold || g > threshold {
                Decision::Reject
            } else {
                Decision::Accept
            };
            (
                CorrectionStatus::NotApplicable {
                    reason: "uniform nonzero counts".into(),
                },
                combined,
            )
        }
        Err(e) => return Err(e),
    };
    push("Ku", ku)?;

    let expected: Vec<f64> = null_probs.iter().map(|&p| n as f64 * p).collect();
    let (below_half, below_one, below_five) = sparsity_counts(&expected);

    Ok(TestReport {
        schema_version: 1,
        alpha,
        df,
        threshold,
        statistics,
        combined_decision: combined,
        sparsity: SparsityDiagnostics {
            zeros: c,
            below_half,
            below_one,
            below_five,
        },
        correction: status,
        expected,
        layout,
    })
}

/// Goodness-of-fit test of `counts` against a fully specified null
/// (s = 0, df = R - 1).
pub fn run_gof_test(
    counts: &[u64],
    null_probs: &[f64],
    alpha: f64,
    h: f64,
    policy: EpsilonPolicy,
) -> Result<TestReport> {
    build_report(counts, null_probs, 0, alpha, h, policy, None)
}

/// Goodness-of-fit test against an externally estimated composite null:
/// `s` parameters were estimated, so df = R - s - 1.
pub fn run_gof_test_composite(
    counts: &[u64],
    null_probs: &[f64],
    s: usize,
    alpha: f64,
    h: f64,
    policy: EpsilonPolicy,
) -> Result<TestReport> {
    build_report(counts, null_probs, s, alpha, h, policy, None)
}

/// Full independence test: preprocess, estimate the independence null,
/// flatten row-major and run the corrected pipeline.
pub fn run_independence_test(
    table: &ContingencyTable,
    alpha: f64,
    h: f64,
    policy: EpsilonPolicy,
) -> Result<TestReport> {
    let table = table.preprocess()?;
    let (null_probs, s) = table.independence_null();
    build_report(
        table.flat_counts(),
        &null_probs,
        s,
        alpha,
        h,
        policy,
        Some(Layout {
            rows: table.rows(),
            cols: table.cols(),
        }),
    )
}
