//! Monte Carlo harness: sparse null distributions over 100 cells, the
//! perturbation used for the power study, per-replicate statistic records
//! grouped by zero count, empirical quantiles, type-I risks and powers.
//!
//! Replicates are independent and run in parallel; replicate i draws from
//! substream i of the master seed and aggregation folds in replicate order,
//! so the report is identical for any worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correction::{
    choose_parameters, corrected_estimator, corrected_g, corrected_q, order_stats,
    partition_zeros, EpsilonPolicy,
};
use crate::distributions::{chi_square_quantile, sample_multinomial, RandomStream};
use crate::error::{GofError, Result};
use crate::statistics::{kullback_g, pearson_q, read_cressie, ProbabilityPair};

/// The four sparse null distributions over 100 cells: m cells of
/// probability 0.0002 followed by 100 - m cells sharing the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table1Null {
    F1,
    F2,
    F3,
    F4,
}

/// Build one of the four reference distributions (length 100, strictly
/// positive, sums to 1 exactly up to rounding of the division).
pub fn table1_distribution(which: Table1Null) -> Vec<f64> {
    let m = match which {
        Table1Null::F1 => 20,
        Table1Null::F2 => 50,
        Table1Null::F3 => 70,
        Table1Null::F4 => 90,
    };
    let low = 0.0002;
    let high = (1.0 - m as f64 * low) / (100 - m) as f64;
    let mut p = vec![low; 100];
    for cell in p.iter_mut().skip(m) {
        *cell = high;
    }
    p
}

/// Shift 1/300 of mass from the last ten cells onto the first ten.
pub fn perturb(f: &[f64]) -> Result<Vec<f64>> {
    if f.len() != 100 {
        return Err(GofError::Domain(format!(
            "perturbation is defined for length 100, got {}",
            f.len()
        )));
    }
    let delta = 1.0 / 300.0;
    let mut out = f.to_vec();
    for cell in out.iter_mut().take(10) {
        *cell += delta;
    }
    for (i, cell) in out.iter_mut().enumerate().skip(90) {
        *cell -= delta;
        if *cell <= 0.0 {
            return Err(GofError::Domain(format!(
                "perturbed component {i} is {cell} <= 0"
            )));
        }
    }
    Ok(out)
}

/// Configuration of one Monte Carlo experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Distribution the data is drawn from.
    pub sampling_probs: Vec<f64>,
    /// Fully specified null the statistics are evaluated against (s = 0).
    pub null_probs: Vec<f64>,
    pub n: u64,
    pub reps: usize,
    pub alphas: Vec<f64>,
    pub seed: u64,
    pub h: f64,
    pub epsilon_policy: EpsilonPolicy,
}

impl SimConfig {
    pub fn new(sampling_probs: Vec<f64>, null_probs: Vec<f64>, seed: u64) -> Self {
        Self {
            sampling_probs,
            null_probs,
            n: 400,
            reps: 1000,
            alphas: vec![0.01, 0.05, 0.1],
            seed,
            h: 0.1,
            epsilon_policy: EpsilonPolicy::default(),
        }
    }
}

/// All statistics of a single replicate, keyed by its zero count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateRecord {
    pub replicate: usize,
    pub c: usize,
    pub q: f64,
    pub g: f64,
    pub rc23: f64,
    pub q_ab: Option<f64>,
    pub g_ab: Option<f64>,
    pub correction_applicable: bool,
}

/// Rejection rates of each statistic at one level alpha. Corrected rates
/// are computed over applicable replicates only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectionRates {
    pub alpha: f64,
    pub threshold: f64,
    pub q: f64,
    pub g: f64,
    pub rc23: f64,
    pub q_ab: f64,
    pub g_ab: f64,
}

/// Per-zero-count empirical quantiles of the five statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileRow {
    pub c: usize,
    pub count: usize,
    pub q: f64,
    pub g: f64,
    pub rc23: f64,
    pub q_ab: Option<f64>,
    pub g_ab: Option<f64>,
    /// Groups with very few replicates say little; flagged below this size.
    pub low_count: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub schema_version: u32,
    pub config: SimConfig,
    pub records: Vec<ReplicateRecord>,
    pub rejection_rates: Vec<RejectionRates>,
    pub quantiles_by_c: Vec<QuantileRow>,
    pub mode_c: usize,
    /// Chi-square quantile of order 0.95 with R - 1 degrees of freedom.
    pub threshold_line: f64,
    /// Replicates where no correction parameters exist.
    pub excluded: usize,
}

const LOW_COUNT: usize = 10;

/// Empirical quantile: order statistic at index ceil(q * m) of the sorted
/// m-sample (type-1 inverse cdf).
pub fn empirical_quantile(values: &mut [f64], q: f64) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite statistics"));
    let m = values.len();
    let idx = ((q * m as f64).ceil() as usize).clamp(1, m);
    values[idx - 1]
}

fn run_replicate(cfg: &SimConfig, index: usize) -> Result<ReplicateRecord> {
    let stream = RandomStream::new(cfg.seed, index as u64);
    let counts = sample_multinomial(cfg.n, &cfg.sampling_probs, stream)?;
    let n: u64 = counts.iter().sum();
    let empirical: Vec<f64> = counts.iter().map(|&k| k as f64 / n as f64).collect();
    let pair = ProbabilityPair::new(cfg.null_probs.clone(), empirical, n)?;
    let q = pearson_q(&pair);
    let g = kullback_g(&pair);
    let rc23 = read_cressie(&pair, 2.0 / 3.0);

    let part = partition_zeros(&counts)?;
    let c = part.c();
    let r = counts.len();
    let corrected = if c == 0 {
        Some((q, g))
    } else {
        match order_stats(&counts, &part)
            .and_then(|os| choose_parameters(n, r, c, &os, cfg.h, cfg.epsilon_policy))
            .and_then(|params| corrected_estimator(&counts, &part, &params))
        {
            Ok(est) => {
                let q_ab = corrected_q(&cfg.null_probs, &counts, &est)?.value();
                let g_ab = corrected_g(&cfg.null_probs, &counts, &est)?.value();
                Some((q_ab, g_ab))
            }
            Err(GofError::UniformNonzero) | Err(GofError::EmptyInterval { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    Ok(ReplicateRecord {
        replicate: index,
        c,
        q,
        g,
        rc23,
        q_ab: corrected.map(|(v, _)| v),
        g_ab: corrected.map(|(_, v)| v),
        correction_applicable: corrected.is_some(),
    })
}

/// Run the full experiment: `reps` replicates drawn from `sampling_probs`,
/// each tested against `null_probs` with df = R - 1.
pub fn run_simulation(cfg: &SimConfig) -> Result<SimulationReport> {
    if cfg.sampling_probs.len() != cfg.null_probs.len() {
        return Err(GofError::Domain(
            "sampling and null vectors must have equal length".into(),
        ));
    }
    if cfg.reps == 0 {
        return Err(GofError::Domain("reps must be >= 1".into()));
    }
    let r = cfg.null_probs.len();
    let df = (r - 1) as u32;

    let records: Vec<ReplicateRecord> = (0..cfg.reps)
        .into_par_iter()
        .map(|i| run_replicate(cfg, i))
        .collect::<Result<_>>()?;

    let rejection_rates = rejection_rates(&records, &cfg.alphas, df)?;
    let quantiles_by_c = quantile_by_c(&records, 0.05);
    let mode_c = mode_of_c(&records);
    let excluded = records.iter().filter(|r| !r.correction_applicable).count();

    Ok(SimulationReport {
        schema_version: 1,
        config: cfg.clone(),
        records,
        rejection_rates,
        quantiles_by_c,
        mode_c,
        threshold_line: chi_square_quantile(0.95, df)?,
        excluded,
    })
}

fn rejection_rates(
    records: &[ReplicateRecord],
    alphas: &[f64],
    df: u32,
) -> Result<Vec<RejectionRates>> {
    let mut out = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let threshold = chi_square_quantile(1.0 - alpha, df)?;
        let total = records.len() as f64;
        let rate = |f: &dyn Fn(&ReplicateRecord) -> f64| {
            records.iter().filter(|r| f(r) > threshold).count() as f64 / total
        };
        let applicable: Vec<&ReplicateRecord> =
            records.iter().filter(|r| r.correction_applicable).collect();
        let corr_rate = |f: &dyn Fn(&ReplicateRecord) -> f64| {
            if applicable.is_empty() {
                0.0
            } else {
                applicable.iter().filter(|r| f(r) > threshold).count() as f64
                    / applicable.len() as f64
            }
        };
        out.push(RejectionRates {
            alpha,
            threshold,
            q: rate(&|r| r.q),
            g: rate(&|r| r.g),
            rc23: rate(&|r| r.rc23),
            q_ab: corr_rate(&|r| r.q_ab.unwrap_or(f64::NEG_INFINITY)),
            g_ab: corr_rate(&|r| r.g_ab.unwrap_or(f64::NEG_INFINITY)),
        });
    }
    Ok(out)
}

/// Group records by zero count and take the empirical (1 - alpha) quantile
/// of each statistic within each group.
pub fn quantile_by_c(records: &[ReplicateRecord], alpha: f64) -> Vec<QuantileRow> {
    let q = 1.0 - alpha;
    let mut by_c: std::collections::BTreeMap<usize, Vec<&ReplicateRecord>> = Default::default();
    for rec in records {
        by_c.entry(rec.c).or_default().push(rec);
    }
    by_c
        .into_iter()
        .map(|(c, group)| {
            let take = |f: &dyn Fn(&ReplicateRecord) -> f64| {
                let mut vals: Vec<f64> = group.iter().map(|r| f(r)).collect();
                empirical_quantile(&mut vals, q)
            };
            let corrected = |f: &dyn Fn(&ReplicateRecord) -> Option<f64>| {
                let mut vals: Vec<f64> = group.iter().filter_map(|r| f(r)).collect();
                if vals.is_empty() {
                    None
                } else {
                    Some(empirical_quantile(&mut vals, q))
                }
            };
            QuantileRow {
                c,
                count: group.len(),
                q: take(&|r| r.q),
                g: take(&|r| r.g),
                rc23: take(&|r| r.rc23),
                q_ab: corrected(&|r| r.q_ab),
                g_ab: corrected(&|r| r.g_ab),
                low_count: group.len() < LOW_COUNT,
            }
        })
        .collect()
}

fn mode_of_c(records: &[ReplicateRecord]) -> usize {
    let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
    for rec in records {
        *counts.entry(rec.c).or_default() += 1;
    }
    // Ties resolve to the smallest c; BTreeMap iteration makes this stable.
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(c, _)| c)
        .unwrap_or(0)
}

/// For each n in the grid, the fraction of replicates whose sample from p0
/// contains at least one empty cell.
pub fn zero_count_decay(
    p0: &[f64],
    n_grid: &[u64],
    reps: usize,
    seed: u64,
) -> Result<Vec<(u64, f64)>> {
    let mut out = Vec::with_capacity(n_grid.len());
    for (gi, &n) in n_grid.iter().enumerate() {
        let hits: usize = (0..reps)
            .into_par_iter()
            .map(|i| {
                let stream = RandomStream::new(seed, ((gi as u64) << 32) | i as u64);
                let counts = sample_multinomial(n, p0, stream)?;
                Ok(usize::from(counts.iter().any(|&k| k == 0)))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        out.push((n, hits as f64 / reps as f64));
    }
    Ok(out)
}
