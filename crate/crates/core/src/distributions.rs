//! Chi-square distribution kernel and seeded multinomial sampling.
//!
//! The cdf is computed through the regularized lower incomplete gamma
//! function P(a, x): a series expansion for x < a + 1 and a continued
//! fraction otherwise. Quantiles invert the cdf by bisection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{GofError, Result};

const MAX_ITER: usize = 800;
const GAMMA_EPS: f64 = 1e-16;

/// Chi-square distribution with `df` degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiSquare {
    df: u32,
}

impl ChiSquare {
    pub fn new(df: u32) -> Result<Self> {
        if df < 1 {
            return Err(GofError::Domain("degrees of freedom must be >= 1".into()));
        }
        Ok(Self { df })
    }

    pub fn df(&self) -> u32 {
        self.df
    }

    /// P(chi2_df <= x).
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x < 0.0 {
            return Err(GofError::Domain(format!("cdf argument {x} must be >= 0")));
        }
        Ok(reg_lower_gamma(self.df as f64 / 2.0, x / 2.0))
    }

    /// Quantile of order `p`: the x with cdf(x) = p, found by bisection.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(GofError::Domain(format!(
                "quantile order {p} must lie in (0, 1)"
            )));
        }
        // Bracket the root. The mean is df and the variance 2*df, so a few
        // standard deviations above the mean always covers p < 1.
        let df = self.df as f64;
        let mut lo = 0.0;
        let mut hi = df + 10.0 * (2.0 * df).sqrt() + 10.0;
        while reg_lower_gamma(df / 2.0, hi / 2.0) < p {
            hi *= 2.0;
        }
        // Bisection to width ~1e-12 relative.
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if reg_lower_gamma(df / 2.0, mid / 2.0) < p {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * hi.max(1.0) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Convenience wrapper for [`ChiSquare::cdf`].
pub fn chi_square_cdf(x: f64, df: u32) -> Result<f64> {
    ChiSquare::new(df)?.cdf(x)
}

/// Convenience wrapper for [`ChiSquare::quantile`].
pub fn chi_square_quantile(p: f64, df: u32) -> Result<f64> {
    ChiSquare::new(df)?.quantile(p)
}

/// Regularized lower incomplete gamma function P(a, x).
fn reg_lower_gamma(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        lower_gamma_series(a, x)
    } else {
        1.0 - upper_gamma_cf(a, x)
    }
}

/// Series expansion of P(a, x), valid for x < a + 1.
fn lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * GAMMA_EPS {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Continued fraction for Q(a, x) = 1 - P(a, x), valid for x >= a + 1.
/// Modified Lentz's method.
fn upper_gamma_cf(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < GAMMA_EPS {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

/// Lanczos approximation of ln Gamma(x) for x > 0.
fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // Reflection formula.
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Immutable descriptor of a reproducible random substream.
///
/// The same (seed, stream) pair always yields the identical draw sequence;
/// distinct stream indices yield independent sequences. Replicate i of an
/// experiment uses stream i, so execution order cannot change results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomStream {
    pub seed: u64,
    pub stream: u64,
}

impl RandomStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Derive the substream with the given index from the same master seed.
    pub fn substream(&self, stream: u64) -> Self {
        Self {
            seed: self.seed,
            stream,
        }
    }

    pub(crate) fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Draw one sample from the multinomial distribution M(n; p) using
/// sequential conditional binomial draws: exact, O(R) per sample.
pub fn sample_multinomial(n: u64, probs: &[f64], stream: RandomStream) -> Result<Vec<u64>> {
    if n < 1 {
        return Err(GofError::Domain("sample size n must be >= 1".into()));
    }
    validate_probability_vector(probs)?;
    let mut rng = stream.rng();
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = n;
    let mut mass_left = 1.0;
    for (r, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if r + 1 == probs.len() {
            counts[r] = remaining;
            break;
        }
        // Conditional probability of cell r among the remaining mass.
        let cond = (p / mass_left).clamp(0.0, 1.0);
        let k = if cond >= 1.0 {
            remaining
        } else if cond <= 0.0 {
            0
        } else {
            Binomial::new(remaining, cond)
                .expect("conditional probability in [0,1]")
                .sample(&mut rng)
        };
        counts[r] = k;
        remaining -= k;
        mass_left -= p;
        if mass_left <= 0.0 {
            mass_left = 0.0;
        }
    }
    Ok(counts)
}

/// Check that `probs` is a probability vector: nonnegative components
/// summing to 1 within 1e-12.
pub fn validate_probability_vector(probs: &[f64]) -> Result<()> {
    if probs.is_empty() {
        return Err(GofError::Domain("probability vector is empty".into()));
    }
    let mut sum = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        if !(p >= 0.0) {
            return Err(GofError::Domain(format!(
                "probability component {i} is {p}; must be >= 0"
            )));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > 1e-12 {
        return Err(GofError::Domain(format!(
            "probability vector sums to {sum}, not 1 within 1e-12"
        )));
    }
    Ok(())
}

/// Uniform f64 in [0, 1) from the stream; used by test helpers.
pub fn uniform_f64(rng: &mut ChaCha12Rng) -> f64 {
    rng.gen::<f64>()
}
