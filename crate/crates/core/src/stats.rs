//! Summaries of trial batches and their comparison with the exact expectation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{asymptotic_expected_runtime, exact_expected_runtime};
use crate::simulator::TrialRecord;

/// |z| above this fails a comparison.
pub const Z_THRESHOLD: f64 = 4.0;

const Z_95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub trials: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub stderr: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
}

impl SummaryStats {
    /// One-pass running-mean (Welford) summary of at least two values.
    pub fn from_values<I: IntoIterator<Item = f64>>(values: I) -> Result<Self> {
        let mut count = 0u64;
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for x in values {
            count += 1;
            let delta = x - mean;
            mean += delta / count as f64;
            m2 += delta * (x - mean);
        }
        Self::from_moments(count, mean, m2)
    }

    fn from_moments(count: u64, mean: f64, m2: f64) -> Result<Self> {
        if count < 2 {
            return Err(Error::Degenerate(format!(
                "need at least 2 trials to summarize, got {count}"
            )));
        }
        let variance = (m2 / (count - 1) as f64).max(0.0);
        let stderr = (variance / count as f64).sqrt();
        Ok(Self {
            trials: count,
            mean,
            variance,
            stderr,
            ci95_low: mean - Z_95 * stderr,
            ci95_high: mean + Z_95 * stderr,
        })
    }

    /// Sum of squared deviations from the mean.
    fn m2(&self) -> f64 {
        self.variance * (self.trials - 1) as f64
    }

    /// Summary of the union of two disjoint batches.
    pub fn merge(&self, other: &Self) -> Self {
        let (na, nb) = (self.trials as f64, other.trials as f64);
        let count = self.trials + other.trials;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * nb / (na + nb);
        let m2 = self.m2() + other.m2() + delta * delta * na * nb / (na + nb);
        Self::from_moments(count, mean, m2).expect("merged count is at least 4")
    }
}

/// Summary of the hitting times in `records`.
pub fn summarize(records: &[TrialRecord]) -> Result<SummaryStats> {
    SummaryStats::from_values(records.iter().map(|r| r.hitting_time as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub empirical: SummaryStats,
    pub exact_value: f64,
    pub asymptotic_value: f64,
    pub z_score: f64,
    pub verdict: Verdict,
}

/// z-score of the empirical mean against `exact_value`.
///
/// With zero standard error the score is 0 if the mean hits the value
/// exactly and infinite otherwise.
pub fn compare_with(summary: SummaryStats, exact_value: f64, asymptotic_value: f64) -> ComparisonReport {
    let diff = summary.mean - exact_value;
    let z_score = if summary.stderr > 0.0 {
        diff / summary.stderr
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    };
    let verdict = if z_score.abs() <= Z_THRESHOLD {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    ComparisonReport {
        empirical: summary,
        exact_value,
        asymptotic_value,
        z_score,
        verdict,
    }
}

/// Compares a batch at size `n` with the exact and asymptotic expectations.
pub fn compare_to_exact(summary: SummaryStats, n: usize) -> Result<ComparisonReport> {
    let exact = exact_expected_runtime(n)?.expected_runtime;
    Ok(compare_with(summary, exact, asymptotic_expected_runtime(n as u64)))
}
