//! Exact expected runtime of the coupon collector with a uniformly random
//! initial stake, and the quantities that explain its gap to `n H_{n/2}`.
//!
//! With `X ~ Binomial(n, 1/2)` initially collected types and
//! `E[T | X = k] = n H_{n-k}`, the expectation is a finite weighted sum.
//! The deviation `d = n H_{n/2} - E[T]` is obtained two ways: as that
//! difference, and directly as `Σ_a Pr[X = ·] ε_a` where `ε_a` measures how
//! much the pair of starting points symmetric around the middle exceeds the
//! central pair.

mod binomial;

pub use binomial::{binomial_weights, BinomialWeights};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exec::{map_slice, Execution};
use crate::harmonic::{HarmonicTable, EULER_MASCHERONI};
use crate::sum::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Exact expectation for one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactResult {
    pub n: usize,
    pub parity: Parity,
    /// `E[T]` in rounds.
    pub expected_runtime: f64,
    /// `n · H_{n/2}`.
    pub n_h_half: f64,
    /// `n_h_half - expected_runtime`.
    pub deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TruncationMode {
    #[default]
    Full,
    Truncated,
}

/// Controls the window `a <= A = sqrt(c n ln n)` of the direct deviation sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationConfig {
    c: f64,
    pub mode: TruncationMode,
}

impl TruncationConfig {
    pub const DEFAULT_C: f64 = 2.0;

    /// `c` must exceed 3/2 for the neglected tail to vanish as `n` grows.
    pub fn new(c: f64, mode: TruncationMode) -> Result<Self> {
        if !c.is_finite() || c <= 1.5 {
            return domain(format!("truncation constant c = {c} must be finite and > 3/2"));
        }
        Ok(Self { c, mode })
    }

    pub fn full() -> Self {
        Self {
            c: Self::DEFAULT_C,
            mode: TruncationMode::Full,
        }
    }

    pub fn truncated(c: f64) -> Result<Self> {
        Self::new(c, TruncationMode::Truncated)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `A = sqrt(c n ln n)`.
    pub fn threshold(&self, n: usize) -> f64 {
        let nf = n as f64;
        (self.c * nf * nf.ln()).sqrt()
    }

    /// Chernoff-style bound `n^3 · n^(-2c)` on the part of the sum beyond `A`.
    pub fn tail_bound(&self, n: usize) -> f64 {
        let nf = n as f64;
        nf.powf(3.0 - 2.0 * self.c)
    }
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self::full()
    }
}

/// Result of summing `Pr[X = ·] ε_a` over a window of `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub n: usize,
    pub mode: TruncationMode,
    pub c: f64,
    /// `A = sqrt(c n ln n)`.
    pub threshold: f64,
    /// Largest `a` included in the sum.
    pub window: usize,
    pub value: f64,
    /// Bound on the omitted tail, present in truncated mode only.
    pub tail_bound: Option<f64>,
}

/// One contribution `Pr[X = ·] · ε_a` with the bounds that bracket `ε_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonTerm {
    pub a: usize,
    pub weight: f64,
    pub epsilon: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Comparison of `d(n)` with `1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub n: usize,
    pub parity: Parity,
    pub deviation: f64,
    /// `|d - 1/2|`.
    pub gap: f64,
    /// `1/2 - 1/(n + 2)`.
    pub lower_bound: f64,
    /// `20 ln(n) / n`.
    pub tolerance: f64,
    pub lower_bound_holds: bool,
    pub within_tolerance: bool,
}

impl TheoremReport {
    pub fn pass(&self) -> bool {
        self.lower_bound_holds && self.within_tolerance
    }
}

/// `n ln(n/2) + γ n + 1/2`, meaningful for `n >= 2`.
pub fn asymptotic_expected_runtime(n: u64) -> f64 {
    let nf = n as f64;
    nf * (0.5 * nf).ln() + EULER_MASCHERONI * nf + 0.5
}

/// Largest valid `a` for `ε_a`: `⌊n/2⌋` for either parity.
pub fn epsilon_range(n: usize) -> usize {
    n / 2
}

fn check_a(n: usize, a: usize) -> Result<()> {
    if a == 0 || a > epsilon_range(n) {
        return domain(format!("a = {a} outside 1..={} for n = {n}", epsilon_range(n)));
    }
    Ok(())
}

/// Summand `i` (zero-based) of the closed form of `ε_a`, without the factor `n`.
#[inline]
fn epsilon_summand(n: usize, i: usize) -> f64 {
    let i = i as f64;
    if n.is_multiple_of(2) {
        let h = (n / 2) as f64;
        (2.0 * i + 1.0) / ((h - i) * (h + i + 1.0))
    } else {
        let up = n.div_ceil(2) as f64;
        (2.0 * i + 2.0) / ((up - (1.0 + i)) * (up + 1.0 + i))
    }
}

/// `ε_a` from the closed-form sum, in O(a).
pub fn epsilon_a(n: usize, a: usize) -> Result<f64> {
    check_a(n, a)?;
    let s: CompensatedSum = (0..a).map(|i| epsilon_summand(n, i)).sum();
    Ok(n as f64 * s.value())
}

/// `[ε_1, ..., ε_{⌊n/2⌋}]` from the closed form as running sums, in O(n).
pub fn epsilon_series(n: usize) -> Vec<f64> {
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    (0..epsilon_range(n))
        .map(|i| {
            acc += epsilon_summand(n, i);
            nf * acc.value()
        })
        .collect()
}

/// `ε_a` from its definition as a difference of conditional expectations.
///
/// Since `E[T | X = k] = n H_{n-k}`, the difference telescopes into two
/// partial harmonic sums around the middle, which are summed directly
/// instead of subtracting large table entries.
pub fn epsilon_by_definition(n: usize, a: usize) -> Result<f64> {
    check_a(n, a)?;
    let lo = n / 2;
    let hi = n.div_ceil(2);
    let below: CompensatedSum = (lo - a + 1..=lo).map(|i| 1.0 / i as f64).sum();
    let above: CompensatedSum = (hi + 1..=hi + a).map(|i| 1.0 / i as f64).sum();
    Ok(n as f64 * (below.value() - above.value()))
}

/// Lower and upper bounds on `ε_a` used to pin `d` near 1/2.
///
/// Even `n`: `4a²/(n+2) <= ε_a <= n a² / (n²/4 - (a-1)²)`.
/// Odd `n`: `4(a²+a)/(n+2-3/n) <= ε_a <= 4n(a²+a)/(n² - 4a²)`.
pub fn epsilon_bounds(n: usize, a: usize) -> Result<(f64, f64)> {
    check_a(n, a)?;
    let nf = n as f64;
    let af = a as f64;
    match Parity::of(n) {
        Parity::Even => {
            let lower = 4.0 * af * af / (nf + 2.0);
            let denom = nf * nf / 4.0 - (af - 1.0) * (af - 1.0);
            Ok((lower, nf * af * af / denom))
        }
        Parity::Odd => {
            let lower = 4.0 * (af * af + af) / (nf + 2.0 - 3.0 / nf);
            let denom = nf * nf - 4.0 * af * af;
            if denom <= 0.0 {
                return domain(format!("odd upper bound undefined for n = {n}, a = {a}"));
            }
            Ok((lower, 4.0 * nf * (af * af + af) / denom))
        }
    }
}

/// Second-moment identity behind the lower bound on `d`.
///
/// Even `n`: `Σ_{a=1}^{n/2} 2a² Pr[X = n/2 + a]`.
/// Odd `n`: `1/4 + Σ_{a=1}^{⌊n/2⌋} 2 Pr[X = ⌊n/2⌋ - a] (a² + a)`, which is
/// `Σ_{a>=0} 2 Pr[X = ⌊n/2⌋ - a] (a + 1/2)²` with the constant part
/// `Σ_{a>=0} 2 Pr[X = ⌊n/2⌋ - a] / 4 = 1/4` pulled out.
/// Both must equal `Var[X] = n/4`, returned as the second component.
pub fn variance_identity_check(n: usize) -> Result<(f64, f64)> {
    let w = binomial_weights(n)?;
    let mid = n / 2;
    let mut acc = CompensatedSum::new();
    let lhs = match Parity::of(n) {
        Parity::Even => {
            for a in (1..=mid).rev() {
                let af = a as f64;
                acc += 2.0 * af * af * w.get(mid + a);
            }
            acc.value()
        }
        Parity::Odd => {
            for a in (1..=mid).rev() {
                let af = a as f64;
                acc += 2.0 * w.get(mid - a) * (af * af + af);
            }
            acc += 0.25;
            acc.value()
        }
    };
    Ok((lhs, n as f64 / 4.0))
}

/// Exact computations backed by one shared harmonic table.
#[derive(Debug, Clone)]
pub struct ExactEngine {
    table: HarmonicTable,
}

impl ExactEngine {
    /// Engine able to handle every `n <= max_n`.
    pub fn new(max_n: usize) -> Result<Self> {
        Ok(Self {
            table: HarmonicTable::new(max_n)?,
        })
    }

    pub fn table(&self) -> &HarmonicTable {
        &self.table
    }

    pub fn max_n(&self) -> usize {
        self.table.max_index()
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 {
            return domain("n must be at least 1");
        }
        if n > self.max_n() {
            return Err(Error::Capacity {
                what: "n",
                requested: n as u64,
                limit: self.max_n() as u64,
            });
        }
        Ok(())
    }

    /// `E[T | X = k] = n H_{n-k}`.
    pub fn conditional_expectation(&self, n: usize, k: usize) -> Result<f64> {
        self.check_n(n)?;
        if k > n {
            return domain(format!("k = {k} outside 0..={n}"));
        }
        Ok(n as f64 * self.table.get(n - k))
    }

    /// `E[T] = Σ_i E[T | X = i] Pr[X = i]`, accumulated from both tails
    /// towards the mode.
    pub fn expected_runtime(&self, n: usize) -> Result<ExactResult> {
        self.check_n(n)?;
        let w = binomial_weights(n)?;
        let nf = n as f64;
        let term = |i: usize| w.get(i) * (nf * self.table.get(n - i));

        let mut total = CompensatedSum::new();
        let mut mass = CompensatedSum::new();
        let (mut lo, mut hi) = (0usize, n);
        while lo < hi {
            total += term(lo);
            total += term(hi);
            mass += w.get(lo);
            mass += w.get(hi);
            lo += 1;
            hi -= 1;
        }
        if lo == hi {
            total += term(lo);
            mass += w.get(lo);
        }
        let expected_runtime = total.value() / mass.value();
        let n_h_half = nf * self.table.half(n);
        Ok(ExactResult {
            n,
            parity: Parity::of(n),
            expected_runtime,
            n_h_half,
            deviation: n_h_half - expected_runtime,
        })
    }

    /// `d` summed directly as `Σ_a Pr[X = ·] ε_a`; weights are
    /// `Pr[X = n/2 + a]` for even `n` and `Pr[X = ⌊n/2⌋ - a]` for odd `n`.
    pub fn deviation_direct(&self, n: usize, cfg: TruncationConfig) -> Result<DeviationReport> {
        if n < 2 {
            return domain("deviation needs n >= 2");
        }
        self.check_n(n)?;
        let terms = self.weighted_epsilon(n, cfg)?;
        // smallest contributions sit at the largest a
        let value = terms
            .iter()
            .rev()
            .map(|&(w, e)| w * e)
            .sum::<CompensatedSum>()
            .value();
        let threshold = cfg.threshold(n);
        Ok(DeviationReport {
            n,
            mode: cfg.mode,
            c: cfg.c(),
            threshold,
            window: terms.len(),
            value,
            tail_bound: match cfg.mode {
                TruncationMode::Full => None,
                TruncationMode::Truncated => Some(cfg.tail_bound(n)),
            },
        })
    }

    /// Per-`a` breakdown of the direct deviation sum over the configured window.
    pub fn epsilon_terms(&self, n: usize, cfg: TruncationConfig) -> Result<Vec<EpsilonTerm>> {
        if n < 2 {
            return domain("deviation needs n >= 2");
        }
        self.check_n(n)?;
        self.weighted_epsilon(n, cfg)?
            .into_iter()
            .enumerate()
            .map(|(idx, (weight, epsilon))| {
                let a = idx + 1;
                let (lower, upper) = epsilon_bounds(n, a)?;
                Ok(EpsilonTerm {
                    a,
                    weight,
                    epsilon,
                    lower,
                    upper,
                })
            })
            .collect()
    }

    fn weighted_epsilon(&self, n: usize, cfg: TruncationConfig) -> Result<Vec<(f64, f64)>> {
        let w = binomial_weights(n)?;
        let mut eps = epsilon_series(n);
        if cfg.mode == TruncationMode::Truncated {
            let window = (cfg.threshold(n).floor() as usize).min(eps.len());
            eps.truncate(window);
        }
        let mid = n / 2;
        let parity = Parity::of(n);
        Ok(eps
            .into_iter()
            .enumerate()
            .map(|(idx, e)| {
                let a = idx + 1;
                let weight = match parity {
                    Parity::Even => w.get(mid + a),
                    Parity::Odd => w.get(mid - a),
                };
                (weight, e)
            })
            .collect())
    }

    /// Checks `d(n) >= 1/2 - 1/(n+2)` and `|d(n) - 1/2| <= 20 ln(n)/n`.
    pub fn theorem_check(&self, n: usize) -> Result<TheoremReport> {
        if n < 2 {
            return domain("theorem check needs n >= 2");
        }
        let exact = self.expected_runtime(n)?;
        let nf = n as f64;
        let d = exact.deviation;
        let lower_bound = 0.5 - 1.0 / (nf + 2.0);
        let tolerance = 20.0 * nf.ln() / nf;
        let gap = (d - 0.5).abs();
        Ok(TheoremReport {
            n,
            parity: exact.parity,
            deviation: d,
            gap,
            lower_bound,
            tolerance,
            lower_bound_holds: d >= lower_bound,
            within_tolerance: gap <= tolerance,
        })
    }

    /// [`ExactEngine::theorem_check`] over many `n`, results in input order.
    pub fn sweep(&self, ns: &[usize], exec: Execution) -> Result<Vec<TheoremReport>> {
        map_slice(exec, ns, |&n| self.theorem_check(n))
            .into_iter()
            .collect()
    }
}

/// `E[T]` for a single `n` with a table sized for it.
pub fn exact_expected_runtime(n: usize) -> Result<ExactResult> {
    ExactEngine::new(n)?.expected_runtime(n)
}

/// `E[T | X = k]` for a single `(n, k)`.
pub fn conditional_expectation(n: usize, k: usize) -> Result<f64> {
    ExactEngine::new(n)?.conditional_expectation(n, k)
}

/// Direct deviation sum for a single `n`.
pub fn deviation_direct(n: usize, cfg: TruncationConfig) -> Result<DeviationReport> {
    ExactEngine::new(n)?.deviation_direct(n, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn conditional_expectation_values() {
        assert_eq!(conditional_expectation(4, 4).unwrap(), 0.0);
        assert_abs_diff_eq!(conditional_expectation(4, 2).unwrap(), 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(conditional_expectation(3, 0).unwrap(), 5.5, epsilon = 1e-15);
        assert!(matches!(conditional_expectation(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn conditional_expectation_strictly_decreasing() {
        let engine = ExactEngine::new(300).unwrap();
        for n in [1usize, 2, 7, 300] {
            for k in 1..=n {
                assert!(
                    engine.conditional_expectation(n, k).unwrap()
                        < engine.conditional_expectation(n, k - 1).unwrap()
                );
            }
        }
    }

    #[test]
    fn small_n_expectations() {
        let cases = [
            (1, 0.5, 0.5, 0.0),
            (2, 1.75, 2.0, 0.25),
            (3, 3.5, 3.75, 0.25),
            (4, 269.0 / 48.0, 6.0, 19.0 / 48.0),
            (5, 1531.0 / 192.0, 5.0 * (1.5 + 11.0 / 6.0) / 2.0, 23.0 / 64.0),
        ];
        for (n, et, nh, d) in cases {
            let r = exact_expected_runtime(n).unwrap();
            assert_abs_diff_eq!(r.expected_runtime, et, epsilon = 1e-13);
            assert_abs_diff_eq!(r.n_h_half, nh, epsilon = 1e-13);
            assert_abs_diff_eq!(r.deviation, d, epsilon = 1e-13);
            assert_eq!(r.parity, Parity::of(n));
        }
    }

    #[test]
    fn epsilon_examples() {
        assert_abs_diff_eq!(epsilon_a(4, 1).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(epsilon_a(4, 2).unwrap(), 11.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(epsilon_a(3, 1).unwrap(), 2.0, epsilon = 1e-15);
        assert!(epsilon_a(4, 3).is_err());
        assert!(epsilon_a(4, 0).is_err());
        assert!(epsilon_a(1, 1).is_err());
    }

    #[test]
    fn epsilon_matches_raw_conditional_expectations() {
        // Direct subtraction of E[T | X = .] values; only well conditioned at small n.
        for n in 2..=40usize {
            let engine = ExactEngine::new(n).unwrap();
            let ce = |k| engine.conditional_expectation(n, k).unwrap();
            let (lo, hi) = (n / 2, n.div_ceil(2));
            for a in 1..=n / 2 {
                let raw = ce(lo) + ce(hi) - (ce(lo - a) + ce(hi + a));
                let closed = epsilon_a(n, a).unwrap();
                assert!((raw - closed).abs() <= 1e-12 * closed.abs().max(1.0), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let (l, u) = epsilon_bounds(4, 1).unwrap();
        assert_abs_diff_eq!(l, 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u, 1.0, epsilon = 1e-15);
        let (l, u) = epsilon_bounds(4, 2).unwrap();
        assert_abs_diff_eq!(l, 8.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u, 16.0 / 3.0, epsilon = 1e-15);
        let (l, u) = epsilon_bounds(3, 1).unwrap();
        assert_abs_diff_eq!(l, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u, 4.8, epsilon = 1e-15);
    }

    #[test]
    fn direct_deviation_small() {
        let d4 = deviation_direct(4, TruncationConfig::full()).unwrap();
        assert_abs_diff_eq!(d4.value, 19.0 / 48.0, epsilon = 1e-15);
        assert_eq!(d4.window, 2);
        assert_eq!(d4.tail_bound, None);
        let d3 = deviation_direct(3, TruncationConfig::full()).unwrap();
        assert_abs_diff_eq!(d3.value, 0.25, epsilon = 1e-15);
        assert!(deviation_direct(1, TruncationConfig::full()).is_err());
    }

    #[test]
    fn truncation_config_validation() {
        assert!(TruncationConfig::new(1.5, TruncationMode::Truncated).is_err());
        assert!(TruncationConfig::new(f64::NAN, TruncationMode::Full).is_err());
        let cfg = TruncationConfig::truncated(2.0).unwrap();
        assert_abs_diff_eq!(cfg.tail_bound(10_000), 1e-4, epsilon = 1e-18);
    }

    #[test]
    fn truncated_window_is_short() {
        let engine = ExactEngine::new(10_000).unwrap();
        let cfg = TruncationConfig::truncated(2.0).unwrap();
        let r = engine.deviation_direct(10_000, cfg).unwrap();
        assert_eq!(r.window, (2.0f64 * 1e4 * 1e4f64.ln()).sqrt().floor() as usize);
        assert!(r.window < 5000);
    }

    #[test]
    fn variance_small() {
        assert_eq!(variance_identity_check(2).unwrap(), (0.5, 0.5));
        let (l, r) = variance_identity_check(4).unwrap();
        assert_abs_diff_eq!(l, 1.0, epsilon = 1e-15);
        assert_eq!(r, 1.0);
        let (l, r) = variance_identity_check(3).unwrap();
        assert_abs_diff_eq!(l, 0.75, epsilon = 1e-15);
        assert_eq!(r, 0.75);
        let (l, r) = variance_identity_check(1).unwrap();
        assert_eq!((l, r), (0.25, 0.25));
    }

    #[test]
    fn asymptotic_values() {
        assert_abs_diff_eq!(
            asymptotic_expected_runtime(2),
            2.0 * EULER_MASCHERONI + 0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn capacity_is_reported() {
        let engine = ExactEngine::new(10).unwrap();
        assert!(matches!(
            engine.expected_runtime(11),
            Err(Error::Capacity { .. })
        ));
    }
}
