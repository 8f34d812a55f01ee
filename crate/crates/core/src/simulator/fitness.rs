//! Strictly monotone pseudo-Boolean functions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bits::BitString;
use crate::sum::compensated_sum;

/// A fitness `f: {0,1}^n -> R` with `f(x) < f(y)` whenever `x <= y`
/// pointwise and `x != y`.
pub trait MonotoneFunction: Send + Sync {
    fn dimension(&self) -> usize;

    fn evaluate(&self, x: &BitString) -> f64;

    /// Orders `a` against `b` by fitness.
    fn compare(&self, a: &BitString, b: &BitString) -> Ordering {
        self.evaluate(a).total_cmp(&self.evaluate(b))
    }

    /// Orders `x` with bit `j` flipped against `x`.
    fn compare_flip(&self, x: &BitString, j: usize) -> Ordering {
        let mut y = x.clone();
        y.flip(j);
        self.compare(&y, x)
    }
}

impl<F: MonotoneFunction + ?Sized> MonotoneFunction for Box<F> {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        (**self).evaluate(x)
    }

    fn compare(&self, a: &BitString, b: &BitString) -> Ordering {
        (**self).compare(a, b)
    }

    fn compare_flip(&self, x: &BitString, j: usize) -> Ordering {
        (**self).compare_flip(x, j)
    }
}

/// Sign of a single-bit change for a function whose every weight is positive.
#[inline]
fn positive_weight_flip(x: &BitString, j: usize) -> Ordering {
    if x.get(j) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Number of ones.
#[derive(Debug, Clone, Copy)]
pub struct OneMax {
    n: usize,
}

impl OneMax {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl MonotoneFunction for OneMax {
    fn dimension(&self) -> usize {
        self.n
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        x.count_ones() as f64
    }

    fn compare(&self, a: &BitString, b: &BitString) -> Ordering {
        a.count_ones().cmp(&b.count_ones())
    }

    fn compare_flip(&self, x: &BitString, j: usize) -> Ordering {
        positive_weight_flip(x, j)
    }
}

/// `Σ 2^i x_i`.
///
/// `evaluate` is exact only up to 53 bits; comparisons beyond that treat the
/// string as a binary number, which keeps the order exact for any length.
#[derive(Debug, Clone, Copy)]
pub struct BinVal {
    n: usize,
}

impl BinVal {
    /// Longest length for which every value is an exactly representable `f64`.
    pub const EXACT_BITS: usize = 53;

    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl MonotoneFunction for BinVal {
    fn dimension(&self) -> usize {
        self.n
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        x.iter()
            .enumerate()
            .rev()
            .filter(|&(_, b)| b)
            .map(|(i, _)| 2f64.powi(i as i32))
            .sum()
    }

    fn compare(&self, a: &BitString, b: &BitString) -> Ordering {
        if self.n <= Self::EXACT_BITS {
            self.evaluate(a).total_cmp(&self.evaluate(b))
        } else {
            a.cmp_as_binary(b)
        }
    }

    fn compare_flip(&self, x: &BitString, j: usize) -> Ordering {
        positive_weight_flip(x, j)
    }
}

/// `Σ w_i x_i` with weights drawn i.i.d. uniform from `(0, 1]`.
#[derive(Debug, Clone)]
pub struct PositiveLinear {
    weights: Vec<f64>,
}

impl PositiveLinear {
    /// Draws the weights from a stream keyed by `seed` that no trial uses.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::MAX);
        // random::<f64>() lies in [0, 1)
        let weights = (0..n).map(|_| 1.0 - rng.random::<f64>()).collect();
        Self { weights }
    }

    /// Panics unless every weight is positive and finite.
    pub fn with_weights(weights: Vec<f64>) -> Self {
        assert!(
            weights.iter().all(|w| w.is_finite() && *w > 0.0),
            "weights must be positive"
        );
        Self { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl MonotoneFunction for PositiveLinear {
    fn dimension(&self) -> usize {
        self.weights.len()
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        compensated_sum(
            self.weights
                .iter()
                .enumerate()
                .filter(|&(i, _)| x.get(i))
                .map(|(_, &w)| w),
        )
    }

    fn compare_flip(&self, x: &BitString, j: usize) -> Ordering {
        positive_weight_flip(x, j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum FitnessKind {
    #[default]
    #[serde(rename = "onemax")]
    OneMax,
    #[serde(rename = "binval")]
    BinVal,
    #[serde(rename = "random-positive-linear")]
    RandomPositiveLinear,
}

impl FitnessKind {
    pub const ALL: [FitnessKind; 3] = [
        FitnessKind::OneMax,
        FitnessKind::BinVal,
        FitnessKind::RandomPositiveLinear,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FitnessKind::OneMax => "onemax",
            FitnessKind::BinVal => "binval",
            FitnessKind::RandomPositiveLinear => "random-positive-linear",
        }
    }
}

impl fmt::Display for FitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FitnessKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown fitness kind {s:?}"))
    }
}

/// Builds the fitness of the given kind; `seed` only matters for random weights.
pub fn make_fitness(kind: FitnessKind, n: usize, seed: u64) -> Box<dyn MonotoneFunction> {
    match kind {
        FitnessKind::OneMax => Box::new(OneMax::new(n)),
        FitnessKind::BinVal => Box::new(BinVal::new(n)),
        FitnessKind::RandomPositiveLinear => Box::new(PositiveLinear::random(n, seed)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Forces every comparison through full evaluation.
    struct ByValue<F>(F);

    impl<F: MonotoneFunction> MonotoneFunction for ByValue<F> {
        fn dimension(&self) -> usize {
            self.0.dimension()
        }
        fn evaluate(&self, x: &BitString) -> f64 {
            self.0.evaluate(x)
        }
    }

    fn bits(v: &[bool]) -> BitString {
        BitString::from_bools(v)
    }

    #[test]
    fn onemax_values() {
        let f = OneMax::new(4);
        assert_eq!(f.evaluate(&"1011".parse().unwrap()), 3.0);
        assert_eq!(f.evaluate(&BitString::zeros(4)), 0.0);
    }

    #[test]
    fn binval_small_values() {
        let f = BinVal::new(4);
        // bit 0 has weight 1, bit 3 has weight 8
        assert_eq!(f.evaluate(&"1011".parse().unwrap()), 1.0 + 4.0 + 8.0);
    }

    #[test]
    fn binval_long_strings_stay_strict() {
        let n = 200;
        let f = BinVal::new(n);
        let mut x = BitString::ones(n);
        x.set(0, false);
        // as f64 the two values coincide, the binary comparison does not
        let y = BitString::ones(n);
        assert_eq!(f.evaluate(&x), f.evaluate(&y));
        assert_eq!(f.compare(&y, &x), Ordering::Greater);
    }

    #[test]
    fn kinds_round_trip_through_names() {
        for k in FitnessKind::ALL {
            assert_eq!(k.as_str().parse::<FitnessKind>().unwrap(), k);
            assert_eq!(k.to_string(), k.as_str());
        }
        assert!("twomax".parse::<FitnessKind>().is_err());
    }

    #[test]
    fn random_linear_single_flips_increase() {
        let n = 40;
        let f = PositiveLinear::random(n, 9);
        assert!(f.weights().iter().all(|&w| w > 0.0 && w <= 1.0));
        let mut s = super::super::RandomStream::new(3, 0);
        use super::super::DrawSource;
        for _ in 0..100 {
            let x = BitString::from_bools(&(0..n).map(|_| s.fair_bit()).collect::<Vec<_>>());
            for j in (0..n).filter(|&j| !x.get(j)) {
                let mut y = x.clone();
                y.flip(j);
                assert!(f.evaluate(&y) > f.evaluate(&x));
            }
        }
    }

    fn check_strict_and_fast_path(f: &dyn MonotoneFunction, x: &BitString) {
        let slow = ByValue(f);
        for j in 0..x.len() {
            let mut y = x.clone();
            y.flip(j);
            let expected = if x.get(j) {
                Ordering::Less
            } else {
                Ordering::Greater
            };
            assert_eq!(f.compare(&y, x), expected);
            assert_eq!(f.compare_flip(x, j), expected);
            assert_eq!(slow.compare_flip(x, j), expected);
        }
    }

    impl MonotoneFunction for &dyn MonotoneFunction {
        fn dimension(&self) -> usize {
            (**self).dimension()
        }
        fn evaluate(&self, x: &BitString) -> f64 {
            (**self).evaluate(x)
        }
        fn compare(&self, a: &BitString, b: &BitString) -> Ordering {
            (**self).compare(a, b)
        }
    }

    proptest! {
        #[test]
        fn single_flips_are_strict(v in prop::collection::vec(any::<bool>(), 1..50), seed in any::<u64>()) {
            let n = v.len();
            let x = bits(&v);
            for kind in FitnessKind::ALL {
                let f = make_fitness(kind, n, seed);
                check_strict_and_fast_path(f.as_ref(), &x);
            }
        }

        #[test]
        fn binval_binary_order_matches_values(a in prop::collection::vec(any::<bool>(), 53), b in prop::collection::vec(any::<bool>(), 53)) {
            let (a, b) = (bits(&a), bits(&b));
            let f = BinVal::new(53);
            prop_assert_eq!(f.compare(&a, &b), a.cmp_as_binary(&b));
        }
    }
}
