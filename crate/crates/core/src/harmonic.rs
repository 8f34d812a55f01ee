//! Harmonic numbers `H_k = 1 + 1/2 + ... + 1/k`, the fractional `H_{n/2}`
//! convention for odd `n`, and the leading asymptotic expansion.

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Euler–Mascheroni constant γ.
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431_04;

/// Largest index a [`HarmonicTable`] (and hence any O(n) exact computation) may hold.
pub const N_MAX: usize = 10_000_000;

/// Parameters of the expansion `H_n ≈ ln n + γ + 1/(2n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    pub euler_mascheroni: f64,
}

impl Default for AsymptoticParams {
    fn default() -> Self {
        Self {
            euler_mascheroni: EULER_MASCHERONI,
        }
    }
}

impl AsymptoticParams {
    pub fn harmonic(&self, n: u64) -> f64 {
        let x = n as f64;
        x.ln() + self.euler_mascheroni + 0.5 / x
    }
}

/// Prefix sums `values[k] = H_k` for `k = 0..=max_index`, with `H_0 = 0`.
///
/// Entries are accumulated in ascending index order with a compensated sum,
/// so every entry is within about one rounding unit of the true value.
/// The table is immutable once built and can be shared across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicTable {
    values: Vec<f64>,
}

impl HarmonicTable {
    pub fn new(max_index: usize) -> Result<Self> {
        if max_index > N_MAX {
            return Err(Error::Capacity {
                what: "harmonic table size",
                requested: max_index as u64,
                limit: N_MAX as u64,
            });
        }
        let mut values = Vec::with_capacity(max_index + 1);
        values.push(0.0);
        let mut acc = CompensatedSum::new();
        for k in 1..=max_index {
            acc += 1.0 / k as f64;
            values.push(acc.value());
        }
        Ok(Self { values })
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `H_k`; panics if `k > max_index`.
    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn try_get(&self, k: usize) -> Result<f64> {
        self.values.get(k).copied().ok_or(Error::Capacity {
            what: "harmonic index",
            requested: k as u64,
            limit: self.max_index() as u64,
        })
    }

    /// `H_{n/2}`: the plain entry for even `n`, and
    /// `(H_{⌊n/2⌋} + H_{⌈n/2⌉}) / 2` for odd `n`.
    pub fn half(&self, n: usize) -> f64 {
        let lo = n / 2;
        if n.is_multiple_of(2) {
            self.get(lo)
        } else {
            0.5 * self.get(lo) + 0.5 * self.get(lo + 1)
        }
    }
}

/// `H_n`, summed in ascending order with compensation. `H_0 = 0`.
///
/// Bitwise identical to `HarmonicTable::new(n)?.get(n)`.
pub fn harmonic(n: u64) -> f64 {
    let mut acc = CompensatedSum::new();
    for k in 1..=n {
        acc += 1.0 / k as f64;
    }
    acc.value()
}

/// `H_{n/2}` under the odd-`n` averaging convention.
pub fn harmonic_half(n: u64) -> f64 {
    let lo = n / 2;
    if n.is_multiple_of(2) {
        harmonic(lo)
    } else {
        0.5 * harmonic(lo) + 0.5 * harmonic(lo + 1)
    }
}

/// `ln n + γ + 1/(2n)`; the neglected terms start at `-1/(12 n²)`.
pub fn harmonic_asymptotic(n: u64) -> f64 {
    AsymptoticParams::default().harmonic(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn small_values() {
        assert_eq!(harmonic(0), 0.0);
        assert_eq!(harmonic(1), 1.0);
        assert_abs_diff_eq!(harmonic(4), 25.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(harmonic(8), 761.0 / 280.0, epsilon = 1e-15);
    }

    #[test]
    fn half_convention() {
        assert_eq!(harmonic_half(4), 1.5);
        assert_eq!(harmonic_half(3), 1.25);
        assert_eq!(harmonic_half(1), 0.5);
        let t = HarmonicTable::new(20).unwrap();
        for n in 1..=20u64 {
            assert_eq!(t.half(n as usize), harmonic_half(n), "n={n}");
        }
    }

    #[test]
    fn table_matches_direct() {
        let t = HarmonicTable::new(5000).unwrap();
        for k in [0usize, 1, 2, 17, 999, 5000] {
            assert_eq!(t.get(k), harmonic(k as u64));
        }
        assert_eq!(t.max_index(), 5000);
        assert!(t.try_get(5001).is_err());
    }

    #[test]
    fn gamma_digits() {
        assert_eq!(format!("{:.10}", EULER_MASCHERONI), "0.5772156649");
    }

    #[test]
    fn asymptotic_error() {
        assert!((harmonic_asymptotic(1) - harmonic(1)).abs() < 1.0 / 12.0);
        let n = 100u64;
        let bound = 1.0 / (6.0 * (n * n) as f64);
        assert!((harmonic_asymptotic(n) - harmonic(n)).abs() <= bound);
        assert!((harmonic_asymptotic(1_000_000) - harmonic(1_000_000)).abs() < 1e-12);
    }

    #[test]
    fn capacity_limit() {
        assert!(matches!(
            HarmonicTable::new(N_MAX + 1),
            Err(Error::Capacity { .. })
        ));
    }
}
