//! `Binomial(n, 1/2)` probabilities without overflow or underflow.
//!
//! The central probability is evaluated in log space using the saddle-point
//! form of the log-gamma ratio (Stirling remainder plus a deviance term),
//! and the rest of the distribution is filled in with the exact ratio
//! `pmf[i-1] / pmf[i] = i / (n - i + 1)`.

use std::f64::consts::{LN_2, PI};

use crate::error::{domain, Error, Result};
use crate::harmonic::N_MAX;
use crate::sum::compensated_sum;

/// Probability mass of `X ~ Binomial(n, 1/2)`, `pmf[i] = C(n, i) / 2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialWeights {
    n: usize,
    pmf: Vec<f64>,
}

impl BinomialWeights {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("binomial weights need n >= 1");
        }
        if n > N_MAX {
            return Err(Error::Capacity {
                what: "n",
                requested: n as u64,
                limit: N_MAX as u64,
            });
        }
        let nf = n as f64;
        let mid = n / 2;
        let mut pmf = vec![0.0; n + 1];
        pmf[mid] = ln_pmf_half(n, mid).exp();
        for i in (1..=mid).rev() {
            pmf[i - 1] = pmf[i] * (i as f64 / (nf - i as f64 + 1.0));
        }
        // p = 1/2 makes the distribution symmetric; for odd n the two central
        // entries coincide.
        for i in 0..=mid {
            pmf[n - i] = pmf[i];
        }
        let total = compensated_sum(pmf.iter().copied());
        for p in &mut pmf {
            *p /= total;
        }
        Ok(Self { n, pmf })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.pmf[i]
    }
}

/// `Pr[X = i]` for every `i` in `0..=n`.
pub fn binomial_weights(n: usize) -> Result<BinomialWeights> {
    BinomialWeights::new(n)
}

/// Stirling remainder `ln(k!) - ln(sqrt(2πk) (k/e)^k)`.
fn stirling_remainder(k: usize) -> f64 {
    // exact values for small k (k = 0 is unused by callers but kept for indexing)
    #[allow(clippy::excessive_precision)]
    const SMALL: [f64; 16] = [
        0.0,
        0.081_061_466_795_327_258_219_67,
        0.041_340_695_955_409_294_093_82,
        0.027_677_925_684_998_339_148_79,
        0.020_790_672_103_765_093_111_52,
        0.016_644_691_189_821_192_163_19,
        0.013_876_128_823_070_747_998_75,
        0.011_896_709_945_891_770_095_06,
        0.010_411_265_261_972_096_497_48,
        0.009_255_462_182_712_732_917_729,
        0.008_330_563_433_362_871_256_469,
        0.007_573_675_487_951_840_794_972,
        0.006_942_840_107_209_529_865_664,
        0.006_408_994_188_004_207_068_44,
        0.005_951_370_112_758_847_735_624,
        0.005_554_733_551_962_801_371_039,
    ];
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;

    if k < SMALL.len() {
        return SMALL[k];
    }
    let x = k as f64;
    let xx = x * x;
    if k > 500 {
        (S0 - S1 / xx) / x
    } else if k > 80 {
        (S0 - (S1 - S2 / xx) / xx) / x
    } else if k > 35 {
        (S0 - (S1 - (S2 - S3 / xx) / xx) / xx) / x
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / xx) / xx) / xx) / xx) / x
    }
}

/// Deviance `x ln(x/m) + m - x`, evaluated by series when `x` is close to `m`.
fn deviance(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let v2 = v * v;
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        let mut j = 1.0;
        loop {
            ej *= v2;
            let next = s + ej / (2.0 * j + 1.0);
            if next == s {
                return next;
            }
            s = next;
            j += 1.0;
        }
    } else {
        x * (x / m).ln() + m - x
    }
}

/// `ln Pr[X = k]` for `X ~ Binomial(n, 1/2)`.
pub(crate) fn ln_pmf_half(n: usize, k: usize) -> f64 {
    if k == 0 || k == n {
        return -(n as f64) * LN_2;
    }
    let (nf, kf) = (n as f64, k as f64);
    let rest = nf - kf;
    let half = 0.5 * nf;
    let lc = stirling_remainder(n)
        - stirling_remainder(k)
        - stirling_remainder(n - k)
        - deviance(kf, half)
        - deviance(rest, half);
    lc - 0.5 * (2.0 * PI * kf * rest / nf).ln()
}
