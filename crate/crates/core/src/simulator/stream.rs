//! Per-trial random streams and the draw protocol shared by every process.

use rand::distr::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Source of the two kinds of draws a trial consumes: fair bits for the
/// initial state (bit `i` from draw `i`), then one uniform index in `[0, n)`
/// per round.
pub trait DrawSource {
    fn fair_bit(&mut self) -> bool;
    fn uniform_index(&mut self, n: usize) -> usize;

    /// Index recorded in the produced [`TrialRecord`](super::TrialRecord).
    fn trial_index(&self) -> u64 {
        0
    }
}

impl<S: DrawSource + ?Sized> DrawSource for &mut S {
    fn fair_bit(&mut self) -> bool {
        (**self).fair_bit()
    }

    fn uniform_index(&mut self, n: usize) -> usize {
        (**self).uniform_index(n)
    }

    fn trial_index(&self) -> u64 {
        (**self).trial_index()
    }
}

/// Deterministic stream for one trial.
///
/// The ChaCha key is expanded from `master_seed`, and `trial_index` selects
/// one of the 2^64 independent ChaCha streams under that key, so the draws of
/// a trial depend only on `(master_seed, trial_index)`.
#[derive(Debug, Clone)]
pub struct RandomStream {
    master_seed: u64,
    trial_index: u64,
    rng: ChaCha8Rng,
    index_dist: Option<(usize, Uniform<usize>)>,
}

impl RandomStream {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(trial_index);
        Self {
            master_seed,
            trial_index,
            rng,
            index_dist: None,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }
}

impl DrawSource for RandomStream {
    #[inline]
    fn fair_bit(&mut self) -> bool {
        self.rng.random::<bool>()
    }

    #[inline]
    fn uniform_index(&mut self, n: usize) -> usize {
        // `Uniform` rejects out-of-zone samples, so indices carry no modulo bias.
        let dist = match self.index_dist {
            Some((cached, dist)) if cached == n => dist,
            _ => {
                let dist = Uniform::new(0, n).expect("n >= 1");
                self.index_dist = Some((n, dist));
                dist
            }
        };
        dist.sample(&mut self.rng)
    }

    fn trial_index(&self) -> u64 {
        self.trial_index
    }
}

/// Replays a fixed script of draws; panics when the script runs out.
#[derive(Debug, Clone, Default)]
pub struct ScriptedDraws {
    bits: std::collections::VecDeque<bool>,
    indices: std::collections::VecDeque<usize>,
}

impl ScriptedDraws {
    pub fn new(bits: impl IntoIterator<Item = bool>, indices: impl IntoIterator<Item = usize>) -> Self {
        Self {
            bits: bits.into_iter().collect(),
            indices: indices.into_iter().collect(),
        }
    }
}

impl DrawSource for ScriptedDraws {
    fn fair_bit(&mut self) -> bool {
        self.bits.pop_front().expect("scripted bits exhausted")
    }

    fn uniform_index(&mut self, n: usize) -> usize {
        let j = self.indices.pop_front().expect("scripted indices exhausted");
        assert!(j < n, "scripted index {j} out of range for n = {n}");
        j
    }
}
