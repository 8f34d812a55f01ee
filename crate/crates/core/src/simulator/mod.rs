//! Monte Carlo simulation of the coupon collector with a random initial
//! stake and of Randomized Local Search (RLS) on strictly monotone functions.
//!
//! Both processes consume draws in the same order: `n` fair bits for the
//! initial state, then one uniform position per round. For RLS, a flip is
//! accepted iff the offspring is at least as fit as the parent; under strict
//! monotonicity that accepts exactly the 0→1 flips, so RLS and the coupon
//! collector driven by the same draws finish in the same round.

mod bits;
mod fitness;
mod stream;

pub use bits::BitString;
pub use fitness::{make_fitness, BinVal, FitnessKind, MonotoneFunction, OneMax, PositiveLinear};
pub use stream::{DrawSource, RandomStream, ScriptedDraws};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exec::{map_range, Execution};

/// One simulated run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    /// Types owned (ones set) before the first round.
    pub initial_count: usize,
    /// Rounds until every type is owned (the all-ones string is reached).
    pub hitting_time: u64,
}

/// Collected set (or current search point) of a running process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessState {
    collected: BitString,
    count: usize,
    rounds: u64,
}

impl ProcessState {
    /// Initial state from `n` fair bits, bit `i` from draw `i`.
    pub fn initial<S: DrawSource>(n: usize, src: &mut S) -> Self {
        let mut collected = BitString::zeros(n);
        for i in 0..n {
            if src.fair_bit() {
                collected.set(i, true);
            }
        }
        let count = collected.count_ones();
        Self {
            collected,
            count,
            rounds: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.collected.len()
    }

    pub fn collected(&self) -> &BitString {
        &self.collected
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    pub fn is_complete(&self) -> bool {
        self.count == self.n()
    }

    /// One coupon-collector round: type `j` is drawn and kept.
    #[inline]
    fn collect(&mut self, j: usize) {
        if !self.collected.get(j) {
            self.collected.set(j, true);
            self.count += 1;
        }
        self.rounds += 1;
    }

    /// One RLS iteration: flip bit `j` if the offspring is not worse.
    #[inline]
    fn local_search_step<F: MonotoneFunction + ?Sized>(&mut self, f: &F, j: usize) {
        if f.compare_flip(&self.collected, j) != Ordering::Less {
            if self.collected.get(j) {
                self.count -= 1;
            } else {
                self.count += 1;
            }
            self.collected.flip(j);
        }
        self.rounds += 1;
    }

    fn record(&self, trial_index: u64, initial_count: usize) -> TrialRecord {
        TrialRecord {
            trial_index,
            initial_count,
            hitting_time: self.rounds,
        }
    }
}

/// Coupon collector starting from a uniformly random set of types.
pub fn run_coupon_trial<S: DrawSource>(n: usize, mut src: S) -> TrialRecord {
    let mut state = ProcessState::initial(n, &mut src);
    let initial = state.count;
    while !state.is_complete() {
        let j = src.uniform_index(n);
        state.collect(j);
    }
    state.record(src.trial_index(), initial)
}

/// RLS from a uniformly random search point until the all-ones string.
pub fn run_rls_trial<F, S>(n: usize, f: &F, src: S) -> TrialRecord
where
    F: MonotoneFunction + ?Sized,
    S: DrawSource,
{
    run_rls_observed(n, f, src, |_| {})
}

/// Number of ones after every RLS iteration, starting with the initial count.
pub fn rls_trajectory<F, S>(n: usize, f: &F, src: S) -> Vec<usize>
where
    F: MonotoneFunction + ?Sized,
    S: DrawSource,
{
    let mut counts = Vec::new();
    run_rls_observed(n, f, src, |s| counts.push(s.count()));
    counts
}

fn run_rls_observed<F, S>(n: usize, f: &F, mut src: S, mut observe: impl FnMut(&ProcessState)) -> TrialRecord
where
    F: MonotoneFunction + ?Sized,
    S: DrawSource,
{
    debug_assert_eq!(f.dimension(), n);
    let mut state = ProcessState::initial(n, &mut src);
    let initial = state.count;
    observe(&state);
    while !state.is_complete() {
        let j = src.uniform_index(n);
        state.local_search_step(f, j);
        observe(&state);
    }
    state.record(src.trial_index(), initial)
}

/// Hitting times of both processes driven by one shared sequence of draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoupledOutcome {
    pub initial_count: usize,
    pub t_coupon: u64,
    pub t_rls: u64,
}

/// Runs the coupon collector and RLS in lockstep: both start from the same
/// `n` initial bits and every drawn position is applied to both until each
/// has finished.
pub fn coupled_run<F, S>(n: usize, f: &F, mut src: S) -> CoupledOutcome
where
    F: MonotoneFunction + ?Sized,
    S: DrawSource,
{
    let mut coupon = ProcessState::initial(n, &mut src);
    let mut rls = coupon.clone();
    let initial_count = coupon.count;
    while !(coupon.is_complete() && rls.is_complete()) {
        let j = src.uniform_index(n);
        if !coupon.is_complete() {
            coupon.collect(j);
        }
        if !rls.is_complete() {
            rls.local_search_step(f, j);
        }
    }
    CoupledOutcome {
        initial_count,
        t_coupon: coupon.rounds,
        t_rls: rls.rounds,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProcessKind {
    #[default]
    Coupon,
    Rls,
}

impl ProcessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProcessKind::Coupon => "coupon",
            ProcessKind::Rls => "rls",
        }
    }
}

impl fmt::Display for ProcessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProcessKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "coupon" => Ok(ProcessKind::Coupon),
            "rls" => Ok(ProcessKind::Rls),
            _ => Err(format!("unknown process kind {s:?}")),
        }
    }
}

/// Upper limit on `n · trials` accepted by [`run_batch`] by default.
pub const DEFAULT_WORK_BUDGET: u64 = 100_000_000_000;

/// Parameters of a batch of independent trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSpec {
    pub n: usize,
    pub trials: u64,
    pub process: ProcessKind,
    /// Used by RLS only.
    pub fitness: FitnessKind,
    pub master_seed: u64,
    pub work_budget: u64,
}

impl BatchSpec {
    pub fn new(n: usize, trials: u64, process: ProcessKind, fitness: FitnessKind, master_seed: u64) -> Self {
        Self {
            n,
            trials,
            process,
            fitness,
            master_seed,
            work_budget: DEFAULT_WORK_BUDGET,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return domain("n must be at least 1");
        }
        if self.trials == 0 {
            return domain("trials must be at least 1");
        }
        let work = (self.n as u64).saturating_mul(self.trials);
        if work > self.work_budget {
            return Err(Error::Capacity {
                what: "n * trials",
                requested: work,
                limit: self.work_budget,
            });
        }
        Ok(())
    }
}

/// Runs trials `0..trials`, each on its own [`RandomStream`]; the records are
/// returned in trial order and do not depend on `exec`.
pub fn run_batch(spec: &BatchSpec, exec: Execution) -> Result<Vec<TrialRecord>> {
    spec.validate()?;
    let n = spec.n;
    let seed = spec.master_seed;
    let records = match spec.process {
        ProcessKind::Coupon => map_range(exec, spec.trials, |i| {
            run_coupon_trial(n, RandomStream::new(seed, i))
        }),
        ProcessKind::Rls => {
            let f = make_fitness(spec.fitness, n, seed);
            map_range(exec, spec.trials, |i| {
                run_rls_trial(n, f.as_ref(), RandomStream::new(seed, i))
            })
        }
    };
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coupon_n1() {
        let r = run_coupon_trial(1, ScriptedDraws::new([true], []));
        assert_eq!((r.initial_count, r.hitting_time), (1, 0));
        let r = run_coupon_trial(1, ScriptedDraws::new([false], [0]));
        assert_eq!((r.initial_count, r.hitting_time), (0, 1));
    }

    #[test]
    fn coupon_repeated_types_still_cost_rounds() {
        let r = run_coupon_trial(3, ScriptedDraws::new([true, false, false], [0, 1, 1, 0, 2]));
        assert_eq!(r.hitting_time, 5);
        assert_eq!(r.initial_count, 1);
    }

    #[test]
    fn rls_hand_trace() {
        let f = OneMax::new(1);
        let r = run_rls_trial(1, &f, ScriptedDraws::new([true], []));
        assert_eq!(r.hitting_time, 0);

        // x = 10 (first bit set), drawing the second position completes it
        let f = OneMax::new(2);
        let r = run_rls_trial(2, &f, ScriptedDraws::new([true, false], [1]));
        assert_eq!((r.initial_count, r.hitting_time), (1, 1));

        // drawing the set bit first is rejected but still costs an iteration
        let r = run_rls_trial(2, &f, ScriptedDraws::new([true, false], [0, 0, 1]));
        assert_eq!(r.hitting_time, 3);
    }

    #[test]
    fn rls_trajectory_is_monotone() {
        let f = OneMax::new(30);
        let t = rls_trajectory(30, &f, RandomStream::new(5, 5));
        assert!(t.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1));
        assert_eq!(*t.last().unwrap(), 30);
    }

    #[test]
    fn coupled_n1() {
        let f = OneMax::new(1);
        let out = coupled_run(1, &f, ScriptedDraws::new([false], [0]));
        assert_eq!((out.t_coupon, out.t_rls), (1, 1));
    }

    #[test]
    fn coupled_equals_individual_runs() {
        let n = 64;
        let f = OneMax::new(n);
        for i in 0..50 {
            let out = coupled_run(n, &f, RandomStream::new(11, i));
            let c = run_coupon_trial(n, RandomStream::new(11, i));
            let r = run_rls_trial(n, &f, RandomStream::new(11, i));
            assert_eq!(out.t_coupon, c.hitting_time);
            assert_eq!(out.t_rls, r.hitting_time);
            assert_eq!(out.initial_count, c.initial_count);
        }
    }

    #[test]
    fn records_satisfy_zero_iff_complete() {
        let spec = BatchSpec::new(3, 2000, ProcessKind::Coupon, FitnessKind::OneMax, 1);
        for r in run_batch(&spec, Execution::Sequential).unwrap() {
            assert_eq!(r.hitting_time == 0, r.initial_count == 3);
        }
    }

    #[test]
    fn batch_validation() {
        let mut spec = BatchSpec::new(10, 0, ProcessKind::Coupon, FitnessKind::OneMax, 1);
        assert!(matches!(run_batch(&spec, Execution::Sequential), Err(Error::Domain(_))));
        spec.trials = 10;
        spec.work_budget = 99;
        assert!(matches!(
            run_batch(&spec, Execution::Sequential),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn process_kind_names() {
        for k in [ProcessKind::Coupon, ProcessKind::Rls] {
            assert_eq!(k.as_str().parse::<ProcessKind>().unwrap(), k);
        }
        assert!("ea".parse::<ProcessKind>().is_err());
    }
}
