//! Exact, bounded and simulated runtimes of the coupon collector that starts
//! with a uniformly random set of coupons, equivalently Randomized Local
//! Search on any strictly monotone pseudo-Boolean function.
//!
//! - [`harmonic`]: harmonic numbers, the odd-`n` convention for `H_{n/2}`,
//!   and the `ln n + γ + 1/(2n)` expansion.
//! - [`exact`]: `E[T]`, the deviation `d = n H_{n/2} - E[T]` by two routes,
//!   the `ε_a` terms with their bounds, and the variance identity.
//! - [`simulator`]: seeded trials of both processes, a coupled mode, batches.
//! - [`stats`]: batch summaries and z-score comparison with `E[T]`.
//!
//! With the default `parallel` feature, batches and sweeps run on rayon;
//! without it every path is sequential. Results are identical either way.

pub mod error;
pub mod exact;
pub mod exec;
pub mod harmonic;
pub mod simulator;
pub mod stats;
pub mod sum;

pub use error::{Error, Result};
pub use exact::{
    asymptotic_expected_runtime, binomial_weights, conditional_expectation, deviation_direct,
    epsilon_a, epsilon_bounds, epsilon_by_definition, epsilon_series, exact_expected_runtime,
    variance_identity_check, BinomialWeights, DeviationReport, EpsilonTerm, ExactEngine,
    ExactResult, Parity, TheoremReport, TruncationConfig, TruncationMode,
};
pub use exec::Execution;
pub use harmonic::{
    harmonic, harmonic_asymptotic, harmonic_half, AsymptoticParams, HarmonicTable,
    EULER_MASCHERONI, N_MAX,
};
pub use simulator::{
    coupled_run, make_fitness, rls_trajectory, run_batch, run_coupon_trial, run_rls_trial,
    BatchSpec, BitString, CoupledOutcome, DrawSource, FitnessKind, MonotoneFunction,
    ProcessKind, ProcessState, RandomStream, TrialRecord,
};
pub use stats::{compare_to_exact, compare_with, summarize, ComparisonReport, SummaryStats, Verdict};
