use coupon_core::{
    asymptotic_expected_runtime, compare_to_exact, run_batch, summarize, BatchSpec, ExactEngine,
    Execution, TruncationConfig, TruncationMode,
};

use crate::config::{CommandKind, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Table};

/// Absolute disagreement tolerated between the two deviation routes.
pub const DUAL_PATH_TOLERANCE: f64 = 1e-9;

/// Table produced by a command plus an optional consistency failure to report
/// after the table has been written.
pub struct Outcome {
    pub table: Table,
    pub inconsistency: Option<String>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Self {
            table,
            inconsistency: None,
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        CommandKind::Exact => exact(cfg).map(Outcome::from),
        CommandKind::Deviation => deviation(cfg),
        CommandKind::Simulate => simulate(cfg, &[required_n(cfg)?]).map(Outcome::from),
        CommandKind::Compare => simulate(cfg, &n_values(cfg)?).map(Outcome::from),
        CommandKind::Sweep => sweep(cfg).map(Outcome::from),
    }
}

fn required_n(cfg: &RunConfig) -> Result<usize, CliError> {
    match cfg.n {
        Some(0) => Err(CliError::Usage("--n must be at least 1".into())),
        Some(n) => Ok(n),
        None => Err(CliError::Usage("--n is required".into())),
    }
}

/// `--n-list` when given, otherwise `--n`.
fn n_values(cfg: &RunConfig) -> Result<Vec<usize>, CliError> {
    if cfg.n_list.is_empty() {
        return required_n(cfg).map(|n| vec![n]);
    }
    if cfg.n_list.contains(&0) {
        return Err(CliError::Usage("every n in --n-list must be at least 1".into()));
    }
    Ok(cfg.n_list.clone())
}

fn exact(cfg: &RunConfig) -> Result<Table, CliError> {
    let ns = n_values(cfg)?;
    let engine = ExactEngine::new(*ns.iter().max().expect("non-empty"))?;
    let mut table = Table::new(&[
        "n",
        "parity",
        "expected_runtime",
        "n_h_half",
        "deviation",
        "asymptotic_value",
        "deviation_minus_half",
    ]);
    for n in ns {
        let r = engine.expected_runtime(n)?;
        table.push(vec![
            n.into(),
            r.parity.as_str().into(),
            r.expected_runtime.into(),
            r.n_h_half.into(),
            r.deviation.into(),
            asymptotic_expected_runtime(n as u64).into(),
            (r.deviation - 0.5).into(),
        ]);
    }
    Ok(table)
}

fn deviation(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let n = required_n(cfg)?;
    if n < 2 {
        return Err(CliError::Usage("deviation needs --n >= 2".into()));
    }
    let trunc = TruncationConfig::new(cfg.c, cfg.mode).map_err(|e| CliError::Usage(e.to_string()))?;
    let engine = ExactEngine::new(n)?;
    let direct = engine.deviation_direct(n, trunc)?;
    let exact = engine.expected_runtime(n)?;
    let difference = (direct.value - exact.deviation).abs();
    let allowed = DUAL_PATH_TOLERANCE + direct.tail_bound.unwrap_or(0.0);
    let inconsistency = (difference > allowed).then(|| {
        format!(
            "direct deviation {} and n*H(n/2) - E[T] = {} differ by {difference:e} (allowed {allowed:e})",
            direct.value, exact.deviation
        )
    });
    let mode = match direct.mode {
        TruncationMode::Full => "full",
        TruncationMode::Truncated => "truncated",
    };
    let summary: Vec<Cell> = vec![
        n.into(),
        exact.parity.as_str().into(),
        mode.into(),
        direct.c.into(),
        direct.threshold.into(),
        direct.window.into(),
        direct.value.into(),
        exact.deviation.into(),
        difference.into(),
        direct.tail_bound.into(),
    ];
    const SUMMARY: [&str; 10] = [
        "n",
        "parity",
        "mode",
        "c",
        "threshold",
        "window",
        "d_direct",
        "d_difference",
        "abs_difference",
        "tail_bound",
    ];
    let table = if cfg.verbose {
        let mut columns = SUMMARY.to_vec();
        columns.extend(["a", "weight", "epsilon", "lower", "upper", "bracketed"]);
        let mut table = Table::new(&columns);
        for t in engine.epsilon_terms(n, trunc)? {
            let mut row = summary.clone();
            row.extend([
                t.a.into(),
                t.weight.into(),
                t.epsilon.into(),
                t.lower.into(),
                t.upper.into(),
                (t.lower <= t.epsilon && t.epsilon <= t.upper).into(),
            ]);
            table.push(row);
        }
        table
    } else {
        let mut table = Table::new(&SUMMARY);
        table.push(summary);
        table
    };
    Ok(Outcome {
        table,
        inconsistency,
    })
}

fn simulate(cfg: &RunConfig, ns: &[usize]) -> Result<Table, CliError> {
    let mut table = Table::new(&[
        "n",
        "process",
        "fitness",
        "trials",
        "seed",
        "mean",
        "stderr",
        "ci95_low",
        "ci95_high",
        "exact",
        "asymptotic",
        "z_score",
        "verdict",
    ]);
    for &n in ns {
        let spec = BatchSpec::new(n, cfg.trials, cfg.process, cfg.fitness, cfg.seed);
        let records = run_batch(&spec, Execution::default())?;
        let summary = summarize(&records)?;
        let cmp = compare_to_exact(summary, n)?;
        table.push(vec![
            n.into(),
            cfg.process.as_str().into(),
            cfg.fitness.as_str().into(),
            cfg.trials.into(),
            cfg.seed.into(),
            summary.mean.into(),
            summary.stderr.into(),
            summary.ci95_low.into(),
            summary.ci95_high.into(),
            cmp.exact_value.into(),
            cmp.asymptotic_value.into(),
            cmp.z_score.into(),
            cmp.verdict.as_str().into(),
        ]);
    }
    Ok(table)
}

fn sweep(cfg: &RunConfig) -> Result<Table, CliError> {
    if cfg.n_list.is_empty() {
        return Err(CliError::Usage("sweep needs a non-empty --n-list".into()));
    }
    if cfg.n_list.iter().any(|&n| n < 2) {
        return Err(CliError::Usage("every n in --n-list must be at least 2".into()));
    }
    let engine = ExactEngine::new(*cfg.n_list.iter().max().expect("non-empty"))?;
    let reports = engine.sweep(&cfg.n_list, Execution::default())?;
    let mut table = Table::new(&[
        "n",
        "parity",
        "deviation",
        "abs_deviation_minus_half",
        "lower_bound",
        "tolerance",
        "lower_bound_holds",
        "within_tolerance",
        "pass",
    ]);
    for r in reports {
        table.push(vec![
            r.n.into(),
            r.parity.as_str().into(),
            r.deviation.into(),
            r.gap.into(),
            r.lower_bound.into(),
            r.tolerance.into(),
            r.lower_bound_holds.into(),
            r.within_tolerance.into(),
            r.pass().into(),
        ]);
    }
    Ok(table)
}
