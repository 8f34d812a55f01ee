use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use coupon_core::{run_batch, BatchSpec, ExactEngine, Execution, FitnessKind, ProcessKind};

fn strategies() -> Vec<(&'static str, Execution)> {
    let mut v = vec![("sequential", Execution::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", Execution::Parallel));
    v
}

fn batches(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_batch");
    group.sample_size(10);
    for (process, fitness) in [
        (ProcessKind::Coupon, FitnessKind::OneMax),
        (ProcessKind::Rls, FitnessKind::OneMax),
        (ProcessKind::Rls, FitnessKind::BinVal),
    ] {
        let spec = BatchSpec::new(256, 2_000, process, fitness, 1);
        for (name, exec) in strategies() {
            let id = BenchmarkId::new(format!("{process}-{fitness}"), name);
            group.bench_with_input(id, &exec, |b, &exec| {
                b.iter(|| run_batch(black_box(&spec), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let ns: Vec<usize> = (1..=64).map(|k| 1_000 * k).collect();
    let engine = ExactEngine::new(64_000).unwrap();
    let mut group = c.benchmark_group("theorem_sweep");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(name, |b| b.iter(|| engine.sweep(black_box(&ns), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, batches, sweeps);
criterion_main!(benches);
