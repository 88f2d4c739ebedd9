use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cutlab_bench::{compiled_circuit, cubic_graph, log_degree_graph, random_partition};
use cutlab_core::flip::{default_step_limit, enumerate_local_optima};
use cutlab_core::smoothed::run_trial;
use cutlab_core::{run_flip, PivotRule};

fn smoothed_trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("smoothed_trial");
    for n in [64, 128, 256] {
        let rg = log_degree_graph(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &rg, |b, rg| {
            b.iter(|| run_trial(rg, 0.1, 7, PivotRule::Random).unwrap())
        });
    }
    group.finish();
}

fn cubic_flip(c: &mut Criterion) {
    let mut group = c.benchmark_group("cubic_flip");
    for n in [100, 400] {
        let g = cubic_graph(n, 2);
        let p = random_partition(n, 3);
        for rule in [PivotRule::First, PivotRule::Best] {
            group.bench_with_input(BenchmarkId::new(rule.to_string(), n), &rule, |b, &rule| {
                b.iter(|| run_flip(&g, &p, rule, default_step_limit(&g), 0).unwrap())
            });
        }
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let cg = compiled_circuit(2, 4);
    c.bench_function("enumerate_compiled", |b| b.iter(|| enumerate_local_optima(&cg.graph).unwrap()));
}

criterion_group!(benches, smoothed_trials, cubic_flip, enumeration);
criterion_main!(benches);
