use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use creal_core::oracles::{census, CensusConfig, CensusMode, Execution};
use creal_core::FiniteField;

fn modes() -> Vec<(&'static str, Execution)> {
    vec![
        ("sequential", Execution::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Execution::Parallel),
    ]
}

fn bench_census(c: &mut Criterion) {
    let cases = [
        (
            "GL2(F4) elements",
            FiniteField::new(2, 2, true).unwrap(),
            2,
            CensusMode::Elements,
        ),
        (
            "GL2(F9) elements",
            FiniteField::new(3, 2, true).unwrap(),
            2,
            CensusMode::Elements,
        ),
        (
            "GL3(F4) classes",
            FiniteField::new(2, 2, true).unwrap(),
            3,
            CensusMode::Classes,
        ),
    ];
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (name, f, n, mode) in &cases {
        for (label, execution) in modes() {
            let cfg = CensusConfig {
                mode: *mode,
                execution,
                ..CensusConfig::default()
            };
            group.bench_with_input(BenchmarkId::new(*name, label), &cfg, |b, cfg| {
                b.iter(|| census(f, *n, cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_census);
criterion_main!(benches);
