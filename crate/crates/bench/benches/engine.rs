use criterion::{criterion_group, criterion_main, Criterion};
use ramsey_bench::{seeded_kb, spec};
use ramsey_core::engine::explain;
use ramsey_core::kb::RuleId;
use ramsey_core::{propagate, EngineConfig, RuleSet};

fn fixpoint(c: &mut Criterion) {
    let mut group = c.benchmark_group("propagate");
    group.sample_size(10);
    group.bench_function("bundled seed", |b| {
        b.iter(|| {
            let mut kb = seeded_kb();
            propagate(&mut kb, &EngineConfig::default()).unwrap()
        })
    });
    group.bench_function("bundled seed, recursion only", |b| {
        let rules = RuleSet::all().without(RuleId::Theorem1).without(RuleId::Parity);
        b.iter(|| {
            let mut kb = seeded_kb();
            propagate(&mut kb, &EngineConfig::default().with_rules(rules)).unwrap()
        })
    });
    group.finish();
}

fn proof_tree(c: &mut Criterion) {
    let mut kb = seeded_kb();
    propagate(&mut kb, &EngineConfig::default()).unwrap();
    let (a, b) = (spec("K5"), spec("K9-P3"));
    c.bench_function("explain r(K5,K9-P3)", |bench| bench.iter(|| explain(&kb, &a, &b).render()));
}

criterion_group!(benches, fixpoint, proof_tree);
criterion_main!(benches);
