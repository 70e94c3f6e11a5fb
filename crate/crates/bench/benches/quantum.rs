use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ftinv::fixtures::load_presentation;
use ftinv::manifolds::bracket;
use ftinv::quantum::{tau_p, tau_p_sum};

fn quantum(c: &mut Criterion) {
    let poincare = load_presentation("poincare").unwrap();
    for p in [5, 7] {
        c.bench_function(&format!("tau_{p} poincare"), |b| b.iter(|| tau_p(black_box(&poincare), p).unwrap()));
    }
    let m = load_presentation("borromean_surgery").unwrap();
    let x = bracket(&m, &m.surgery_selector()).unwrap();
    c.bench_function("tau_5 borromean bracket", |b| b.iter(|| tau_p_sum(black_box(&x), 5).unwrap()));
}

criterion_group!(benches, quantum);
criterion_main!(benches);
