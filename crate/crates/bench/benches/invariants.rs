use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fqt_bench::session;
use fqt_core::drinfeld::exp_eval;
use fqt_core::invariants::{verify_cnf, Options};
use fqt_core::lseries::theta_truncated;
use fqt_core::LaurentSeries;

fn theta(c: &mut Criterion) {
    for (name, n) in [("carlitz-f2", 6), ("carlitz-torsion-c2-f3", 4)] {
        let s = session(name, n);
        c.bench_function(&format!("theta {name} N={n}"), |b| {
            b.iter(|| theta_truncated(&s.cover, &s.e, &s.m, black_box(n)).unwrap())
        });
    }
}

fn exp(c: &mut Criterion) {
    let s = session("rank2-f2", 4);
    let x: Vec<LaurentSeries> = (0..s.cover.n()).map(|i| LaurentSeries::new(-12, (0..12).map(|k| ((k * 7 + i) % 3 % 2) as u32).collect())).collect();
    c.bench_function("exp rank2-f2 to t^-10", |b| b.iter(|| exp_eval(&s.e, &s.cover, black_box(&x), -10).unwrap()));
}

fn cnf(c: &mut Criterion) {
    let s = session("carlitz-torsion-c2-f3", 4);
    let opts = Options::default();
    let mut g = c.benchmark_group("verify-cnf");
    g.sample_size(10);
    g.bench_function("carlitz-torsion-c2-f3 N=4", |b| b.iter(|| verify_cnf(&s.cover, &s.e, &s.m, 4, &opts).unwrap()));
    g.finish();
}

criterion_group!(benches, theta, exp, cnf);
criterion_main!(benches);
