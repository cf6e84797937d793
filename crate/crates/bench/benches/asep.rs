use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twdp::{
    asep_asymptotic, asep_exact, asep_quadrature, db_to_linear, run_ser, ModulationScheme, QuadConfig, SeriesConfig,
    SimConfig, TwdpParams,
};

fn schemes() -> [(&'static str, ModulationScheme); 4] {
    [
        ("bpsk", ModulationScheme::Bpsk),
        ("sqam16", ModulationScheme::Sqam { m: 16 }),
        ("rqam4x2", ModulationScheme::Rqam { m_i: 4, m_q: 2, beta: 1.0 }),
        ("dpsk8", ModulationScheme::Dpsk { m: 8 }),
    ]
}

fn params(snr_db: f64) -> TwdpParams {
    TwdpParams::new(5.0, 0.5, db_to_linear(snr_db)).unwrap()
}

fn exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact");
    let cfg = SeriesConfig::default();
    for (name, s) in schemes() {
        for snr in [0.0, 20.0] {
            let p = params(snr);
            g.bench_with_input(BenchmarkId::new(name, snr), &p, |b, p| b.iter(|| asep_exact(black_box(p), &s, &cfg).unwrap()));
        }
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    let cfg = QuadConfig::default();
    let p = params(20.0);
    for (name, s) in schemes() {
        g.bench_function(name, |b| b.iter(|| asep_quadrature(black_box(&p), &s, &cfg).unwrap()));
    }
    g.finish();
}

fn asymptotic(c: &mut Criterion) {
    let mut g = c.benchmark_group("asymptotic");
    let p = params(40.0);
    for (name, s) in schemes() {
        g.bench_function(name, |b| b.iter(|| asep_asymptotic(black_box(&p), &s).unwrap()));
    }
    g.finish();
}

fn simulation(c: &mut Criterion) {
    let mut g = c.benchmark_group("simulation");
    g.sample_size(10);
    let cfg = SimConfig {
        num_symbols: 100_000,
        ..SimConfig::default()
    };
    let p = params(10.0);
    for (name, s) in schemes() {
        g.bench_function(name, |b| b.iter(|| run_ser(black_box(&p), &s, &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, exact, oracle, asymptotic, simulation);
criterion_main!(benches);
