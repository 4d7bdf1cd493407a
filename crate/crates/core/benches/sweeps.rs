use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use robin_young::cyclestats::sample_cycle_count;
use robin_young::divisors::highly_abundant_scan;
use robin_young::exec::Strategy;
use robin_young::harness::campaign_sigma_vs_a;
use robin_young::numeric::Precision;
use robin_young::series::CoefficientFamily;

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn sigma_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sigma_vs_a_1000");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| campaign_sigma_vs_a(1000, &[CoefficientFamily::Canonical], Precision::digits(40), s).unwrap())
        });
    }
    g.finish();
}

fn sampler(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample_cycles_1000x100k");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| sample_cycle_count(1000, 100_000, 42, s).unwrap())
        });
    }
    g.finish();
}

fn abundant_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("highly_abundant_100k");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| highly_abundant_scan(100_000, s).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sigma_sweep, sampler, abundant_scan);
criterion_main!(benches);
