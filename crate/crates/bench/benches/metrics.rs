use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cubewell_bench::fixtures;
use cubewell_core::excursion::excursion_scan_with_table;
use cubewell_core::suite::diametral_pair;
use cubewell_core::{build_gamma, raag_hull, RaagPresentation, SeparationTable, SublinearGauge, WellSepSpace};

fn separation_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("separation_table");
    for (name, complex) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &complex, |b, cx| {
            b.iter(|| SeparationTable::new(cx))
        });
    }
    group.finish();
}

fn dk_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("dk_matrix");
    for (name, complex) in fixtures() {
        let space = WellSepSpace::new(&complex);
        for k in [0, 3] {
            group.bench_with_input(BenchmarkId::new(name, k), &k, |b, &k| b.iter(|| space.dk_matrix(k)));
        }
    }
    group.finish();
}

fn gamma(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma");
    for (name, complex) in fixtures() {
        let dk = WellSepSpace::new(&complex).dk_matrix(1);
        group.bench_with_input(BenchmarkId::from_parameter(name), &dk, |b, dk| {
            b.iter(|| build_gamma(dk))
        });
    }
    group.finish();
}

fn excursion(c: &mut Criterion) {
    let mut group = c.benchmark_group("excursion");
    let gauge = SublinearGauge::sqrt();
    for (name, complex) in fixtures() {
        let table = SeparationTable::new(&complex);
        let (u, v) = diametral_pair(&complex);
        let path = complex.geodesic(u, v).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| excursion_scan_with_table(&complex, &table, &path, &gauge).unwrap())
        });
    }
    group.finish();
}

fn raag(c: &mut Criterion) {
    let mut group = c.benchmark_group("raag_hull");
    let presentation = RaagPresentation::parse("a-b", &["c".to_string()]).unwrap();
    for radius in 1..=3 {
        group.bench_with_input(BenchmarkId::from_parameter(radius), &radius, |b, &r| {
            b.iter(|| raag_hull(&presentation, r).unwrap())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = separation_table, dk_matrix, gamma, excursion, raag
}
criterion_main!(benches);
