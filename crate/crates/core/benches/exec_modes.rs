//! Sequential against data-parallel execution on the census workloads.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use taquin::enumeration::{census_up_to, enumerate_levels, survey_entries};
use taquin::exec::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for n in [7, 8] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| black_box(enumerate_levels(n, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn survey(c: &mut Criterion) {
    let mut group = c.benchmark_group("survey");
    group.sample_size(10);
    for n in [7, 8] {
        let entries: Vec<_> = census_up_to(n, Exec::Parallel).unwrap().into_iter().filter(|e| e.poset.len() == n).collect();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &entries, |b, entries| {
                b.iter(|| black_box(survey_entries(entries, exec).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, enumeration, survey);
criterion_main!(benches);
