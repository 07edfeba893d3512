use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lcislab_bench::random_seqs;
use lcislab_core::lcis::{lcis_approx, lcis_dp2, lcis_dpk, lcis_matching_pairs, lis_length};
use lcislab_core::Mode;

fn two_sequences(c: &mut Criterion) {
    let mut g = c.benchmark_group("lcis-pair");
    for n in [256, 1024, 4096] {
        for (family, alphabet) in [("dense", 16), ("sparse", 4 * n as i64)] {
            let s = random_seqs(2, n, alphabet, 7);
            let id = |name: &str| BenchmarkId::new(format!("{name}/{family}"), n);
            g.bench_function(id("dp2"), |b| b.iter(|| lcis_dp2(&s[0], &s[1], Mode::Strict, false)));
            g.bench_function(id("matching-pairs"), |b| b.iter(|| lcis_matching_pairs(&s[0], &s[1], false)));
            g.bench_function(id("approx-0.5"), |b| b.iter(|| lcis_approx(&s[0], &s[1], 0.5).unwrap()));
        }
    }
    g.finish();
}

fn k_sequences(c: &mut Criterion) {
    let mut g = c.benchmark_group("lcis-k3");
    g.sample_size(10);
    for n in [50, 100, 200] {
        let s = random_seqs(3, n, 32, 11);
        g.bench_with_input(BenchmarkId::new("dpk", n), &s, |b, s| b.iter(|| lcis_dpk(s, Mode::Strict).unwrap()));
    }
    g.finish();
}

fn single(c: &mut Criterion) {
    let s = random_seqs(1, 100_000, 1 << 20, 3);
    c.bench_function("lis/100000", |b| b.iter(|| lis_length(&s[0], Mode::Strict)));
}

criterion_group!(benches, two_sequences, k_sequences, single);
criterion_main!(benches);
