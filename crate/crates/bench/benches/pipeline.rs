use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use luroth::relfind::{eval_matrix, weighted_monomials, Kernel};
use luroth::sampling::{random_generic, random_luroth};
use luroth::DixmierOhno;
use luroth_bench::{evaluation_matrix, field, low_rank_matrix};

fn elimination(c: &mut Criterion) {
    let k = field();
    let mut g = c.benchmark_group("elimination");
    for n in [100, 200, 400] {
        let m = low_rank_matrix(n + n / 10, n, n - 5, 1);
        g.bench_with_input(BenchmarkId::new("echelon", n), &m, |b, m| b.iter(|| black_box(m.echelon(&k))));
    }
    let m = evaluation_matrix(30, 2);
    g.bench_function("kernel degree 30", |b| b.iter(|| black_box(Kernel::of(&k, &m))));
    g.finish();
}

fn invariants(c: &mut Criterion) {
    let k = field();
    let d = DixmierOhno::new(k).unwrap();
    let generic = random_generic(&k, 3, 1)[0].clone();
    let pentalateral = random_luroth(&k, 3, 1)[0].clone();
    let mut g = c.benchmark_group("invariants");
    g.bench_function("evaluate generic", |b| b.iter(|| black_box(d.evaluate(&generic))));
    g.bench_function("evaluate pentalateral", |b| b.iter(|| black_box(d.evaluate(&pentalateral))));
    let batch = random_generic(&k, 4, 64);
    let mons = weighted_monomials(54);
    g.sample_size(10);
    g.bench_function("degree-54 rows for 64 quartics", |b| b.iter(|| black_box(eval_matrix(&d, &batch, &mons))));
    g.finish();
}

criterion_group!(benches, elimination, invariants);
criterion_main!(benches);
