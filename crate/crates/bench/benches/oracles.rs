use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use detscheme_bench::fixtures;
use detscheme_core::corpus::{instances, InstanceSource, RunConfig};
use detscheme_core::linalg::{echelon, DenseMatrix};
use detscheme_core::oracle::{
    default_syzygy_bound, hilbert_function, orbit_space_dim, tangent_space_dim,
};
use detscheme_core::sheaf::h0_f;
use detscheme_core::{dim_y, PolyMatrix, PrimeField};

fn closed_forms(c: &mut Criterion) {
    let cfg = RunConfig {
        source: InstanceSource::Random { count: 200 },
        ..RunConfig::default()
    };
    let suite: Vec<_> = instances(&cfg).into_iter().map(|(_, d)| d).collect();
    c.bench_function("grand_identity_200", |b| {
        b.iter(|| {
            for d in &suite {
                black_box(h0_f(d).unwrap() == dim_y(d).unwrap().dim_y.0);
            }
        })
    });
}

fn elimination(c: &mut Criterion) {
    let field = PrimeField::default();
    let mut group = c.benchmark_group("echelon");
    for size in [128usize, 512] {
        let mut m = DenseMatrix::zeros(size, size);
        let mut x = 1u64;
        for r in 0..size {
            for col in 0..size {
                x = x
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                m.set(r, col, ((x >> 33) % field.p() as u64) as u32);
            }
        }
        group.bench_with_input(BenchmarkId::from_parameter(size), &m, |b, m| {
            b.iter(|| echelon(field, m, false).rank())
        });
    }
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let field = PrimeField::default();
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    for (name, d) in fixtures() {
        let m = PolyMatrix::random(&d, field, 1).unwrap();
        let ideal = m.maximal_minors();
        group.bench_function(BenchmarkId::new("maximal_minors", name), |b| {
            b.iter(|| m.maximal_minors())
        });
        group.bench_function(BenchmarkId::new("hf_at_4", name), |b| {
            b.iter(|| hilbert_function(&ideal, 4))
        });
        group.bench_function(BenchmarkId::new("orbit", name), |b| {
            b.iter(|| orbit_space_dim(&m))
        });
        if name != "c3-mixed" {
            let bound = default_syzygy_bound(&ideal, *d.alphas().last().unwrap());
            group.bench_function(BenchmarkId::new("tangent", name), |b| {
                b.iter(|| tangent_space_dim(&ideal, bound).unwrap().dim)
            });
        }
    }
    group.finish();
}

criterion_group!(benches, closed_forms, elimination, oracles);
criterion_main!(benches);
