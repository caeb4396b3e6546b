use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};

use postlie::algebra::{gl, gl_triangular, post_lie_from_r};
use postlie::magnus::chi_series_with;
use postlie::partition::PhiMap;
use postlie::verify::{hopf_suite, lifted_suite};
use postlie::{Enveloping, Exec, GVector, Lifted, PostLieAlgebra};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

/// Fresh caches each time, so memoization does not hide the work.
fn fresh(trunc: usize) -> Arc<Lifted> {
    let lie = Arc::new(gl(2));
    let p = post_lie_from_r(&lie, &gl_triangular(2)).unwrap();
    Arc::new(Lifted::new(PostLieAlgebra::new(lie, p).unwrap(), trunc))
}

fn phi_words(c: &mut Criterion) {
    let mut g = c.benchmark_group("phi partition sum, gl(2) length 5");
    g.sample_size(10);
    let word: Vec<GVector> = [1, 2, 0, 3, 2]
        .iter()
        .map(|&i| GVector::basis(4, i))
        .collect();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter_batched(
                || PhiMap::with_exec(fresh(5), exec),
                |phi| black_box(phi.phi(&word).unwrap()),
                BatchSize::SmallInput,
            )
        });
    }
    g.finish();
}

fn chi_order_six(c: &mut Criterion) {
    let mut g = c.benchmark_group("chi_series order 6, gl(2)");
    g.sample_size(10);
    let x = GVector::from_ints(&[1, 2, -1, 3]);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter_batched(
                || fresh(6),
                |l| black_box(chi_series_with(&l, &x, 6, exec).unwrap()),
                BatchSize::SmallInput,
            )
        });
    }
    g.finish();
}

fn identity_sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("identity sweeps, gl(2)");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("hopf degree 4", name), |b| {
            b.iter_batched(
                || Enveloping::with_trunc(Arc::new(gl(2)), 4),
                |env| black_box(hopf_suite(&env, 4, exec).unwrap()),
                BatchSize::SmallInput,
            )
        });
        g.bench_function(BenchmarkId::new("lifted degree 4", name), |b| {
            b.iter_batched(
                || fresh(4),
                |l| black_box(lifted_suite(&l, 4, exec).unwrap()),
                BatchSize::SmallInput,
            )
        });
    }
    g.finish();
}

criterion_group!(benches, phi_words, chi_order_six, identity_sweeps);
criterion_main!(benches);
