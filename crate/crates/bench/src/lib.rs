//! Benchmark inputs and the criterion entry point.

use criterion::{BatchSize, BenchmarkId, Criterion};

use hol_core::ainfty::{ainfty_relation_residual, b_square_residual, lambda_eval};
use hol_core::chen::{phi_series, SeriesPolicy};
use hol_core::exactnum::rational::zero;
use hol_core::forms::Domain;
use hol_core::graded::GradedSpace;
use hol_core::locsys::{generate_flat, holonomy_iso, poincare_trivialization, Superconnection};
use hol_core::random;
use hol_core::sample::{sample_chain, ChainProfile, SampledChain};

/// A flat system on the cylinder over `ℝ^m` with a `layers`-step flag.
pub fn flat_system(seed: u64, m: usize, layers: usize) -> Superconnection {
    let space = GradedSpace::new([(-1, 1), (0, layers.max(2) - 1), (1, 1)]).expect("valid space");
    let mut rng = random::rng(seed);
    let flag = random::flag(&mut rng, space.dim(), layers);
    generate_flat(seed, &space, &flag, m, 2).expect("generator converges").system
}

pub fn chain(seed: u64, m: usize, n: usize) -> SampledChain {
    sample_chain(seed, &ChainProfile::new(m, n, Domain::Cylinder)).expect("sampler converges")
}

pub fn benchmarks(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for layers in [2, 3, 4] {
        let s = flat_system(1, 2, layers);
        let flag = s.flag().cloned().expect("flagged");
        g.bench_with_input(BenchmarkId::new("phi", layers), &s, |b, s| {
            b.iter(|| phi_series(s.alpha(), &SeriesPolicy::flag(&flag)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("holonomy", layers), &s, |b, s| b.iter(|| holonomy_iso(s).unwrap()));
    }
    g.finish();

    let mut g = c.benchmark_group("poincare");
    let chart = flat_system(2, 2, 3).restrict_at(&zero());
    g.bench_function("trivialize", |b| b.iter(|| poincare_trivialization(&chart, &[zero(), zero()]).unwrap()));
    g.finish();

    let mut g = c.benchmark_group("ainfty");
    g.sample_size(20);
    for n in 1..=3 {
        let s = chain(10 + n as u64, 1, n);
        g.bench_with_input(BenchmarkId::new("lambda", n), &s.chain, |b, ch| b.iter(|| lambda_eval(ch).unwrap()));
        g.bench_with_input(BenchmarkId::new("b_squared", n), &s.chain, |b, ch| {
            b.iter(|| b_square_residual(ch).unwrap())
        });
        g.bench_function(BenchmarkId::new("relation", n), |b| {
            b.iter_batched(|| s.chain.clone(), |ch| ainfty_relation_residual(&ch).unwrap(), BatchSize::SmallInput)
        });
    }
    g.finish();
}
