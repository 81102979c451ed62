use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qpol::discrimination::{minimize_s_overlap, p_min_k};
use qpol::polarization::{degree_chernoff, degree_chernoff_bell_diagonal};
use qpol::states::{bell_diagonal_state, unpolarized_state, BellDiagonalParams, UnpolarizedSpec};
use qpol::sweep::{find_crossing, sweep, Family};
use qpol::FockBasis;

fn bench_minimize_s_overlap(c: &mut Criterion) {
    let basis = FockBasis::new(3);
    let p = BellDiagonalParams::new(0.4, 0.3, 0.2, 0.1).unwrap();
    let rho = bell_diagonal_state(basis, &p).unwrap();
    let sigma = unpolarized_state(basis, &UnpolarizedSpec::delta(3, 3)).unwrap();
    c.bench_function("minimize_s_overlap/bell_diagonal_vs_sector_mixed", |b| {
        b.iter(|| minimize_s_overlap(black_box(&rho), black_box(&sigma)).unwrap())
    });
}

fn bench_degree_of_polarization(c: &mut Criterion) {
    let p = BellDiagonalParams::new(0.4, 0.3, 0.2, 0.1).unwrap();
    c.bench_function("degree/closed_form", |b| {
        b.iter(|| degree_chernoff_bell_diagonal(black_box(&p)))
    });

    let rho = bell_diagonal_state(FockBasis::new(3), &p).unwrap();
    c.bench_function("degree/general_single_sector", |b| {
        b.iter(|| degree_chernoff(black_box(&rho)))
    });

    // multi-sector input exercises the outer simplex search
    let spec = UnpolarizedSpec::new(vec![0.2, 0.3, 0.1, 0.4]).unwrap();
    let sigma = unpolarized_state(FockBasis::new(3), &spec).unwrap();
    c.bench_function("degree/general_outer_search", |b| {
        b.iter(|| degree_chernoff(black_box(&sigma)))
    });
}

fn bench_p_min_k(c: &mut Criterion) {
    let basis = FockBasis::new(3);
    let rho =
        bell_diagonal_state(basis, &BellDiagonalParams::new(0.4, 0.3, 0.2, 0.1).unwrap()).unwrap();
    let zeta = unpolarized_state(basis, &UnpolarizedSpec::delta(3, 3)).unwrap();
    c.bench_function("p_min_k/k3", |b| {
        b.iter(|| p_min_k(black_box(&rho), black_box(&zeta), 3).unwrap())
    });
}

fn bench_sweep_and_crossing(c: &mut Criterion) {
    c.bench_function("sweep/werner_201", |b| {
        b.iter(|| sweep(Family::Werner, black_box(201), false).unwrap())
    });
    c.bench_function("crossing/werner", |b| {
        b.iter(|| find_crossing(Family::Werner, black_box(0.3), black_box(0.4)).unwrap())
    });
}

criterion_group!(
    pipelines,
    bench_minimize_s_overlap,
    bench_degree_of_polarization,
    bench_p_min_k,
    bench_sweep_and_crossing
);
criterion_main!(pipelines);
