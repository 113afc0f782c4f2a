use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use profinite::lattice::{all_down_sets, FiniteLattice};
use profinite::limit::{ideal_inf, IdealSystem, InverseSystem};
use profinite::quotient::induce;
use profinite::ternary::{psi, verify_square, ComponentIndex};
use profinite::universal::solve_extension;
use profinite::{random, UniversalSequence};
use profinite_bench::{poset5, quotient_onto_p1};

fn down_sets(c: &mut Criterion) {
    let seq = UniversalSequence::new(3).unwrap();
    let p2 = seq.level(2).unwrap();
    c.bench_function("all_down_sets P_2", |b| b.iter(|| all_down_sets(black_box(p2.clone())).unwrap()));
    let p = poset5(1);
    c.bench_function("birkhoff lattice |P|=5", |b| b.iter(|| FiniteLattice::of_ideals(black_box(p.clone())).unwrap()));
}

fn quotients(c: &mut Criterion) {
    let seq = UniversalSequence::new(6).unwrap();
    let p = quotient_onto_p1(&seq, 3);
    seq.level(6).unwrap();
    c.bench_function("solve_extension |H|=6", |b| b.iter(|| solve_extension(&seq, black_box(&p), 1).unwrap()));
    let f = seq.projection(2, 1).unwrap();
    c.bench_function("induce p_1^2", |b| b.iter(|| induce(black_box(&f)).unwrap()));
}

fn threads(c: &mut Criterion) {
    let seq = UniversalSequence::new(3).unwrap();
    let sys = IdealSystem::new(InverseSystem::universal(&seq, 3).unwrap());
    let mut rng = random::rng(5);
    let a = random::ideal_thread(&mut rng, &sys, 3);
    let b2 = random::ideal_thread(&mut rng, &sys, 3);
    c.bench_function("ideal_inf depth 3", |b| b.iter(|| ideal_inf(&sys, black_box(&a), black_box(&b2)).unwrap()));
}

fn ternary(c: &mut Criterion) {
    let seq = UniversalSequence::new(4).unwrap();
    let index = ComponentIndex::new(3).unwrap();
    let p3 = seq.level(3).unwrap();
    let a = profinite::ternary::random_down_set(&p3, &mut random::rng(9));
    c.bench_function("psi P_3", |b| b.iter(|| psi(&index, black_box(&a))));
    c.bench_function("verify_square n=2, 1000 samples", |b| b.iter(|| verify_square(&seq, 2, 1000, 42).unwrap()));
}

criterion_group!(benches, down_sets, quotients, threads, ternary);
criterion_main!(benches);
