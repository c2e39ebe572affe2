use criterion::{criterion_group, criterion_main, Criterion};

use hesspave_core::hessenberg::{enumerate_spaces, peterson_space};
use hesspave_core::{Family, OperatorSpec, Paver, RootSystem};

fn peterson_type_a(c: &mut Criterion) {
    let sys = RootSystem::from_parts(Family::A, 4).unwrap();
    let paver = Paver::new(&sys, &"nilpotent:5".parse::<OperatorSpec>().unwrap()).unwrap();
    let space = peterson_space(&sys);
    c.bench_function("pave A4 regular nilpotent, Peterson", |b| {
        b.iter(|| paver.report(&space).unwrap())
    });
}

fn all_spaces_b3(c: &mut Criterion) {
    let sys = RootSystem::from_parts(Family::B, 3).unwrap();
    let paver = Paver::new(&sys, &OperatorSpec::RegularNilpotent).unwrap();
    let spaces = enumerate_spaces(&sys).unwrap();
    c.bench_function("pave B3 regular nilpotent, all spaces", |b| {
        b.iter(|| {
            for s in &spaces {
                paver.pave(s).unwrap();
            }
        })
    });
}

fn semisimple_d4(c: &mut Criterion) {
    let sys = RootSystem::from_parts(Family::D, 4).unwrap();
    let paver = Paver::new(&sys, &OperatorSpec::Semisimple(Vec::new())).unwrap();
    let space = peterson_space(&sys);
    c.bench_function("pave D4 regular semisimple, Peterson", |b| {
        b.iter(|| paver.pave(&space).unwrap())
    });
}

criterion_group!(benches, peterson_type_a, all_spaces_b3, semisimple_d4);
criterion_main!(benches);
