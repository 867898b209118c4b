use criterion::{criterion_group, criterion_main, Criterion};
use squarecheck_core::{
    chromatic_number, find_config, is_f_choosable, solve_list_coloring, spacing_max_marks,
    ChooseOptions, ListAssignment, SizeVector,
};

fn bench_list_coloring(c: &mut Criterion) {
    let sq = squarecheck_core::families::cycle(12).square();
    let lists = ListAssignment::uniform(12, 4);
    c.bench_function("solve_list_coloring c12 squared", |b| {
        b.iter(|| solve_list_coloring(&sq, &lists))
    });
}

fn bench_chromatic(c: &mut Criterion) {
    let sq = squarecheck_core::families::petersen().square();
    c.bench_function("chromatic_number petersen squared", |b| {
        b.iter(|| chromatic_number(&sq).unwrap())
    });
}

fn bench_choosable(c: &mut Criterion) {
    let q3 = find_config("Q3").unwrap();
    let conflict = q3.conflict_graph();
    let f = squarecheck_core::derive_residual_bounds(&q3).unwrap();
    c.bench_function("is_f_choosable q3", |b| {
        b.iter(|| is_f_choosable(&conflict, &f).unwrap())
    });
    let c5 = squarecheck_core::families::cycle(5);
    let f5 = SizeVector::new(vec![3; 5]).unwrap();
    let opts = ChooseOptions {
        automorphism_pruning: true,
        ..Default::default()
    };
    c.bench_function("is_f_choosable c5 threes pruned", |b| {
        b.iter(|| squarecheck_core::is_f_choosable_with(&c5, &f5, &opts).unwrap())
    });
}

fn bench_spacing(c: &mut Criterion) {
    c.bench_function("spacing_max_marks 40", |b| {
        b.iter(|| spacing_max_marks(40).unwrap())
    });
}

criterion_group!(
    benches,
    bench_list_coloring,
    bench_chromatic,
    bench_choosable,
    bench_spacing
);
criterion_main!(benches);
