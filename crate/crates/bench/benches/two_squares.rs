use criterion::{black_box, criterion_group, criterion_main, Criterion};

use twosq::{
    decompose_prime, factorize, oracle_scan, solve, solve_five_power, universal_moduli,
};

fn classification(c: &mut Criterion) {
    c.bench_function("universal_moduli_400_nontrivial", |b| {
        b.iter(|| universal_moduli(black_box(400), false))
    });
}

fn constructive_solver(c: &mut Criterion) {
    c.bench_function("solve_nontrivial_all_z_mod_85", |b| {
        b.iter(|| {
            for z in 0..85 {
                let pair = solve(black_box(z), 85, true).unwrap().unwrap();
                black_box(pair);
            }
        })
    });
    c.bench_function("solve_five_power_all_z_mod_625", |b| {
        b.iter(|| {
            for z in 0..625 {
                black_box(solve_five_power(black_box(z), 4).unwrap());
            }
        })
    });
}

fn factorization(c: &mut Criterion) {
    // Both prime factors lie above the trial-division ceiling, so this
    // exercises the Miller-Rabin + rho path.
    let semiprime = 1_000_003u64 * 1_000_033;
    c.bench_function("factorize_large_semiprime", |b| {
        b.iter(|| factorize(black_box(semiprime)).unwrap())
    });
    c.bench_function("decompose_prime_cornacchia", |b| {
        b.iter(|| decompose_prime(black_box(1_000_000_009)).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("oracle_scan_1000", |b| {
        b.iter(|| oracle_scan(black_box(1000)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, classification, constructive_solver, factorization, oracle);
criterion_main!(benches);
