//! Invariant sweeps and property tests. Exhaustive scans act as the
//! independent reference for every algebraic path; proptest covers the
//! combinatorial inputs that cannot be enumerated.

use proptest::prelude::*;

use twosq::{
    classify, compose, crt_combine, decompose_any, factorize, hensel_lift_sqrt,
    is_hypotenuse_criterion, is_prime, is_sum_of_two_nonzero_squares, is_sum_of_two_squares,
    legendre, oracle_integer_decompose, oracle_scan, residue_pair_for_nonsquare, solve,
    solve_five_power, sqrt_mod_prime, triple_from_params, universal_moduli, CongruenceSystem,
    SquareDecomposition, TripleParams,
};

fn odd_primes_up_to(limit: u64) -> Vec<u64> {
    (3..=limit).filter(|&p| p % 2 == 1 && is_prime(p)).collect()
}

/// Exhaustive reference for the integer criteria: does a^2 + b^2 = z have a
/// solution with the requested leg constraint?
fn scan_two_squares(z: u64, require_nonzero: bool) -> bool {
    let mut a = u64::from(require_nonzero);
    while 2 * a * a <= z {
        let rest = z - a * a;
        let b = rest.isqrt();
        if b * b == rest {
            return true;
        }
        a += 1;
    }
    false
}

#[test]
fn factorization_reassembles_every_value_up_to_a_million() {
    for value in 1..=1_000_000u64 {
        let fact = factorize(value).unwrap();
        let mut product = 1u64;
        for &(p, e) in fact.factors() {
            assert!(is_prime(p), "non-prime factor {p} of {value}");
            assert!(e >= 1);
            product *= p.pow(e);
        }
        assert_eq!(product, value);
        let primes: Vec<u64> = fact.factors().iter().map(|&(p, _)| p).collect();
        assert!(primes.windows(2).all(|w| w[0] < w[1]), "unsorted factors of {value}");
    }
}

#[test]
fn sqrt_mod_prime_agrees_with_scan_for_primes_up_to_1000() {
    for p in odd_primes_up_to(1000) {
        let mut min_root = vec![None; p as usize];
        for x in 0..p {
            let s = (x * x % p) as usize;
            if min_root[s].is_none() {
                min_root[s] = Some(x);
            }
        }
        for z in 0..p {
            match sqrt_mod_prime(z, p).unwrap() {
                Some(x) => {
                    assert_eq!(x * x % p, z, "bad root {x} of {z} mod {p}");
                    assert_eq!(Some(x), min_root[z as usize], "non-canonical root mod {p}");
                }
                None => {
                    assert!(min_root[z as usize].is_none(), "missed root of {z} mod {p}");
                }
            }
        }
    }
}

#[test]
fn hensel_roots_square_back_for_small_prime_powers() {
    for p in odd_primes_up_to(50) {
        for k in 1..=4u32 {
            let m = p.pow(k);
            for z in 1..m {
                if z % p == 0 {
                    continue;
                }
                let symbol = legendre(z as i64 % p as i64, p).unwrap();
                match hensel_lift_sqrt(z, p, k).unwrap() {
                    Some(x) => {
                        assert_eq!(symbol, 1);
                        assert_eq!(
                            (x as u128 * x as u128) % m as u128,
                            z as u128,
                            "bad lift of {z} mod {p}^{k}"
                        );
                        assert!(x <= m - x, "non-canonical lift of {z} mod {p}^{k}");
                    }
                    None => assert_eq!(symbol, -1, "missed lift of {z} mod {p}^{k}"),
                }
            }
        }
    }
}

#[test]
fn legendre_is_completely_multiplicative() {
    for p in odd_primes_up_to(200) {
        let symbols: Vec<i32> = (0..p).map(|a| legendre(a as i64, p).unwrap()).collect();
        for a in 1..p {
            for b in 1..p {
                let ab = (a * b % p) as usize;
                assert_eq!(
                    symbols[ab],
                    symbols[a as usize] * symbols[b as usize],
                    "multiplicativity fails at ({a}, {b}) mod {p}"
                );
            }
        }
    }
}

#[test]
fn integer_criteria_agree_with_exhaustive_search() {
    for z in 0..=20_000u64 {
        assert_eq!(
            is_sum_of_two_squares(z),
            scan_two_squares(z, false),
            "two-square criterion wrong at {z}"
        );
        assert_eq!(
            is_sum_of_two_nonzero_squares(z),
            scan_two_squares(z, true),
            "nonzero criterion wrong at {z}"
        );
        // The oracle module must agree with both, too.
        assert_eq!(
            oracle_integer_decompose(z, false).unwrap().is_some(),
            is_sum_of_two_squares(z)
        );
        assert_eq!(
            oracle_integer_decompose(z, true).unwrap().is_some(),
            is_sum_of_two_nonzero_squares(z)
        );
    }
}

#[test]
fn hypotenuse_criterion_matches_nonzero_criterion_on_squares() {
    let mut c = 1u64;
    while c * c <= 20_000 {
        let z = c * c;
        assert_eq!(
            is_hypotenuse_criterion(z).unwrap(),
            is_sum_of_two_nonzero_squares(z),
            "criteria disagree on {z}"
        );
        c += 1;
    }
}

#[test]
fn decompositions_verify_and_exist_exactly_when_criteria_hold() {
    for z in 0..=20_000u64 {
        for require_nonzero in [false, true] {
            let criterion = if require_nonzero {
                is_sum_of_two_nonzero_squares(z)
            } else {
                is_sum_of_two_squares(z)
            };
            match decompose_any(z, require_nonzero) {
                Some(dec) => {
                    assert!(criterion, "spurious decomposition of {z}");
                    assert_eq!(dec.a() * dec.a() + dec.b() * dec.b(), z);
                    assert!(!require_nonzero || dec.a() >= 1);
                }
                None => assert!(!criterion, "missing decomposition of {z}"),
            }
        }
    }
}

#[test]
fn classification_matches_oracle_up_to_400() {
    for n in 2..=400u64 {
        let report = classify(n);
        let verdict = oracle_scan(n).unwrap();
        let oracle_nontrivial = verdict.nontrivially_representable_residues().len() == n as usize;
        let oracle_with_zero = verdict.representable_residues().len() == n as usize;
        assert_eq!(
            report.universal_nontrivial, oracle_nontrivial,
            "nontrivial verdict mismatch at n = {n}"
        );
        assert_eq!(
            report.universal_with_zero, oracle_with_zero,
            "zero-allowed verdict mismatch at n = {n}"
        );
        assert!(
            !report.universal_nontrivial || report.universal_with_zero,
            "containment fails at n = {n}"
        );
    }
}

#[test]
fn universal_moduli_match_known_lists() {
    assert_eq!(
        universal_moduli(91, false),
        vec![
            10, 13, 17, 26, 29, 30, 34, 37, 39, 41, 50, 51, 53, 58, 61, 65, 70, 73, 74, 78, 82,
            85, 87, 89, 91
        ]
    );
    assert_eq!(
        universal_moduli(38, true),
        vec![
            2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 25, 26, 29, 30, 31, 33, 34,
            35, 37, 38
        ]
    );
}

#[test]
fn solver_is_complete_on_universal_moduli_up_to_200() {
    for n in 2..=200u64 {
        if !classify(n).universal_nontrivial {
            continue;
        }
        for z in 0..n {
            let pair = solve(z, n, true)
                .unwrap()
                .unwrap_or_else(|| panic!("no nontrivial pair for z = {z} mod {n}"));
            assert!(pair.verify(), "invalid pair for z = {z} mod {n}");
            assert!(pair.nontrivial(), "trivial pair for z = {z} mod {n}");
        }
    }
}

#[test]
fn solver_agrees_with_oracle_for_all_small_moduli() {
    for n in 2..=60u64 {
        let verdict = oracle_scan(n).unwrap();
        for z in 0..n {
            for require_nontrivial in [false, true] {
                let reachable = if require_nontrivial {
                    verdict.nontrivially_representable_residues().contains(&z)
                } else {
                    verdict.representable_residues().contains(&z)
                };
                match solve(z, n, require_nontrivial).unwrap() {
                    Some(pair) => {
                        assert!(reachable, "spurious solution for z = {z} mod {n}");
                        assert!(pair.verify());
                        assert!(!require_nontrivial || pair.nontrivial());
                    }
                    None => assert!(!reachable, "missed solution for z = {z} mod {n}"),
                }
            }
        }
    }
}

#[test]
fn five_power_solutions_are_nontrivial_for_k_3_and_4() {
    for k in [3u32, 4] {
        let m = 5u64.pow(k);
        for z in 0..m {
            let pair = solve_five_power(z, k).unwrap();
            assert!(pair.verify(), "invalid pair for z = {z} mod 5^{k}");
            assert!(pair.nontrivial(), "trivial pair for z = {z} mod 5^{k}");
        }
    }
}

#[test]
fn residue_pairs_are_residues_summing_to_z() {
    for p in odd_primes_up_to(100) {
        if p % 4 != 3 {
            continue;
        }
        for z in 1..p {
            if legendre(z as i64, p).unwrap() != -1 {
                continue;
            }
            let (s, t) = residue_pair_for_nonsquare(z, p).unwrap();
            assert_eq!((s + t) % p, z);
            assert_eq!(legendre(s as i64, p).unwrap(), 1);
            assert_eq!(legendre(t as i64, p).unwrap(), 1);
        }
    }
}

/// Pairwise-coprime modulus pool whose full product stays below 10^6, so
/// uniqueness can be checked by scanning.
const CRT_POOL: [u64; 6] = [4, 9, 25, 7, 11, 13];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_reassembles_random_values(value in 1u64..=(1 << 63) - 1) {
        let fact = factorize(value).unwrap();
        let mut product = 1u64;
        for &(p, e) in fact.factors() {
            prop_assert!(is_prime(p));
            product *= p.pow(e);
        }
        prop_assert_eq!(product, value);
    }

    #[test]
    fn crt_solution_satisfies_every_congruence_and_is_unique(
        picked in proptest::sample::subsequence(&CRT_POOL[..], 1..=6),
        residues in proptest::collection::vec(any::<u64>(), 6),
    ) {
        let entries: Vec<(u64, u64)> = picked
            .iter()
            .zip(&residues)
            .map(|(&m, &c)| (c % m, m))
            .collect();
        let system = CongruenceSystem::new(entries.clone()).unwrap();
        let (c, modulus) = crt_combine(&system).unwrap();
        prop_assert!(c < modulus);
        prop_assert_eq!(modulus, picked.iter().product::<u64>());
        for &(ci, mi) in &entries {
            prop_assert_eq!(c % mi, ci);
        }
        // Unique solution in [0, M): scan.
        let hits = (0..modulus)
            .filter(|&r| entries.iter().all(|&(ci, mi)| r % mi == ci))
            .count();
        prop_assert_eq!(hits, 1);
    }

    #[test]
    fn composition_multiplies_targets(
        a in 0u64..=3000,
        b in 0u64..=3000,
        c in 0u64..=3000,
        d in 0u64..=3000,
    ) {
        let d1 = SquareDecomposition::new(a, b).unwrap();
        let d2 = SquareDecomposition::new(c, d).unwrap();
        let product = compose(&d1, &d2).unwrap();
        prop_assert_eq!(product.target(), d1.target() * d2.target());
        prop_assert_eq!(
            product.a() * product.a() + product.b() * product.b(),
            product.target()
        );
    }

    #[test]
    fn triples_satisfy_pythagoras(u in 2u64..200, v in 1u64..200, k in 1u64..50) {
        prop_assume!(v < u);
        prop_assume!((u + v) % 2 == 1);
        let Ok(params) = TripleParams::new(u, v, k) else {
            return Ok(());
        };
        let (a, b, c) = triple_from_params(&params).unwrap();
        prop_assert_eq!(a * a + b * b, c * c);
        prop_assert!(a >= 1 && b >= 1 && c >= 1);
    }
}
