//! Classification of moduli n by whether every z ∈ Z_n is a sum of two
//! (nonzero) squares, together with constructive solvers for
//! x^2 + y^2 ≡ z (mod n).
//!
//! The solvers work prime power by prime power and recombine with the CRT:
//! a stray factor of 2 is served by x ≡ 1 (mod 2); powers of p ≡ 1 (mod 4)
//! ride a prime found in an arithmetic progression; primes q ≡ 3 (mod 4)
//! use either the same progression trick or, when zero summands are
//! allowed, a pair of residues summing to z. Powers 5^k with k ≥ 3 get a
//! dedicated fully-nontrivial construction.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arithmetic::{
    crt_combine, factorize, hensel_lift_sqrt, is_prime, legendre, mul_mod, sqrt_mod_prime,
    CongruenceSystem, MAX_VALUE,
};
use crate::integer::{decompose_any, decompose_prime, decompose_prime_power};
use crate::Error;

/// Largest modulus for which `solve` may fall back to exhaustive search.
pub const EXHAUSTIVE_SOLVE_LIMIT: u64 = 10_000;

/// Largest single prime-power component the per-component scan will cover.
const COMPONENT_SCAN_LIMIT: u64 = 1_000_000;

/// How many progression terms to try before giving up on finding a prime.
const DIRICHLET_SEARCH_CAP: u64 = 100_000;

/// The set S_n of nonzero squares mod n, or S_n^0 with zero included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueSet {
    modulus: u64,
    include_zero: bool,
    members: BTreeSet<u64>,
}

impl ResidueSet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn include_zero(&self) -> bool {
        self.include_zero
    }

    pub fn members(&self) -> &BTreeSet<u64> {
        &self.members
    }

    pub fn contains(&self, residue: u64) -> bool {
        self.members.contains(&(residue % self.modulus))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Exhaustively computed squares mod n. Linear in n.
pub fn squares_mod(n: u64, include_zero: bool) -> ResidueSet {
    assert!(n >= 2, "modulus must be at least 2");
    let mut members = BTreeSet::new();
    for x in 0..n {
        let s = mul_mod(x, x, n);
        if s != 0 || include_zero {
            members.insert(s);
        }
    }
    ResidueSet {
        modulus: n,
        include_zero,
        members,
    }
}

/// A witness x^2 + y^2 ≡ z (mod modulus). `nontrivial` records whether both
/// squares are nonzero residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquarePair {
    modulus: u64,
    z: u64,
    x: u64,
    y: u64,
    nontrivial: bool,
}

impl SquarePair {
    pub(crate) fn new(modulus: u64, z: u64, x: u64, y: u64) -> Self {
        let z = z % modulus;
        let x = x % modulus;
        let y = y % modulus;
        let x2 = mul_mod(x, x, modulus);
        let y2 = mul_mod(y, y, modulus);
        debug_assert_eq!((x2 as u128 + y2 as u128) % modulus as u128, z as u128);
        Self {
            modulus,
            z,
            x,
            y,
            nontrivial: x2 != 0 && y2 != 0,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn nontrivial(&self) -> bool {
        self.nontrivial
    }

    /// Re-check the congruence and the nontriviality flag from scratch.
    pub fn verify(&self) -> bool {
        if self.modulus < 2 || self.x >= self.modulus || self.y >= self.modulus {
            return false;
        }
        let x2 = mul_mod(self.x, self.x, self.modulus);
        let y2 = mul_mod(self.y, self.y, self.modulus);
        let sum = ((x2 as u128 + y2 as u128) % self.modulus as u128) as u64;
        sum == self.z % self.modulus && self.nontrivial == (x2 != 0 && y2 != 0)
    }
}

/// Per-condition verdicts for a modulus n.
///
/// `cond_odd_case` is `None` for even n, where the 5-adic condition does
/// not apply. `universal_nontrivial` means every z ∈ Z_n is a sum of two
/// nonzero squares mod n; `universal_with_zero` allows zero summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub modulus: u64,
    pub cond_no_q_squared: bool,
    pub cond_not_div_4: bool,
    pub cond_has_p1mod4: bool,
    pub cond_odd_case: Option<bool>,
    pub five_adic_k: u32,
    pub cofactor_m: u64,
    pub universal_nontrivial: bool,
    pub universal_with_zero: bool,
}

/// Classify n. Panics if n < 2 or n exceeds the supported range.
pub fn classify(n: u64) -> ClassificationReport {
    assert!((2..=MAX_VALUE).contains(&n), "modulus out of range");
    let fact = factorize(n).expect("range checked above");
    let cond_no_q_squared = fact.factors().iter().all(|&(p, e)| p % 4 != 3 || e == 1);
    let cond_not_div_4 = n % 4 != 0;
    let cond_has_p1mod4 = fact.factors().iter().any(|&(p, _)| p % 4 == 1);
    let five_adic_k = fact.exponent_of(5);
    let cofactor_m = n / 5u64.pow(five_adic_k);
    let cond_odd_case = if n % 2 == 1 {
        Some(five_adic_k >= 3 || fact.factors().iter().any(|&(p, _)| p % 4 == 1 && p != 5))
    } else {
        None
    };
    let universal_nontrivial =
        cond_no_q_squared && cond_not_div_4 && cond_has_p1mod4 && cond_odd_case.unwrap_or(true);
    let universal_with_zero = cond_no_q_squared && cond_not_div_4;
    ClassificationReport {
        modulus: n,
        cond_no_q_squared,
        cond_not_div_4,
        cond_has_p1mod4,
        cond_odd_case,
        five_adic_k,
        cofactor_m,
        universal_nontrivial,
        universal_with_zero,
    }
}

/// All universal moduli in [2, limit], ascending.
pub fn universal_moduli(limit: u64, allow_zero: bool) -> Vec<u64> {
    (2..=limit)
        .filter(|&n| {
            let report = classify(n);
            if allow_zero {
                report.universal_with_zero
            } else {
                report.universal_nontrivial
            }
        })
        .collect()
}

/// First prime ≡ 1 (mod 4) among start, start + step, start + 2·step, ...
fn find_prime_one_mod_four(start: i128, step: i128, cap: u64) -> Option<u64> {
    for k in 0..cap {
        let v = start + step * k as i128;
        if v < 2 {
            continue;
        }
        if v > MAX_VALUE as i128 {
            return None;
        }
        let v = v as u64;
        if v % 4 == 1 && is_prime(v) {
            return Some(v);
        }
    }
    None
}

/// Smallest root of every square mod n: `table[s] = min { x : x^2 ≡ s }`.
fn min_root_table(n: u64) -> Vec<Option<u64>> {
    let mut table = vec![None; n as usize];
    for x in 0..n {
        let s = mul_mod(x, x, n) as usize;
        if table[s].is_none() {
            table[s] = Some(x);
        }
    }
    table
}

/// Deterministic component-level scan: prefer a pair with both squares
/// nonzero, then one with y^2 nonzero, then anything.
fn scan_component(z: u64, m: u64) -> Option<(u64, u64)> {
    if m > COMPONENT_SCAN_LIMIT {
        return None;
    }
    let table = min_root_table(m);
    let mut with_nonzero_y: Option<(u64, u64)> = None;
    let mut any: Option<(u64, u64)> = None;
    for x in 0..m {
        let x2 = mul_mod(x, x, m);
        let t = (z + m - x2) % m;
        let Some(y) = table[t as usize] else {
            continue;
        };
        if any.is_none() {
            any = Some((x, y));
        }
        if with_nonzero_y.is_none() && t != 0 {
            with_nonzero_y = Some((x, y));
        }
        if x2 != 0 && t != 0 {
            return Some((x, y));
        }
    }
    with_nonzero_y.or(any)
}

/// Solve x^2 + y^2 ≡ z (mod base^exponent) for a single prime power.
///
/// For base ≡ 1 (mod 4) the returned pair has y^2 nonzero; z ≡ 0 even gives
/// both squares nonzero. For base ≡ 3 (mod 4) only exponent 1 is supported
/// and z ≡ 0 yields the trivial (0, 0). Base 2 pins x ≡ 1 (mod 2).
pub fn solve_prime_power(z: u64, base: u64, exponent: u32) -> Result<Option<SquarePair>, Error> {
    if !is_prime(base) {
        return Err(Error::NotPrime(base));
    }
    if exponent == 0 || (base % 4 != 1 && exponent > 1) {
        return Err(Error::UnsupportedExponent { base, exponent });
    }
    let m = base
        .checked_pow(exponent)
        .filter(|&v| v <= MAX_VALUE)
        .ok_or(Error::Overflow)?;
    let z = z % m;

    if base == 2 {
        return Ok(Some(SquarePair::new(2, z, 1, (z + 1) % 2)));
    }

    if base % 4 == 1 {
        if z == 0 {
            let dec = decompose_prime_power(base, exponent)?;
            return Ok(Some(SquarePair::new(m, z, dec.a() % m, dec.b() % m)));
        }
        let mut depth = 0u32;
        let mut unit = z;
        while unit % base == 0 {
            unit /= base;
            depth += 1;
        }
        let tail = m / base.pow(depth); // p^(a-b)
        let start = tail as i128 * (1 - unit as i128) + unit as i128;
        let step = 4 * tail as i128;
        if let Some(r) = find_prime_one_mod_four(start, step, DIRICHLET_SEARCH_CAP) {
            if let Some(target) = base.pow(depth).checked_mul(r) {
                if let Some(dec) = decompose_any(target, true) {
                    let (mut x, mut y) = (dec.a() % m, dec.b() % m);
                    if mul_mod(y, y, m) == 0 {
                        std::mem::swap(&mut x, &mut y);
                    }
                    return Ok(Some(SquarePair::new(m, z, x, y)));
                }
            }
        }
        return Ok(scan_component(z, m).map(|(x, y)| SquarePair::new(m, z, x, y)));
    }

    // base ≡ 3 (mod 4), exponent 1
    if z == 0 {
        return Ok(Some(SquarePair::new(m, 0, 0, 0)));
    }
    let start = base as i128 * (3 + z as i128) + z as i128;
    let step = 4 * base as i128;
    if let Some(r) = find_prime_one_mod_four(start, step, DIRICHLET_SEARCH_CAP) {
        let dec = decompose_prime(r)?;
        let (mut x, mut y) = (dec.a() % m, dec.b() % m);
        if mul_mod(y, y, m) == 0 {
            std::mem::swap(&mut x, &mut y);
        }
        return Ok(Some(SquarePair::new(m, z, x, y)));
    }
    Ok(scan_component(z, m).map(|(x, y)| SquarePair::new(m, z, x, y)))
}

/// Is z (nonzero) a square mod 5^k? True when the 5-adic valuation is even
/// and the unit part is a residue mod 5.
fn is_square_mod_five_power(z: u64) -> bool {
    let mut unit = z;
    let mut valuation = 0u32;
    while unit % 5 == 0 {
        unit /= 5;
        valuation += 1;
    }
    valuation % 2 == 0 && (unit % 5 == 1 || unit % 5 == 4)
}

/// Nontrivial solution of x^2 + y^2 ≡ z (mod 5^k) for every z, k ≥ 3.
///
/// Case split: z ≡ 0 uses an integer decomposition of 5^k; z outside the
/// square set rides the prime-power solver; a unit square z multiplies the
/// solution of x^2 + 5^2 ≡ 1; a square z divisible by 5 lifts z - 1.
pub fn solve_five_power(z: u64, k: u32) -> Result<SquarePair, Error> {
    if k < 3 {
        return Err(Error::UnsupportedExponent { base: 5, exponent: k });
    }
    let m = 5u64
        .checked_pow(k)
        .filter(|&v| v <= MAX_VALUE)
        .ok_or(Error::Overflow)?;
    let z = z % m;
    let pair = if z == 0 {
        let dec = decompose_any(m, true).expect("5^k is a sum of two nonzero squares");
        SquarePair::new(m, z, dec.a() % m, dec.b() % m)
    } else if !is_square_mod_five_power(z) {
        let pair = solve_prime_power(z, 5, k)?.expect("progression search covers 5^k");
        debug_assert!(pair.nontrivial());
        pair
    } else if z % 5 != 0 {
        // x^2 + 5^2 ≡ 1 (mod 5^k) via x^2 ≡ -24, then scale by z = w^2.
        let w = hensel_lift_sqrt(z, 5, k)?.expect("z is a unit square mod 5^k");
        let x = hensel_lift_sqrt(m - 24, 5, k)?.expect("-24 is a unit square mod 5^k");
        SquarePair::new(m, z, mul_mod(w, x, m), mul_mod(5, w, m))
    } else {
        // z ≡ 0 (mod 5) and z a square force z - 1 ≡ 4 (mod 5).
        let x = hensel_lift_sqrt(z - 1, 5, k)?.expect("z - 1 is a unit square mod 5^k");
        SquarePair::new(m, z, x, 1)
    };
    debug_assert!(pair.nontrivial());
    Ok(pair)
}

/// For a non-residue z mod a prime p ≡ 3 (mod 4), split z into a sum of two
/// quadratic residues (s, t): with a the smallest positive residue such that
/// (a/p) = 1 and ((a+1)/p) = -1, take s = -za and t = z(a+1).
pub fn residue_pair_for_nonsquare(z: u64, p: u64) -> Result<(u64, u64), Error> {
    if p % 4 != 3 || !is_prime(p) {
        return Err(Error::NotPrimeThreeMod4(p));
    }
    let z = z % p;
    if legendre(z as i64, p)? != -1 {
        return Err(Error::NotNonResidue { z, p });
    }
    let mut a = 1u64;
    loop {
        if legendre(a as i64, p)? == 1 && legendre(a as i64 + 1, p)? == -1 {
            break;
        }
        a += 1;
        debug_assert!(a < p, "a residue / non-residue step must exist below p");
    }
    let s = mul_mod(p - z, a, p);
    let t = mul_mod(z, a + 1, p);
    debug_assert_eq!((s + t) % p, z);
    debug_assert_eq!(legendre(s as i64, p)?, 1);
    debug_assert_eq!(legendre(t as i64, p)?, 1);
    Ok((s, t))
}

struct Component {
    modulus: u64,
    x: u64,
    y: u64,
}

impl Component {
    fn signature(&self) -> (bool, bool) {
        (
            mul_mod(self.x, self.x, self.modulus) != 0,
            mul_mod(self.y, self.y, self.modulus) != 0,
        )
    }

    fn swap(&mut self) {
        std::mem::swap(&mut self.x, &mut self.y);
    }
}

/// Component for q ≡ 3 (mod 4), exponent 1, zero summands allowed: squares
/// solve themselves, non-residues split into two residues.
fn zero_allowed_q_component(z: u64, q: u64) -> Option<(u64, u64)> {
    if z == 0 {
        return Some((0, 0));
    }
    match legendre(z as i64, q).ok()? {
        1 => {
            let x = sqrt_mod_prime(z, q).ok()??;
            Some((x, 0))
        }
        _ => {
            let (s, t) = residue_pair_for_nonsquare(z, q).ok()?;
            let x = sqrt_mod_prime(s, q).ok()??;
            let y = sqrt_mod_prime(t, q).ok()??;
            Some((x, y))
        }
    }
}

/// Piece together per-prime-power solutions with the CRT. `None` when some
/// component falls outside the supported constructions or the mix cannot be
/// certified nontrivial.
fn solve_constructive(z: u64, n: u64, require_nontrivial: bool) -> Option<SquarePair> {
    let fact = factorize(n).ok()?;
    let mut components: Vec<Component> = Vec::with_capacity(fact.factors().len());
    for &(p, e) in fact.factors() {
        let m = p.pow(e);
        let z_i = z % m;
        let (x, y) = if p == 2 {
            if e > 1 {
                return None;
            }
            (1, (z_i + 1) % 2)
        } else if p % 4 == 1 {
            if require_nontrivial && p == 5 && e >= 3 {
                let pair = solve_five_power(z_i, e).ok()?;
                (pair.x(), pair.y())
            } else {
                let pair = solve_prime_power(z_i, p, e).ok()??;
                (pair.x(), pair.y())
            }
        } else {
            if e > 1 {
                return None;
            }
            if require_nontrivial {
                let pair = solve_prime_power(z_i, p, 1).ok()??;
                (pair.x(), pair.y())
            } else {
                zero_allowed_q_component(z_i, p)?
            }
        };
        components.push(Component { modulus: m, x, y });
    }

    if require_nontrivial {
        let has_both = components.iter().any(|c| {
            let (sx, sy) = c.signature();
            sx && sy
        });
        if !has_both {
            // Need one component feeding each side; orient two of them.
            let mut picked: Vec<usize> = Vec::with_capacity(2);
            for (i, c) in components.iter().enumerate() {
                let (sx, sy) = c.signature();
                if sx || sy {
                    picked.push(i);
                    if picked.len() == 2 {
                        break;
                    }
                }
            }
            let [left, right] = picked[..] else {
                return None;
            };
            if !components[left].signature().0 {
                components[left].swap();
            }
            if !components[right].signature().1 {
                components[right].swap();
            }
        }
    }

    let x_system = CongruenceSystem::new(components.iter().map(|c| (c.x, c.modulus))).ok()?;
    let y_system = CongruenceSystem::new(components.iter().map(|c| (c.y, c.modulus))).ok()?;
    let (x, m_check) = crt_combine(&x_system).ok()?;
    let (y, _) = crt_combine(&y_system).ok()?;
    debug_assert_eq!(m_check, n);
    let pair = SquarePair::new(n, z, x, y);
    if require_nontrivial && !pair.nontrivial() {
        return None;
    }
    Some(pair)
}

/// First-hit scan, x ascending then y ascending. Linear via a root table.
fn solve_exhaustive(z: u64, n: u64, require_nontrivial: bool) -> Option<SquarePair> {
    let table = min_root_table(n);
    for x in 0..n {
        let x2 = mul_mod(x, x, n);
        if require_nontrivial && x2 == 0 {
            continue;
        }
        let t = (z + n - x2) % n;
        if require_nontrivial && t == 0 {
            continue;
        }
        if let Some(y) = table[t as usize] {
            return Some(SquarePair::new(n, z, x, y));
        }
    }
    None
}

/// Solve x^2 + y^2 ≡ z (mod n), nontrivially when requested.
///
/// The constructive path is always tried first. When it cannot produce or
/// certify a solution, moduli up to 10^4 fall back to exhaustive search —
/// the only way `None` ("no solution exists") is ever returned. Larger
/// moduli that defeat the construction are reported as a domain error
/// rather than silently scanned.
pub fn solve(z: u64, n: u64, require_nontrivial: bool) -> Result<Option<SquarePair>, Error> {
    if !(2..=MAX_VALUE).contains(&n) {
        return Err(Error::OutOfRange(n));
    }
    let z = z % n;
    if let Some(pair) = solve_constructive(z, n, require_nontrivial) {
        debug_assert!(pair.verify());
        return Ok(Some(pair));
    }
    if n <= EXHAUSTIVE_SOLVE_LIMIT {
        return Ok(solve_exhaustive(z, n, require_nontrivial));
    }
    Err(Error::AboveExhaustiveBound(n))
}
