//! Shared integer and modular-arithmetic primitives: factorization,
//! primality, Legendre symbols, modular square roots, Hensel lifting and
//! Chinese-remainder recombination.
//!
//! All public inputs are confined to the unsigned 63-bit range so that every
//! intermediate product fits in `u128`. Primality is exact for the whole
//! range (deterministic Miller-Rabin witnesses for `u64`).

use crate::Error;

/// Largest value accepted by the integer routines.
pub const MAX_VALUE: u64 = (1 << 63) - 1;

/// Trial-division ceiling before the Pollard rho fallback kicks in.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Witness set that makes Miller-Rabin deterministic for all of `u64`.
const MILLER_RABIN_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, when gcd(a, m) = 1.
pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Canonical prime-power decomposition of a positive integer.
///
/// Primes are stored strictly increasing and every exponent is at least 1,
/// so the empty list is exactly the factorization of 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, prime: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(p, _)| p == prime)
            .map_or(0, |&(_, e)| e)
    }

    /// True when every exponent is even, i.e. the value is a perfect square.
    pub fn is_perfect_square(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e % 2 == 0)
    }
}

/// Exact primality for any `u64`.
pub fn is_prime(value: u64) -> bool {
    if value < 2 {
        return false;
    }
    for &p in &MILLER_RABIN_WITNESSES {
        if value == p {
            return true;
        }
        if value % p == 0 {
            return false;
        }
    }
    let mut d = value - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MILLER_RABIN_WITNESSES {
        let mut x = pow_mod(a, d, value);
        if x == 1 || x == value - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, value);
            if x == value - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One Brent-style rho round with polynomial x^2 + c.
fn rho_round(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut x = 2u64;
    let mut y = 2u64;
    let mut d = 1u64;
    let mut count = 0u64;
    while d == 1 {
        x = f(x);
        y = f(f(y));
        d = gcd(x.abs_diff(y), n);
        count += 1;
        if count > 1 << 24 {
            return None;
        }
    }
    if d != n {
        Some(d)
    } else {
        None
    }
}

/// Deterministic Pollard rho: walk constants c = 1, 2, ... until a proper
/// factor appears, falling back to plain trial division if they somehow all
/// fail (never observed in range).
fn pollard_rho(n: u64) -> u64 {
    for c in 1..64 {
        if let Some(d) = rho_round(n, c) {
            return d;
        }
    }
    let mut d = TRIAL_DIVISION_LIMIT + 1;
    while d as u128 * d as u128 <= n as u128 {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Canonical factorization of `value`.
///
/// Trial division by 2, 3 and then 6k±1 up to 10^6, with a deterministic
/// Miller-Rabin + Pollard rho fallback for the remaining cofactor.
pub fn factorize(value: u64) -> Result<Factorization, Error> {
    if value == 0 || value > MAX_VALUE {
        return Err(Error::OutOfRange(value));
    }
    let mut n = value;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let push = |factors: &mut Vec<(u64, u32)>, p: u64, e: u32| {
        if e > 0 {
            factors.push((p, e));
        }
    };
    for p in [2u64, 3] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        push(&mut factors, p, e);
    }
    let mut d = 5u64;
    let mut step = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && (d as u128) * (d as u128) <= n as u128 {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        push(&mut factors, d, e);
        d += step;
        step = 6 - step;
    }
    if n > 1 {
        // Cofactor with no prime factor below 10^6: prime, or a product of
        // few large primes that rho splits quickly.
        let mut large: Vec<u64> = Vec::new();
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if is_prime(m) {
                large.push(m);
                continue;
            }
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
        large.sort_unstable();
        let mut i = 0;
        while i < large.len() {
            let p = large[i];
            let mut e = 0;
            while i < large.len() && large[i] == p {
                e += 1;
                i += 1;
            }
            push(&mut factors, p, e);
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { value, factors })
}

fn require_odd_prime(p: u64) -> Result<(), Error> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Legendre symbol (a/p) for an odd prime p: 0 when p | a, +1 for nonzero
/// quadratic residues, -1 otherwise.
pub fn legendre(a: i64, p: u64) -> Result<i32, Error> {
    require_odd_prime(p)?;
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let e = pow_mod(r, (p - 1) / 2, p);
    debug_assert!(e == 1 || e == p - 1);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Tonelli-Shanks for p ≡ 1 (mod 4); `z` must be a known nonzero residue.
/// The non-residue needed by the algorithm is searched as 2, 3, 4, ... so
/// the output is deterministic.
fn tonelli_shanks(z: u64, p: u64) -> u64 {
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut nr = 2u64;
    while pow_mod(nr, (p - 1) / 2, p) != p - 1 {
        nr += 1;
    }
    let mut m = s;
    let mut c = pow_mod(nr, q, p);
    let mut t = pow_mod(z, q, p);
    let mut r = pow_mod(z, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut probe = t;
        while probe != 1 {
            probe = mul_mod(probe, probe, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Square root of `z` modulo an odd prime, or `None` when `z` is a
/// non-residue. Returns the canonical (smaller) root; 0 maps to 0.
pub fn sqrt_mod_prime(z: u64, p: u64) -> Result<Option<u64>, Error> {
    require_odd_prime(p)?;
    let z = z % p;
    if z == 0 {
        return Ok(Some(0));
    }
    if pow_mod(z, (p - 1) / 2, p) != 1 {
        return Ok(None);
    }
    let root = if p % 4 == 3 {
        pow_mod(z, (p + 1) / 4, p)
    } else {
        tonelli_shanks(z, p)
    };
    debug_assert_eq!(mul_mod(root, root, p), z);
    Ok(Some(root.min(p - root)))
}

/// Lift a square root of the unit `z` from mod p to mod p^k, one power at a
/// time. `None` when `z` is a non-residue mod p; `p | z` is out of contract
/// (callers strip square factors of p themselves).
pub fn hensel_lift_sqrt(z: u64, p: u64, k: u32) -> Result<Option<u64>, Error> {
    require_odd_prime(p)?;
    if k < 1 {
        return Err(Error::UnsupportedExponent { base: p, exponent: k });
    }
    let modulus = p
        .checked_pow(k)
        .filter(|&m| m <= MAX_VALUE)
        .ok_or(Error::Overflow)?;
    let z = z % modulus;
    if z % p == 0 {
        return Err(Error::NotUnit { value: z, prime: p });
    }
    let mut x = match sqrt_mod_prime(z % p, p)? {
        Some(r) => r,
        None => return Ok(None),
    };
    let mut pk = p;
    for _ in 1..k {
        let next = pk * p;
        let x2 = ((x as u128 * x as u128) % next as u128) as u64;
        let diff = ((z as u128 + next as u128 - x2 as u128) % next as u128) as u64;
        debug_assert_eq!(diff % pk, 0);
        let t = (diff / pk) % p;
        let two_x = mul_mod(2, x, p);
        let inv = mod_inverse(two_x, p).expect("2x is a unit mod p");
        let bump = mul_mod(t, inv, p);
        x += bump * pk;
        pk = next;
    }
    debug_assert_eq!((x as u128 * x as u128) % modulus as u128, z as u128);
    Ok(Some(x.min(modulus - x)))
}

/// A system x ≡ c_i (mod m_i) with pairwise-coprime moduli m_i ≥ 2.
/// Residues are reduced into [0, m_i) on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSystem {
    entries: Vec<(u64, u64)>,
}

impl CongruenceSystem {
    pub fn new(entries: impl IntoIterator<Item = (u64, u64)>) -> Result<Self, Error> {
        let mut reduced = Vec::new();
        for (c, m) in entries {
            if m < 2 {
                return Err(Error::ModulusTooSmall(m));
            }
            reduced.push((c % m, m));
        }
        for i in 0..reduced.len() {
            for j in i + 1..reduced.len() {
                if gcd(reduced[i].1, reduced[j].1) != 1 {
                    return Err(Error::NonCoprimeModuli(reduced[i].1, reduced[j].1));
                }
            }
        }
        Ok(Self { entries: reduced })
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }
}

/// Solve the whole system, returning `(c, M)` with M the product of the
/// moduli and c the unique solution in [0, M).
pub fn crt_combine(system: &CongruenceSystem) -> Result<(u64, u64), Error> {
    let mut iter = system.entries().iter();
    let &(mut c, mut m) = iter.next().ok_or(Error::EmptySystem)?;
    for &(ci, mi) in iter {
        let combined = m
            .checked_mul(mi)
            .filter(|&v| v <= MAX_VALUE)
            .ok_or(Error::Overflow)?;
        let inv = mod_inverse(m % mi, mi).ok_or(Error::NonCoprimeModuli(m, mi))?;
        let diff = (ci + mi - c % mi) % mi;
        c += m * mul_mod(diff, inv, mi);
        m = combined;
    }
    Ok((c, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_one_has_empty_factor_list() {
        let f = factorize(1).unwrap();
        assert_eq!(f.value(), 1);
        assert!(f.factors().is_empty());
    }

    #[test]
    fn factorize_small_composites() {
        assert_eq!(factorize(45).unwrap().factors(), &[(3, 2), (5, 1)]);
        assert_eq!(factorize(50).unwrap().factors(), &[(2, 1), (5, 2)]);
    }

    #[test]
    fn factorize_rejects_out_of_range() {
        assert_eq!(factorize(0), Err(Error::OutOfRange(0)));
        assert_eq!(factorize(1 << 63), Err(Error::OutOfRange(1 << 63)));
    }

    #[test]
    fn factorize_splits_large_semiprime() {
        // Both factors above the trial-division ceiling.
        let n = 1_000_003u64 * 1_000_033;
        let f = factorize(n).unwrap();
        assert_eq!(f.factors(), &[(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn is_prime_basics() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(91)); // 7 * 13
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(2_305_843_009_213_693_953));
    }

    #[test]
    fn is_prime_matches_trial_division_below_2000() {
        let slow = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..2000 {
            assert_eq!(is_prime(n), slow(n), "primality mismatch at {n}");
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(-1, 7).unwrap(), -1);
        assert_eq!(legendre(4, 13).unwrap(), 1);
        // Oracle: 3^2 = 9 ≡ 2 (mod 7), confirmed by scanning 0..7.
        assert!((0..7).any(|x| x * x % 7 == 2));
        assert_eq!(legendre(2, 7).unwrap(), 1);
        assert_eq!(legendre(14, 7).unwrap(), 0);
    }

    #[test]
    fn legendre_rejects_bad_modulus() {
        assert_eq!(legendre(1, 2), Err(Error::NotOddPrime(2)));
        assert_eq!(legendre(1, 9), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn sqrt_mod_prime_examples() {
        assert_eq!(sqrt_mod_prime(4, 13).unwrap(), Some(2));
        assert_eq!(sqrt_mod_prime(0, 13).unwrap(), Some(0));
        // Brute-force over 0..7: no square is ≡ 3, roots of 2 are {3, 4}.
        assert!((0..7).all(|x| x * x % 7 != 3));
        assert_eq!(sqrt_mod_prime(3, 7).unwrap(), None);
        assert_eq!(sqrt_mod_prime(2, 7).unwrap(), Some(3));
        assert_eq!(sqrt_mod_prime(2, 4), Err(Error::NotOddPrime(4)));
    }

    #[test]
    fn hensel_lift_examples() {
        assert_eq!(hensel_lift_sqrt(4, 5, 1).unwrap(), Some(2));
        // -24 ≡ 101 (mod 125); brute force over 0..125 confirms the root set.
        let roots: Vec<u64> = (0..125u64).filter(|x| x * x % 125 == 101).collect();
        assert_eq!(roots, vec![51, 74]);
        assert_eq!(hensel_lift_sqrt(101, 5, 3).unwrap(), Some(51));
        // legendre(2, 5) = -1, so there is nothing to lift.
        assert_eq!(hensel_lift_sqrt(2, 5, 2).unwrap(), None);
    }

    #[test]
    fn hensel_lift_rejects_non_units() {
        assert_eq!(
            hensel_lift_sqrt(5, 5, 2),
            Err(Error::NotUnit { value: 5, prime: 5 })
        );
        assert_eq!(hensel_lift_sqrt(1, 5, 0), Err(Error::UnsupportedExponent { base: 5, exponent: 0 }));
    }

    #[test]
    fn crt_combine_examples() {
        let sys = CongruenceSystem::new([(1, 2), (2, 5)]).unwrap();
        assert_eq!(crt_combine(&sys).unwrap(), (7, 10));

        let single = CongruenceSystem::new([(3, 4)]).unwrap();
        assert_eq!(crt_combine(&single).unwrap(), (3, 4));

        let sys = CongruenceSystem::new([(0, 2), (4, 5), (1, 3)]).unwrap();
        let (c, m) = crt_combine(&sys).unwrap();
        assert_eq!((c, m), (4, 30));
        assert_eq!(c % 2, 0);
        assert_eq!(c % 5, 4);
        assert_eq!(c % 3, 1);
    }

    #[test]
    fn crt_rejects_bad_systems() {
        assert_eq!(
            CongruenceSystem::new([(1, 4), (1, 6)]),
            Err(Error::NonCoprimeModuli(4, 6))
        );
        assert_eq!(CongruenceSystem::new([(0, 1)]), Err(Error::ModulusTooSmall(1)));
        let empty = CongruenceSystem::new([]).unwrap();
        assert_eq!(crt_combine(&empty), Err(Error::EmptySystem));
    }
}
