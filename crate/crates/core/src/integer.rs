//! Two-square representability over the integers: criterion tests,
//! constructive decompositions and the Pythagorean-triple parametrization.

use serde::Serialize;

use crate::arithmetic::{factorize, gcd, is_prime, sqrt_mod_prime, MAX_VALUE};
use crate::Error;

/// A witness a^2 + b^2 = target with the canonical ordering a ≤ b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquareDecomposition {
    target: u64,
    a: u64,
    b: u64,
}

impl SquareDecomposition {
    /// Build a decomposition from its two legs; the target is computed, the
    /// legs are put in canonical order.
    pub fn new(a: u64, b: u64) -> Result<Self, Error> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let target = a
            .checked_mul(a)
            .zip(b.checked_mul(b))
            .and_then(|(x, y)| x.checked_add(y))
            .filter(|&t| t <= MAX_VALUE)
            .ok_or(Error::Overflow)?;
        Ok(Self { target, a, b })
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn has_zero_leg(&self) -> bool {
        self.a == 0
    }
}

/// Parameters (u, v, k) with u > v > 0 of opposite parity, gcd(u, v) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TripleParams {
    u: u64,
    v: u64,
    k: u64,
}

impl TripleParams {
    pub fn new(u: u64, v: u64, k: u64) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::InvalidTripleParams("k must be positive"));
        }
        if v == 0 || u <= v {
            return Err(Error::InvalidTripleParams("u > v > 0 is required"));
        }
        if (u + v) % 2 == 0 {
            return Err(Error::InvalidTripleParams(
                "u and v must have opposite parity",
            ));
        }
        if gcd(u, v) != 1 {
            return Err(Error::InvalidTripleParams("u and v must be coprime"));
        }
        Ok(Self { u, v, k })
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn k(&self) -> u64 {
        self.k
    }
}

/// Every prime factor q ≡ 3 (mod 4) must occur to an even power.
pub fn is_sum_of_two_squares(z: u64) -> bool {
    if z == 0 {
        return true;
    }
    let fact = factorize(z).expect("value within supported range");
    fact.factors().iter().all(|&(p, e)| p % 4 != 3 || e % 2 == 0)
}

/// As above, plus: a perfect square qualifies only when some prime
/// p ≡ 1 (mod 4) divides it. By convention 0 and 1 do not qualify.
pub fn is_sum_of_two_nonzero_squares(z: u64) -> bool {
    if z == 0 {
        return false;
    }
    let fact = factorize(z).expect("value within supported range");
    if !fact.factors().iter().all(|&(p, e)| p % 4 != 3 || e % 2 == 0) {
        return false;
    }
    !fact.is_perfect_square() || fact.factors().iter().any(|&(p, _)| p % 4 == 1)
}

/// For a perfect square z, decide whether √z = (u^2 + v^2)k for admissible
/// (u, v, k), i.e. whether √z is the hypotenuse of some Pythagorean triple.
pub fn is_hypotenuse_criterion(z: u64) -> Result<bool, Error> {
    if z == 0 {
        return Err(Error::OutOfRange(0));
    }
    let c = z.isqrt();
    if c * c != z {
        return Err(Error::NotPerfectSquare(z));
    }
    let mut u = 2u64;
    while u * u < c {
        for v in 1..u {
            let s = u * u + v * v;
            if s > c {
                break;
            }
            if (u + v) % 2 == 1 && gcd(u, v) == 1 && c % s == 0 {
                return Ok(true);
            }
        }
        u += 1;
    }
    Ok(false)
}

/// Multiply two decompositions via (ac - bd)^2 + (ad + bc)^2 = z1 z2.
pub fn compose(
    d1: &SquareDecomposition,
    d2: &SquareDecomposition,
) -> Result<SquareDecomposition, Error> {
    d1.target
        .checked_mul(d2.target)
        .filter(|&t| t <= MAX_VALUE)
        .ok_or(Error::Overflow)?;
    let (a, b) = (d1.a as u128, d1.b as u128);
    let (c, d) = (d2.a as u128, d2.b as u128);
    let first = (a * c).abs_diff(b * d);
    let second = a * d + b * c;
    SquareDecomposition::new(first as u64, second as u64)
}

/// The conjugate product (ac + bd)^2 + (ad - bc)^2 reaches the same target;
/// used where one variant would zero out a leg.
fn compose_preferring_nonzero(
    d1: &SquareDecomposition,
    d2: &SquareDecomposition,
) -> Result<SquareDecomposition, Error> {
    let direct = compose(d1, d2)?;
    if !direct.has_zero_leg() {
        return Ok(direct);
    }
    let (a, b) = (d1.a as u128, d1.b as u128);
    let (c, d) = (d2.a as u128, d2.b as u128);
    let conjugate =
        SquareDecomposition::new((a * c + b * d) as u64, (a * d).abs_diff(b * c) as u64)?;
    if conjugate.has_zero_leg() {
        Ok(direct)
    } else {
        Ok(conjugate)
    }
}

/// Write a prime p ≡ 1 (mod 4) as c^2 + d^2 with 0 < c < d. Brute force
/// below 10^6, Cornacchia seeded by a square root of -1 above.
pub fn decompose_prime(p: u64) -> Result<SquareDecomposition, Error> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(Error::NotPrimeOneMod4(p));
    }
    if p < 1_000_000 {
        let mut c = 1u64;
        while 2 * c * c <= p {
            let rest = p - c * c;
            let d = rest.isqrt();
            if d * d == rest {
                return SquareDecomposition::new(c, d);
            }
            c += 1;
        }
        unreachable!("every prime ≡ 1 (mod 4) splits as two squares");
    }
    let root = sqrt_mod_prime(p - 1, p)?.expect("-1 is a residue mod p ≡ 1 (mod 4)");
    let mut a = p;
    let mut b = root.max(p - root);
    while (b as u128) * (b as u128) > p as u128 {
        (a, b) = (b, a % b);
    }
    let rest = p - b * b;
    let d = rest.isqrt();
    debug_assert_eq!(d * d, rest, "Cornacchia residual must be a square");
    SquareDecomposition::new(b, d)
}

/// Write p^a as a sum of two nonzero squares, p ≡ 1 (mod 4).
///
/// Even exponents scale the (d^2 - c^2, 2cd) split of p^2; odd exponents
/// fold the prime decomposition in repeatedly, taking the conjugate product
/// whenever the direct one would produce a zero leg.
pub fn decompose_prime_power(p: u64, a: u32) -> Result<SquareDecomposition, Error> {
    if a == 0 {
        return Err(Error::UnsupportedExponent { base: p, exponent: 0 });
    }
    let base = decompose_prime(p)?;
    if a == 1 {
        return Ok(base);
    }
    p.checked_pow(a)
        .filter(|&v| v <= MAX_VALUE)
        .ok_or(Error::Overflow)?;
    if a % 2 == 0 {
        let (c, d) = (base.a, base.b);
        let scale = p.pow((a - 2) / 2);
        let x = scale.checked_mul(d * d - c * c).ok_or(Error::Overflow)?;
        let y = scale.checked_mul(2 * c * d).ok_or(Error::Overflow)?;
        let dec = SquareDecomposition::new(x, y)?;
        debug_assert_eq!(dec.target(), p.pow(a));
        Ok(dec)
    } else {
        let mut acc = base;
        for _ in 1..a {
            acc = compose_preferring_nonzero(&acc, &base)?;
        }
        debug_assert!(!acc.has_zero_leg());
        debug_assert_eq!(acc.target(), p.pow(a));
        Ok(acc)
    }
}

/// Constructive decomposition of any representable z, or `None` exactly when
/// the matching criterion fails. Prime powers ≡ 1 (mod 4) and a stray factor
/// of 2 are folded multiplicatively; the q ≡ 3 (mod 4) part and leftover
/// even powers scale both legs.
pub fn decompose_any(z: u64, require_nonzero: bool) -> Option<SquareDecomposition> {
    if z == 0 {
        return if require_nonzero {
            None
        } else {
            Some(SquareDecomposition::new(0, 0).unwrap())
        };
    }
    let representable = if require_nonzero {
        is_sum_of_two_nonzero_squares(z)
    } else {
        is_sum_of_two_squares(z)
    };
    if !representable {
        return None;
    }
    let fact = factorize(z).expect("value within supported range");
    let mut square_scale = 1u64;
    let mut acc: Option<SquareDecomposition> = None;
    let fold = |acc: &mut Option<SquareDecomposition>, dec: SquareDecomposition| {
        *acc = Some(match acc.take() {
            None => dec,
            Some(prev) => {
                compose_preferring_nonzero(&prev, &dec).expect("product stays within range")
            }
        });
    };
    for &(p, e) in fact.factors() {
        if p == 2 {
            square_scale *= 2u64.pow(e / 2);
            if e % 2 == 1 {
                fold(&mut acc, SquareDecomposition::new(1, 1).unwrap());
            }
        } else if p % 4 == 1 {
            let dec = decompose_prime_power(p, e).expect("p ≡ 1 (mod 4) power splits");
            fold(&mut acc, dec);
        } else {
            square_scale *= p.pow(e / 2);
        }
    }
    let (a, b) = match acc {
        Some(dec) => (dec.a, dec.b),
        None => (0, 1),
    };
    let dec = SquareDecomposition::new(a * square_scale, b * square_scale)
        .expect("legs bounded by the original value");
    debug_assert_eq!(dec.target(), z);
    debug_assert!(!require_nonzero || dec.a() >= 1);
    Some(dec)
}

/// The triple ((u^2 - v^2)k, 2uvk, (u^2 + v^2)k).
pub fn triple_from_params(params: &TripleParams) -> Result<(u64, u64, u64), Error> {
    let (u, v, k) = (params.u, params.v, params.k);
    let uu = u.checked_mul(u).ok_or(Error::Overflow)?;
    let vv = v.checked_mul(v).ok_or(Error::Overflow)?;
    let a = (uu - vv).checked_mul(k).ok_or(Error::Overflow)?;
    let b = (2 * u)
        .checked_mul(v)
        .and_then(|t| t.checked_mul(k))
        .ok_or(Error::Overflow)?;
    let c = uu
        .checked_add(vv)
        .and_then(|t| t.checked_mul(k))
        .filter(|&t| t <= MAX_VALUE)
        .ok_or(Error::Overflow)?;
    debug_assert_eq!(
        a as u128 * a as u128 + b as u128 * b as u128,
        c as u128 * c as u128
    );
    Ok((a, b, c))
}
