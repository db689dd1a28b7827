//! Brute-force ground truth. Everything here is a plain loop over exact
//! integers — no factorization, no Legendre symbols, no constructive
//! machinery — so it can stand as an independent check on the rest of the
//! crate. Deliberately naive; the cost bounds are hard errors.

use std::collections::BTreeSet;

use crate::integer::SquareDecomposition;
use crate::Error;

/// Largest modulus `oracle_scan` will accept (quadratic cost).
pub const ORACLE_MODULUS_LIMIT: u64 = 10_000;

/// Largest target `oracle_integer_decompose` will accept.
pub const ORACLE_INTEGER_LIMIT: u64 = 100_000_000;

/// Which residues mod n are sums of two squares, and which are sums of two
/// nonzero squares, found by enumerating every pair (x, y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    modulus: u64,
    representable: BTreeSet<u64>,
    nontrivially_representable: BTreeSet<u64>,
}

impl OracleVerdict {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn representable_residues(&self) -> &BTreeSet<u64> {
        &self.representable
    }

    pub fn nontrivially_representable_residues(&self) -> &BTreeSet<u64> {
        &self.nontrivially_representable
    }
}

/// Enumerate all pairs (x, y) in [0, n)^2.
pub fn oracle_scan(n: u64) -> Result<OracleVerdict, Error> {
    if n < 2 {
        return Err(Error::OutOfRange(n));
    }
    if n > ORACLE_MODULUS_LIMIT {
        return Err(Error::AboveExhaustiveBound(n));
    }
    let size = n as usize;
    let squares: Vec<u64> = (0..n).map(|x| x * x % n).collect();
    let mut representable = vec![false; size];
    let mut nontrivial = vec![false; size];
    for &x2 in &squares {
        for &y2 in &squares {
            let s = ((x2 + y2) % n) as usize;
            representable[s] = true;
            if x2 != 0 && y2 != 0 {
                nontrivial[s] = true;
            }
        }
    }
    let collect = |flags: Vec<bool>| {
        flags
            .into_iter()
            .enumerate()
            .filter_map(|(r, hit)| hit.then_some(r as u64))
            .collect::<BTreeSet<u64>>()
    };
    Ok(OracleVerdict {
        modulus: n,
        representable: collect(representable),
        nontrivially_representable: collect(nontrivial),
    })
}

/// True when every residue mod n is representable in the requested sense.
pub fn oracle_universal(n: u64, allow_zero: bool) -> Result<bool, Error> {
    let verdict = oracle_scan(n)?;
    let hits = if allow_zero {
        verdict.representable.len()
    } else {
        verdict.nontrivially_representable.len()
    };
    Ok(hits == n as usize)
}

/// First (a, b) with a^2 + b^2 = z, a ascending (a ≥ 1 when required), or
/// `None` when no such pair exists.
pub fn oracle_integer_decompose(
    z: u64,
    require_nonzero: bool,
) -> Result<Option<SquareDecomposition>, Error> {
    if z > ORACLE_INTEGER_LIMIT {
        return Err(Error::AboveExhaustiveBound(z));
    }
    let mut a = u64::from(require_nonzero);
    while 2 * a * a <= z {
        let rest = z - a * a;
        let b = rest.isqrt();
        if b * b == rest {
            return Ok(Some(
                SquareDecomposition::new(a, b).expect("within supported range"),
            ));
        }
        a += 1;
    }
    Ok(None)
}
