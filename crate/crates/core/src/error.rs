use thiserror::Error;

/// Errors raised when an operation's domain preconditions fail.
///
/// "No root", "no solution" and "no decomposition" are ordinary values
/// (`None`), never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} is outside the supported range [1, 2^63 - 1]")]
    OutOfRange(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not a prime congruent to 1 mod 4")]
    NotPrimeOneMod4(u64),
    #[error("{0} is not a prime congruent to 3 mod 4")]
    NotPrimeThreeMod4(u64),
    #[error("{value} is divisible by {prime}; only units can be lifted")]
    NotUnit { value: u64, prime: u64 },
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(u64, u64),
    #[error("modulus {0} is smaller than 2")]
    ModulusTooSmall(u64),
    #[error("congruence system is empty")]
    EmptySystem,
    #[error("{0} is not a perfect square")]
    NotPerfectSquare(u64),
    #[error("intermediate product exceeds 2^63 - 1")]
    Overflow,
    #[error("invalid triple parameters: {0}")]
    InvalidTripleParams(&'static str),
    #[error("exponent {exponent} is not supported for base {base}")]
    UnsupportedExponent { base: u64, exponent: u32 },
    #[error("{z} is zero or a square modulo {p}; the residue-pair construction needs a non-residue")]
    NotNonResidue { z: u64, p: u64 },
    #[error("{0} exceeds the exhaustive-search bound")]
    AboveExhaustiveBound(u64),
}
