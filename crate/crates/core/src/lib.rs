//! Sums of two squares in the ring of integers mod n.
//!
//! The crate answers two families of questions, both exactly and
//! constructively:
//!
//! * over the integers — which z are sums of two (nonzero) squares, and how
//!   to write them that way ([`integer`]);
//! * mod n — for which n *every* residue is a sum of two (nonzero) squares,
//!   and how to produce a witness pair for a given (z, n) ([`modular`]).
//!
//! [`arithmetic`] carries the shared primitives (factorization, exact
//! primality, Legendre symbols, Tonelli-Shanks, Hensel lifting, CRT), and
//! [`oracle`] re-derives every claim by brute force so the algebraic paths
//! can be cross-checked at desk scale.

// `z % p == 0` and `(q + 1) / 2` are the house style for divisibility and
// exponent arithmetic here.
#![allow(clippy::manual_is_multiple_of, clippy::manual_div_ceil)]

pub mod arithmetic;
mod error;
pub mod integer;
pub mod modular;
pub mod oracle;

pub use arithmetic::{
    crt_combine, factorize, hensel_lift_sqrt, is_prime, legendre, sqrt_mod_prime,
    CongruenceSystem, Factorization, MAX_VALUE,
};
pub use error::Error;
pub use integer::{
    compose, decompose_any, decompose_prime, decompose_prime_power, is_hypotenuse_criterion,
    is_sum_of_two_nonzero_squares, is_sum_of_two_squares, triple_from_params, SquareDecomposition,
    TripleParams,
};
pub use modular::{
    classify, residue_pair_for_nonsquare, solve, solve_five_power, solve_prime_power, squares_mod,
    universal_moduli, ClassificationReport, ResidueSet, SquarePair, EXHAUSTIVE_SOLVE_LIMIT,
};
pub use oracle::{
    oracle_integer_decompose, oracle_scan, oracle_universal, OracleVerdict, ORACLE_INTEGER_LIMIT,
    ORACLE_MODULUS_LIMIT,
};
