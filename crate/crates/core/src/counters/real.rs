//! The real counter: integer combinations of square roots of distinct
//! primes, under addition.
//!
//! A value is stored symbolically as its integer coefficient vector over the
//! basis √p₁..√p_k. Because square roots of distinct primes admit no
//! nontrivial rational linear combination equal to zero, the identity test
//! is a plain all-zero check on the coefficients.
//!
//! Only the *sign* of a value needs numeric work. [`real_sign`] evaluates
//! the combination with outward-rounded interval enclosures of each √p
//! (floor square roots at a given number of fractional bits), doubling the
//! precision until the interval excludes zero. A nonzero coefficient vector
//! denotes a nonzero real, so the refinement terminates.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;

use crate::counter::CounterError;

/// Exact sign of an integer combination of square roots of primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVerdict {
    Negative,
    Zero,
    Positive,
}

/// A real counter over √p₁..√p_k. Each generator is a coefficient vector
/// denoting Σᵢ cᵢ·√pᵢ; valid generators denote positive reals, which keeps
/// the positive and negative closures disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealSqrtSpec {
    primes: Vec<u64>,
    generators: Vec<Vec<BigInt>>,
}

impl RealSqrtSpec {
    pub fn new(primes: Vec<u64>, generators: Vec<Vec<BigInt>>) -> Result<Self, CounterError> {
        if primes.is_empty() {
            return Err(CounterError::EmptyBasis);
        }
        if generators.is_empty() {
            return Err(CounterError::NoGenerators);
        }
        if let Some(g) = generators.iter().find(|g| g.len() != primes.len()) {
            return Err(CounterError::CoefficientLength { expected: primes.len(), got: g.len() });
        }
        Ok(RealSqrtSpec { primes, generators })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn basis_len(&self) -> usize {
        self.primes.len()
    }
}

/// Trial-division primality check; basis sizes are tiny constants.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

static SQRT_ENCLOSURES: Lazy<Mutex<HashMap<(u64, u32), BigInt>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Floor of √p scaled by 2^bits; the enclosure for √p·2^bits is [lo, lo+1].
fn sqrt_floor_scaled(p: u64, bits: u32) -> BigInt {
    let mut cache = SQRT_ENCLOSURES.lock().unwrap();
    cache
        .entry((p, bits))
        .or_insert_with(|| (BigInt::from(p) << (2 * bits)).sqrt())
        .clone()
}

const INITIAL_FRACTION_BITS: u32 = 64;

/// Exact sign of Σᵢ coeffs[i]·√primes[i].
///
/// All-zero coefficients give [`SignVerdict::Zero`] immediately; otherwise
/// interval refinement is certain to separate the value from zero.
pub fn real_sign(primes: &[u64], coeffs: &[BigInt]) -> SignVerdict {
    assert_eq!(primes.len(), coeffs.len(), "coefficient length mismatch");
    if coeffs.iter().all(Zero::is_zero) {
        return SignVerdict::Zero;
    }
    // Fast path: a one-sided coefficient vector has the sign of its nonzero
    // entries, since every √p is positive.
    if coeffs.iter().all(|c| !c.is_negative()) {
        return SignVerdict::Positive;
    }
    if coeffs.iter().all(|c| !c.is_positive()) {
        return SignVerdict::Negative;
    }

    let mut bits = INITIAL_FRACTION_BITS;
    loop {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (&p, c) in primes.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let root_lo = sqrt_floor_scaled(p, bits);
            let root_hi = &root_lo + 1;
            if c.is_positive() {
                lo += c * root_lo;
                hi += c * root_hi;
            } else {
                lo += c * root_hi;
                hi += c * root_lo;
            }
        }
        if lo.is_positive() {
            return SignVerdict::Positive;
        }
        if hi.is_negative() {
            return SignVerdict::Negative;
        }
        bits *= 2;
    }
}

/// Membership in the real counter's negative set.
pub fn real_is_negative(spec: &RealSqrtSpec, value: &[BigInt]) -> bool {
    real_sign(spec.primes(), value) == SignVerdict::Negative
}
