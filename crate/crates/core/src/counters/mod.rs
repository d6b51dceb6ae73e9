//! Concrete counter instantiations: the integer counter, the real counter
//! over square roots of distinct primes, and the invertible-matrix counter.

pub mod integer;
pub mod matrix;
pub mod real;

pub use integer::IntegerSpec;
pub use matrix::{frobenius_norm_sq, matrix_inverse, matrix_is_negative, MatrixSpec, RationalMatrix};
pub use real::{is_prime, real_is_negative, real_sign, RealSqrtSpec, SignVerdict};
