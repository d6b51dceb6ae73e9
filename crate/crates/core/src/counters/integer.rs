//! The conventional counter: integers under addition, negative set ℤ⁻.
//!
//! Generators are positive integers (the classic counter has the single
//! generator 1); positivity keeps the positive and inverse closures
//! disjoint.

use num_bigint::BigInt;

use crate::counter::CounterError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSpec {
    generators: Vec<BigInt>,
}

impl IntegerSpec {
    pub fn new(generators: Vec<BigInt>) -> Result<Self, CounterError> {
        if generators.is_empty() {
            return Err(CounterError::NoGenerators);
        }
        Ok(IntegerSpec { generators })
    }

    /// The classic counter over {1}.
    pub fn conventional() -> Self {
        IntegerSpec { generators: vec![BigInt::from(1)] }
    }

    pub fn generators(&self) -> &[BigInt] {
        &self.generators
    }
}
