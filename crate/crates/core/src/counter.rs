//! The generalized-counter contract shared by every counter kind.
//!
//! A counter is a group together with a finite generating set and a
//! decidable "negative" region. The stored value starts at the group
//! identity; each step may left-apply one generator (increment), one
//! generator inverse (decrement), or nothing. The finite control can learn
//! at most one bit about the value — identity or not — and partially blind
//! machines additionally crash if the value ever enters the negative
//! region.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, so the identity and negativity tests are decisions rather
//! than approximations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::counters::{
    matrix_is_negative, real_is_negative, real_sign, IntegerSpec, MatrixSpec, RationalMatrix,
    RealSqrtSpec, SignVerdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CounterError {
    #[error("counter has no generators")]
    NoGenerators,
    #[error("real counter has an empty prime basis")]
    EmptyBasis,
    #[error("matrix counter dimension must be positive")]
    EmptyMatrix,
    #[error("generator coefficient vector has length {got}, expected {expected}")]
    CoefficientLength { expected: usize, got: usize },
    #[error("matrix has {got} entries, expected {expected}")]
    MatrixShape { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("generator index {index} out of range ({count} generators)")]
    GeneratorIndex { index: usize, count: usize },
    #[error("counter value does not match the counter kind")]
    KindMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CounterKind {
    Integer,
    RealSqrt,
    Matrix,
}

impl fmt::Display for CounterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CounterKind::Integer => "integer",
            CounterKind::RealSqrt => "real-sqrt",
            CounterKind::Matrix => "matrix",
        })
    }
}

/// A counter instantiation: its kind, generating set, and (implicitly by
/// kind) the negative-region membership rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CounterSpec {
    Integer(IntegerSpec),
    RealSqrt(RealSqrtSpec),
    Matrix(MatrixSpec),
}

/// One element of the carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CounterValue {
    Integer(BigInt),
    RealSqrt(Vec<BigInt>),
    Matrix(RationalMatrix),
}

impl CounterValue {
    pub fn kind(&self) -> CounterKind {
        match self {
            CounterValue::Integer(_) => CounterKind::Integer,
            CounterValue::RealSqrt(_) => CounterKind::RealSqrt,
            CounterValue::Matrix(_) => CounterKind::Matrix,
        }
    }
}

/// One counter action: apply a generator, a generator inverse, or nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CounterOp {
    Noop,
    Increment(usize),
    Decrement(usize),
}

/// Whether an op moves the counter in generator or inverse direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpDirection {
    Incrementing,
    Decrementing,
}

impl CounterOp {
    pub fn direction(&self) -> Option<OpDirection> {
        match self {
            CounterOp::Noop => None,
            CounterOp::Increment(_) => Some(OpDirection::Incrementing),
            CounterOp::Decrement(_) => Some(OpDirection::Decrementing),
        }
    }

    pub fn generator(&self) -> Option<usize> {
        match self {
            CounterOp::Noop => None,
            CounterOp::Increment(i) | CounterOp::Decrement(i) => Some(*i),
        }
    }

    /// The group inverse: increment and decrement swap, noop stays.
    pub fn inverse(self) -> CounterOp {
        match self {
            CounterOp::Noop => CounterOp::Noop,
            CounterOp::Increment(i) => CounterOp::Decrement(i),
            CounterOp::Decrement(i) => CounterOp::Increment(i),
        }
    }
}

impl fmt::Display for CounterOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CounterOp::Noop => f.write_str("noop"),
            CounterOp::Increment(i) => write!(f, "inc:{i}"),
            CounterOp::Decrement(i) => write!(f, "dec:{i}"),
        }
    }
}

impl CounterSpec {
    pub fn kind(&self) -> CounterKind {
        match self {
            CounterSpec::Integer(_) => CounterKind::Integer,
            CounterSpec::RealSqrt(_) => CounterKind::RealSqrt,
            CounterSpec::Matrix(_) => CounterKind::Matrix,
        }
    }

    pub fn generator_count(&self) -> usize {
        match self {
            CounterSpec::Integer(s) => s.generators().len(),
            CounterSpec::RealSqrt(s) => s.generators().len(),
            CounterSpec::Matrix(s) => s.generators().len(),
        }
    }

    /// The group identity: integer 0, the all-zero coefficient vector, or
    /// the identity matrix.
    pub fn identity(&self) -> CounterValue {
        match self {
            CounterSpec::Integer(_) => CounterValue::Integer(BigInt::zero()),
            CounterSpec::RealSqrt(s) => {
                CounterValue::RealSqrt(vec![BigInt::zero(); s.basis_len()])
            }
            CounterSpec::Matrix(s) => {
                CounterValue::Matrix(RationalMatrix::identity(s.dimension()))
            }
        }
    }

    /// Applies one op to a value, returning the new value. Matrix
    /// generators act as left operands. The input is never mutated.
    pub fn apply(&self, value: &CounterValue, op: CounterOp) -> Result<CounterValue, CounterError> {
        let (index, incrementing) = match op {
            CounterOp::Noop => return Ok(value.clone()),
            CounterOp::Increment(i) => (i, true),
            CounterOp::Decrement(i) => (i, false),
        };
        let count = self.generator_count();
        if index >= count {
            return Err(CounterError::GeneratorIndex { index, count });
        }
        match (self, value) {
            (CounterSpec::Integer(s), CounterValue::Integer(v)) => {
                let g = &s.generators()[index];
                Ok(CounterValue::Integer(if incrementing { v + g } else { v - g }))
            }
            (CounterSpec::RealSqrt(s), CounterValue::RealSqrt(v)) => {
                if v.len() != s.basis_len() {
                    return Err(CounterError::CoefficientLength {
                        expected: s.basis_len(),
                        got: v.len(),
                    });
                }
                let g = &s.generators()[index];
                let next = v
                    .iter()
                    .zip(g)
                    .map(|(a, b)| if incrementing { a + b } else { a - b })
                    .collect();
                Ok(CounterValue::RealSqrt(next))
            }
            (CounterSpec::Matrix(s), CounterValue::Matrix(v)) => {
                if v.dim() != s.dimension() {
                    return Err(CounterError::MatrixShape {
                        expected: s.dimension() * s.dimension(),
                        got: v.dim() * v.dim(),
                    });
                }
                let factor = if incrementing {
                    s.generators()[index].clone()
                } else {
                    s.inverses()?[index].clone()
                };
                Ok(CounterValue::Matrix(factor.mul(v)))
            }
            _ => Err(CounterError::KindMismatch),
        }
    }

    /// Exact identity test — the one bit the finite control may see.
    ///
    /// Panics if the value does not conform to this spec's kind.
    pub fn is_identity(&self, value: &CounterValue) -> bool {
        match (self, value) {
            (CounterSpec::Integer(_), CounterValue::Integer(v)) => v.is_zero(),
            (CounterSpec::RealSqrt(_), CounterValue::RealSqrt(v)) => {
                v.iter().all(Zero::is_zero)
            }
            (CounterSpec::Matrix(_), CounterValue::Matrix(v)) => v.is_identity(),
            _ => panic!("counter value kind does not match spec"),
        }
    }

    /// Membership in the counter's negative region.
    ///
    /// Panics if the value does not conform to this spec's kind.
    pub fn is_negative(&self, value: &CounterValue) -> bool {
        match (self, value) {
            (CounterSpec::Integer(_), CounterValue::Integer(v)) => v.is_negative(),
            (CounterSpec::RealSqrt(s), CounterValue::RealSqrt(v)) => real_is_negative(s, v),
            (CounterSpec::Matrix(s), CounterValue::Matrix(v)) => matrix_is_negative(s, v),
            _ => panic!("counter value kind does not match spec"),
        }
    }

    /// Semantic validation findings. Structural shape (lengths, dimensions)
    /// is enforced by the constructors; this reports everything else.
    pub fn validate(&self) -> Vec<CounterFinding> {
        let mut findings = Vec::new();
        match self {
            CounterSpec::Integer(s) => {
                for (i, g) in s.generators().iter().enumerate() {
                    if !g.is_positive() {
                        findings.push(CounterFinding::NonPositiveGenerator { index: i });
                    }
                }
            }
            CounterSpec::RealSqrt(s) => {
                for (i, &p) in s.primes().iter().enumerate() {
                    if !crate::counters::is_prime(p) {
                        findings.push(CounterFinding::NotPrime { index: i, value: p });
                    }
                    if s.primes()[..i].contains(&p) {
                        findings.push(CounterFinding::DuplicatePrime { value: p });
                    }
                }
                // Sign determination only terminates over distinct genuine
                // primes; skip it when the basis is already bad.
                let basis_ok = findings.is_empty();
                for (i, g) in s.generators().iter().enumerate() {
                    if g.iter().all(Zero::is_zero) {
                        findings.push(CounterFinding::ZeroGenerator { index: i });
                    } else if basis_ok && real_sign(s.primes(), g) != SignVerdict::Positive {
                        findings.push(CounterFinding::NonPositiveGenerator { index: i });
                    }
                }
            }
            CounterSpec::Matrix(s) => {
                for (i, g) in s.generators().iter().enumerate() {
                    if g.determinant().is_zero() {
                        findings.push(CounterFinding::SingularGenerator { index: i });
                    }
                }
                if findings.is_empty() {
                    for (word_pos, word_inv) in
                        matrix_closure_collisions(s, DEFAULT_COLLISION_DEPTH)
                    {
                        findings.push(CounterFinding::ClosureCollision { word_pos, word_inv });
                    }
                }
            }
        }
        findings
    }
}

/// Search depth for the positive/inverse closure intersection diagnostic.
pub const DEFAULT_COLLISION_DEPTH: usize = 6;

/// Bounded-depth search for elements reachable both as a product of
/// generators and as a product of inverses. Finding a collision proves the
/// generating set invalid; finding none proves nothing (the intersection
/// problem is not decidable in general). Words are reported as generator
/// index sequences, leftmost factor first.
pub fn matrix_closure_collisions(
    spec: &MatrixSpec,
    depth: usize,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let inverses = match spec.inverses() {
        Ok(inv) => inv.to_vec(),
        Err(_) => return Vec::new(),
    };
    let positive = enumerate_products(spec.generators(), depth);
    let inverse = enumerate_products(&inverses, depth);
    let mut collisions = Vec::new();
    for (key, word_pos) in &positive {
        if let Some(word_inv) = inverse.get(key) {
            collisions.push((word_pos.clone(), word_inv.clone()));
        }
    }
    collisions.sort();
    collisions
}

type MatrixKey = (Vec<BigInt>, BigInt);

fn enumerate_products(
    factors: &[RationalMatrix],
    depth: usize,
) -> BTreeMap<MatrixKey, Vec<usize>> {
    let dim = factors.first().map(|m| m.dim()).unwrap_or(1);
    let mut found = BTreeMap::new();
    let mut frontier = vec![(RationalMatrix::identity(dim), Vec::new())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (value, word) in &frontier {
            for (i, f) in factors.iter().enumerate() {
                let product = f.mul(value);
                let mut w = word.clone();
                w.insert(0, i);
                found.entry(product.canonical_key()).or_insert_with(|| w.clone());
                next.push((product, w));
            }
        }
        frontier = next;
    }
    found
}

/// Tracks switches between increment and decrement mode over a run.
///
/// The first non-noop op sets the mode without counting; each subsequent
/// mode flip counts one reversal; noop never changes anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReversalTracker {
    mode: Option<OpDirection>,
    count: u64,
}

impl ReversalTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, op: CounterOp) {
        if let Some(dir) = op.direction() {
            if let Some(mode) = self.mode {
                if mode != dir {
                    self.count += 1;
                }
            }
            self.mode = Some(dir);
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mode(&self) -> Option<OpDirection> {
        self.mode
    }
}

/// A semantic problem with a counter spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CounterFinding {
    NotPrime { index: usize, value: u64 },
    DuplicatePrime { value: u64 },
    ZeroGenerator { index: usize },
    NonPositiveGenerator { index: usize },
    SingularGenerator { index: usize },
    ClosureCollision { word_pos: Vec<usize>, word_inv: Vec<usize> },
}

impl fmt::Display for CounterFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CounterFinding::NotPrime { index, value } => {
                write!(f, "basis entry {index} is not prime: {value}")
            }
            CounterFinding::DuplicatePrime { value } => {
                write!(f, "duplicate prime in basis: {value}")
            }
            CounterFinding::ZeroGenerator { index } => {
                write!(f, "generator {index} is the zero vector")
            }
            CounterFinding::NonPositiveGenerator { index } => {
                write!(f, "generator {index} does not denote a positive element")
            }
            CounterFinding::SingularGenerator { index } => {
                write!(f, "generator {index} is singular")
            }
            CounterFinding::ClosureCollision { word_pos, word_inv } => {
                write!(
                    f,
                    "generator word {word_pos:?} equals inverse word {word_inv:?}"
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn int_spec() -> CounterSpec {
        CounterSpec::Integer(IntegerSpec::conventional())
    }

    fn real_spec() -> CounterSpec {
        CounterSpec::RealSqrt(
            RealSqrtSpec::new(
                vec![2, 3],
                vec![
                    vec![BigInt::from(1), BigInt::from(0)],
                    vec![BigInt::from(0), BigInt::from(1)],
                ],
            )
            .unwrap(),
        )
    }

    fn aw_a() -> RationalMatrix {
        RationalMatrix::from_integer_rows(&[&[4, 3, 0], &[-3, 4, 0], &[0, 0, 5]])
    }

    fn aw_b() -> RationalMatrix {
        RationalMatrix::from_integer_rows(&[&[4, 0, 3], &[0, 5, 0], &[-3, 0, 4]])
    }

    fn matrix_spec() -> CounterSpec {
        CounterSpec::Matrix(MatrixSpec::new(3, vec![aw_a(), aw_b()]).unwrap())
    }

    #[test]
    fn identity_for_each_kind() {
        assert_eq!(int_spec().identity(), CounterValue::Integer(BigInt::zero()));
        assert_eq!(
            real_spec().identity(),
            CounterValue::RealSqrt(vec![BigInt::zero(), BigInt::zero()])
        );
        assert_eq!(
            matrix_spec().identity(),
            CounterValue::Matrix(RationalMatrix::identity(3))
        );
        for spec in [int_spec(), real_spec(), matrix_spec()] {
            assert!(spec.is_identity(&spec.identity()));
        }
    }

    #[test]
    fn apply_each_kind() {
        let spec = int_spec();
        let v = spec
            .apply(&CounterValue::Integer(BigInt::from(2)), CounterOp::Increment(0))
            .unwrap();
        assert_eq!(v, CounterValue::Integer(BigInt::from(3)));

        let spec = real_spec();
        let v = spec
            .apply(
                &CounterValue::RealSqrt(vec![BigInt::from(1), BigInt::from(0)]),
                CounterOp::Decrement(1),
            )
            .unwrap();
        assert_eq!(v, CounterValue::RealSqrt(vec![BigInt::from(1), BigInt::from(-1)]));

        let spec = matrix_spec();
        let v = spec.apply(&spec.identity(), CounterOp::Increment(0)).unwrap();
        assert_eq!(v, CounterValue::Matrix(aw_a()));
    }

    #[test]
    fn noop_returns_value_unchanged() {
        for spec in [int_spec(), real_spec(), matrix_spec()] {
            let v = spec.apply(&spec.identity(), CounterOp::Increment(0)).unwrap();
            assert_eq!(spec.apply(&v, CounterOp::Noop).unwrap(), v);
        }
    }

    #[test]
    fn generator_index_is_checked() {
        let err = int_spec().apply(&int_spec().identity(), CounterOp::Increment(3));
        assert_eq!(err, Err(CounterError::GeneratorIndex { index: 3, count: 1 }));
    }

    #[test]
    fn identity_test_is_exact() {
        assert!(int_spec().is_identity(&CounterValue::Integer(BigInt::zero())));
        assert!(!real_spec()
            .is_identity(&CounterValue::RealSqrt(vec![BigInt::from(2), BigInt::from(-2)])));

        // A * A^-1 computed in exact rationals lands exactly on the identity.
        let product = aw_a().mul(&aw_a().inverse().unwrap());
        assert!(matrix_spec().is_identity(&CounterValue::Matrix(product)));
    }

    #[test]
    fn negativity_for_each_kind() {
        assert!(int_spec().is_negative(&CounterValue::Integer(BigInt::from(-1))));
        assert!(real_spec()
            .is_negative(&CounterValue::RealSqrt(vec![BigInt::from(1), BigInt::from(-1)])));
        // Frobenius norm^2 of the first word generator is 75, well above 1.
        assert!(!matrix_spec().is_negative(&CounterValue::Matrix(aw_a())));
    }

    #[test]
    fn reversal_tracker_counts_mode_switches() {
        let mut t = ReversalTracker::new();
        t.record(CounterOp::Increment(0));
        assert_eq!((t.mode(), t.count()), (Some(OpDirection::Incrementing), 0));
        t.record(CounterOp::Decrement(0));
        assert_eq!((t.mode(), t.count()), (Some(OpDirection::Decrementing), 1));
        t.record(CounterOp::Noop);
        assert_eq!((t.mode(), t.count()), (Some(OpDirection::Decrementing), 1));
    }

    #[test]
    fn validation_reports_bad_real_bases() {
        let spec = CounterSpec::RealSqrt(
            RealSqrtSpec::new(vec![2, 4], vec![vec![BigInt::from(1), BigInt::from(0)]]).unwrap(),
        );
        assert!(spec
            .validate()
            .iter()
            .any(|f| matches!(f, CounterFinding::NotPrime { index: 1, value: 4 })));

        let spec = CounterSpec::RealSqrt(
            RealSqrtSpec::new(vec![2, 2], vec![vec![BigInt::from(1), BigInt::from(0)]]).unwrap(),
        );
        assert!(spec
            .validate()
            .iter()
            .any(|f| matches!(f, CounterFinding::DuplicatePrime { value: 2 })));

        let spec = CounterSpec::RealSqrt(
            RealSqrtSpec::new(
                vec![2, 3],
                vec![vec![BigInt::zero(), BigInt::zero()], vec![BigInt::from(1), BigInt::from(-1)]],
            )
            .unwrap(),
        );
        let findings = spec.validate();
        assert!(findings.iter().any(|f| matches!(f, CounterFinding::ZeroGenerator { index: 0 })));
        assert!(findings
            .iter()
            .any(|f| matches!(f, CounterFinding::NonPositiveGenerator { index: 1 })));
    }

    #[test]
    fn validation_reports_singular_matrix_generators() {
        let spec = CounterSpec::Matrix(
            MatrixSpec::new(2, vec![RationalMatrix::from_integer_rows(&[&[1, 0], &[2, 0]])])
                .unwrap(),
        );
        assert!(spec
            .validate()
            .iter()
            .any(|f| matches!(f, CounterFinding::SingularGenerator { index: 0 })));
    }

    #[test]
    fn valid_specs_have_no_findings() {
        assert!(int_spec().validate().is_empty());
        assert!(real_spec().validate().is_empty());
        assert!(matrix_spec().validate().is_empty());
    }

    #[test]
    fn closure_collision_search_finds_involutions() {
        // The 1x1 generator [-1] is its own inverse, so depth-1 words
        // already collide.
        let minus_one = RationalMatrix::scalar(BigRational::from_integer(BigInt::from(-1)));
        let spec = MatrixSpec::new(1, vec![minus_one]).unwrap();
        let collisions = matrix_closure_collisions(&spec, 3);
        assert!(!collisions.is_empty());
        assert!(collisions.contains(&(vec![0], vec![0])));
    }
}
