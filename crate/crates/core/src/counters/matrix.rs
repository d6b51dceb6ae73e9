//! Invertible matrices over exact rationals, and the matrix counter built
//! on them.
//!
//! A counter value is a square matrix with rational entries; applying a
//! generator left-multiplies the stored value. The "negative" region is the
//! set of matrices with Frobenius norm below one, tested exactly on the
//! squared norm.
//!
//! [`RationalMatrix`] keeps one shared denominator for the whole matrix
//! (entries are `num[i*dim+j] / den`). Left-multiplying an accumulated value
//! by a small generator then touches only machine-word-sized factors, and
//! the identity / norm tests reduce to integer comparisons, so hot loops
//! never compute a gcd. Entries are only reduced when rendered or when a
//! canonical key is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::OnceCell;

use crate::counter::CounterError;

/// A square matrix of exact rationals with a common positive denominator.
#[derive(Debug, Clone)]
pub struct RationalMatrix {
    dim: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl RationalMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut num = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            num[i * dim + i] = BigInt::one();
        }
        RationalMatrix { dim, num, den: BigInt::one() }
    }

    /// Builds a matrix from row-major integer rows.
    pub fn from_integer_rows(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must be square");
        let num = rows.iter().flat_map(|r| r.iter().map(|&v| BigInt::from(v))).collect();
        RationalMatrix { dim, num, den: BigInt::one() }
    }

    /// Builds a matrix from row-major rational entries.
    pub fn from_entries(dim: usize, entries: Vec<BigRational>) -> Result<Self, CounterError> {
        if dim == 0 {
            return Err(CounterError::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(CounterError::MatrixShape { expected: dim * dim, got: entries.len() });
        }
        let mut den = BigInt::one();
        for e in &entries {
            den = den.lcm(e.denom());
        }
        let num = entries.iter().map(|e| e.numer() * (&den / e.denom())).collect();
        Ok(RationalMatrix { dim, num, den })
    }

    /// 1x1 matrix holding an exact rational.
    pub fn scalar(value: BigRational) -> Self {
        RationalMatrix {
            dim: 1,
            num: vec![value.numer().clone()],
            den: value.denom().clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The entry at (row, col), reduced.
    pub fn entry(&self, row: usize, col: usize) -> BigRational {
        BigRational::new(self.num[row * self.dim + col].clone(), self.den.clone())
    }

    /// Row-major reduced entries.
    pub fn entries(&self) -> Vec<BigRational> {
        (0..self.dim * self.dim)
            .map(|i| BigRational::new(self.num[i].clone(), self.den.clone()))
            .collect()
    }

    /// Left product `self * rhs`. No reduction is performed; denominators
    /// grow multiplicatively, which stays small for the short generator
    /// words a machine run produces.
    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut num = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.num[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    num[i * d + j] += a * &rhs.num[k * d + j];
                }
            }
        }
        RationalMatrix { dim: d, num, den: &self.den * &rhs.den }
    }

    /// Exact `true` iff the matrix equals the identity.
    pub fn is_identity(&self) -> bool {
        let d = self.dim;
        self.num.iter().enumerate().all(|(idx, v)| {
            if idx / d == idx % d { *v == self.den } else { v.is_zero() }
        })
    }

    /// Squared Frobenius norm, exact.
    pub fn frobenius_norm_sq(&self) -> BigRational {
        let sum: BigInt = self.num.iter().map(|v| v * v).sum();
        BigRational::new(sum, &self.den * &self.den)
    }

    /// Exact determinant (Bareiss fraction-free elimination on the shared
    /// numerator, divided by den^dim).
    pub fn determinant(&self) -> BigRational {
        let d = self.dim;
        let mut m = self.num.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..d {
            if m[k * d + k].is_zero() {
                match (k + 1..d).find(|&r| !m[r * d + k].is_zero()) {
                    Some(r) => {
                        for c in 0..d {
                            m.swap(k * d + c, r * d + c);
                        }
                        sign = -sign;
                    }
                    None => return BigRational::zero(),
                }
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let v = (&m[i * d + j] * &m[k * d + k] - &m[i * d + k] * &m[k * d + j])
                        / &prev;
                    m[i * d + j] = v;
                }
                m[i * d + k] = BigInt::zero();
            }
            prev = m[k * d + k].clone();
        }
        let det = sign * m[(d - 1) * d + (d - 1)].clone();
        BigRational::new(det, self.den.pow(d as u32))
    }

    /// Exact inverse via Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RationalMatrix, CounterError> {
        let d = self.dim;
        let mut work: Vec<BigRational> = self.entries();
        let mut inv: Vec<BigRational> = RationalMatrix::identity(d).entries();
        for col in 0..d {
            let pivot_row = (col..d)
                .find(|&r| !work[r * d + col].is_zero())
                .ok_or(CounterError::SingularMatrix)?;
            if pivot_row != col {
                for c in 0..d {
                    work.swap(col * d + c, pivot_row * d + c);
                    inv.swap(col * d + c, pivot_row * d + c);
                }
            }
            let pivot = work[col * d + col].clone();
            for c in 0..d {
                let w = &work[col * d + c] / &pivot;
                work[col * d + c] = w;
                let v = &inv[col * d + c] / &pivot;
                inv[col * d + c] = v;
            }
            for r in 0..d {
                if r == col || work[r * d + col].is_zero() {
                    continue;
                }
                let factor = work[r * d + col].clone();
                for c in 0..d {
                    let w = &work[col * d + c] * &factor;
                    work[r * d + c] = &work[r * d + c] - w;
                    let v = &inv[col * d + c] * &factor;
                    inv[r * d + c] = &inv[r * d + c] - v;
                }
            }
        }
        RationalMatrix::from_entries(d, inv)
    }

    /// Canonical (content-reduced) form, usable as a set key.
    pub fn canonical_key(&self) -> (Vec<BigInt>, BigInt) {
        let mut g = self.den.clone();
        for v in &self.num {
            g = g.gcd(v);
            if g.is_one() {
                return (self.num.clone(), self.den.clone());
            }
        }
        (self.num.iter().map(|v| v / &g).collect(), &self.den / &g)
    }
}

impl PartialEq for RationalMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self
                .num
                .iter()
                .zip(&other.num)
                .all(|(a, b)| a * &other.den == b * &self.den)
    }
}

impl Eq for RationalMatrix {}

/// Squared Frobenius norm of a matrix, exact.
pub fn frobenius_norm_sq(matrix: &RationalMatrix) -> BigRational {
    matrix.frobenius_norm_sq()
}

/// Exact inverse; fails on singular input.
pub fn matrix_inverse(matrix: &RationalMatrix) -> Result<RationalMatrix, CounterError> {
    matrix.inverse()
}

/// A matrix counter: invertible generators under left multiplication, with
/// the sub-unit-norm region as the "negative" set.
#[derive(Debug, Clone)]
pub struct MatrixSpec {
    dimension: usize,
    generators: Vec<RationalMatrix>,
    inverses: OnceCell<Vec<RationalMatrix>>,
}

impl MatrixSpec {
    pub fn new(dimension: usize, generators: Vec<RationalMatrix>) -> Result<Self, CounterError> {
        if dimension == 0 {
            return Err(CounterError::EmptyMatrix);
        }
        if generators.is_empty() {
            return Err(CounterError::NoGenerators);
        }
        if let Some(g) = generators.iter().find(|g| g.dim() != dimension) {
            return Err(CounterError::MatrixShape {
                expected: dimension * dimension,
                got: g.dim() * g.dim(),
            });
        }
        Ok(MatrixSpec { dimension, generators, inverses: OnceCell::new() })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generators(&self) -> &[RationalMatrix] {
        &self.generators
    }

    /// Generator inverses, computed once on first use. Fails if any
    /// generator is singular.
    pub fn inverses(&self) -> Result<&[RationalMatrix], CounterError> {
        self.inverses
            .get_or_try_init(|| {
                self.generators.iter().map(|g| g.inverse()).collect::<Result<Vec<_>, _>>()
            })
            .map(Vec::as_slice)
    }
}

impl PartialEq for MatrixSpec {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension && self.generators == other.generators
    }
}

impl Eq for MatrixSpec {}

/// Membership in the matrix counter's negative set: Frobenius norm < 1,
/// decided exactly on the squared norm.
pub fn matrix_is_negative(spec: &MatrixSpec, value: &RationalMatrix) -> bool {
    debug_assert_eq!(spec.dimension(), value.dim());
    let norm_sq = value.frobenius_norm_sq();
    norm_sq.numer().abs() < norm_sq.denom().abs()
}
