//! Builders that compile the library's stock recognizers into machine
//! specs, plus the real-to-matrix counter transform.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::automaton::{
    CounterStatus, HeadMode, HeadMove, MachineSpec, TapeSymbol, Visibility,
};
use crate::counter::{CounterKind, CounterOp, CounterSpec};
use crate::counters::{is_prime, MatrixSpec, RationalMatrix, RealSqrtSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("need at least two symbol classes, got {0}")]
    TooFewClasses(usize),
    #[error("at most 26 symbol classes are supported, got {0}")]
    TooManyClasses(usize),
    #[error("multiplier {index} must be at least 1")]
    ZeroMultiplier { index: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("duplicate prime {0}")]
    DuplicatePrime(u64),
    #[error("expected {expected} primes for {classes} classes, got {got}")]
    PrimeCount { expected: usize, got: usize, classes: usize },
    #[error("machine counter kind is {0}, expected real-sqrt")]
    NotRealSqrt(CounterKind),
    #[error("generator exponent {0} too large to transform")]
    ExponentTooLarge(BigInt),
}

/// Parameters of the counted-block family
/// { a₀ⁿ a₁^(l₁n) … a_(k−1)^(l_(k−1)n) | n ≥ 0 }: k symbol classes, k−1
/// positive multipliers, and k−1 distinct primes for the counter basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LGenParams {
    multipliers: Vec<u64>,
    primes: Vec<u64>,
}

impl LGenParams {
    pub fn new(multipliers: Vec<u64>, primes: Vec<u64>) -> Result<Self, BuildError> {
        let k = multipliers.len() + 1;
        if k < 2 {
            return Err(BuildError::TooFewClasses(k));
        }
        if k > 26 {
            return Err(BuildError::TooManyClasses(k));
        }
        if primes.len() != multipliers.len() {
            return Err(BuildError::PrimeCount {
                expected: multipliers.len(),
                got: primes.len(),
                classes: k,
            });
        }
        if let Some(&m) = multipliers.iter().find(|&&m| m == 0) {
            let index = multipliers.iter().position(|&x| x == m).unwrap();
            return Err(BuildError::ZeroMultiplier { index });
        }
        for (i, &p) in primes.iter().enumerate() {
            if !is_prime(p) {
                return Err(BuildError::NotPrime(p));
            }
            if primes[..i].contains(&p) {
                return Err(BuildError::DuplicatePrime(p));
            }
        }
        Ok(LGenParams { multipliers, primes })
    }

    /// Number of symbol classes k.
    pub fn class_count(&self) -> usize {
        self.multipliers.len() + 1
    }

    pub fn multipliers(&self) -> &[u64] {
        &self.multipliers
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The letter used for symbol class `i` ('a' for class 0, and so on).
    pub fn class_symbol(&self, class: usize) -> char {
        (b'a' + class as u8) as char
    }
}

fn empty_spec(
    name: String,
    head_mode: HeadMode,
    visibility: Visibility,
    counter: CounterSpec,
) -> MachineSpec {
    MachineSpec {
        name,
        states: Vec::new(),
        start: String::new(),
        accept: BTreeSet::new(),
        alphabet: BTreeSet::new(),
        head_mode,
        visibility,
        counter,
        transitions: BTreeMap::new(),
    }
}

/// One-way partially blind recognizer for
/// { a₀ⁿ a₁^(l₁n) … a_(k−1)^(l_(k−1)n) }.
///
/// Generator 0 is the composite vector (l₁,…,l_(k−1)) added once per a₀;
/// generator i (i ≥ 1) is the unit vector for √pᵢ subtracted once per aᵢ.
/// The finite control enforces the a₀*a₁*…a_(k−1)* shape; the counter is
/// back at zero exactly when every class count matches, so any accepted run
/// makes at most one increment-to-decrement switch and never moves the head
/// backward.
pub fn build_lgen(params: &LGenParams) -> MachineSpec {
    let k = params.class_count();
    let composite: Vec<BigInt> = params.multipliers.iter().map(|&l| BigInt::from(l)).collect();
    let mut generators = vec![composite];
    for i in 0..k - 1 {
        let mut unit = vec![BigInt::ZERO; k - 1];
        unit[i] = BigInt::one();
        generators.push(unit);
    }
    let counter = CounterSpec::RealSqrt(
        RealSqrtSpec::new(params.primes.clone(), generators).expect("validated params"),
    );

    let fmt_list = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(".");
    let name = format!("lgen-k{k}-l{}-p{}", fmt_list(&params.multipliers), fmt_list(&params.primes));
    let mut spec = empty_spec(name, HeadMode::OneWay, Visibility::PartiallyBlind, counter);

    let class_state = |i: usize| format!("q{i}");
    spec.states = (0..k).map(class_state).collect();
    spec.states.push("acc".into());
    spec.start = class_state(0);
    spec.accept.insert("acc".into());
    spec.alphabet = (0..k).map(|i| params.class_symbol(i)).collect();

    spec.set_transition_any_status(&class_state(0), TapeSymbol::LeftEnd, &class_state(0), HeadMove::Right, CounterOp::Noop);
    for from in 0..k {
        // Class 0 symbols only continue the leading block.
        if from == 0 {
            spec.set_transition_any_status(
                &class_state(0),
                TapeSymbol::Sym(params.class_symbol(0)),
                &class_state(0),
                HeadMove::Right,
                CounterOp::Increment(0),
            );
        }
        // Later classes may follow any earlier one (empty blocks allowed).
        for to in from.max(1)..k {
            spec.set_transition_any_status(
                &class_state(from),
                TapeSymbol::Sym(params.class_symbol(to)),
                &class_state(to),
                HeadMove::Right,
                CounterOp::Decrement(to),
            );
        }
        spec.set_transition_any_status(&class_state(from), TapeSymbol::RightEnd, "acc", HeadMove::Stay, CounterOp::Noop);
    }
    spec
}

/// The two 3x3 integer generators whose products separate binary words:
/// with X and Y words over {A,B}, the vector Y₁⁻¹…Yₙ⁻¹Xₙ…X₁(1,0,0)ᵀ has
/// zero second and third components exactly when X = Y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AwMatrices {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
}

pub fn aw_matrices() -> AwMatrices {
    AwMatrices {
        a: RationalMatrix::from_integer_rows(&[&[4, 3, 0], &[-3, 4, 0], &[0, 0, 5]]),
        b: RationalMatrix::from_integer_rows(&[&[4, 0, 3], &[0, 5, 0], &[-3, 0, 4]]),
    }
}

fn aw_counter() -> CounterSpec {
    let m = aw_matrices();
    CounterSpec::Matrix(MatrixSpec::new(3, vec![m.a, m.b]).expect("stock generators"))
}

/// Two-way recognizer for the block-matching language
/// { x₀#x₁#…#x_k# | k ≥ 1, some xᵢ = x₀ } over {0,1,#}.
///
/// The first block is folded into the counter left-to-right (A per 0, B per
/// 1). Each later block is then scanned right-to-left applying inverses; an
/// identity counter at the block's left delimiter means the block equals
/// x₀, and the machine accepts after one last counter-neutral sweep
/// confirming the remaining input keeps the block#block#… shape. On a
/// mismatch it re-scans the block forward to undo the inverses and moves
/// on, giving at most two counter reversals per block. The counter status
/// is consulted only at the match branch, so the machine is status-visible
/// rather than blind.
pub fn build_lpat() -> MachineSpec {
    let mut spec = empty_spec("lpat".into(), HeadMode::TwoWay, Visibility::Deterministic, aw_counter());
    spec.states = ["start", "scan0", "seek", "dec", "undo", "chk", "chkh", "acc"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    spec.start = "start".into();
    spec.accept.insert("acc".into());
    spec.alphabet = ['0', '1', '#'].into();

    spec.set_transition_any_status("start", TapeSymbol::LeftEnd, "scan0", HeadMove::Right, CounterOp::Noop);
    spec.set_transition_any_status("scan0", TapeSymbol::Sym('0'), "scan0", HeadMove::Right, CounterOp::Increment(0));
    spec.set_transition_any_status("scan0", TapeSymbol::Sym('1'), "scan0", HeadMove::Right, CounterOp::Increment(1));
    spec.set_transition_any_status("scan0", TapeSymbol::Sym('#'), "seek", HeadMove::Right, CounterOp::Noop);

    spec.set_transition_any_status("seek", TapeSymbol::Sym('0'), "seek", HeadMove::Right, CounterOp::Noop);
    spec.set_transition_any_status("seek", TapeSymbol::Sym('1'), "seek", HeadMove::Right, CounterOp::Noop);
    spec.set_transition_any_status("seek", TapeSymbol::Sym('#'), "dec", HeadMove::Left, CounterOp::Noop);

    spec.set_transition_any_status("dec", TapeSymbol::Sym('0'), "dec", HeadMove::Left, CounterOp::Decrement(0));
    spec.set_transition_any_status("dec", TapeSymbol::Sym('1'), "dec", HeadMove::Left, CounterOp::Decrement(1));
    // Block fully undone onto the left delimiter: identity counter means
    // the block matched x₀. The left endmarker is handled like '#' even
    // though the first delimiter always intervenes.
    for delimiter in [TapeSymbol::Sym('#'), TapeSymbol::LeftEnd] {
        spec.set_transition("dec", delimiter, CounterStatus::Zero, "chk", HeadMove::Right, CounterOp::Noop);
        spec.set_transition("dec", delimiter, CounterStatus::Nonzero, "undo", HeadMove::Right, CounterOp::Noop);
    }

    spec.set_transition_any_status("undo", TapeSymbol::Sym('0'), "undo", HeadMove::Right, CounterOp::Increment(0));
    spec.set_transition_any_status("undo", TapeSymbol::Sym('1'), "undo", HeadMove::Right, CounterOp::Increment(1));
    spec.set_transition_any_status("undo", TapeSymbol::Sym('#'), "seek", HeadMove::Right, CounterOp::Noop);

    // Tail sweep after a match: the rest of the input must stay inside
    // block#block#…# with the right endmarker directly after a '#'. The
    // counter is already the identity and stays untouched.
    spec.set_transition_any_status("chk", TapeSymbol::Sym('0'), "chk", HeadMove::Right, CounterOp::Noop);
    spec.set_transition_any_status("chk", TapeSymbol::Sym('1'), "chk", HeadMove::Right, CounterOp::Noop);
    spec.set_transition_any_status("chk", TapeSymbol::Sym('#'), "chkh", HeadMove::Right, CounterOp::Noop);
    spec.set_transition_any_status("chkh", TapeSymbol::Sym('0'), "chk", HeadMove::Right, CounterOp::Noop);
    spec.set_transition_any_status("chkh", TapeSymbol::Sym('1'), "chk", HeadMove::Right, CounterOp::Noop);
    spec.set_transition_any_status("chkh", TapeSymbol::Sym('#'), "chkh", HeadMove::Right, CounterOp::Noop);
    spec.set_transition_any_status("chkh", TapeSymbol::RightEnd, "acc", HeadMove::Stay, CounterOp::Noop);

    spec
}

/// One-way recognizer for { x#xᴿ | x over {0,1} } on the word-separating
/// matrix counter: generators are applied before the single '#', inverses
/// after it, and the counter is back at the identity on the right endmarker
/// exactly when the suffix reverses the prefix.
pub fn build_lpal() -> MachineSpec {
    let mut spec = empty_spec("lpal".into(), HeadMode::OneWay, Visibility::Deterministic, aw_counter());
    spec.states = ["fwd", "rev", "acc"].iter().map(|s| s.to_string()).collect();
    spec.start = "fwd".into();
    spec.accept.insert("acc".into());
    spec.alphabet = ['0', '1', '#'].into();

    spec.set_transition_any_status("fwd", TapeSymbol::LeftEnd, "fwd", HeadMove::Right, CounterOp::Noop);
    spec.set_transition_any_status("fwd", TapeSymbol::Sym('0'), "fwd", HeadMove::Right, CounterOp::Increment(0));
    spec.set_transition_any_status("fwd", TapeSymbol::Sym('1'), "fwd", HeadMove::Right, CounterOp::Increment(1));
    spec.set_transition_any_status("fwd", TapeSymbol::Sym('#'), "rev", HeadMove::Right, CounterOp::Noop);

    spec.set_transition_any_status("rev", TapeSymbol::Sym('0'), "rev", HeadMove::Right, CounterOp::Decrement(0));
    spec.set_transition_any_status("rev", TapeSymbol::Sym('1'), "rev", HeadMove::Right, CounterOp::Decrement(1));
    // A second '#' has no transition: the shape requires exactly one.
    spec.set_transition_any_status("rev", TapeSymbol::RightEnd, "acc", HeadMove::Stay, CounterOp::Noop);

    spec
}

/// Rebuilds a real-counter machine over a 1x1 matrix counter: the generator
/// with coefficients (c₁,…,c_k) over primes (p₁,…,p_k) becomes the scalar
/// Πᵢ pᵢ^cᵢ, an exact rational. The finite control and every transition are
/// reused unchanged, and a zero coefficient vector corresponds exactly to
/// the scalar 1 because integer factorizations are unique.
pub fn real_to_matrix(spec: &MachineSpec) -> Result<MachineSpec, BuildError> {
    let real = match &spec.counter {
        CounterSpec::RealSqrt(real) => real,
        other => return Err(BuildError::NotRealSqrt(other.kind())),
    };
    let mut generators = Vec::with_capacity(real.generators().len());
    for coeffs in real.generators() {
        let mut numer = BigInt::one();
        let mut denom = BigInt::one();
        for (&p, c) in real.primes().iter().zip(coeffs) {
            let exponent = c
                .abs()
                .to_u32()
                .ok_or_else(|| BuildError::ExponentTooLarge(c.clone()))?;
            let factor = BigInt::from(p).pow(exponent);
            if c.is_negative() {
                denom *= factor;
            } else {
                numer *= factor;
            }
        }
        generators.push(RationalMatrix::scalar(BigRational::new(numer, denom)));
    }
    let mut transformed = spec.clone();
    transformed.name = format!("{}-matrix", spec.name);
    transformed.counter =
        CounterSpec::Matrix(MatrixSpec::new(1, generators).expect("nonzero scalars"));
    Ok(transformed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{run, CompiledMachine, RunOptions, Verdict};
    use num_traits::Zero;

    fn lgen_default() -> MachineSpec {
        build_lgen(&LGenParams::new(vec![1, 1], vec![2, 3]).unwrap())
    }

    #[test]
    fn lgen_accepts_equal_counts() {
        let result = run(&lgen_default(), "abc", RunOptions::default()).unwrap();
        assert_eq!(result.verdict, Verdict::Accept);
    }

    #[test]
    fn lgen_rejects_out_of_order_symbols() {
        let result = run(&lgen_default(), "acb", RunOptions::default()).unwrap();
        assert_eq!(result.verdict, Verdict::Reject);
    }

    #[test]
    fn lgen_multipliers_scale_class_counts() {
        let spec = build_lgen(&LGenParams::new(vec![2, 1], vec![2, 3]).unwrap());
        let machine = CompiledMachine::new(&spec).unwrap();
        assert_eq!(machine.run("abbc", RunOptions::default()).unwrap().verdict, Verdict::Accept);
        assert_ne!(machine.run("abbcc", RunOptions::default()).unwrap().verdict, Verdict::Accept);
    }

    #[test]
    fn lgen_accept_statistics_match_the_claimed_complexity() {
        let result = run(&lgen_default(), "aabbcc", RunOptions::default()).unwrap();
        assert_eq!(result.verdict, Verdict::Accept);
        assert_eq!(result.counter_reversals, 1);
        assert_eq!(result.head_reversals, 0);
        assert_eq!(result.steps, 8);
    }

    #[test]
    fn lgen_empty_input_is_the_n_zero_case() {
        let result = run(&lgen_default(), "", RunOptions::default()).unwrap();
        assert_eq!(result.verdict, Verdict::Accept);
    }

    #[test]
    fn lgen_validates_cleanly() {
        let report = lgen_default().validate();
        assert!(report.is_ok(), "{report}");
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn lgen_params_are_checked() {
        assert!(matches!(LGenParams::new(vec![], vec![]), Err(BuildError::TooFewClasses(1))));
        assert!(matches!(LGenParams::new(vec![1, 0], vec![2, 3]), Err(BuildError::ZeroMultiplier { index: 1 })));
        assert!(matches!(LGenParams::new(vec![1, 1], vec![2, 4]), Err(BuildError::NotPrime(4))));
        assert!(matches!(LGenParams::new(vec![1, 1], vec![2, 2]), Err(BuildError::DuplicatePrime(2))));
        assert!(matches!(LGenParams::new(vec![1, 1], vec![2]), Err(BuildError::PrimeCount { .. })));
    }

    #[test]
    fn lpat_finds_a_matching_block() {
        let machine = CompiledMachine::new(&build_lpat()).unwrap();
        assert_eq!(machine.run("01#01#", RunOptions::default()).unwrap().verdict, Verdict::Accept);
        assert_eq!(machine.run("01#10#", RunOptions::default()).unwrap().verdict, Verdict::Reject);
    }

    #[test]
    fn lpat_reversals_stay_within_two_per_block() {
        let machine = CompiledMachine::new(&build_lpat()).unwrap();
        let result = machine.run("0#1#11#0#", RunOptions::default()).unwrap();
        assert_eq!(result.verdict, Verdict::Accept);
        assert!(result.counter_reversals <= 2 * 4, "got {}", result.counter_reversals);
    }

    #[test]
    fn lpat_first_step_advances_off_the_left_endmarker() {
        let result = crate::automaton::trace(&build_lpat(), "0#0#", RunOptions::default()).unwrap();
        let steps = result.trace.unwrap();
        assert_eq!(steps[0].config.state, "start");
        assert_eq!(steps[0].symbol, TapeSymbol::LeftEnd);
        assert_eq!(steps[0].action.state, "scan0");
        assert_eq!(steps[0].action.head_move, HeadMove::Right);
        assert_eq!(steps[0].action.op, CounterOp::Noop);
    }

    #[test]
    fn lpat_validates_cleanly() {
        let report = build_lpat().validate();
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn lpal_accepts_mirrored_pairs() {
        let machine = CompiledMachine::new(&build_lpal()).unwrap();
        assert_eq!(machine.run("01#10", RunOptions::default()).unwrap().verdict, Verdict::Accept);
        assert_eq!(machine.run("01#01", RunOptions::default()).unwrap().verdict, Verdict::Reject);
        // The empty word is its own reverse.
        assert_eq!(machine.run("#", RunOptions::default()).unwrap().verdict, Verdict::Accept);
    }

    #[test]
    fn lpal_validates_cleanly() {
        let report = build_lpal().validate();
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn transform_maps_generators_to_prime_products() {
        let spec = lgen_default();
        let transformed = real_to_matrix(&spec).unwrap();
        let generators = match &transformed.counter {
            CounterSpec::Matrix(m) => m.generators(),
            other => panic!("unexpected counter {:?}", other.kind()),
        };
        // Composite (1,1) over (2,3) -> [6]; units -> [2] and [3].
        assert_eq!(generators[0].entry(0, 0), BigRational::from_integer(BigInt::from(6)));
        assert_eq!(generators[1].entry(0, 0), BigRational::from_integer(BigInt::from(2)));
        assert_eq!(generators[2].entry(0, 0), BigRational::from_integer(BigInt::from(3)));
    }

    #[test]
    fn transform_preserves_verdicts_on_sample_inputs() {
        let spec = lgen_default();
        let transformed = real_to_matrix(&spec).unwrap();
        let original = CompiledMachine::new(&spec).unwrap();
        let matrix = CompiledMachine::new(&transformed).unwrap();
        for input in ["aabbcc", "aabbc", "", "abc", "cab", "aabbbccc"] {
            let a = original.run(input, RunOptions::default()).unwrap().verdict;
            let b = matrix.run(input, RunOptions::default()).unwrap().verdict;
            assert_eq!(a.accepted(), b.accepted(), "diverged on {input:?}");
        }
    }

    #[test]
    fn transform_rejects_non_real_counters() {
        let err = real_to_matrix(&build_lpat());
        assert!(matches!(err, Err(BuildError::NotRealSqrt(CounterKind::Matrix))));
    }

    #[test]
    fn transform_tracks_identity_in_lockstep() {
        let spec = lgen_default();
        let transformed = real_to_matrix(&spec).unwrap();
        let original = CompiledMachine::new(&spec).unwrap();
        let matrix = CompiledMachine::new(&transformed).unwrap();
        for input in ["aabbcc", "abcabc", "aaabbb", "ccc"] {
            let mut left = original.execution(input, RunOptions::default()).unwrap();
            let mut right = matrix.execution(input, RunOptions::default()).unwrap();
            loop {
                assert_eq!(
                    spec.counter.is_identity(left.counter_value()),
                    transformed.counter.is_identity(right.counter_value()),
                    "identity status diverged on {input:?} at step {}",
                    left.steps()
                );
                let a = left.step().unwrap();
                let b = right.step().unwrap();
                if a.is_some() || b.is_some() {
                    break;
                }
            }
        }
    }

    #[test]
    fn aw_matrix_inverses_carry_the_expected_scale() {
        let m = aw_matrices();
        let det = m.a.determinant();
        assert_eq!(det, BigRational::from_integer(BigInt::from(125)));
        let inv = m.a.inverse().unwrap();
        assert!(!inv.entries().iter().all(Zero::is_zero));
        assert!(m.a.mul(&inv).is_identity());
    }
}
