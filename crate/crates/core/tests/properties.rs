//! Randomized laws of the counter contract and the engine.

use num_bigint::BigInt;
use proptest::prelude::*;

use gcount_core::automaton::{run, RunOptions, Verdict};
use gcount_core::counter::{CounterOp, CounterSpec, OpDirection, ReversalTracker};
use gcount_core::counters::{IntegerSpec, MatrixSpec, RationalMatrix, RealSqrtSpec};
use gcount_core::machines::{aw_matrices, build_lgen, LGenParams};
use gcount_core::oracle::{oracle_lgen, Corpus};

fn integer_spec() -> CounterSpec {
    CounterSpec::Integer(IntegerSpec::new(vec![BigInt::from(1), BigInt::from(3)]).unwrap())
}

fn real_spec() -> CounterSpec {
    CounterSpec::RealSqrt(
        RealSqrtSpec::new(
            vec![2, 3, 5],
            vec![
                vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
                vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            ],
        )
        .unwrap(),
    )
}

fn matrix_spec() -> CounterSpec {
    let m = aw_matrices();
    CounterSpec::Matrix(MatrixSpec::new(3, vec![m.a, m.b]).unwrap())
}

fn op_strategy(generators: usize) -> impl Strategy<Value = CounterOp> {
    prop_oneof![
        Just(CounterOp::Noop),
        (0..generators).prop_map(CounterOp::Increment),
        (0..generators).prop_map(CounterOp::Decrement),
    ]
}

fn specs() -> Vec<CounterSpec> {
    vec![integer_spec(), real_spec(), matrix_spec()]
}

proptest! {
    /// Applying an op and then its inverse restores the value exactly.
    #[test]
    fn apply_then_unapply_is_identity(ops in prop::collection::vec(op_strategy(2), 0..12), extra in op_strategy(2)) {
        for spec in specs() {
            let mut value = spec.identity();
            for &op in &ops {
                value = spec.apply(&value, op).unwrap();
            }
            let forward = spec.apply(&value, extra).unwrap();
            let back = spec.apply(&forward, extra.inverse()).unwrap();
            prop_assert_eq!(back, value);
        }
    }

    /// A generator word followed by its mirrored inverse word lands exactly
    /// on the identity.
    #[test]
    fn word_and_mirrored_inverse_cancel(word in prop::collection::vec(0usize..2, 0..10)) {
        for spec in specs() {
            let mut value = spec.identity();
            for &g in &word {
                value = spec.apply(&value, CounterOp::Increment(g)).unwrap();
            }
            for &g in word.iter().rev() {
                value = spec.apply(&value, CounterOp::Decrement(g)).unwrap();
            }
            prop_assert!(spec.is_identity(&value));
        }
    }

    /// The tracker's reversal count equals a direct scan of the noop-free
    /// direction sequence.
    #[test]
    fn tracker_matches_direct_scan(ops in prop::collection::vec(op_strategy(2), 0..40)) {
        let mut tracker = ReversalTracker::new();
        for &op in &ops {
            tracker.record(op);
        }
        let directions: Vec<OpDirection> = ops.iter().filter_map(|op| op.direction()).collect();
        let scanned = directions.windows(2).filter(|w| w[0] != w[1]).count() as u64;
        prop_assert_eq!(tracker.count(), scanned);
    }

    /// Identity norms: a generator times its inverse has squared Frobenius
    /// norm equal to the dimension.
    #[test]
    fn generator_inverse_norm_is_the_dimension(pick in 0usize..2) {
        let m = aw_matrices();
        let g: RationalMatrix = if pick == 0 { m.a } else { m.b };
        let product = g.mul(&g.inverse().unwrap());
        prop_assert_eq!(
            product.frobenius_norm_sq(),
            num_rational::BigRational::from_integer(BigInt::from(3))
        );
    }

    /// Repeated runs of the same machine on the same input agree on every
    /// observable, including statistics.
    #[test]
    fn runs_are_reproducible(input in "[abc]{0,10}") {
        let spec = build_lgen(&LGenParams::new(vec![1, 1], vec![2, 3]).unwrap());
        let first = run(&spec, &input, RunOptions::default()).unwrap();
        let second = run(&spec, &input, RunOptions::default()).unwrap();
        prop_assert_eq!(first, second);
    }

    /// Completed partially blind runs never pass through a negative
    /// counter value (the engine would have crashed), and one-way runs
    /// never reverse the head.
    #[test]
    fn partially_blind_runs_stay_nonnegative(input in "[abc]{0,10}") {
        let spec = build_lgen(&LGenParams::new(vec![2, 1], vec![2, 3]).unwrap());
        let result = gcount_core::automaton::trace(&spec, &input, RunOptions::default()).unwrap();
        prop_assert_eq!(result.head_reversals, 0);
        if result.verdict != Verdict::Crash {
            for step in result.trace.as_deref().unwrap_or_default() {
                prop_assert!(!spec.counter.is_negative(&step.config.counter));
            }
            prop_assert!(!spec.counter.is_negative(&result.final_configuration.counter));
        }
    }
}

/// The machine language and the direct counting predicate agree on a small
/// exhaustive corpus (the full bounds run in the acceptance suite).
#[test]
fn lgen_matches_its_oracle_exhaustively_at_small_lengths() {
    let params = LGenParams::new(vec![1, 2], vec![5, 7]).unwrap();
    let spec = build_lgen(&params);
    let corpus = Corpus::exhaustive(&['a', 'b', 'c'], 8);
    let report = gcount_core::oracle::differential_test(
        &spec,
        |x| oracle_lgen(&params, x),
        &corpus,
        RunOptions::default(),
    )
    .unwrap();
    assert!(report.agreed(), "disagreements: {:?}", report.disagreements);
    assert!(report.max_counter_reversals <= 1);
}

/// Two symbol classes is the smallest family member; its two-letter
/// alphabet makes the full length-12 corpus cheap.
#[test]
fn two_class_machine_matches_its_oracle_up_to_length_12() {
    let params = LGenParams::new(vec![1], vec![2]).unwrap();
    let spec = build_lgen(&params);
    let corpus = Corpus::exhaustive(&['a', 'b'], 12);
    let report = gcount_core::oracle::differential_test(
        &spec,
        |x| oracle_lgen(&params, x),
        &corpus,
        RunOptions::default(),
    )
    .unwrap();
    assert!(report.agreed(), "disagreements: {:?}", report.disagreements);
    assert_eq!(report.total, 8_191);
    assert!(report.max_counter_reversals <= 1);
    assert_eq!(report.max_head_reversals, 0);
}
