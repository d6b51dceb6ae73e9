//! Finite automata with group-valued counters.
//!
//! A machine here is a deterministic finite control over an
//! endmarker-delimited tape, equipped with one counter that stores a group
//! element: an integer, an integer combination of square roots of distinct
//! primes, or an invertible matrix of exact rationals. The control can
//! apply a generator or its inverse per step and can observe only whether
//! the value is the group identity; partially blind machines see nothing
//! and crash if the value ever turns "negative" for the counter's ordering.
//!
//! The crate bundles:
//! - exact counter arithmetic with certified sign determination
//!   ([`counters`], [`counter`]);
//! - the execution engine with head- and counter-reversal instrumentation
//!   ([`automaton`]);
//! - stock recognizers for the counted-block, block-matching, and mirrored
//!   pair languages, plus the real-to-matrix counter transform
//!   ([`machines`]);
//! - brute-force oracles, corpus enumeration, differential testing, and the
//!   segment-interchange property check ([`oracle`]);
//! - a plain-text machine description format ([`machine_file`]).

pub mod automaton;
pub mod counter;
pub mod counters;
pub mod machine_file;
pub mod machines;
pub mod oracle;

pub use automaton::{
    CompiledMachine, Configuration, EngineError, HeadMode, HeadMove, MachineSpec, RunOptions,
    RunResult, TapeSymbol, Verdict, Visibility,
};
pub use counter::{CounterKind, CounterOp, CounterSpec, CounterValue, ReversalTracker};
pub use counters::{RationalMatrix, SignVerdict};
pub use machines::{build_lgen, build_lpal, build_lpat, real_to_matrix, LGenParams};
pub use oracle::{differential_test, oracle_lgen, oracle_lpal, oracle_lpat, Corpus};
