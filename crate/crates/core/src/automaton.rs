//! The machine model and execution engine.
//!
//! A machine is a deterministic finite control with a read-only head over
//! the endmarker-delimited tape `¢ input $` and one generalized counter.
//! Each transition consumes (state, symbol under head, counter status) and
//! produces (state, head move, counter op), where the status bit is `zero`
//! iff the counter holds the group identity.
//!
//! Halting and acceptance: the machine halts when no transition is defined
//! for the current configuration. A halted run accepts iff the state is
//! accepting, the counter is the identity, and — for one-way machines — the
//! head has consumed the whole input (sits on `$`). Partially blind
//! machines crash the moment the counter enters the negative region; blind
//! and partially blind machines must have status-independent transition
//! tables. Two-way machines can loop, so runs carry a step limit with its
//! own distinct verdict.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::counter::{CounterError, CounterFinding, CounterOp, CounterSpec, CounterValue, ReversalTracker};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum HeadMode {
    OneWay,
    TwoWay,
}

impl fmt::Display for HeadMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeadMode::OneWay => "one-way",
            HeadMode::TwoWay => "two-way",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Visibility {
    /// The transition table sees the counter-status bit.
    Deterministic,
    /// No status information; acceptance still requires an identity counter.
    Blind,
    /// Blind, and the run crashes if the counter ever turns negative.
    PartiallyBlind,
}

impl fmt::Display for Visibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Visibility::Deterministic => "deterministic",
            Visibility::Blind => "blind",
            Visibility::PartiallyBlind => "partially-blind",
        })
    }
}

/// The status bit presented to the transition function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CounterStatus {
    Zero,
    Nonzero,
}

impl CounterStatus {
    pub fn flipped(self) -> CounterStatus {
        match self {
            CounterStatus::Zero => CounterStatus::Nonzero,
            CounterStatus::Nonzero => CounterStatus::Zero,
        }
    }
}

/// A tape cell: the left endmarker, an input symbol, or the right endmarker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TapeSymbol {
    LeftEnd,
    Sym(char),
    RightEnd,
}

impl fmt::Display for TapeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TapeSymbol::LeftEnd => f.write_str("^"),
            TapeSymbol::Sym(c) => write!(f, "{c}"),
            TapeSymbol::RightEnd => f.write_str("$"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum HeadMove {
    Left,
    Stay,
    Right,
}

impl HeadMove {
    pub fn delta(self) -> i64 {
        match self {
            HeadMove::Left => -1,
            HeadMove::Stay => 0,
            HeadMove::Right => 1,
        }
    }
}

impl fmt::Display for HeadMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeadMove::Left => "-1",
            HeadMove::Stay => "0",
            HeadMove::Right => "+1",
        })
    }
}

/// Lookup key of the transition table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TransitionKey {
    pub state: String,
    pub symbol: TapeSymbol,
    pub status: CounterStatus,
}

/// Result of a transition: next state, head move, counter op.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    pub state: String,
    pub head_move: HeadMove,
    pub op: CounterOp,
}

/// A complete machine description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineSpec {
    pub name: String,
    pub states: Vec<String>,
    pub start: String,
    pub accept: BTreeSet<String>,
    pub alphabet: BTreeSet<char>,
    pub head_mode: HeadMode,
    pub visibility: Visibility,
    pub counter: CounterSpec,
    pub transitions: BTreeMap<TransitionKey, Action>,
}

impl MachineSpec {
    /// Inserts a transition for one status value.
    pub fn set_transition(
        &mut self,
        state: &str,
        symbol: TapeSymbol,
        status: CounterStatus,
        target: &str,
        head_move: HeadMove,
        op: CounterOp,
    ) {
        self.transitions.insert(
            TransitionKey { state: state.to_owned(), symbol, status },
            Action { state: target.to_owned(), head_move, op },
        );
    }

    /// Inserts the same transition for both status values, as blind and
    /// partially blind tables require.
    pub fn set_transition_any_status(
        &mut self,
        state: &str,
        symbol: TapeSymbol,
        target: &str,
        head_move: HeadMove,
        op: CounterOp,
    ) {
        for status in [CounterStatus::Zero, CounterStatus::Nonzero] {
            self.set_transition(state, symbol, status, target, head_move, op);
        }
    }

    /// Checks every machine invariant, returning all violations plus
    /// reachability warnings.
    pub fn validate(&self) -> MachineReport {
        let mut violations = Vec::new();
        let mut warnings = Vec::new();

        let state_set: BTreeSet<&str> = self.states.iter().map(String::as_str).collect();
        if state_set.len() != self.states.len() {
            for (i, s) in self.states.iter().enumerate() {
                if self.states[..i].contains(s) {
                    violations.push(MachineFinding::DuplicateState { state: s.clone() });
                }
            }
        }
        if !state_set.contains(self.start.as_str()) {
            violations.push(MachineFinding::UnknownState { state: self.start.clone(), role: "start" });
        }
        for s in &self.accept {
            if !state_set.contains(s.as_str()) {
                violations.push(MachineFinding::UnknownState { state: s.clone(), role: "accept" });
            }
        }

        let generator_count = self.counter.generator_count();
        for (key, action) in &self.transitions {
            if !state_set.contains(key.state.as_str()) {
                violations.push(MachineFinding::UnknownState { state: key.state.clone(), role: "transition source" });
            }
            if !state_set.contains(action.state.as_str()) {
                violations.push(MachineFinding::UnknownState { state: action.state.clone(), role: "transition target" });
            }
            if let TapeSymbol::Sym(c) = key.symbol {
                if !self.alphabet.contains(&c) {
                    violations.push(MachineFinding::SymbolNotInAlphabet { symbol: c });
                }
            }
            if self.head_mode == HeadMode::OneWay && action.head_move == HeadMove::Left {
                violations.push(MachineFinding::BackwardMoveInOneWay { state: key.state.clone(), symbol: key.symbol });
            }
            if key.symbol == TapeSymbol::LeftEnd && action.head_move == HeadMove::Left {
                violations.push(MachineFinding::MoveOffLeftEnd { state: key.state.clone() });
            }
            if key.symbol == TapeSymbol::RightEnd && action.head_move == HeadMove::Right {
                violations.push(MachineFinding::MoveOffRightEnd { state: key.state.clone() });
            }
            if let Some(index) = action.op.generator() {
                if index >= generator_count {
                    violations.push(MachineFinding::GeneratorIndexOutOfRange {
                        state: key.state.clone(),
                        symbol: key.symbol,
                        index,
                    });
                }
            }
        }

        // Blindness: both status rows of every (state, symbol) pair must
        // agree, including on absence.
        if self.visibility != Visibility::Deterministic {
            let pairs: BTreeSet<(String, TapeSymbol)> = self
                .transitions
                .keys()
                .map(|k| (k.state.clone(), k.symbol))
                .collect();
            for (state, symbol) in pairs {
                let zero = self.transitions.get(&TransitionKey {
                    state: state.clone(),
                    symbol,
                    status: CounterStatus::Zero,
                });
                let nonzero = self.transitions.get(&TransitionKey {
                    state: state.clone(),
                    symbol,
                    status: CounterStatus::Nonzero,
                });
                if zero != nonzero {
                    violations.push(MachineFinding::BlindnessViolation { state, symbol });
                }
            }
        }

        for finding in self.counter.validate() {
            violations.push(MachineFinding::Counter(finding));
        }

        // Reachability over transition targets, ignoring symbols and status.
        let mut reached: BTreeSet<&str> = BTreeSet::new();
        let mut queue = VecDeque::new();
        if state_set.contains(self.start.as_str()) {
            reached.insert(self.start.as_str());
            queue.push_back(self.start.as_str());
        }
        while let Some(state) = queue.pop_front() {
            for (key, action) in &self.transitions {
                if key.state == state && reached.insert(action.state.as_str()) {
                    queue.push_back(action.state.as_str());
                }
            }
        }
        for s in &self.states {
            if !reached.contains(s.as_str()) {
                warnings.push(MachineWarning::UnreachableState { state: s.clone() });
            }
        }

        MachineReport { violations, warnings }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MachineFinding {
    DuplicateState { state: String },
    UnknownState { state: String, role: &'static str },
    SymbolNotInAlphabet { symbol: char },
    BackwardMoveInOneWay { state: String, symbol: TapeSymbol },
    MoveOffLeftEnd { state: String },
    MoveOffRightEnd { state: String },
    GeneratorIndexOutOfRange { state: String, symbol: TapeSymbol, index: usize },
    BlindnessViolation { state: String, symbol: TapeSymbol },
    Counter(CounterFinding),
}

impl fmt::Display for MachineFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineFinding::DuplicateState { state } => write!(f, "duplicate state {state}"),
            MachineFinding::UnknownState { state, role } => {
                write!(f, "unknown {role} state {state}")
            }
            MachineFinding::SymbolNotInAlphabet { symbol } => {
                write!(f, "transition symbol '{symbol}' is not in the alphabet")
            }
            MachineFinding::BackwardMoveInOneWay { state, symbol } => {
                write!(f, "one-way machine moves left at ({state}, {symbol})")
            }
            MachineFinding::MoveOffLeftEnd { state } => {
                write!(f, "state {state} moves left off the left endmarker")
            }
            MachineFinding::MoveOffRightEnd { state } => {
                write!(f, "state {state} moves right off the right endmarker")
            }
            MachineFinding::GeneratorIndexOutOfRange { state, symbol, index } => {
                write!(f, "generator index {index} out of range at ({state}, {symbol})")
            }
            MachineFinding::BlindnessViolation { state, symbol } => {
                write!(f, "status-dependent transition at ({state}, {symbol}) in a blind machine")
            }
            MachineFinding::Counter(finding) => write!(f, "counter: {finding}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MachineWarning {
    UnreachableState { state: String },
}

impl fmt::Display for MachineWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineWarning::UnreachableState { state } => write!(f, "state {state} is unreachable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MachineReport {
    pub violations: Vec<MachineFinding>,
    pub warnings: Vec<MachineWarning>,
}

impl MachineReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for MachineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("machine failed validation:\n{0}")]
    InvalidMachine(MachineReport),
    #[error("unknown symbol '{symbol}' at input position {position}")]
    InputSymbol { symbol: char, position: usize },
    #[error("head moved outside the tape")]
    HeadOutOfBounds,
    #[error(transparent)]
    Counter(#[from] CounterError),
}

/// Snapshot of a machine mid-run: state, head position on the delimited
/// tape, counter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub state: String,
    pub head: usize,
    pub counter: CounterValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
    Crash,
    StepLimit,
}

impl Verdict {
    pub fn accepted(self) -> bool {
        self == Verdict::Accept
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
            Verdict::Crash => "crash",
            Verdict::StepLimit => "step-limit",
        })
    }
}

/// One executed step, retained when tracing: the configuration before the
/// step, the symbol under the head, and the action applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub config: Configuration,
    pub symbol: TapeSymbol,
    pub action: Action,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub verdict: Verdict,
    pub steps: u64,
    pub head_reversals: u64,
    pub counter_reversals: u64,
    pub final_configuration: Configuration,
    pub trace: Option<Vec<TraceStep>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub max_steps: u64,
    pub record_trace: bool,
}

pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { max_steps: DEFAULT_MAX_STEPS, record_trace: false }
    }
}

#[derive(Clone)]
struct CompiledAction {
    state: usize,
    head_move: HeadMove,
    op: CounterOp,
}

/// A validated machine with interned states, ready to run repeatedly.
pub struct CompiledMachine {
    spec: MachineSpec,
    state_names: Vec<String>,
    start: usize,
    accept: Vec<bool>,
    table: HashMap<(usize, TapeSymbol, CounterStatus), CompiledAction>,
}

impl CompiledMachine {
    pub fn new(spec: &MachineSpec) -> Result<Self, EngineError> {
        let report = spec.validate();
        if !report.is_ok() {
            return Err(EngineError::InvalidMachine(report));
        }
        // Matrix inverses are computed up front so singular generators
        // surface here rather than mid-run.
        if let CounterSpec::Matrix(m) = &spec.counter {
            m.inverses()?;
        }
        let state_names = spec.states.clone();
        let index_of = |name: &str| state_names.iter().position(|s| s == name).unwrap();
        let start = index_of(&spec.start);
        let accept = state_names.iter().map(|s| spec.accept.contains(s)).collect();
        let table = spec
            .transitions
            .iter()
            .map(|(key, action)| {
                (
                    (index_of(&key.state), key.symbol, key.status),
                    CompiledAction {
                        state: index_of(&action.state),
                        head_move: action.head_move,
                        op: action.op,
                    },
                )
            })
            .collect();
        Ok(CompiledMachine { spec: spec.clone(), state_names, start, accept, table })
    }

    pub fn spec(&self) -> &MachineSpec {
        &self.spec
    }

    /// Starts an execution on `input`. Fails on symbols outside the
    /// machine's alphabet.
    pub fn execution(&self, input: &str, options: RunOptions) -> Result<Execution<'_>, EngineError> {
        let mut tape = Vec::with_capacity(input.chars().count() + 2);
        tape.push(TapeSymbol::LeftEnd);
        for (position, symbol) in input.chars().enumerate() {
            if !self.spec.alphabet.contains(&symbol) {
                return Err(EngineError::InputSymbol { symbol, position });
            }
            tape.push(TapeSymbol::Sym(symbol));
        }
        tape.push(TapeSymbol::RightEnd);
        Ok(Execution {
            machine: self,
            tape,
            state: self.start,
            head: 0,
            counter: self.spec.counter.identity(),
            steps: 0,
            head_reversals: 0,
            last_head_direction: None,
            reversals: ReversalTracker::new(),
            options,
            trace: if options.record_trace { Some(Vec::new()) } else { None },
            verdict: None,
        })
    }

    /// Runs `input` to completion.
    pub fn run(&self, input: &str, options: RunOptions) -> Result<RunResult, EngineError> {
        let mut execution = self.execution(input, options)?;
        while execution.step()?.is_none() {}
        Ok(execution.into_result())
    }
}

/// A single in-progress run. Step it manually for lockstep comparisons, or
/// use [`CompiledMachine::run`].
pub struct Execution<'m> {
    machine: &'m CompiledMachine,
    tape: Vec<TapeSymbol>,
    state: usize,
    head: usize,
    counter: CounterValue,
    steps: u64,
    head_reversals: u64,
    last_head_direction: Option<HeadMove>,
    reversals: ReversalTracker,
    options: RunOptions,
    trace: Option<Vec<TraceStep>>,
    verdict: Option<Verdict>,
}

impl<'m> Execution<'m> {
    pub fn state_name(&self) -> &str {
        &self.machine.state_names[self.state]
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn counter_value(&self) -> &CounterValue {
        &self.counter
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn verdict(&self) -> Option<Verdict> {
        self.verdict
    }

    pub fn configuration(&self) -> Configuration {
        Configuration {
            state: self.state_name().to_owned(),
            head: self.head,
            counter: self.counter.clone(),
        }
    }

    /// Executes one step. Returns the final verdict once the run has
    /// halted, crashed, or exhausted its step budget; `None` while running.
    pub fn step(&mut self) -> Result<Option<Verdict>, EngineError> {
        if let Some(v) = self.verdict {
            return Ok(Some(v));
        }
        let spec = &self.machine.spec;
        let symbol = self.tape[self.head];
        let status = if spec.counter.is_identity(&self.counter) {
            CounterStatus::Zero
        } else {
            CounterStatus::Nonzero
        };
        let action = match self.machine.table.get(&(self.state, symbol, status)) {
            Some(action) => action.clone(),
            None => {
                let accepted = self.machine.accept[self.state]
                    && spec.counter.is_identity(&self.counter)
                    && (spec.head_mode == HeadMode::TwoWay
                        || self.head == self.tape.len() - 1);
                let v = if accepted { Verdict::Accept } else { Verdict::Reject };
                self.verdict = Some(v);
                return Ok(Some(v));
            }
        };
        if spec.visibility != Visibility::Deterministic {
            // Validation already enforced blindness; keep the runtime
            // assertion cheap and debug-only.
            debug_assert!(
                self.machine
                    .table
                    .get(&(self.state, symbol, status.flipped()))
                    .map(|other| other.state == action.state
                        && other.head_move == action.head_move
                        && other.op == action.op)
                    .unwrap_or(false),
                "blind machine consulted the counter status"
            );
        }
        if self.steps >= self.options.max_steps {
            self.verdict = Some(Verdict::StepLimit);
            return Ok(Some(Verdict::StepLimit));
        }

        if let Some(trace) = self.trace.as_mut() {
            trace.push(TraceStep {
                config: Configuration {
                    state: self.machine.state_names[self.state].clone(),
                    head: self.head,
                    counter: self.counter.clone(),
                },
                symbol,
                action: Action {
                    state: self.machine.state_names[action.state].clone(),
                    head_move: action.head_move,
                    op: action.op,
                },
            });
        }

        let next_counter = spec.counter.apply(&self.counter, action.op)?;
        self.reversals.record(action.op);

        let next_head = self.head as i64 + action.head_move.delta();
        if next_head < 0 || next_head as usize >= self.tape.len() {
            return Err(EngineError::HeadOutOfBounds);
        }
        if action.head_move != HeadMove::Stay {
            if let Some(last) = self.last_head_direction {
                if last != action.head_move {
                    self.head_reversals += 1;
                }
            }
            self.last_head_direction = Some(action.head_move);
        }

        self.state = action.state;
        self.head = next_head as usize;
        self.counter = next_counter;
        self.steps += 1;

        if spec.visibility == Visibility::PartiallyBlind && spec.counter.is_negative(&self.counter)
        {
            self.verdict = Some(Verdict::Crash);
            return Ok(Some(Verdict::Crash));
        }
        Ok(None)
    }

    pub fn into_result(self) -> RunResult {
        let verdict = self.verdict.expect("execution has not finished");
        RunResult {
            verdict,
            steps: self.steps,
            head_reversals: self.head_reversals,
            counter_reversals: self.reversals.count(),
            final_configuration: Configuration {
                state: self.machine.state_names[self.state].clone(),
                head: self.head,
                counter: self.counter,
            },
            trace: self.trace,
        }
    }
}

/// Validates and runs `spec` on one input. Compile once with
/// [`CompiledMachine`] when running many inputs.
pub fn run(spec: &MachineSpec, input: &str, options: RunOptions) -> Result<RunResult, EngineError> {
    CompiledMachine::new(spec)?.run(input, options)
}

/// As [`run`], with the full step trace retained.
pub fn trace(spec: &MachineSpec, input: &str, options: RunOptions) -> Result<RunResult, EngineError> {
    run(spec, input, RunOptions { record_trace: true, ..options })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counters::IntegerSpec;
    use num_bigint::BigInt;

    /// One-way partially blind machine over {a,b} accepting strings where
    /// counts balance and no prefix has more b's than a's.
    fn balance_machine() -> MachineSpec {
        let mut spec = MachineSpec {
            name: "balance".into(),
            states: vec!["scan".into(), "acc".into()],
            start: "scan".into(),
            accept: ["acc".to_string()].into(),
            alphabet: ['a', 'b'].into(),
            head_mode: HeadMode::OneWay,
            visibility: Visibility::PartiallyBlind,
            counter: CounterSpec::Integer(IntegerSpec::conventional()),
            transitions: BTreeMap::new(),
        };
        spec.set_transition_any_status("scan", TapeSymbol::LeftEnd, "scan", HeadMove::Right, CounterOp::Noop);
        spec.set_transition_any_status("scan", TapeSymbol::Sym('a'), "scan", HeadMove::Right, CounterOp::Increment(0));
        spec.set_transition_any_status("scan", TapeSymbol::Sym('b'), "scan", HeadMove::Right, CounterOp::Decrement(0));
        spec.set_transition_any_status("scan", TapeSymbol::RightEnd, "acc", HeadMove::Stay, CounterOp::Noop);
        spec
    }

    /// Two-way machine that ping-pongs between the endmarkers forever.
    fn looping_machine() -> MachineSpec {
        let mut spec = MachineSpec {
            name: "pingpong".into(),
            states: vec!["right".into(), "left".into()],
            start: "right".into(),
            accept: BTreeSet::new(),
            alphabet: ['a'].into(),
            head_mode: HeadMode::TwoWay,
            visibility: Visibility::Deterministic,
            counter: CounterSpec::Integer(IntegerSpec::conventional()),
            transitions: BTreeMap::new(),
        };
        for status in [CounterStatus::Zero, CounterStatus::Nonzero] {
            spec.set_transition("right", TapeSymbol::LeftEnd, status, "right", HeadMove::Right, CounterOp::Noop);
            spec.set_transition("right", TapeSymbol::Sym('a'), status, "right", HeadMove::Right, CounterOp::Noop);
            spec.set_transition("right", TapeSymbol::RightEnd, status, "left", HeadMove::Left, CounterOp::Noop);
            spec.set_transition("left", TapeSymbol::Sym('a'), status, "left", HeadMove::Left, CounterOp::Noop);
            spec.set_transition("left", TapeSymbol::LeftEnd, status, "right", HeadMove::Right, CounterOp::Noop);
        }
        spec
    }

    #[test]
    fn accepts_by_final_state_and_empty_counter() {
        let spec = balance_machine();
        let result = run(&spec, "aabb", RunOptions::default()).unwrap();
        assert_eq!(result.verdict, Verdict::Accept);
        assert_eq!(result.steps, 6);
        assert_eq!(result.head_reversals, 0);
        assert_eq!(result.counter_reversals, 1);

        let result = run(&spec, "aab", RunOptions::default()).unwrap();
        assert_eq!(result.verdict, Verdict::Reject);
    }

    #[test]
    fn empty_input_halts_on_the_right_endmarker() {
        let result = run(&balance_machine(), "", RunOptions::default()).unwrap();
        assert_eq!(result.verdict, Verdict::Accept);
        assert_eq!(result.final_configuration.head, 1);
    }

    #[test]
    fn partially_blind_machine_crashes_below_zero() {
        // Decrement at counter zero lands in the negative region.
        let result = run(&balance_machine(), "ba", RunOptions::default()).unwrap();
        assert_eq!(result.verdict, Verdict::Crash);
        assert_eq!(result.final_configuration.counter, CounterValue::Integer(BigInt::from(-1)));
    }

    #[test]
    fn crash_trace_ends_at_the_crashing_transition() {
        let result = trace(&balance_machine(), "abb", RunOptions::default()).unwrap();
        assert_eq!(result.verdict, Verdict::Crash);
        let trace = result.trace.unwrap();
        let last = trace.last().unwrap();
        assert_eq!(last.symbol, TapeSymbol::Sym('b'));
        assert_eq!(last.action.op, CounterOp::Decrement(0));
        assert_eq!(trace.len() as u64, result.steps);
    }

    #[test]
    fn missing_transition_halts() {
        let mut spec = balance_machine();
        spec.transitions.retain(|k, _| k.symbol != TapeSymbol::RightEnd);
        let result = run(&spec, "ab", RunOptions::default()).unwrap();
        // Halts on $ in "scan", which is not accepting.
        assert_eq!(result.verdict, Verdict::Reject);
        assert_eq!(result.final_configuration.state, "scan");
    }

    #[test]
    fn step_limit_is_a_distinct_verdict() {
        let result = run(&looping_machine(), "aaa", RunOptions { max_steps: 100, record_trace: false }).unwrap();
        assert_eq!(result.verdict, Verdict::StepLimit);
        assert_eq!(result.steps, 100);
    }

    #[test]
    fn head_reversals_count_direction_alternations() {
        let result = run(&looping_machine(), "aa", RunOptions { max_steps: 17, record_trace: false }).unwrap();
        // right(4 moves to $), left(3), right(3), ... — one reversal at
        // each endmarker bounce.
        assert!(result.head_reversals >= 4, "got {}", result.head_reversals);
    }

    #[test]
    fn input_symbols_outside_alphabet_are_rejected_up_front() {
        let err = run(&balance_machine(), "axb", RunOptions::default()).unwrap_err();
        assert_eq!(err, EngineError::InputSymbol { symbol: 'x', position: 1 });
    }

    #[test]
    fn runs_are_deterministic() {
        let spec = balance_machine();
        let a = run(&spec, "aababb", RunOptions::default()).unwrap();
        let b = run(&spec, "aababb", RunOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn blindness_violations_are_reported() {
        let mut spec = balance_machine();
        // Make the zero row differ from the nonzero row.
        spec.set_transition("scan", TapeSymbol::Sym('a'), CounterStatus::Zero, "scan", HeadMove::Right, CounterOp::Noop);
        let report = spec.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, MachineFinding::BlindnessViolation { state, symbol }
                if state == "scan" && *symbol == TapeSymbol::Sym('a'))));
        assert!(matches!(
            CompiledMachine::new(&spec),
            Err(EngineError::InvalidMachine(_))
        ));
    }

    #[test]
    fn one_way_machines_cannot_move_left() {
        let mut spec = balance_machine();
        spec.set_transition_any_status("scan", TapeSymbol::Sym('b'), "scan", HeadMove::Left, CounterOp::Noop);
        let report = spec.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, MachineFinding::BackwardMoveInOneWay { .. })));
    }

    #[test]
    fn endmarker_exits_are_reported() {
        let mut spec = looping_machine();
        spec.set_transition("right", TapeSymbol::RightEnd, CounterStatus::Zero, "right", HeadMove::Right, CounterOp::Noop);
        spec.set_transition("right", TapeSymbol::RightEnd, CounterStatus::Nonzero, "right", HeadMove::Right, CounterOp::Noop);
        assert!(spec
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, MachineFinding::MoveOffRightEnd { .. })));
    }

    #[test]
    fn unreachable_states_are_warned_not_rejected() {
        let mut spec = balance_machine();
        spec.states.push("island".into());
        let report = spec.validate();
        assert!(report.is_ok());
        assert!(report
            .warnings
            .iter()
            .any(|w| matches!(w, MachineWarning::UnreachableState { state } if state == "island")));
    }

    #[test]
    fn accept_requires_consuming_the_input_when_one_way() {
        let mut spec = balance_machine();
        // Accepting state reached mid-input: drop the 'b' rule so the
        // machine halts early in an accept state with identity counter.
        spec.transitions.retain(|k, _| k.symbol != TapeSymbol::Sym('b'));
        spec.accept.insert("scan".into());
        let result = run(&spec, "b", RunOptions::default()).unwrap();
        // Halted at the 'b' cell, not at $: one-way acceptance fails.
        assert_eq!(result.verdict, Verdict::Reject);
    }

    #[test]
    fn generator_index_out_of_range_is_reported() {
        let mut spec = balance_machine();
        spec.set_transition_any_status("scan", TapeSymbol::Sym('a'), "scan", HeadMove::Right, CounterOp::Increment(7));
        assert!(spec
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, MachineFinding::GeneratorIndexOutOfRange { index: 7, .. })));
    }
}
