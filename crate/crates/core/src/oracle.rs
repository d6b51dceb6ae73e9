//! Independent ground truth and differential testing.
//!
//! The language oracles are direct string predicates — they never touch the
//! machine engine or the counter arithmetic, so a differential run compares
//! two genuinely independent routes to the same answer. The word-product
//! check likewise carries its own fixed-precision integer arithmetic rather
//! than reusing the matrix counter.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::automaton::{
    CompiledMachine, EngineError, HeadMode, MachineSpec, RunOptions, Verdict, Visibility,
};
use crate::counter::CounterSpec;
use crate::counters::{real_sign, SignVerdict};
use crate::machines::LGenParams;

/// A deterministic input corpus: exhaustive length-lexicographic
/// enumeration up to `max_length`, or a seeded random sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    alphabet: Vec<char>,
    max_length: usize,
    sample: Option<SampleParams>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleParams {
    pub count: usize,
    pub seed: u64,
}

impl Corpus {
    pub fn exhaustive(alphabet: &[char], max_length: usize) -> Self {
        Corpus { alphabet: alphabet.to_vec(), max_length, sample: None }
    }

    pub fn sampled(alphabet: &[char], max_length: usize, count: usize, seed: u64) -> Self {
        Corpus { alphabet: alphabet.to_vec(), max_length, sample: Some(SampleParams { count, seed }) }
    }

    pub fn len(&self) -> usize {
        match self.sample {
            Some(s) => s.count,
            None => {
                let base = self.alphabet.len();
                if base == 0 {
                    1
                } else {
                    (0..=self.max_length).map(|n| base.pow(n as u32)).sum()
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn strings(&self) -> Box<dyn Iterator<Item = String> + '_> {
        match self.sample {
            None => Box::new(LengthLexIter::new(&self.alphabet, self.max_length)),
            Some(SampleParams { count, seed }) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let alphabet = self.alphabet.clone();
                let max_length = self.max_length;
                Box::new((0..count).map(move |_| {
                    let len = rng.random_range(0..=max_length);
                    (0..len).map(|_| alphabet[rng.random_range(0..alphabet.len())]).collect()
                }))
            }
        }
    }
}

struct LengthLexIter<'a> {
    alphabet: &'a [char],
    digits: Option<Vec<usize>>,
    max_length: usize,
}

impl<'a> LengthLexIter<'a> {
    fn new(alphabet: &'a [char], max_length: usize) -> Self {
        LengthLexIter { alphabet, digits: Some(Vec::new()), max_length }
    }
}

impl Iterator for LengthLexIter<'_> {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        let digits = self.digits.as_mut()?;
        let current: String = digits.iter().map(|&d| self.alphabet[d]).collect();
        // Odometer in base |alphabet|; full wrap advances to the next length.
        let mut pos = digits.len();
        let mut wrapped = true;
        while pos > 0 {
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < self.alphabet.len() {
                wrapped = false;
                break;
            }
            digits[pos] = 0;
        }
        if wrapped {
            let next_length = digits.len() + 1;
            self.digits = if next_length > self.max_length || self.alphabet.is_empty() {
                None
            } else {
                Some(vec![0; next_length])
            };
        }
        Some(current)
    }
}

/// Membership in { a₀ⁿ a₁^(l₁n) … a_(k−1)^(l_(k−1)n) }, by direct counting.
pub fn oracle_lgen(params: &LGenParams, x: &str) -> bool {
    let k = params.class_count();
    let mut counts = vec![0u64; k];
    let mut current = 0usize;
    for c in x.chars() {
        let class = match (c as u32).checked_sub('a' as u32) {
            Some(d) if (d as usize) < k => d as usize,
            _ => return false,
        };
        if class < current {
            return false;
        }
        current = class;
        counts[class] += 1;
    }
    let n = counts[0];
    (1..k).all(|i| counts[i] == params.multipliers()[i - 1].saturating_mul(n))
}

/// Membership in { x₀#x₁#…#x_k# | k ≥ 1, some xᵢ = x₀ }, by direct block
/// comparison. Blocks may be empty; the trailing '#' is required.
pub fn oracle_lpat(x: &str) -> bool {
    if x.chars().any(|c| !matches!(c, '0' | '1' | '#')) {
        return false;
    }
    let Some(body) = x.strip_suffix('#') else {
        return false;
    };
    let blocks: Vec<&str> = body.split('#').collect();
    blocks.len() >= 2 && blocks[1..].iter().any(|b| *b == blocks[0])
}

/// Membership in { x#xᴿ }, by direct reversal around a single '#'.
pub fn oracle_lpal(x: &str) -> bool {
    if x.chars().any(|c| !matches!(c, '0' | '1' | '#')) {
        return false;
    }
    if x.chars().filter(|&c| c == '#').count() != 1 {
        return false;
    }
    let (front, back) = x.split_once('#').unwrap();
    front.chars().eq(back.chars().rev())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("words have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid word letter '{0}' (expected 'A' or 'B')")]
    BadLetter(char),
}

// Fixed-precision copies of the word generators and their inverses
// (inverse numerators share the denominator 25), kept separate from the
// counter arithmetic on purpose.
const GEN_A: [[i128; 3]; 3] = [[4, 3, 0], [-3, 4, 0], [0, 0, 5]];
const GEN_B: [[i128; 3]; 3] = [[4, 0, 3], [0, 5, 0], [-3, 0, 4]];
const GEN_A_INV: [[i128; 3]; 3] = [[4, -3, 0], [3, 4, 0], [0, 0, 5]];
const GEN_B_INV: [[i128; 3]; 3] = [[4, 0, -3], [0, 5, 0], [3, 0, 4]];

fn apply_i128(m: &[[i128; 3]; 3], v: [i128; 3]) -> [i128; 3] {
    let mut out = [0i128; 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}

/// Checks the word-separation identity: with u = Y₁⁻¹…Yₙ⁻¹ Xₙ…X₁ (1,0,0)ᵀ
/// computed exactly, returns whether u[2]² + u[3]² = 0 — which holds iff
/// X = Y. Words are strings over the letters 'A' and 'B'; lengths up to 16
/// stay well inside the fixed-precision range.
pub fn aw_product_check(x: &str, y: &str) -> Result<bool, OracleError> {
    if x.chars().count() != y.chars().count() {
        return Err(OracleError::LengthMismatch(x.chars().count(), y.chars().count()));
    }
    let pick = |c: char, fwd: bool| match (c, fwd) {
        ('A', true) => Ok(&GEN_A),
        ('B', true) => Ok(&GEN_B),
        ('A', false) => Ok(&GEN_A_INV),
        ('B', false) => Ok(&GEN_B_INV),
        _ => Err(OracleError::BadLetter(c)),
    };
    let mut u = [1i128, 0, 0];
    // X_n ... X_1 applied to e1: X_1 first.
    for c in x.chars() {
        u = apply_i128(pick(c, true)?, u);
    }
    // Then Y_1^-1 ... Y_n^-1: Y_n^-1 first. Denominator factors of 25 are
    // dropped — they cannot affect whether a component is zero.
    for c in y.chars().rev() {
        u = apply_i128(pick(c, false)?, u);
    }
    Ok(u[1] == 0 && u[2] == 0)
}

/// One machine-vs-oracle mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub input: String,
    pub machine: Verdict,
    pub oracle: bool,
}

impl Disagreement {
    /// Machine-readable record, one line per disagreement.
    pub fn json_line(&self) -> String {
        serde_json::json!({
            "input": self.input,
            "machine": self.machine.to_string(),
            "oracle": self.oracle,
        })
        .to_string()
    }
}

/// Aggregate outcome of a corpus run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffReport {
    pub total: u64,
    pub machine_accepts: u64,
    pub oracle_accepts: u64,
    pub crashes: u64,
    pub step_limit_hits: u64,
    pub max_counter_reversals: u64,
    pub max_head_reversals: u64,
    /// Highest counter-reversal count seen per input length.
    pub max_counter_reversals_by_len: BTreeMap<usize, u64>,
    pub disagreements: Vec<Disagreement>,
}

impl DiffReport {
    pub fn agreed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs the machine against a string predicate over a whole corpus. Crash
/// and step-limit verdicts count as "not accepted" for the comparison but
/// are tallied separately so they remain distinguishable in the report.
pub fn differential_test(
    spec: &MachineSpec,
    oracle: impl Fn(&str) -> bool,
    corpus: &Corpus,
    options: RunOptions,
) -> Result<DiffReport, EngineError> {
    let machine = CompiledMachine::new(spec)?;
    let mut report = DiffReport::default();
    for input in corpus.strings() {
        let result = machine.run(&input, options)?;
        let expected = oracle(&input);
        report.total += 1;
        if result.verdict == Verdict::Accept {
            report.machine_accepts += 1;
        }
        if expected {
            report.oracle_accepts += 1;
        }
        match result.verdict {
            Verdict::Crash => report.crashes += 1,
            Verdict::StepLimit => report.step_limit_hits += 1,
            _ => {}
        }
        report.max_counter_reversals = report.max_counter_reversals.max(result.counter_reversals);
        report.max_head_reversals = report.max_head_reversals.max(result.head_reversals);
        let by_len = report.max_counter_reversals_by_len.entry(input.chars().count()).or_insert(0);
        *by_len = (*by_len).max(result.counter_reversals);
        if result.verdict.accepted() != expected {
            report.disagreements.push(Disagreement {
                input,
                machine: result.verdict,
                oracle: expected,
            });
        }
    }
    Ok(report)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("segment {index} is empty; every swappable segment needs at least one symbol")]
    EmptySwappable { index: usize },
    #[error("expected one more fixed segment than swappable ({fixed} fixed, {swappable} swappable)")]
    SegmentCounts { fixed: usize, swappable: usize },
    #[error("segments cover {covered} symbols but the input has {input_len}")]
    LengthMismatch { covered: usize, input_len: usize },
    #[error("machine has {states} states, so the decomposition needs {expected} swappable segments, got {got}")]
    WrongSegmentCount { states: usize, expected: usize, got: usize },
}

/// A split of an input into v₁w₁v₂w₂…v_r w_r v_(r+1): fixed segments vᵢ
/// (possibly empty) alternating with nonempty swappable segments wᵢ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    fixed_lens: Vec<usize>,
    swappable_lens: Vec<usize>,
}

impl Decomposition {
    pub fn new(fixed_lens: Vec<usize>, swappable_lens: Vec<usize>) -> Result<Self, DecompositionError> {
        if fixed_lens.len() != swappable_lens.len() + 1 {
            return Err(DecompositionError::SegmentCounts {
                fixed: fixed_lens.len(),
                swappable: swappable_lens.len(),
            });
        }
        if let Some(index) = swappable_lens.iter().position(|&w| w == 0) {
            return Err(DecompositionError::EmptySwappable { index });
        }
        Ok(Decomposition { fixed_lens, swappable_lens })
    }

    pub fn segment_count(&self) -> usize {
        self.swappable_lens.len()
    }

    pub fn total_len(&self) -> usize {
        self.fixed_lens.iter().sum::<usize>() + self.swappable_lens.iter().sum::<usize>()
    }

    /// Byte offsets (start, end) of swappable segment `i` (0-based).
    fn swappable_bounds(&self, i: usize) -> (usize, usize) {
        let mut offset = 0;
        for j in 0..self.swappable_lens.len() {
            offset += self.fixed_lens[j];
            if j == i {
                return (offset, offset + self.swappable_lens[j]);
            }
            offset += self.swappable_lens[j];
        }
        unreachable!("segment index out of range")
    }

    /// Boundary pairs (start, end) for every swappable segment.
    pub fn swappable_offsets(&self) -> Vec<(usize, usize)> {
        (0..self.swappable_lens.len()).map(|i| self.swappable_bounds(i)).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterchangeError {
    #[error("interchange needs a one-way partially blind real-counter machine")]
    WrongMachineShape,
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterchangeOutcome {
    /// The swapped string was accepted, as the interchange property demands.
    Pass { left: usize, right: usize, swapped: String },
    /// The swapped string was not accepted: a genuine counterexample.
    Fail { left: usize, right: usize, swapped: String, verdict: Verdict },
    /// The property's preconditions did not hold; nothing was tested.
    Inconclusive { reason: InconclusiveReason },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InconclusiveReason {
    InputNotAccepted,
    CounterMarginTooSmall,
}

impl fmt::Display for InconclusiveReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InconclusiveReason::InputNotAccepted => "input not accepted by the machine",
            InconclusiveReason::CounterMarginTooSmall => {
                "counter value after the first fixed segment is below the required margin"
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterchangeReport {
    pub outcome: InterchangeOutcome,
    /// (state before, state after) for each swappable segment, when the
    /// run reached them.
    pub segment_states: Vec<(String, String)>,
}

/// Tests the segment-interchange property on one accepted input: with
/// enough counter margin after v₁, two swappable segments with matching
/// (entry state, exit state) pairs exist by pigeonhole, and exchanging them
/// must keep the string in the machine's language.
///
/// The decomposition must carry exactly |Q|²+1 swappable segments. The
/// margin compares the counter after v₁ against (total remaining segment
/// length) times the largest generator, so that the swapped run can never
/// be driven negative where the original was not.
pub fn interchange_test(
    spec: &MachineSpec,
    input: &str,
    decomposition: &Decomposition,
    options: RunOptions,
) -> Result<InterchangeReport, InterchangeError> {
    let real = match (&spec.counter, spec.head_mode, spec.visibility) {
        (CounterSpec::RealSqrt(real), HeadMode::OneWay, Visibility::PartiallyBlind) => real,
        _ => return Err(InterchangeError::WrongMachineShape),
    };
    let input_chars: Vec<char> = input.chars().collect();
    if decomposition.total_len() != input_chars.len() {
        return Err(DecompositionError::LengthMismatch {
            covered: decomposition.total_len(),
            input_len: input_chars.len(),
        }
        .into());
    }
    let expected_segments = spec.states.len() * spec.states.len() + 1;
    if decomposition.segment_count() != expected_segments {
        return Err(DecompositionError::WrongSegmentCount {
            states: spec.states.len(),
            expected: expected_segments,
            got: decomposition.segment_count(),
        }
        .into());
    }

    let machine = CompiledMachine::new(spec)?;

    // Run the input, recording the state at each consumed-prefix boundary
    // (the state on first arrival at each tape cell) and the counter after
    // the first fixed segment.
    let mut boundary_states: Vec<Option<String>> = vec![None; input_chars.len() + 1];
    let first_fixed_len = decomposition.fixed_lens[0];
    let mut counter_after_v1 = None;
    let mut execution = machine.execution(input, options)?;
    let note = |boundary_states: &mut Vec<Option<String>>,
                counter_after_v1: &mut Option<Vec<BigInt>>,
                head: usize,
                state: &str,
                counter: &crate::counter::CounterValue| {
        if head >= 1 {
            let consumed = head - 1;
            if consumed <= input_chars.len() && boundary_states[consumed].is_none() {
                boundary_states[consumed] = Some(state.to_owned());
                if consumed == first_fixed_len {
                    if let crate::counter::CounterValue::RealSqrt(v) = counter {
                        *counter_after_v1 = Some(v.clone());
                    }
                }
            }
        }
    };
    note(
        &mut boundary_states,
        &mut counter_after_v1,
        execution.head(),
        execution.state_name(),
        execution.counter_value(),
    );
    let verdict = loop {
        match execution.step()? {
            Some(v) => break v,
            None => note(
                &mut boundary_states,
                &mut counter_after_v1,
                execution.head(),
                execution.state_name(),
                execution.counter_value(),
            ),
        }
    };

    if verdict != Verdict::Accept {
        return Ok(InterchangeReport {
            outcome: InterchangeOutcome::Inconclusive { reason: InconclusiveReason::InputNotAccepted },
            segment_states: Vec::new(),
        });
    }

    // Margin check: counter after v₁ must dominate the combined length of
    // everything between v₁ and the final fixed segment, scaled by the
    // largest generator.
    let offsets = decomposition.swappable_offsets();
    let margin_symbols: usize = decomposition.swappable_lens.iter().sum::<usize>()
        + decomposition.fixed_lens[1..decomposition.fixed_lens.len() - 1].iter().sum::<usize>();
    let generators = real.generators();
    let mut largest = &generators[0];
    for g in &generators[1..] {
        let diff: Vec<BigInt> = g.iter().zip(largest).map(|(a, b)| a - b).collect();
        if real_sign(real.primes(), &diff) == SignVerdict::Positive {
            largest = g;
        }
    }
    let after_v1 = counter_after_v1.expect("accepted one-way run consumed every boundary");
    let margin: Vec<BigInt> = after_v1
        .iter()
        .zip(largest)
        .map(|(v, g)| v - g * BigInt::from(margin_symbols))
        .collect();
    if real_sign(real.primes(), &margin) == SignVerdict::Negative {
        return Ok(InterchangeReport {
            outcome: InterchangeOutcome::Inconclusive { reason: InconclusiveReason::CounterMarginTooSmall },
            segment_states: Vec::new(),
        });
    }

    let segment_states: Vec<(String, String)> = offsets
        .iter()
        .map(|&(start, end)| {
            (
                boundary_states[start].clone().expect("boundary state recorded"),
                boundary_states[end].clone().expect("boundary state recorded"),
            )
        })
        .collect();

    // Pigeonhole: r = |Q|²+1 segments guarantee two with matching pairs.
    let (left, right) = {
        let mut found = None;
        'outer: for l in 0..segment_states.len() {
            for m in l + 1..segment_states.len() {
                if segment_states[l] == segment_states[m] {
                    found = Some((l, m));
                    break 'outer;
                }
            }
        }
        found.expect("pigeonhole over |Q|^2+1 segments")
    };

    let (l_start, l_end) = offsets[left];
    let (r_start, r_end) = offsets[right];
    let mut swapped: Vec<char> = Vec::with_capacity(input_chars.len());
    swapped.extend_from_slice(&input_chars[..l_start]);
    swapped.extend_from_slice(&input_chars[r_start..r_end]);
    swapped.extend_from_slice(&input_chars[l_end..r_start]);
    swapped.extend_from_slice(&input_chars[l_start..l_end]);
    swapped.extend_from_slice(&input_chars[r_end..]);
    let swapped: String = swapped.into_iter().collect();

    let rerun = machine.run(&swapped, options)?;
    let outcome = if rerun.verdict == Verdict::Accept {
        InterchangeOutcome::Pass { left, right, swapped }
    } else {
        InterchangeOutcome::Fail { left, right, swapped, verdict: rerun.verdict }
    };
    Ok(InterchangeReport { outcome, segment_states })
}

/// Diagnostic for the bounded-counter heuristic: exhaustively runs every
/// input up to `max_length` on a one-way real-counter machine, collecting
/// the distinct counter values seen at any step. If the final length round
/// contributes no new value, the machine is flagged as possibly regular —
/// a report, not a decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedCounterReport {
    /// (input length bound, cumulative distinct counter values).
    pub distinct_by_length: Vec<(usize, usize)>,
    pub possibly_regular: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbeError {
    #[error("bounded-counter probe needs a one-way real-counter machine")]
    WrongMachineShape,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

pub fn bounded_counter_probe(
    spec: &MachineSpec,
    max_length: usize,
    options: RunOptions,
) -> Result<BoundedCounterReport, ProbeError> {
    if !matches!(spec.counter, CounterSpec::RealSqrt(_)) || spec.head_mode != HeadMode::OneWay {
        return Err(ProbeError::WrongMachineShape);
    }
    let machine = CompiledMachine::new(spec)?;
    let alphabet: Vec<char> = spec.alphabet.iter().copied().collect();
    let mut seen: std::collections::HashSet<Vec<BigInt>> = std::collections::HashSet::new();
    let mut distinct_by_length = Vec::new();
    for bound in 0..=max_length {
        let corpus = Corpus::exhaustive(&alphabet, bound);
        for input in corpus.strings() {
            if input.chars().count() != bound {
                continue;
            }
            let mut execution = machine.execution(&input, options)?;
            loop {
                if let crate::counter::CounterValue::RealSqrt(v) = execution.counter_value() {
                    if !seen.contains(v) {
                        seen.insert(v.clone());
                    }
                }
                if execution.step()?.is_some() {
                    break;
                }
            }
        }
        distinct_by_length.push((bound, seen.len()));
    }
    let possibly_regular = match distinct_by_length.len() {
        0 | 1 => false,
        n => distinct_by_length[n - 1].1 == distinct_by_length[n - 2].1,
    };
    Ok(BoundedCounterReport { distinct_by_length, possibly_regular })
}
