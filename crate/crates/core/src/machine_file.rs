//! Plain-text machine descriptions.
//!
//! A machine file has five sections. Keys repeat where noted; full-line
//! comments start with ';'.
//!
//! ```text
//! [machine]
//! name = lgen-k3-l1.1-p2.3
//! head_mode = one-way            ; or two-way
//! visibility = partially-blind   ; deterministic | blind | partially-blind
//!
//! [counter]
//! kind = real-sqrt               ; integer | real-sqrt | matrix
//! primes = 2,3                   ; real-sqrt only
//! gen = 1,1                      ; one line per generator
//! gen = 1,0
//! gen = 0,1
//! ; integer kind:  gen = 1
//! ; matrix kind:   dimension = 3 and gen = row-major entries ("p/q" or
//! ;                integers), e.g. gen = 4,3,0,-3,4,0,0,0,5
//!
//! [states]
//! list = q0,q1,q2,acc
//! start = q0
//! accept = acc
//!
//! [alphabet]
//! symbols = a,b,c
//!
//! [transitions]
//! ; state symbol status -> state head-move op
//! ; symbol: one input symbol, "^" for the left endmarker, "$" for the right
//! ; status: "0" (identity), "1" (not identity), "*" for both
//! ; op: inc:<j> | dec:<j> | noop
//! q0 ^ * q0 +1 noop
//! q0 a * q0 +1 inc:0
//! q0 $ * acc 0 noop
//! ```
//!
//! Rationals serialize as `p/q` with q > 0 and gcd(p,q) = 1 (plain integers
//! when q = 1), so emitted files parse back bit-exactly. Blind and
//! partially blind machines must use "*" rows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::automaton::{
    Action, CounterStatus, HeadMode, HeadMove, MachineSpec, TapeSymbol, TransitionKey, Visibility,
};
use crate::counter::{CounterOp, CounterSpec, CounterValue};
use crate::counters::{IntegerSpec, MatrixSpec, RationalMatrix, RealSqrtSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmitError {
    #[error("symbol {0:?} cannot be written (reserved or whitespace)")]
    UnwritableSymbol(char),
    #[error("state name {0:?} contains whitespace")]
    UnwritableState(String),
}

/// Renders a counter value: a plain integer, a sum of `c√p` terms (every
/// basis term written, signs inline), or a row-major rational matrix.
pub fn render_value(spec: &CounterSpec, value: &CounterValue) -> String {
    match (spec, value) {
        (CounterSpec::Integer(_), CounterValue::Integer(v)) => v.to_string(),
        (CounterSpec::RealSqrt(s), CounterValue::RealSqrt(coeffs)) => {
            let mut out = String::new();
            for (i, (&p, c)) in s.primes().iter().zip(coeffs).enumerate() {
                if i > 0 && !c.is_negative() {
                    out.push('+');
                }
                let _ = write!(out, "{c}\u{221a}{p}");
            }
            out
        }
        (CounterSpec::Matrix(_), CounterValue::Matrix(m)) => {
            let dim = m.dim();
            let mut out = String::from("[");
            for row in 0..dim {
                if row > 0 {
                    out.push(',');
                }
                out.push('[');
                for col in 0..dim {
                    if col > 0 {
                        out.push(',');
                    }
                    out.push_str(&render_rational(&m.entry(row, col)));
                }
                out.push(']');
            }
            out.push(']');
            out
        }
        _ => unreachable!("value kind does not match spec"),
    }
}

/// Parses a rendering produced by [`render_value`] back into a value.
pub fn parse_value(spec: &CounterSpec, text: &str) -> Result<CounterValue, ParseError> {
    let fail = |message: &str| ParseError { line: 0, message: message.into() };
    match spec {
        CounterSpec::Integer(_) => {
            let v: BigInt = text.parse().map_err(|_| fail("expected an integer"))?;
            Ok(CounterValue::Integer(v))
        }
        CounterSpec::RealSqrt(s) => {
            // Terms look like c√p, joined by the sign of the next c.
            let mut coeffs = Vec::new();
            let mut rest = text;
            while !rest.is_empty() {
                let root = rest.find('\u{221a}').ok_or_else(|| fail("expected a \u{221a} term"))?;
                let coeff_str = rest[..root].trim_start_matches('+');
                let c: BigInt = coeff_str.parse().map_err(|_| fail("bad coefficient"))?;
                let after = &rest[root + '\u{221a}'.len_utf8()..];
                let end = after
                    .find(['+', '-'])
                    .unwrap_or(after.len());
                let p: u64 = after[..end].parse().map_err(|_| fail("bad prime"))?;
                let index = coeffs.len();
                if index >= s.primes().len() || s.primes()[index] != p {
                    return Err(fail("basis mismatch"));
                }
                coeffs.push(c);
                rest = &after[end..];
            }
            if coeffs.len() != s.primes().len() {
                return Err(fail("missing basis terms"));
            }
            Ok(CounterValue::RealSqrt(coeffs))
        }
        CounterSpec::Matrix(s) => {
            let dim = s.dimension();
            let inner = text
                .strip_prefix("[[")
                .and_then(|t| t.strip_suffix("]]"))
                .ok_or_else(|| fail("expected [[..],[..]]"))?;
            let mut entries = Vec::new();
            for row in inner.split("],[") {
                for entry in row.split(',') {
                    entries.push(parse_rational(entry).map_err(|m| fail(&m))?);
                }
            }
            RationalMatrix::from_entries(dim, entries)
                .map(CounterValue::Matrix)
                .map_err(|e| fail(&e.to_string()))
        }
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    match text.split_once('/') {
        None => {
            let n: BigInt = text.parse().map_err(|_| format!("bad integer {text:?}"))?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
            let d: BigInt = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Serializes a machine into the file format. Transitions with equal
/// actions for both status values coalesce into one "*" row.
pub fn emit(spec: &MachineSpec) -> Result<String, EmitError> {
    let mut out = String::new();
    let _ = writeln!(out, "[machine]");
    let _ = writeln!(out, "name = {}", spec.name);
    let _ = writeln!(out, "head_mode = {}", spec.head_mode);
    let _ = writeln!(out, "visibility = {}", spec.visibility);
    out.push('\n');

    let _ = writeln!(out, "[counter]");
    match &spec.counter {
        CounterSpec::Integer(s) => {
            let _ = writeln!(out, "kind = integer");
            for g in s.generators() {
                let _ = writeln!(out, "gen = {g}");
            }
        }
        CounterSpec::RealSqrt(s) => {
            let _ = writeln!(out, "kind = real-sqrt");
            let primes: Vec<String> = s.primes().iter().map(u64::to_string).collect();
            let _ = writeln!(out, "primes = {}", primes.join(","));
            for g in s.generators() {
                let coeffs: Vec<String> = g.iter().map(BigInt::to_string).collect();
                let _ = writeln!(out, "gen = {}", coeffs.join(","));
            }
        }
        CounterSpec::Matrix(s) => {
            let _ = writeln!(out, "kind = matrix");
            let _ = writeln!(out, "dimension = {}", s.dimension());
            for g in s.generators() {
                let entries: Vec<String> = g.entries().iter().map(render_rational).collect();
                let _ = writeln!(out, "gen = {}", entries.join(","));
            }
        }
    }
    out.push('\n');

    for state in &spec.states {
        if state.chars().any(char::is_whitespace) || state.is_empty() {
            return Err(EmitError::UnwritableState(state.clone()));
        }
    }
    let _ = writeln!(out, "[states]");
    let _ = writeln!(out, "list = {}", spec.states.join(","));
    let _ = writeln!(out, "start = {}", spec.start);
    let accept: Vec<&str> = spec.accept.iter().map(String::as_str).collect();
    let _ = writeln!(out, "accept = {}", accept.join(","));
    out.push('\n');

    let _ = writeln!(out, "[alphabet]");
    let symbols: Vec<String> = spec.alphabet.iter().map(|c| c.to_string()).collect();
    for &c in &spec.alphabet {
        if matches!(c, '^' | '$' | ',' | ';') || c.is_whitespace() {
            return Err(EmitError::UnwritableSymbol(c));
        }
    }
    let _ = writeln!(out, "symbols = {}", symbols.join(","));
    out.push('\n');

    let _ = writeln!(out, "[transitions]");
    let mut emitted: BTreeSet<(String, TapeSymbol)> = BTreeSet::new();
    for (key, action) in &spec.transitions {
        let pair = (key.state.clone(), key.symbol);
        let other_status = key.status.flipped();
        let twin = spec.transitions.get(&TransitionKey {
            state: key.state.clone(),
            symbol: key.symbol,
            status: other_status,
        });
        let status_token = if twin == Some(action) {
            if emitted.contains(&pair) {
                continue;
            }
            emitted.insert(pair);
            "*"
        } else {
            match key.status {
                CounterStatus::Zero => "0",
                CounterStatus::Nonzero => "1",
            }
        };
        let _ = writeln!(
            out,
            "{} {} {} {} {} {}",
            key.state, key.symbol, status_token, action.state, action.head_move, action.op
        );
    }
    Ok(out)
}

#[derive(Default)]
struct CounterSection {
    kind: Option<(String, usize)>,
    primes: Option<(Vec<u64>, usize)>,
    dimension: Option<(usize, usize)>,
    generators: Vec<(String, usize)>,
}

/// Parses the file format back into a [`MachineSpec`]. Errors carry the
/// offending line number.
pub fn parse(text: &str) -> Result<MachineSpec, ParseError> {
    let mut section = String::new();
    let mut name = None;
    let mut head_mode = None;
    let mut visibility = None;
    let mut counter = CounterSection::default();
    let mut states: Option<Vec<String>> = None;
    let mut start = None;
    let mut accept: Option<Vec<String>> = None;
    let mut alphabet: Option<Vec<char>> = None;
    let mut transition_lines: Vec<(usize, String)> = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with(';') {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let Some(header) = header.strip_suffix(']') else {
                return err(line_no, "unterminated section header");
            };
            if !matches!(header, "machine" | "counter" | "states" | "alphabet" | "transitions") {
                return err(line_no, format!("unknown section [{header}]"));
            }
            section = header.to_owned();
            continue;
        }
        if section == "transitions" {
            transition_lines.push((line_no, line.to_owned()));
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return err(line_no, "expected key = value");
        };
        let key = key.trim();
        let value = value.trim();
        match (section.as_str(), key) {
            ("machine", "name") => name = Some(value.to_owned()),
            ("machine", "head_mode") => {
                head_mode = Some(match value {
                    "one-way" => HeadMode::OneWay,
                    "two-way" => HeadMode::TwoWay,
                    other => return err(line_no, format!("unknown head_mode {other:?}")),
                })
            }
            ("machine", "visibility") => {
                visibility = Some(match value {
                    "deterministic" => Visibility::Deterministic,
                    "blind" => Visibility::Blind,
                    "partially-blind" => Visibility::PartiallyBlind,
                    other => return err(line_no, format!("unknown visibility {other:?}")),
                })
            }
            ("counter", "kind") => counter.kind = Some((value.to_owned(), line_no)),
            ("counter", "primes") => {
                let primes = split_list(value)
                    .iter()
                    .map(|p| p.parse::<u64>().map_err(|_| ParseError {
                        line: line_no,
                        message: format!("bad prime {p:?}"),
                    }))
                    .collect::<Result<Vec<_>, _>>()?;
                counter.primes = Some((primes, line_no));
            }
            ("counter", "dimension") => {
                let d = value.parse::<usize>().map_err(|_| ParseError {
                    line: line_no,
                    message: format!("bad dimension {value:?}"),
                })?;
                counter.dimension = Some((d, line_no));
            }
            ("counter", "gen") => counter.generators.push((value.to_owned(), line_no)),
            ("states", "list") => {
                states = Some(split_list(value).iter().map(|s| s.to_string()).collect())
            }
            ("states", "start") => start = Some(value.to_owned()),
            ("states", "accept") => {
                accept = Some(split_list(value).iter().map(|s| s.to_string()).collect())
            }
            ("alphabet", "symbols") => {
                let mut symbols = Vec::new();
                for s in split_list(value) {
                    let mut chars = s.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => {
                            if matches!(c, '^' | '$' | ',' | ';') {
                                return err(line_no, format!("symbol {c:?} is reserved"));
                            }
                            symbols.push(c);
                        }
                        _ => return err(line_no, format!("symbols must be single characters, got {s:?}")),
                    }
                }
                alphabet = Some(symbols);
            }
            ("", _) => return err(line_no, "content before the first section header"),
            (section, key) => {
                return err(line_no, format!("unknown key {key:?} in section [{section}]"))
            }
        }
    }

    let head_mode = head_mode.ok_or(ParseError { line: 0, message: "missing head_mode".into() })?;
    let visibility =
        visibility.ok_or(ParseError { line: 0, message: "missing visibility".into() })?;
    let states = states.ok_or(ParseError { line: 0, message: "missing states list".into() })?;
    let start = start.ok_or(ParseError { line: 0, message: "missing start state".into() })?;
    let accept = accept.unwrap_or_default();
    let alphabet = alphabet.ok_or(ParseError { line: 0, message: "missing alphabet".into() })?;

    let counter = build_counter(counter)?;

    let mut spec = MachineSpec {
        name: name.unwrap_or_else(|| "unnamed".into()),
        states,
        start,
        accept: accept.into_iter().filter(|s| !s.is_empty()).collect(),
        alphabet: alphabet.into_iter().collect(),
        head_mode,
        visibility,
        counter,
        transitions: BTreeMap::new(),
    };

    for (line_no, line) in transition_lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 6 {
            return err(line_no, format!("expected 6 fields, got {}", fields.len()));
        }
        let state = fields[0];
        let symbol = parse_symbol(fields[1], &spec.alphabet, line_no)?;
        let statuses: &[CounterStatus] = match fields[2] {
            "0" => &[CounterStatus::Zero],
            "1" => &[CounterStatus::Nonzero],
            "*" => &[CounterStatus::Zero, CounterStatus::Nonzero],
            other => return err(line_no, format!("bad status {other:?}")),
        };
        if spec.visibility != Visibility::Deterministic && statuses.len() == 1 {
            return err(line_no, "blind machines must use status \"*\"");
        }
        let target = fields[3];
        let head_move = match fields[4] {
            "-1" => HeadMove::Left,
            "0" => HeadMove::Stay,
            "+1" | "1" => HeadMove::Right,
            other => return err(line_no, format!("bad head move {other:?}")),
        };
        let op = parse_op(fields[5], line_no)?;
        for &status in statuses {
            let key = TransitionKey { state: state.to_owned(), symbol, status };
            let action = Action { state: target.to_owned(), head_move, op };
            if let Some(existing) = spec.transitions.get(&key) {
                if *existing != action {
                    return err(line_no, format!("conflicting transition for ({state}, {})", fields[1]));
                }
            }
            spec.transitions.insert(key, action);
        }
    }
    Ok(spec)
}

fn split_list(value: &str) -> Vec<&str> {
    if value.is_empty() {
        Vec::new()
    } else {
        value.split(',').map(str::trim).collect()
    }
}

fn parse_symbol(token: &str, alphabet: &BTreeSet<char>, line_no: usize) -> Result<TapeSymbol, ParseError> {
    match token {
        "^" => Ok(TapeSymbol::LeftEnd),
        "$" => Ok(TapeSymbol::RightEnd),
        _ => {
            let mut chars = token.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if alphabet.contains(&c) => Ok(TapeSymbol::Sym(c)),
                (Some(c), None) => err(line_no, format!("symbol {c:?} is not in the alphabet")),
                _ => err(line_no, format!("bad symbol token {token:?}")),
            }
        }
    }
}

fn parse_op(token: &str, line_no: usize) -> Result<CounterOp, ParseError> {
    if token == "noop" {
        return Ok(CounterOp::Noop);
    }
    let (kind, index) = token
        .split_once(':')
        .ok_or_else(|| ParseError { line: line_no, message: format!("bad counter op {token:?}") })?;
    let index: usize = index
        .parse()
        .map_err(|_| ParseError { line: line_no, message: format!("bad generator index {index:?}") })?;
    match kind {
        "inc" => Ok(CounterOp::Increment(index)),
        "dec" => Ok(CounterOp::Decrement(index)),
        other => err(line_no, format!("bad counter op {other:?}")),
    }
}

fn build_counter(section: CounterSection) -> Result<CounterSpec, ParseError> {
    let (kind, kind_line) =
        section.kind.ok_or(ParseError { line: 0, message: "missing counter kind".into() })?;
    let gen_err = |line: usize, message: String| ParseError { line, message };
    match kind.as_str() {
        "integer" => {
            let mut generators = Vec::new();
            for (text, line) in &section.generators {
                let g: BigInt =
                    text.parse().map_err(|_| gen_err(*line, format!("bad integer generator {text:?}")))?;
                generators.push(g);
            }
            IntegerSpec::new(generators)
                .map(CounterSpec::Integer)
                .map_err(|e| gen_err(kind_line, e.to_string()))
        }
        "real-sqrt" => {
            let (primes, primes_line) = section
                .primes
                .ok_or(ParseError { line: kind_line, message: "missing primes".into() })?;
            let mut generators = Vec::new();
            for (text, line) in &section.generators {
                let coeffs = split_list(text)
                    .iter()
                    .map(|c| {
                        c.parse::<BigInt>()
                            .map_err(|_| gen_err(*line, format!("bad coefficient {c:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                generators.push(coeffs);
            }
            RealSqrtSpec::new(primes, generators)
                .map(CounterSpec::RealSqrt)
                .map_err(|e| gen_err(primes_line, e.to_string()))
        }
        "matrix" => {
            let (dimension, dim_line) = section
                .dimension
                .ok_or(ParseError { line: kind_line, message: "missing dimension".into() })?;
            let mut generators = Vec::new();
            for (text, line) in &section.generators {
                let entries = split_list(text)
                    .iter()
                    .map(|e| parse_rational(e).map_err(|m| gen_err(*line, m)))
                    .collect::<Result<Vec<_>, _>>()?;
                let matrix = RationalMatrix::from_entries(dimension, entries)
                    .map_err(|e| gen_err(*line, e.to_string()))?;
                generators.push(matrix);
            }
            MatrixSpec::new(dimension, generators)
                .map(CounterSpec::Matrix)
                .map_err(|e| gen_err(dim_line, e.to_string()))
        }
        other => err(kind_line, format!("unknown counter kind {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::{build_lgen, build_lpal, build_lpat, real_to_matrix, LGenParams};

    fn builders() -> Vec<MachineSpec> {
        let lgen = build_lgen(&LGenParams::new(vec![1, 1], vec![2, 3]).unwrap());
        let transformed = real_to_matrix(&lgen).unwrap();
        vec![
            lgen,
            build_lgen(&LGenParams::new(vec![2, 1], vec![2, 3]).unwrap()),
            build_lgen(&LGenParams::new(vec![1, 1, 1], vec![2, 3, 5]).unwrap()),
            build_lpat(),
            build_lpal(),
            transformed,
        ]
    }

    #[test]
    fn emitted_machines_parse_back_identically() {
        for spec in builders() {
            let text = emit(&spec).unwrap();
            let parsed = parse(&text).unwrap();
            assert_eq!(parsed, spec, "round-trip failed for {}", spec.name);
        }
    }

    #[test]
    fn emission_is_deterministic() {
        for spec in builders() {
            assert_eq!(emit(&spec).unwrap(), emit(&spec).unwrap());
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "\
[machine]
name = broken
head_mode = one-way
visibility = blind

[counter]
kind = integer
gen = 1

[states]
list = a,b
start = a
accept = b

[alphabet]
symbols = x

[transitions]
a x * b +2 noop
";
        let e = parse(text).unwrap_err();
        assert_eq!(e.line, 19);
        assert!(e.message.contains("head move"), "{}", e.message);
    }

    #[test]
    fn blind_machines_must_use_star_rows() {
        let text = "\
[machine]
name = broken
head_mode = one-way
visibility = partially-blind

[counter]
kind = integer
gen = 1

[states]
list = a
start = a
accept = a

[alphabet]
symbols = x

[transitions]
a x 0 a +1 noop
";
        let e = parse(text).unwrap_err();
        assert!(e.message.contains('*'), "{}", e.message);
    }

    #[test]
    fn value_renderings_round_trip() {
        let lgen = build_lgen(&LGenParams::new(vec![1, 1], vec![2, 3]).unwrap());
        let value = CounterValue::RealSqrt(vec![BigInt::from(2), BigInt::from(-1)]);
        let text = render_value(&lgen.counter, &value);
        assert_eq!(text, "2\u{221a}2-1\u{221a}3");
        assert_eq!(parse_value(&lgen.counter, &text).unwrap(), value);

        let zero = lgen.counter.identity();
        let text = render_value(&lgen.counter, &zero);
        assert_eq!(text, "0\u{221a}2+0\u{221a}3");
        assert_eq!(parse_value(&lgen.counter, &text).unwrap(), zero);

        let lpat = build_lpat();
        let a_inv = match &lpat.counter {
            CounterSpec::Matrix(m) => m.inverses().unwrap()[0].clone(),
            _ => unreachable!(),
        };
        let value = CounterValue::Matrix(a_inv);
        let text = render_value(&lpat.counter, &value);
        assert_eq!(text, "[[4/25,-3/25,0],[3/25,4/25,0],[0,0,1/5]]");
        assert_eq!(parse_value(&lpat.counter, &text).unwrap(), value);

        let int_spec = CounterSpec::Integer(IntegerSpec::conventional());
        let value = CounterValue::Integer(BigInt::from(-7));
        let text = render_value(&int_spec, &value);
        assert_eq!(text, "-7");
        assert_eq!(parse_value(&int_spec, &text).unwrap(), value);
    }

    #[test]
    fn hand_written_files_parse() {
        let text = "\
; a tiny two-way machine over a conventional counter
[machine]
name = bounce
head_mode = two-way
visibility = deterministic

[counter]
kind = integer
gen = 1

[states]
list = fwd,back,acc
start = fwd
accept = acc

[alphabet]
symbols = a

[transitions]
fwd ^ * fwd +1 noop
fwd a * fwd +1 inc:0
fwd $ * back -1 noop
back a 1 back -1 dec:0
back a 0 back -1 noop
back ^ * acc 0 noop
";
        let spec = parse(text).unwrap();
        assert_eq!(spec.name, "bounce");
        assert_eq!(spec.states.len(), 3);
        assert!(spec.validate().is_ok());
        let emitted = emit(&spec).unwrap();
        assert_eq!(parse(&emitted).unwrap(), spec);
    }

    #[test]
    fn conflicting_duplicate_transitions_are_rejected() {
        let text = "\
[machine]
name = dup
head_mode = one-way
visibility = deterministic

[counter]
kind = integer
gen = 1

[states]
list = a
start = a
accept = a

[alphabet]
symbols = x

[transitions]
a x * a +1 noop
a x 0 a 0 noop
";
        let e = parse(text).unwrap_err();
        assert_eq!(e.line, 20);
        assert!(e.message.contains("conflicting"), "{}", e.message);
    }
}
