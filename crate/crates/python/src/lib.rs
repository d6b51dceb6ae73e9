//! Python bindings: the machine types, the stock builders, the oracles,
//! and the counter transform, driven in-process.
//!
//! Usage from Python:
//!
//!     import gcount
//!     m = gcount.build_lgen([1, 1], [2, 3])
//!     report = m.run("aabbcc")
//!     assert report.accepted and report.counter_reversals == 1

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use num_bigint::BigInt;

use gcount_core::automaton::{CompiledMachine, MachineSpec, RunOptions};
use gcount_core::counters::{real_sign, SignVerdict};
use gcount_core::machine_file;
use gcount_core::machines::{build_lgen as core_build_lgen, build_lpal as core_build_lpal, build_lpat as core_build_lpat, real_to_matrix, LGenParams};
use gcount_core::oracle;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A machine description plus its compiled form.
#[pyclass]
struct Machine {
    spec: MachineSpec,
    compiled: CompiledMachine,
}

impl Machine {
    fn from_spec(spec: MachineSpec) -> PyResult<Self> {
        let compiled = CompiledMachine::new(&spec).map_err(value_error)?;
        Ok(Machine { spec, compiled })
    }
}

#[pymethods]
impl Machine {
    /// Parse a machine description (the same format `emit` produces).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let spec = machine_file::parse(text).map_err(value_error)?;
        Machine::from_spec(spec)
    }

    /// Serialize the machine description.
    fn emit(&self) -> PyResult<String> {
        machine_file::emit(&self.spec).map_err(value_error)
    }

    #[getter]
    fn name(&self) -> String {
        self.spec.name.clone()
    }

    #[getter]
    fn head_mode(&self) -> String {
        self.spec.head_mode.to_string()
    }

    #[getter]
    fn visibility(&self) -> String {
        self.spec.visibility.to_string()
    }

    #[getter]
    fn counter_kind(&self) -> String {
        self.spec.counter.kind().to_string()
    }

    #[getter]
    fn states(&self) -> Vec<String> {
        self.spec.states.clone()
    }

    #[getter]
    fn alphabet(&self) -> String {
        self.spec.alphabet.iter().collect()
    }

    /// Run one input; returns a RunReport.
    #[pyo3(signature = (input, max_steps = 1_000_000, trace = false))]
    fn run(&self, input: &str, max_steps: u64, trace: bool) -> PyResult<RunReport> {
        let options = RunOptions { max_steps, record_trace: trace };
        let result = self.compiled.run(input, options).map_err(value_error)?;
        let trace_lines = result.trace.as_ref().map(|steps| {
            steps
                .iter()
                .enumerate()
                .map(|(index, step)| {
                    format!(
                        "{index} {} {} {} {} {}",
                        step.config.state,
                        step.config.head,
                        step.symbol,
                        step.action.op,
                        machine_file::render_value(&self.spec.counter, &step.config.counter),
                    )
                })
                .collect()
        });
        Ok(RunReport {
            verdict: result.verdict.to_string(),
            accepted: result.verdict.accepted(),
            steps: result.steps,
            head_reversals: result.head_reversals,
            counter_reversals: result.counter_reversals,
            counter: machine_file::render_value(
                &self.spec.counter,
                &result.final_configuration.counter,
            ),
            trace: trace_lines,
        })
    }

    /// Rebuild a real-counter machine over a 1x1 matrix counter.
    fn transform_to_matrix(&self) -> PyResult<Machine> {
        let transformed = real_to_matrix(&self.spec).map_err(value_error)?;
        Machine::from_spec(transformed)
    }

    /// Validation findings (empty for a well-formed machine).
    fn validate(&self) -> Vec<String> {
        let report = self.spec.validate();
        report
            .violations
            .iter()
            .map(|v| format!("violation: {v}"))
            .chain(report.warnings.iter().map(|w| format!("warning: {w}")))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Machine(name={:?}, states={}, counter={})",
            self.spec.name,
            self.spec.states.len(),
            self.spec.counter.kind()
        )
    }
}

/// Outcome of one run.
#[pyclass]
struct RunReport {
    #[pyo3(get)]
    verdict: String,
    #[pyo3(get)]
    accepted: bool,
    #[pyo3(get)]
    steps: u64,
    #[pyo3(get)]
    head_reversals: u64,
    #[pyo3(get)]
    counter_reversals: u64,
    #[pyo3(get)]
    counter: String,
    #[pyo3(get)]
    trace: Option<Vec<String>>,
}

#[pymethods]
impl RunReport {
    fn __repr__(&self) -> String {
        format!(
            "RunReport(verdict={:?}, steps={}, head_reversals={}, counter_reversals={}, counter={:?})",
            self.verdict, self.steps, self.head_reversals, self.counter_reversals, self.counter
        )
    }
}

/// Build the counted-block recognizer for multipliers l1..l(k-1) over the
/// given distinct primes.
#[pyfunction]
fn build_lgen(multipliers: Vec<u64>, primes: Vec<u64>) -> PyResult<Machine> {
    let params = LGenParams::new(multipliers, primes).map_err(value_error)?;
    Machine::from_spec(core_build_lgen(&params))
}

/// Build the two-way block-matching recognizer.
#[pyfunction]
fn build_lpat() -> PyResult<Machine> {
    Machine::from_spec(core_build_lpat())
}

/// Build the one-way mirrored-pair recognizer.
#[pyfunction]
fn build_lpal() -> PyResult<Machine> {
    Machine::from_spec(core_build_lpal())
}

fn default_primes(count: usize) -> PyResult<Vec<u64>> {
    const POOL: [u64; 25] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97,
    ];
    POOL.get(..count)
        .map(<[u64]>::to_vec)
        .ok_or_else(|| PyValueError::new_err(format!("at most {} multipliers supported", POOL.len())))
}

/// Direct membership predicate for the counted-block language.
#[pyfunction]
fn oracle_lgen(multipliers: Vec<u64>, x: &str) -> PyResult<bool> {
    let primes = default_primes(multipliers.len())?;
    let params = LGenParams::new(multipliers, primes).map_err(value_error)?;
    Ok(oracle::oracle_lgen(&params, x))
}

/// Direct membership predicate for the block-matching language.
#[pyfunction]
fn oracle_lpat(x: &str) -> bool {
    oracle::oracle_lpat(x)
}

/// Direct membership predicate for the mirrored-pair language.
#[pyfunction]
fn oracle_lpal(x: &str) -> bool {
    oracle::oracle_lpal(x)
}

/// Exact sign of sum(coeffs[i] * sqrt(primes[i])): -1, 0, or +1.
#[pyfunction]
fn sign_of_sqrt_sum(primes: Vec<u64>, coeffs: Vec<i64>) -> PyResult<i64> {
    if primes.len() != coeffs.len() {
        return Err(PyValueError::new_err("primes and coeffs must have equal length"));
    }
    let coeffs: Vec<BigInt> = coeffs.into_iter().map(BigInt::from).collect();
    Ok(match real_sign(&primes, &coeffs) {
        SignVerdict::Negative => -1,
        SignVerdict::Zero => 0,
        SignVerdict::Positive => 1,
    })
}

/// Word-separation identity check for words over 'A'/'B' of equal length.
#[pyfunction]
fn aw_product_check(x: &str, y: &str) -> PyResult<bool> {
    oracle::aw_product_check(x, y).map_err(value_error)
}

/// Run a machine against one of the named oracles over an exhaustive
/// corpus; returns (total, disagreement_count, disagreement_lines).
#[pyfunction]
#[pyo3(signature = (machine, oracle_name, max_len = 8, multipliers = None))]
fn differential_check(
    machine: &Machine,
    oracle_name: &str,
    max_len: usize,
    multipliers: Option<Vec<u64>>,
) -> PyResult<(u64, u64, Vec<String>)> {
    let alphabet: Vec<char> = machine.spec.alphabet.iter().copied().collect();
    let corpus = oracle::Corpus::exhaustive(&alphabet, max_len);
    let options = RunOptions::default();
    let report = match oracle_name {
        "lgen" => {
            let multipliers = multipliers
                .ok_or_else(|| PyValueError::new_err("lgen oracle needs multipliers"))?;
            let primes = default_primes(multipliers.len())?;
            let params = LGenParams::new(multipliers, primes).map_err(value_error)?;
            oracle::differential_test(
                &machine.spec,
                |x| oracle::oracle_lgen(&params, x),
                &corpus,
                options,
            )
        }
        "lpat" => oracle::differential_test(&machine.spec, oracle::oracle_lpat, &corpus, options),
        "lpal" => oracle::differential_test(&machine.spec, oracle::oracle_lpal, &corpus, options),
        other => return Err(PyValueError::new_err(format!("unknown oracle {other:?}"))),
    }
    .map_err(value_error)?;
    let lines = report.disagreements.iter().map(|d| d.json_line()).collect();
    Ok((report.total, report.disagreements.len() as u64, lines))
}

#[pymodule]
fn gcount(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Machine>()?;
    m.add_class::<RunReport>()?;
    m.add_function(wrap_pyfunction!(build_lgen, m)?)?;
    m.add_function(wrap_pyfunction!(build_lpat, m)?)?;
    m.add_function(wrap_pyfunction!(build_lpal, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_lgen, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_lpat, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_lpal, m)?)?;
    m.add_function(wrap_pyfunction!(sign_of_sqrt_sum, m)?)?;
    m.add_function(wrap_pyfunction!(aw_product_check, m)?)?;
    m.add_function(wrap_pyfunction!(differential_check, m)?)?;
    Ok(())
}
