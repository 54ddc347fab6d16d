use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::rational::Exact;
use crate::signature::SignatureSample;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Compute,
    Pair,
    FlatExtension,
    Perturbation,
    Convergence,
    Bertini,
    OracleAudit,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Compute => "compute",
            ExperimentKind::Pair => "pair",
            ExperimentKind::FlatExtension => "flat_extension",
            ExperimentKind::Perturbation => "perturbation",
            ExperimentKind::Convergence => "convergence",
            ExperimentKind::Bertini => "bertini",
            ExperimentKind::OracleAudit => "oracle_audit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A labelled run of estimates, e.g. one per ring or rounding convention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleTable {
    pub label: String,
    pub samples: Vec<SignatureSample>,
}

/// A per-e derived quantity such as a scaled difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub e: u32,
    pub value: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneSample {
    pub index: u64,
    pub seed: u64,
    /// `ℓ = Σ c_i x_i − c_0`.
    pub coefficients: Vec<u32>,
    pub constant: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceStatus {
    Ok,
    DivisorDegenerates,
    EmptySlice,
    NonTransverse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicePoint {
    pub coordinates: Vec<u32>,
    pub singular: bool,
    /// Whether some divisor element vanishes at the point.
    pub on_divisor: bool,
    pub slice: SignatureSample,
    pub upstream: SignatureSample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneRecord {
    pub sample: HyperplaneSample,
    pub status: SliceStatus,
    pub detail: String,
    pub points: Vec<SlicePoint>,
    pub min_slice: Option<Exact>,
    /// Minimum slice estimate exceeds `λ − tolerance`.
    pub part1: bool,
    /// Points with upstream estimate `> λ` keep slice estimate `> λ − tolerance`.
    pub part2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCase {
    pub label: String,
    pub p: u32,
    pub element: String,
    pub oracle: bool,
    pub formula: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub expected: Vec<String>,
    pub actual: Vec<String>,
}

/// Wall-clock per step; reported apart from the deterministic payload.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepTiming {
    pub step: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub kind: ExperimentKind,
    pub fixture: String,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub parameters: Vec<(String, String)>,
    #[serde(default)]
    pub tables: Vec<SampleTable>,
    #[serde(default)]
    pub diagnostics: Vec<Diagnostic>,
    #[serde(default)]
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decay_constant: Option<Exact>,
    #[serde(default)]
    pub incomplete: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hyperplanes: Vec<HyperplaneRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub oracle_cases: Vec<OracleCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub timings: Vec<StepTiming>,
}

impl ExperimentReport {
    pub fn new(kind: ExperimentKind, fixture: &str, p: u32) -> Self {
        ExperimentReport {
            kind,
            fixture: fixture.to_string(),
            p,
            seed: None,
            parameters: Vec::new(),
            tables: Vec::new(),
            diagnostics: Vec::new(),
            verdicts: Vec::new(),
            decay_constant: None,
            incomplete: false,
            hyperplanes: Vec::new(),
            oracle_cases: Vec::new(),
            counterexample: None,
            notes: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn parameter(&mut self, name: &str, value: impl ToString) {
        self.parameters.push((name.to_string(), value.to_string()));
    }

    pub fn verdict(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict { name: name.to_string(), passed, detail: detail.into() });
    }

    pub fn diagnostic(&mut self, name: &str, e: u32, value: Exact) {
        self.diagnostics.push(Diagnostic { name: name.to_string(), e, value });
    }

    pub fn table(&self, label: &str) -> Option<&SampleTable> {
        self.tables.iter().find(|t| t.label == label)
    }

    pub fn find_verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    /// All verdicts hold and the run was not cut short.
    pub fn passed(&self) -> bool {
        !self.incomplete && self.verdicts.iter().all(|v| v.passed)
    }

    pub(crate) fn time<T>(&mut self, step: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.record(step, start.elapsed());
        out
    }

    pub(crate) fn record(&mut self, step: &str, elapsed: Duration) {
        self.timings.push(StepTiming { step: step.to_string(), seconds: elapsed.as_secs_f64() });
    }
}
