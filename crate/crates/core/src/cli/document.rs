use serde::Serialize;

use crate::mcframe::{Check, VerificationReport};
use crate::numeric::SampleVerdict;
use crate::systems::ComponentConcordance;

/// Machine-readable report. Field names are part of the output format.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub system: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forms: Option<FormsSection>,
    pub checks: Vec<CheckRecord>,
    pub concordance: Vec<ComponentConcordance>,
    pub numeric: NumericSection,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_status: i32,
}

impl ReportDocument {
    pub fn new(command: &'static str, system: &str) -> Self {
        ReportDocument {
            tool: "mcflow",
            version: env!("CARGO_PKG_VERSION"),
            command,
            system: system.to_owned(),
            frame: None,
            multiplier: None,
            forms: None,
            checks: Vec::new(),
            concordance: Vec::new(),
            numeric: NumericSection::default(),
            notes: Vec::new(),
            error: None,
            exit_status: 0,
        }
    }

    pub fn add_report(&mut self, report: &VerificationReport) {
        let system = if report.system.is_empty() { self.system.clone() } else { report.system.clone() };
        self.checks.extend(report.checks.iter().map(|c| CheckRecord::new(&system, c)));
        self.notes.extend(report.notes.iter().cloned());
    }

    pub fn checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.status == "holds")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameSection {
    pub v: [String; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormsSection {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub system: String,
    pub check: String,
    pub anchor: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl CheckRecord {
    pub fn new(system: &str, c: &Check) -> Self {
        CheckRecord {
            system: system.to_owned(),
            check: c.name.clone(),
            anchor: c.anchor.clone(),
            status: c.status(),
            residual: c.failure_residual(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct NumericSection {
    pub samples: Vec<SampleRecord>,
    pub finite_differences: Vec<FdRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integration: Option<IntegrationSection>,
}

impl NumericSection {
    pub fn consistent(&self) -> bool {
        self.samples.iter().all(|s| s.consistent)
            && self.finite_differences.iter().all(|f| f.pass)
            && self.integration.as_ref().is_none_or(IntegrationSection::pass)
    }
}

/// A sampled residual; `consistent` is true when the numeric verdict agrees
/// with the exact status (zero residual passes, nonzero residual exceeds
/// `1e-6` somewhere).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleRecord {
    #[serde(flatten)]
    pub verdict: SampleVerdict,
    pub exact_status: &'static str,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FdRecord {
    pub identity: String,
    pub points: usize,
    pub step: f64,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegrationSection {
    pub from: [f64; 3],
    pub t_end: f64,
    pub h: f64,
    pub steps: usize,
    pub final_state: [f64; 3],
    pub drifts: Vec<DriftRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence_order: Option<OrderRecord>,
}

impl IntegrationSection {
    pub fn pass(&self) -> bool {
        self.drifts.iter().all(|d| d.pass) && self.convergence_order.as_ref().is_none_or(|o| o.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftRecord {
    pub integral: String,
    pub drift: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderRecord {
    pub base_step: f64,
    pub order: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}
