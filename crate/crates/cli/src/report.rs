//! Structured reports. Field order is the serialisation order, so output is
//! stable for a given seed and configuration.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Float,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub arithmetic: Arithmetic,
    /// Largest residual over all samples, for floating-point checks.
    pub residual: Option<f64>,
    /// Outcome of an exact comparison.
    pub exact_match: Option<bool>,
    pub tolerance: Option<f64>,
    pub note: Option<String>,
}

impl Check {
    pub fn measured(name: &str, residual: f64, tolerance: f64) -> Self {
        // NaN compares false and therefore fails
        let status = if residual < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: name.into(),
            status,
            arithmetic: Arithmetic::Float,
            residual: Some(residual),
            exact_match: None,
            tolerance: Some(tolerance),
            note: None,
        }
    }

    pub fn exact(name: &str, matched: bool) -> Self {
        Self {
            name: name.into(),
            status: if matched { Status::Pass } else { Status::Fail },
            arithmetic: Arithmetic::Exact,
            residual: None,
            exact_match: Some(matched),
            tolerance: None,
            note: None,
        }
    }

    pub fn skipped(name: &str, reason: &str) -> Self {
        Self {
            name: name.into(),
            status: Status::Skipped,
            arithmetic: Arithmetic::Float,
            residual: None,
            exact_match: None,
            tolerance: None,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn summary_line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        let mut line = format!("[{tag}] {:<22}", self.name);
        match (self.residual, self.exact_match) {
            (Some(r), _) => line.push_str(&format!(" residual {r:.3e}")),
            (None, Some(m)) => {
                line.push_str(&format!(" exact {}", if m { "match" } else { "mismatch" }))
            }
            _ => {}
        }
        if let Some(t) = self.tolerance {
            line.push_str(&format!(" (tol {t:.0e})"));
        }
        if let Some(note) = &self.note {
            line.push_str(&format!("  {note}"));
        }
        line
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub analytic: f64,
    pub finite_difference: f64,
    pub constant_limit: f64,
    pub cartan: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub n: usize,
    pub potential: String,
    pub coupling: Option<f64>,
    pub case: String,
    pub omega: f64,
    pub q_mode: String,
    pub samples: usize,
    pub seed: u64,
    pub arithmetic: Arithmetic,
    pub tolerances: Tolerances,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    /// The bracket relation failed as derived but held with `{L₁,L₂}` negated.
    pub poisson_sign_flip_observed: bool,
    /// `κ` with `M⁻¹ = κ G`, keyed by `n`.
    pub kappa: BTreeMap<String, String>,
    /// Sign `s` with gauge-transformed `R = s R′`, when that check ran.
    pub r_prime_global_sign: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub metadata: Metadata,
    pub checks: Vec<Check>,
    pub conventions: Conventions,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(metadata: Metadata, checks: Vec<Check>, conventions: Conventions) -> Self {
        let pass = checks.iter().all(Check::passed);
        Self {
            metadata,
            checks,
            conventions,
            pass,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Failure(format!("cannot serialise report: {e}")))
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, to_json(value)?)
        .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))
}
