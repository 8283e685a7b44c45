//! Serializable records of verified claims.
//!
//! A certificate is a list of steps. Computational steps were executed and
//! carry their exact outputs; proof-level steps record an inference that
//! depends on the computational ones but is not itself machine-checked.
//! Serialization is canonical: keys sorted, two-space indentation, integers
//! only, trailing newline.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::groups::{GroupSubset, ELEMENT_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    VerifiedTrue,
    VerifiedFalse,
    Inconclusive,
    Error,
}

impl Status {
    /// Process exit code: 0 true, 1 false, 2 inconclusive, 3 error.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::VerifiedTrue => 0,
            Status::VerifiedFalse => 1,
            Status::Inconclusive => 2,
            Status::Error => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Computational,
    ProofLevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepOutcome {
    Holds,
    Fails,
    Inconclusive,
    /// Proof-level inference, not executed.
    NotMachineChecked,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub step_id: String,
    pub kind: StepKind,
    pub statement: String,
    pub outcome: StepOutcome,
    /// `sha256:<hex>` of the canonical JSON of the step inputs; empty for proof-level steps.
    pub inputs_digest: String,
    pub outputs: Value,
    /// Argument used by a proof-level step, in terms of earlier step ids.
    pub justification: Option<String>,
    /// Wall-clock time, only when timings were requested (otherwise runs would not be byte-identical).
    pub duration_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Toolchain {
    pub version: String,
    pub element_order: String,
}

impl Default for Toolchain {
    fn default() -> Self {
        Toolchain {
            version: env!("CARGO_PKG_VERSION").to_string(),
            element_order: ELEMENT_ORDER.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim_id: String,
    pub statement: String,
    pub status: Status,
    pub steps: Vec<Step>,
    pub toolchain: Toolchain,
}

impl Certificate {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn step(&self, id: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.step_id == id)
    }

    /// Certificate for a run that failed before producing any verdict.
    pub fn error(claim_id: &str, message: &str) -> Self {
        let mut b = CertificateBuilder::new(claim_id, "", false);
        b.push_error("error", message);
        b.finish()
    }

    pub fn to_canonical_string(&self) -> Result<String> {
        to_canonical_json(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_canonical_string()?)?;
        Ok(())
    }
}

/// Serializes through `serde_json::Value`, whose maps are ordered by key.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn digest(inputs: &Value) -> String {
    let bytes = serde_json::to_vec(inputs).expect("values always serialize");
    format!("sha256:{}", hex::encode(Sha256::digest(&bytes)))
}

/// Canonical JSON for a set: moduli plus coordinate rows in index order.
pub fn subset_value(s: &GroupSubset) -> Value {
    serde_json::json!({
        "moduli": s.group().moduli(),
        "elements": s.coord_rows(),
    })
}

/// Accumulates steps; the verdict is derived from step outcomes in [`CertificateBuilder::finish`].
pub struct CertificateBuilder {
    claim_id: String,
    statement: String,
    steps: Vec<Step>,
    timings: bool,
}

impl CertificateBuilder {
    pub fn new(claim_id: &str, statement: &str, timings: bool) -> Self {
        CertificateBuilder {
            claim_id: claim_id.to_string(),
            statement: statement.to_string(),
            steps: Vec::new(),
            timings,
        }
    }

    /// Runs a check and records it. The closure returns the truth value and its outputs.
    /// Returns whether the statement held.
    pub fn check(
        &mut self,
        step_id: &str,
        statement: &str,
        inputs: &Value,
        f: impl FnOnce() -> Result<(bool, Value)>,
    ) -> Result<bool> {
        let start = Instant::now();
        let (ok, outputs) = f()?;
        self.push(
            step_id,
            statement,
            if ok { StepOutcome::Holds } else { StepOutcome::Fails },
            inputs,
            outputs,
            start,
        );
        Ok(ok)
    }

    /// Records a step whose outcome was computed elsewhere.
    pub fn record(
        &mut self,
        step_id: &str,
        statement: &str,
        outcome: StepOutcome,
        inputs: &Value,
        outputs: Value,
    ) {
        self.push(step_id, statement, outcome, inputs, outputs, Instant::now());
    }

    fn push(
        &mut self,
        step_id: &str,
        statement: &str,
        outcome: StepOutcome,
        inputs: &Value,
        outputs: Value,
        start: Instant,
    ) {
        let duration_ms = self.timings.then(|| start.elapsed().as_millis() as u64);
        self.steps.push(Step {
            step_id: step_id.to_string(),
            kind: StepKind::Computational,
            statement: statement.to_string(),
            outcome,
            inputs_digest: digest(inputs),
            outputs,
            justification: None,
            duration_ms,
        });
    }

    pub fn proof_level(&mut self, step_id: &str, statement: &str, justification: &str) {
        self.steps.push(Step {
            step_id: step_id.to_string(),
            kind: StepKind::ProofLevel,
            statement: statement.to_string(),
            outcome: StepOutcome::NotMachineChecked,
            inputs_digest: String::new(),
            outputs: Value::Null,
            justification: Some(justification.to_string()),
            duration_ms: None,
        });
    }

    pub fn push_error(&mut self, step_id: &str, message: &str) {
        self.steps.push(Step {
            step_id: step_id.to_string(),
            kind: StepKind::Computational,
            statement: message.to_string(),
            outcome: StepOutcome::Error,
            inputs_digest: String::new(),
            outputs: Value::Null,
            justification: None,
            duration_ms: None,
        });
    }

    pub fn finish(self) -> Certificate {
        let outcomes = || self.steps.iter().map(|s| s.outcome);
        let status = if outcomes().any(|o| o == StepOutcome::Error) {
            Status::Error
        } else if outcomes().any(|o| o == StepOutcome::Fails) {
            Status::VerifiedFalse
        } else if outcomes().any(|o| o == StepOutcome::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::VerifiedTrue
        };
        Certificate {
            claim_id: self.claim_id,
            statement: self.statement,
            status,
            steps: self.steps,
            toolchain: Toolchain::default(),
        }
    }
}
