use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub name: String,
    /// `None` when the case aborted with an error.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub params: serde_json::Value,
    /// Seconds.
    pub wall_time: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CaseRecord {
    pub fn new(name: String, outcome: Result<f64, String>, tolerance: f64, params: serde_json::Value, wall_time: f64) -> Self {
        let (residual, error) = match outcome {
            Ok(r) if r.is_finite() && r >= 0.0 => (Some(r), None),
            Ok(r) => (None, Some(format!("non-finite or negative residual {r}"))),
            Err(e) => (None, Some(e)),
        };
        let pass = residual.is_some_and(|r| r <= tolerance);
        Self {
            name,
            residual,
            tolerance,
            pass,
            params,
            wall_time,
            error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub artifact_version: String,
    pub cases: Vec<CaseRecord>,
    pub pass: bool,
}

impl VerificationReport {
    /// Sorts `cases` by name and derives the overall verdict.
    pub fn assemble(suite: &str, seed: u64, mut cases: Vec<CaseRecord>) -> Self {
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        let pass = cases.iter().all(|c| c.pass);
        Self {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            seed,
            artifact_version: ARTIFACT_VERSION.to_string(),
            cases,
            pass,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}
