//! Seeded verification suites, JSON scenario configs and reports.

mod config;
mod report;
mod suites;

pub use config::{
    parse_config, EncodedParams, ExchangeParams, LeakageParams, Levels, NonseparableParams, ScenarioConfig, Suite,
    Tolerances,
};
pub use report::{CaseRecord, VerificationReport, ARTIFACT_VERSION, SCHEMA_VERSION};
pub use suites::{build_cases, run_suite, spectral_gap, stream_id, Case};
