use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exchange::DMVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    #[default]
    All,
    Su2,
    Leakage,
    Exchange,
    Encoded,
    Nonseparable,
}

impl Suite {
    pub const MEMBERS: [Suite; 5] = [
        Suite::Su2,
        Suite::Leakage,
        Suite::Exchange,
        Suite::Encoded,
        Suite::Nonseparable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Su2 => "su2",
            Suite::Leakage => "leakage",
            Suite::Exchange => "exchange",
            Suite::Encoded => "encoded",
            Suite::Nonseparable => "nonseparable",
        }
    }

    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Either a single level count or a list of them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Levels {
    One(usize),
    Many(Vec<usize>),
}

impl Default for Levels {
    fn default() -> Self {
        Levels::Many((3..=8).collect())
    }
}

impl Levels {
    pub fn to_vec(&self) -> Vec<usize> {
        match self {
            Levels::One(n) => vec![*n],
            Levels::Many(v) => v.clone(),
        }
    }
}

/// Per-suite tolerance overrides; unset entries keep each case's default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub su2: Option<f64>,
    pub leakage: Option<f64>,
    pub exchange: Option<f64>,
    pub encoded: Option<f64>,
    pub nonseparable: Option<f64>,
}

impl Tolerances {
    pub fn get(&self, suite: Suite) -> Option<f64> {
        match suite {
            Suite::All => None,
            Suite::Su2 => self.su2,
            Suite::Leakage => self.leakage,
            Suite::Exchange => self.exchange,
            Suite::Encoded => self.encoded,
            Suite::Nonseparable => self.nonseparable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExchangeParams {
    /// Fixed DM vector checked in addition to the random draws.
    pub dm: Option<[f64; 3]>,
    pub j: f64,
}

impl Default for ExchangeParams {
    fn default() -> Self {
        Self { dm: None, j: 1.0 }
    }
}

impl ExchangeParams {
    pub fn dm_vector(&self) -> Option<DMVector> {
        self.dm.map(|d| DMVector::new(d).expect("validated"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LeakageParams {
    pub f: f64,
    /// Real and imaginary parts of each δ_j are drawn from `[−scale, scale]`.
    pub delta_scale: f64,
    /// Fixed `(ε₁, ε₂)` checked in addition to the random rational draws.
    pub energies: Option<[f64; 2]>,
}

impl Default for LeakageParams {
    fn default() -> Self {
        Self {
            f: 1.0,
            delta_scale: 1.0,
            energies: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EncodedParams {
    pub depth: usize,
    pub b_field: f64,
}

impl Default for EncodedParams {
    fn default() -> Self {
        Self { depth: 20, b_field: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NonseparableParams {
    pub fy: f64,
    /// Two error strengths whose residual ratio is tested; the first must be
    /// ten times the second.
    pub deltas: [f64; 2],
}

impl Default for NonseparableParams {
    fn default() -> Self {
        Self {
            fy: 1.0,
            deltas: [1e-2, 1e-3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    /// Overrides every case tolerance when set.
    pub tolerance: Option<f64>,
    pub tolerances: Tolerances,
    pub levels: Levels,
    pub ring_sizes: Vec<usize>,
    pub exchange: ExchangeParams,
    pub leakage: LeakageParams,
    pub encoded: EncodedParams,
    pub nonseparable: NonseparableParams,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            seed: 0,
            trials: 50,
            tolerance: None,
            tolerances: Tolerances::default(),
            levels: Levels::default(),
            ring_sizes: vec![4, 5],
            exchange: ExchangeParams::default(),
            leakage: LeakageParams::default(),
            encoded: EncodedParams::default(),
            nonseparable: NonseparableParams::default(),
        }
    }
}

fn config_err(path: &str, message: impl Into<String>) -> Error {
    Error::Config {
        path: path.to_string(),
        message: message.into(),
    }
}

fn positive(path: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(config_err(path, format!("must be a positive finite number, got {v}")))
    }
}

impl ScenarioConfig {
    /// Tolerance for a case in `suite` whose built-in default is `default`.
    pub fn tolerance_for(&self, suite: Suite, default: f64) -> f64 {
        self.tolerance.or(self.tolerances.get(suite)).unwrap_or(default)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(config_err("trials", "must be at least 1"));
        }
        if let Some(t) = self.tolerance {
            positive("tolerance", t)?;
        }
        for s in Suite::MEMBERS {
            if let Some(t) = self.tolerances.get(s) {
                positive(&format!("tolerances.{s}"), t)?;
            }
        }
        let levels = self.levels.to_vec();
        if levels.is_empty() {
            return Err(config_err("levels", "must list at least one level count"));
        }
        for (i, n) in levels.iter().enumerate() {
            if !(3..=8).contains(n) {
                let path = match self.levels {
                    Levels::One(_) => "levels".to_string(),
                    Levels::Many(_) => format!("levels[{i}]"),
                };
                return Err(config_err(&path, format!("level count {n} outside [3, 8]")));
            }
        }
        if self.ring_sizes.is_empty() {
            return Err(config_err("ring_sizes", "must list at least one ring size"));
        }
        for (i, n) in self.ring_sizes.iter().enumerate() {
            if !(3..=6).contains(n) {
                return Err(config_err(&format!("ring_sizes[{i}]"), format!("ring size {n} outside [3, 6]")));
            }
        }
        if let Some(d) = self.exchange.dm {
            if d.iter().any(|x| !x.is_finite()) {
                return Err(config_err("exchange.dm", "components must be finite"));
            }
        }
        positive("exchange.j", self.exchange.j)?;
        if !self.leakage.f.is_finite() {
            return Err(config_err("leakage.f", "must be finite"));
        }
        positive("leakage.delta_scale", self.leakage.delta_scale)?;
        if let Some([e1, e2]) = self.leakage.energies {
            positive("leakage.energies[0]", e1)?;
            positive("leakage.energies[1]", e2)?;
        }
        if self.encoded.depth == 0 {
            return Err(config_err("encoded.depth", "must be at least 1"));
        }
        // the preparation ceiling J·√(1+|D|²) is at least J for every D
        let (b, j) = (self.encoded.b_field, self.exchange.j);
        if !(b.is_finite() && b > 0.0 && b < j) {
            return Err(config_err("encoded.b_field", format!("must lie in (0, J = {j}), got {b}")));
        }
        if !self.nonseparable.fy.is_finite() || self.nonseparable.fy == 0.0 {
            return Err(config_err("nonseparable.fy", "must be finite and nonzero"));
        }
        let [d1, d2] = self.nonseparable.deltas;
        positive("nonseparable.deltas[0]", d1)?;
        positive("nonseparable.deltas[1]", d2)?;
        if !(d1 <= 1e-2 && ((d1 / d2) - 10.0).abs() < 1e-9) {
            return Err(config_err(
                "nonseparable.deltas",
                "expected [δ, δ/10] with δ ≤ 1e-2",
            ));
        }
        Ok(())
    }
}

/// Parses and validates a JSON scenario; errors carry the offending field
/// path.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: ScenarioConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        config_err(&path, e.into_inner().to_string())
    })?;
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_gives_defaults() {
        let cfg = parse_config("{}").unwrap();
        assert_eq!(cfg, ScenarioConfig::default());
        assert_eq!(cfg.suite, Suite::All);
        assert_eq!(cfg.trials, 50);
        assert_eq!(cfg.seed, 0);
    }

    #[test]
    fn dm_vector_norm() {
        let cfg = parse_config(r#"{"exchange":{"dm":[0.1,0.2,0.3]}}"#).unwrap();
        let d = cfg.exchange.dm_vector().unwrap();
        assert!((d.d_abs() - 0.14f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn range_errors_name_the_field() {
        let err = parse_config(r#"{"levels": 99}"#).unwrap_err();
        assert!(matches!(&err, Error::Config { path, .. } if path == "levels"));
        assert!(err.to_string().contains("levels"));
        let err = parse_config(r#"{"levels": [3, 9]}"#).unwrap_err();
        assert!(matches!(&err, Error::Config { path, .. } if path == "levels[1]"));
        let err = parse_config(r#"{"ring_sizes": [2]}"#).unwrap_err();
        assert!(err.to_string().contains("ring_sizes[0]"));
        let err = parse_config(r#"{"trials": 0}"#).unwrap_err();
        assert!(err.to_string().contains("trials"));
        let err = parse_config(r#"{"tolerances": {"su2": -1.0}}"#).unwrap_err();
        assert!(err.to_string().contains("tolerances.su2"));
    }

    #[test]
    fn malformed_documents() {
        let err = parse_config(r#"{"exchange":{"dm":[0.1,"x",0.3]}}"#).unwrap_err();
        assert!(matches!(&err, Error::Config { path, .. } if path.starts_with("exchange.dm")), "{err}");
        let err = parse_config(r#"{"sweet": 1}"#).unwrap_err();
        assert!(err.to_string().contains("sweet"));
        let err = parse_config(r#"{"suite": "nope"}"#).unwrap_err();
        assert!(err.to_string().contains("suite"));
        assert!(parse_config("{").is_err());
    }

    #[test]
    fn tolerance_precedence() {
        let cfg = parse_config(r#"{"tolerances": {"su2": 1e-3}}"#).unwrap();
        assert_eq!(cfg.tolerance_for(Suite::Su2, 1e-12), 1e-3);
        assert_eq!(cfg.tolerance_for(Suite::Leakage, 1e-12), 1e-12);
        let cfg = parse_config(r#"{"tolerance": 1e-30, "tolerances": {"su2": 1e-3}}"#).unwrap();
        assert_eq!(cfg.tolerance_for(Suite::Su2, 1e-12), 1e-30);
    }
}
