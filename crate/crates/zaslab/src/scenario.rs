//! Scenario files: a profile, a command, command parameters, and an output
//! request.  Unknown keys are rejected; parsing round-trips.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use zaslab_core::report::Tolerances;
use zaslab_core::verify::SuiteName;
use zaslab_core::{Profile, RadialProfile};

#[derive(Debug, Clone)]
pub enum ScenarioError {
    /// Malformed document or schema violation; carries serde's line/key
    /// context.
    Parse(String),
    /// Well-formed but out-of-range or inconsistent parameters.
    Validation(String),
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Parse(msg) => write!(f, "scenario parse error: {msg}"),
            ScenarioError::Validation(msg) => write!(f, "scenario validation error: {msg}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Mass,
    Capacity,
    Flow,
    Verify,
}

impl CommandKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandKind::Mass => "mass",
            CommandKind::Capacity => "capacity",
            CommandKind::Flow => "flow",
            CommandKind::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct OutputSpec {
    /// Directory the artifacts go into.
    pub path: PathBuf,
    pub format: Format,
}

/// Partial override of the default tolerance tiers.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ToleranceOverrides {
    pub equality_rel: Option<f64>,
    pub limit_abs: Option<f64>,
    pub algebraic_abs: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(self, base: Tolerances) -> Tolerances {
        Tolerances {
            equality_rel: self.equality_rel.unwrap_or(base.equality_rel),
            limit_abs: self.limit_abs.unwrap_or(base.limit_abs),
            algebraic_abs: self.algebraic_abs.unwrap_or(base.algebraic_abs),
        }
    }
}

fn default_t_max() -> f64 {
    10.0
}

fn default_n_samples() -> usize {
    512
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Params {
    /// Sphere radius for mass and capacity evaluations.
    pub r: Option<f64>,
    /// Starting sphere of a flow.
    pub r0: Option<f64>,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    #[serde(default = "default_n_samples")]
    pub n_samples: usize,
    /// Suite name for verify commands ("all" runs every suite).
    pub suite: Option<String>,
    pub tolerances: Option<ToleranceOverrides>,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            r: None,
            r0: None,
            t_max: default_t_max(),
            n_samples: default_n_samples(),
            suite: None,
            tolerances: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<RadialProfile>,
    pub command: CommandKind,
    #[serde(default)]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

/// Parse and validate a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let scenario: Scenario =
        serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    validate(&scenario)?;
    Ok(scenario)
}

fn require_positive(value: f64, what: &str) -> Result<(), ScenarioError> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(ScenarioError::Validation(format!("{what} must be positive and finite, got {value}")));
    }
    Ok(())
}

fn validate(s: &Scenario) -> Result<(), ScenarioError> {
    let profile = match (&s.profile, s.command) {
        (None, CommandKind::Verify) => None,
        (None, c) => {
            return Err(ScenarioError::Parse(format!("missing key `profile` (required by command \"{}\")", c.as_str())));
        }
        (Some(p), _) => Some(p),
    };

    if let Some(p) = profile {
        // Probe evaluation catches inconsistent profile parameters early.
        let probe = p.r_min().max(0.0) + p.characteristic_radius();
        p.eval(probe)
            .map_err(|e| ScenarioError::Validation(format!("profile rejected: {e}")))?;
        let above = |radius: f64, what: &str| -> Result<(), ScenarioError> {
            require_positive(radius, what)?;
            if radius <= p.r_min() {
                return Err(ScenarioError::Validation(format!("{what} = {radius} does not exceed the inner boundary r_min = {}", p.r_min())));
            }
            Ok(())
        };
        match s.command {
            CommandKind::Mass => {
                if let Some(r) = s.params.r {
                    above(r, "params.r")?;
                }
            }
            CommandKind::Capacity => {
                if let Some(r) = s.params.r {
                    above(r, "params.r")?;
                } else if !(p.r_min() > 0.0) {
                    return Err(ScenarioError::Validation(
                        "capacity needs a singular boundary or an explicit params.r".to_string(),
                    ));
                }
            }
            CommandKind::Flow => {
                let r0 = s.params.r0.ok_or_else(|| {
                    ScenarioError::Validation("flow requires params.r0".to_string())
                })?;
                above(r0, "params.r0")?;
                require_positive(s.params.t_max, "params.tMax")?;
                if s.params.n_samples < 2 {
                    return Err(ScenarioError::Validation(format!("params.nSamples must be at least 2, got {}", s.params.n_samples)));
                }
            }
            CommandKind::Verify => {}
        }
    }

    if s.command == CommandKind::Verify {
        let suite = s.params.suite.as_deref().ok_or_else(|| {
            ScenarioError::Validation("verify requires params.suite".to_string())
        })?;
        parse_suite_selector(suite)?;
    }

    if let Some(t) = s.params.tolerances {
        for (v, what) in [
            (t.equality_rel, "tolerances.equalityRel"),
            (t.limit_abs, "tolerances.limitAbs"),
            (t.algebraic_abs, "tolerances.algebraicAbs"),
        ] {
            if let Some(v) = v {
                require_positive(v, what)?;
            }
        }
    }
    Ok(())
}

/// "all" or a single suite name.
pub fn parse_suite_selector(name: &str) -> Result<Vec<SuiteName>, ScenarioError> {
    if name == "all" {
        return Ok(SuiteName::ALL.to_vec());
    }
    SuiteName::from_str(name)
        .map(|s| vec![s])
        .map_err(|_| ScenarioError::Validation(format!("unknown suite name \"{name}\"")))
}
