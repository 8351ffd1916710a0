//! Command dispatch: one validated scenario in, report files out.
//!
//! Exit code mapping (performed by the binary): 0 success / all suites pass,
//! 1 a verify suite had a failing case, 2 input error, 3 numerical failure.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use zaslab_core::catalog::{default_catalog, CatalogEntry};
use zaslab_core::harmonic::{capacity_surface, capacity_zas, default_shrinking_radii};
use zaslab_core::imcf::weak_flow;
use zaslab_core::mass::{adm_mass, hawking_mass, regular_mass, zas_mass, MassKind, MassReport};
use zaslab_core::geometry::Resolution;
use zaslab_core::report::Tolerances;
use zaslab_core::verify::run_suite;
use zaslab_core::{Error, Profile, RadialProfile};

use crate::output;
use crate::scenario::{parse_suite_selector, CommandKind, Format, Scenario, ScenarioError};

#[derive(Debug)]
pub enum RunError {
    /// Bad scenario, bad catalog file, unwritable output: exit 2.
    Input(String),
    /// The computation itself failed: exit 3.
    Numeric(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Input(msg) => write!(f, "input error: {msg}"),
            RunError::Numeric(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ScenarioError> for RunError {
    fn from(e: ScenarioError) -> Self {
        RunError::Input(e.to_string())
    }
}

#[derive(Debug, Default)]
pub struct RunOutcome {
    /// Verification suites whose overall verdict was failure.
    pub failed_suites: usize,
    pub artifacts: Vec<PathBuf>,
}

/// Command-line settings that override what a scenario file asks for.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub tol_scale: f64,
    pub catalog_file: Option<PathBuf>,
}

fn numeric(e: Error) -> RunError {
    RunError::Numeric(e.to_string())
}

fn effective_tolerances(scenario: &Scenario, tol_scale: f64) -> Tolerances {
    let base = Tolerances::base();
    let t = match scenario.params.tolerances {
        Some(o) => o.apply(base),
        None => base,
    };
    let scale = if tol_scale > 0.0 { tol_scale } else { 1.0 };
    Tolerances {
        equality_rel: t.equality_rel * scale,
        limit_abs: t.limit_abs * scale,
        algebraic_abs: t.algebraic_abs * scale,
    }
}

pub fn run_scenario(scenario: &Scenario, overrides: &Overrides) -> Result<RunOutcome, RunError> {
    let out_dir = overrides
        .out_dir
        .clone()
        .or_else(|| scenario.output.as_ref().map(|o| o.path.clone()))
        .unwrap_or_else(|| PathBuf::from("."));
    let format = overrides
        .format
        .or_else(|| scenario.output.as_ref().map(|o| o.format))
        .unwrap_or(Format::Json);

    match scenario.command {
        CommandKind::Mass => mass_command(scenario, &out_dir, format),
        CommandKind::Capacity => capacity_command(scenario, &out_dir, format),
        CommandKind::Flow => flow_command(scenario, &out_dir, format),
        CommandKind::Verify => verify_command(scenario, overrides, &out_dir, format),
    }
}

fn profile_of(scenario: &Scenario) -> Result<&RadialProfile, RunError> {
    scenario
        .profile
        .as_ref()
        .ok_or_else(|| RunError::Input("scenario has no profile".to_string()))
}

fn write(out_dir: &Path, name: &str, text: &str, outcome: &mut RunOutcome) -> Result<(), RunError> {
    let path = output::write_text(out_dir, name, text)
        .map_err(|e| RunError::Input(format!("cannot write {name}: {e}")))?;
    outcome.artifacts.push(path);
    Ok(())
}

/// Every mass functional that applies to the profile, in a fixed order:
/// Hawking (when a radius was given), ADM, regular, singular-boundary.
fn mass_command(scenario: &Scenario, out_dir: &Path, format: Format) -> Result<RunOutcome, RunError> {
    let p = profile_of(scenario)?;
    let mut reports: Vec<MassReport> = Vec::new();

    if let Some(r) = scenario.params.r {
        let value = hawking_mass(p, r).map_err(numeric)?;
        reports.push(MassReport {
            kind: MassKind::Hawking,
            value,
            r: Some(r),
            diagnostics: Default::default(),
        });
    }
    reports.push(adm_mass(p).map_err(numeric)?);
    match regular_mass(&Resolution::identity(p.clone())) {
        Ok(m) => reports.push(m),
        Err(Error::Domain { .. }) | Err(Error::NotRegular { .. }) => {}
        Err(e) => return Err(numeric(e)),
    }
    if p.r_min() > 0.0 {
        let radii = default_shrinking_radii(p.r_min());
        reports.push(zas_mass(p, &radii).map_err(numeric)?);
    }

    let mut outcome = RunOutcome::default();
    match format {
        Format::Json => write(out_dir, "mass.json", &output::to_json_string(&reports), &mut outcome)?,
        Format::Csv => write(out_dir, "mass.csv", &output::mass_csv(&reports), &mut outcome)?,
    }
    Ok(outcome)
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct SurfaceCapacity {
    r: f64,
    value: f64,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct CapacityArtifact {
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary: Option<zaslab_core::harmonic::BoundaryCapacity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    surface: Option<SurfaceCapacity>,
}

/// Sphere capacity at the requested radius and, over a singular boundary,
/// the shrinking-sphere limit with its evaluation sequence.
fn capacity_command(
    scenario: &Scenario,
    out_dir: &Path,
    format: Format,
) -> Result<RunOutcome, RunError> {
    let p = profile_of(scenario)?;
    let boundary = if p.r_min() > 0.0 {
        Some(capacity_zas(p).map_err(numeric)?)
    } else {
        None
    };
    let surface = match scenario.params.r {
        Some(r) => Some(SurfaceCapacity { r, value: capacity_surface(p, r).map_err(numeric)? }),
        None => None,
    };

    let mut outcome = RunOutcome::default();
    match format {
        Format::Json => {
            let artifact = CapacityArtifact { boundary, surface };
            write(out_dir, "capacity.json", &output::to_json_string(&artifact), &mut outcome)?;
        }
        Format::Csv => {
            let mut rows: Vec<(String, Option<f64>, f64)> = Vec::new();
            if let Some(s) = &surface {
                rows.push(("surface".to_string(), Some(s.r), s.value));
            }
            if let Some(b) = &boundary {
                rows.push(("boundary".to_string(), None, b.value));
                for &(r, v) in &b.sequence {
                    rows.push(("boundaryApproximation".to_string(), Some(r), v));
                }
            }
            write(out_dir, "capacity.csv", &output::capacity_csv(&rows), &mut outcome)?;
        }
    }
    Ok(outcome)
}

/// A trace's serialization is the CSV table plus a JSON jump sidecar — that
/// pair is its on-disk form in either requested format.
fn flow_command(scenario: &Scenario, out_dir: &Path, _format: Format) -> Result<RunOutcome, RunError> {
    let p = profile_of(scenario)?;
    let r0 = scenario.params.r0.expect("validated");
    let trace =
        weak_flow(p, r0, scenario.params.t_max, scenario.params.n_samples).map_err(numeric)?;

    let mut outcome = RunOutcome::default();
    write(out_dir, "flow_trace.csv", &output::flow_csv(&trace), &mut outcome)?;
    write(out_dir, "flow_jumps.json", &output::to_json_string(&trace.jumps), &mut outcome)?;
    Ok(outcome)
}

fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Input(format!("cannot read catalog {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| RunError::Input(format!("catalog {}: {e}", path.display())))
}

fn verify_command(
    scenario: &Scenario,
    overrides: &Overrides,
    out_dir: &Path,
    format: Format,
) -> Result<RunOutcome, RunError> {
    let suite_spec = scenario.params.suite.as_deref().unwrap_or("all");
    let suites = parse_suite_selector(suite_spec)?;
    let catalog = match &overrides.catalog_file {
        Some(path) => load_catalog(path)?,
        None => default_catalog(),
    };
    let tol = effective_tolerances(scenario, overrides.tol_scale);

    let mut outcome = RunOutcome::default();
    for name in suites {
        let report = run_suite(name, &catalog, &tol).map_err(numeric)?;
        if !report.overall {
            outcome.failed_suites += 1;
        }
        match format {
            Format::Json => {
                let file = format!("verify_{}.json", name.as_str());
                write(out_dir, &file, &output::to_json_string(&report), &mut outcome)?;
            }
            Format::Csv => {
                let file = format!("verify_{}.csv", name.as_str());
                write(out_dir, &file, &output::suite_csv(&report), &mut outcome)?;
            }
        }
    }
    Ok(outcome)
}
