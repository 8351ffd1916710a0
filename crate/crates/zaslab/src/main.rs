use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zaslab::run::{run_scenario, Overrides, RunError};
use zaslab::scenario::{parse_scenario, CommandKind, Format, Params, Scenario, ScenarioError};

/// Mass, capacity, flow, and verification reports for radial conformally
/// flat geometries with singular inner boundaries.
#[derive(Parser)]
#[command(name = "zaslab", version, arg_required_else_help = true)]
struct Cli {
    /// Directory the report files are written into.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Report file format.
    #[arg(long, global = true, value_enum, value_name = "FMT")]
    format: Option<Format>,

    /// Multiply every tolerance tier by this factor.
    #[arg(long = "tol-scale", global = true, value_name = "X", default_value_t = 1.0)]
    tol_scale: f64,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct ScenarioArg {
    /// Scenario file (JSON).
    #[arg(long, value_name = "F")]
    scenario: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Every applicable mass functional of the scenario's geometry.
    Mass(ScenarioArg),
    /// Sphere capacity and the singular-boundary capacity limit.
    Capacity(ScenarioArg),
    /// Weak inverse-mean-curvature-flow trace.
    Flow(ScenarioArg),
    /// Theorem-checking suites over a profile catalog.
    Verify {
        /// penrose, capacity, resolution, locality, geroch, hull, or all.
        #[arg(long, value_name = "SUITE")]
        suite: String,
        /// Catalog file (JSON array); defaults to the built-in catalog.
        #[arg(long, value_name = "F")]
        catalog: Option<PathBuf>,
    },
}

fn load_scenario(path: &PathBuf, expected: CommandKind) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ScenarioError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let scenario = parse_scenario(&text)?;
    if scenario.command != expected {
        return Err(ScenarioError::Validation(format!(
            "scenario says command \"{}\" but the invocation asked for \"{}\"",
            scenario.command.as_str(),
            expected.as_str()
        )));
    }
    Ok(scenario)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut overrides = Overrides {
        out_dir: cli.out,
        format: cli.format,
        tol_scale: cli.tol_scale,
        catalog_file: None,
    };

    let scenario = match cli.command {
        Cmd::Mass(a) => load_scenario(&a.scenario, CommandKind::Mass),
        Cmd::Capacity(a) => load_scenario(&a.scenario, CommandKind::Capacity),
        Cmd::Flow(a) => load_scenario(&a.scenario, CommandKind::Flow),
        Cmd::Verify { suite, catalog } => {
            overrides.catalog_file = catalog;
            Ok(Scenario {
                profile: None,
                command: CommandKind::Verify,
                params: Params { suite: Some(suite), ..Params::default() },
                output: None,
            })
        }
    };
    let scenario = match scenario {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };

    match run_scenario(&scenario, &overrides) {
        Ok(outcome) if outcome.failed_suites == 0 => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e @ RunError::Input(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e @ RunError::Numeric(_)) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}
