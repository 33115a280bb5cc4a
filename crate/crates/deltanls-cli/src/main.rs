//! Command-line front end: closed-form solving, discrete minimization,
//! mass-sweep phase tables, and the self-check suite, with deterministic
//! CSV/JSON artifacts.
//!
//! Exit codes: 0 success, 1 parameter error, 2 regime refusal,
//! 3 non-convergence, 4 verification failure.

mod config;
mod output;
mod verify;

use clap::{Parser, Subcommand};
use config::{CommonOpts, OutputFormat, RunConfig};
use deltanls::analytic;
use deltanls::variational::{self, MinimizerOptions};
use deltanls::{Grid, MassConstraint};
use serde::Serialize;
use serde_json::json;

const EXIT_PARAM: i32 = 1;
const EXIT_REGIME: i32 = 2;
const EXIT_NON_CONVERGENCE: i32 = 3;
const EXIT_VERIFY: i32 = 4;

#[derive(Parser)]
#[command(
    name = "deltanls",
    version,
    about = "Ground states of 1-D focusing NLS energies with point-concentrated and standard nonlinearities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form stationary state at a given mass or frequency
    Solve(CommonOpts),
    /// Discrete mass-constrained energy minimization
    Minimize(CommonOpts),
    /// Regime classification over a mass sweep
    Phase(CommonOpts),
    /// Run the invariant self-checks and report pass/fail
    Verify(CommonOpts),
}

/// Command failure carrying its exit code.
struct CmdError {
    code: i32,
    message: String,
}

impl CmdError {
    fn param(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARAM,
            message: message.into(),
        }
    }

    fn regime(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_REGIME,
            message: message.into(),
        }
    }

    fn io(e: std::io::Error) -> Self {
        // a closed stdout pipe is not a failure of the run itself
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Self {
                code: 0,
                message: String::new(),
            };
        }
        Self {
            code: EXIT_PARAM,
            message: format!("io error: {e}"),
        }
    }
}

#[derive(Serialize)]
struct GridMeta {
    half_width: f64,
    count: usize,
    spacing: f64,
}

impl From<&Grid> for GridMeta {
    fn from(g: &Grid) -> Self {
        Self {
            half_width: g.half_width(),
            count: g.count(),
            spacing: g.spacing(),
        }
    }
}

#[derive(Serialize)]
struct SolveArtifact {
    schema: u32,
    command: &'static str,
    p: Option<f64>,
    q: Option<f64>,
    omega: f64,
    t_bar: Option<f64>,
    shift_a: Option<f64>,
    mass: f64,
    energy: f64,
    verdict: String,
    infimum: String,
    critical_mass: Option<f64>,
    grid: GridMeta,
    meta: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct MinimizeArtifact {
    schema: u32,
    command: &'static str,
    p: Option<f64>,
    q: Option<f64>,
    mass: f64,
    energy: f64,
    multiplier_estimate: f64,
    el_residual: f64,
    interior_residual: f64,
    jump_residual: f64,
    iterations: usize,
    converged: bool,
    grid: GridMeta,
    meta: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<Vec<f64>>,
}

pub struct PhaseRow {
    pub mu: f64,
    pub verdict: String,
    pub infimum: String,
    pub critical_mass: Option<f64>,
}

#[derive(Serialize)]
struct PhaseRowJson {
    mu: f64,
    verdict: String,
    infimum: String,
    critical_mass: Option<f64>,
}

#[derive(Serialize)]
struct PhaseArtifact {
    schema: u32,
    command: &'static str,
    p: Option<f64>,
    q: Option<f64>,
    rows: Vec<PhaseRowJson>,
    meta: serde_json::Value,
}

fn meta_echo(cfg: &RunConfig) -> serde_json::Value {
    json!({
        "mass": cfg.mass,
        "omega": cfg.omega,
        "mass_min": cfg.mass_min,
        "mass_max": cfg.mass_max,
        "steps": cfg.steps,
        "grid_n": cfg.grid_n,
        "half_width": cfg.half_width,
        "tol": cfg.tol,
    })
}

fn solve_grid(cfg: &RunConfig, omega: f64) -> Result<Grid, CmdError> {
    let half_width = cfg
        .half_width
        .unwrap_or_else(|| 40.0_f64.max(25.0 / omega.sqrt().max(1e-9)));
    let count = cfg.grid_n.unwrap_or(8001);
    Grid::new(half_width, count).map_err(|e| CmdError::param(e.to_string()))
}

fn cmd_solve(cfg: &RunConfig) -> Result<(), CmdError> {
    let params = cfg.params().map_err(CmdError::param)?;
    let (state, class) = match (cfg.mass, cfg.omega) {
        (Some(mu), None) => {
            let mass = MassConstraint::new(mu).map_err(|e| CmdError::param(e.to_string()))?;
            analytic::solve_for_mass(&params, mass).map_err(|e| match e {
                analytic::AnalyticError::NotInvertible { verdict } => CmdError::regime(format!(
                    "no ground state at mass {mu}: verdict {}",
                    verdict.as_str()
                )),
                other => CmdError::param(other.to_string()),
            })?
        }
        (None, Some(omega)) => {
            let state = analytic::solve_for_omega(&params, omega)
                .map_err(|e| CmdError::param(e.to_string()))?;
            // when every stationary state sits exactly at the critical mass
            // (a critical power with nothing subcritical beside it), classify
            // at the closed form rather than the quadrature value
            let pinned_to_threshold = match (params.standard_power(), params.point_power()) {
                (Some(_), Some(_)) => params.standard_critical() && params.point_critical(),
                _ => params.standard_critical() || params.point_critical(),
            };
            let class_mass = if pinned_to_threshold {
                analytic::critical_mass(&params).expect("critical parameters have a threshold")
            } else {
                state.mass()
            };
            let class = deltanls::classify_regime(
                &params,
                MassConstraint::new(class_mass).map_err(|e| CmdError::param(e.to_string()))?,
            );
            (state, class)
        }
        _ => {
            return Err(CmdError::param(
                "solve requires exactly one of --mass and --omega",
            ))
        }
    };

    let grid = solve_grid(cfg, state.omega())?;
    let profile = state
        .sample_on(&grid)
        .map_err(|e| CmdError::param(e.to_string()))?;
    let xs: Vec<f64> = grid.nodes().collect();

    let mut artifact = SolveArtifact {
        schema: 1,
        command: "solve",
        p: params.standard_power(),
        q: params.point_power(),
        omega: state.omega(),
        t_bar: state.matching().map(|m| m.t_bar),
        shift_a: state.matching().map(|m| m.shift_a),
        mass: state.mass(),
        energy: state.energy(),
        verdict: class.verdict.as_str().to_string(),
        infimum: class.infimum.as_str().to_string(),
        critical_mass: class.critical_mass,
        grid: GridMeta::from(&grid),
        meta: meta_echo(cfg),
        x: None,
        u: None,
    };

    match cfg.format {
        OutputFormat::Csv => {
            let csv = output::profile_csv(&xs, profile.values());
            output::write_text(cfg.out.as_deref(), &csv).map_err(CmdError::io)?;
            if let Some(out) = &cfg.out {
                output::write_json(Some(&output::sidecar_path(out)), &artifact)
                    .map_err(CmdError::io)?;
            }
        }
        OutputFormat::Json => {
            artifact.x = Some(xs);
            artifact.u = Some(profile.values().to_vec());
            output::write_json(cfg.out.as_deref(), &artifact).map_err(CmdError::io)?;
        }
    }
    Ok(())
}

fn cmd_minimize(cfg: &RunConfig) -> Result<(), CmdError> {
    let params = cfg.params().map_err(CmdError::param)?;
    let mu = cfg
        .mass
        .ok_or_else(|| CmdError::param("minimize requires --mass"))?;
    let mass = MassConstraint::new(mu).map_err(|e| CmdError::param(e.to_string()))?;

    let grid = match (cfg.half_width, cfg.grid_n) {
        (None, None) => variational::default_grid(&params, mass).map_err(map_variational)?,
        (hw, n) => {
            let default = variational::default_grid(&params, mass).map_err(map_variational)?;
            Grid::new(
                hw.unwrap_or_else(|| default.half_width()),
                n.unwrap_or_else(|| default.count()),
            )
            .map_err(|e| CmdError::param(e.to_string()))?
        }
    };

    let mut opts = MinimizerOptions::new(grid);
    if let Some(tol) = cfg.tol {
        opts.gradient_tolerance = tol;
    }
    let result = variational::minimize(&params, mass, &opts).map_err(map_variational)?;
    let (interior, jump) =
        variational::el_residual(&result.profile, &params, result.multiplier_estimate);

    let xs: Vec<f64> = grid.nodes().collect();
    let mut artifact = MinimizeArtifact {
        schema: 1,
        command: "minimize",
        p: params.standard_power(),
        q: params.point_power(),
        mass: mu,
        energy: result.energy,
        multiplier_estimate: result.multiplier_estimate,
        el_residual: result.el_residual,
        interior_residual: interior,
        jump_residual: jump,
        iterations: result.iterations,
        converged: result.converged,
        grid: GridMeta::from(&grid),
        meta: meta_echo(cfg),
        x: None,
        u: None,
    };

    match cfg.format {
        OutputFormat::Csv => {
            let csv = output::profile_csv(&xs, result.profile.values());
            output::write_text(cfg.out.as_deref(), &csv).map_err(CmdError::io)?;
            if let Some(out) = &cfg.out {
                output::write_json(Some(&output::sidecar_path(out)), &artifact)
                    .map_err(CmdError::io)?;
            }
        }
        OutputFormat::Json => {
            artifact.x = Some(xs);
            artifact.u = Some(result.profile.values().to_vec());
            output::write_json(cfg.out.as_deref(), &artifact).map_err(CmdError::io)?;
        }
    }

    if !result.converged {
        return Err(CmdError {
            code: EXIT_NON_CONVERGENCE,
            message: format!(
                "not converged after {} iterations (residual {:.3e}); artifact written",
                result.iterations, result.el_residual
            ),
        });
    }
    Ok(())
}

fn map_variational(e: variational::VariationalError) -> CmdError {
    match e {
        variational::VariationalError::RegimeRefused { verdict } => CmdError::regime(format!(
            "minimization refused: verdict {}",
            verdict.as_str()
        )),
        other => CmdError::param(other.to_string()),
    }
}

fn cmd_phase(cfg: &RunConfig) -> Result<(), CmdError> {
    let params = cfg.params().map_err(CmdError::param)?;
    let (min, max) = match (cfg.mass_min, cfg.mass_max) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(CmdError::param("phase requires --mass-min and --mass-max")),
    };
    let steps = cfg.steps.unwrap_or(50);
    if min.is_nan() || max.is_nan() || min <= 0.0 || max <= min || steps < 2 {
        return Err(CmdError::param(format!(
            "bad sweep: need 0 < mass-min < mass-max and steps >= 2 (got {min}, {max}, {steps})"
        )));
    }

    let rows: Vec<PhaseRow> = (0..steps)
        .map(|i| {
            // endpoints exact, interior nodes by linear blend
            let mu = if i == 0 {
                min
            } else if i == steps - 1 {
                max
            } else {
                min + (max - min) * i as f64 / (steps - 1) as f64
            };
            let class = deltanls::classify_regime(&params, MassConstraint::new(mu).unwrap());
            PhaseRow {
                mu,
                verdict: class.verdict.as_str().to_string(),
                infimum: class.infimum.as_str().to_string(),
                critical_mass: class.critical_mass,
            }
        })
        .collect();

    match cfg.format {
        OutputFormat::Csv => {
            let csv = output::phase_csv(&rows);
            output::write_text(cfg.out.as_deref(), &csv).map_err(CmdError::io)?;
        }
        OutputFormat::Json => {
            let artifact = PhaseArtifact {
                schema: 1,
                command: "phase",
                p: params.standard_power(),
                q: params.point_power(),
                rows: rows
                    .into_iter()
                    .map(|r| PhaseRowJson {
                        mu: r.mu,
                        verdict: r.verdict,
                        infimum: r.infimum,
                        critical_mass: r.critical_mass,
                    })
                    .collect(),
                meta: meta_echo(cfg),
            };
            output::write_json(cfg.out.as_deref(), &artifact).map_err(CmdError::io)?;
        }
    }
    Ok(())
}

fn cmd_verify(cfg: &RunConfig) -> Result<(), CmdError> {
    let report = verify::run(cfg.only.as_deref(), cfg.tolerance_scale);
    for check in &report.checks {
        eprintln!(
            "{} {} measured={:.3e} tolerance={:.3e}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.measured,
            check.scaled_tolerance
        );
    }
    output::write_json(cfg.out.as_deref(), &report).map_err(CmdError::io)?;
    if report.all_passed {
        Ok(())
    } else {
        Err(CmdError {
            code: EXIT_VERIFY,
            message: format!("failed checks: {}", report.failed.join(", ")),
        })
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    std::process::exit(0);
                }
                _ => {
                    eprintln!("{e}");
                    std::process::exit(EXIT_PARAM);
                }
            }
        }
    };

    type CommandFn = fn(&RunConfig) -> Result<(), CmdError>;
    let (opts, run): (&CommonOpts, CommandFn) = match &cli.command {
        Command::Solve(o) => (o, cmd_solve),
        Command::Minimize(o) => (o, cmd_minimize),
        Command::Phase(o) => (o, cmd_phase),
        Command::Verify(o) => (o, cmd_verify),
    };

    let cfg = match RunConfig::resolve(opts) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(EXIT_PARAM);
        }
    };

    if let Err(e) = run(&cfg) {
        if !e.message.is_empty() {
            eprintln!("error: {}", e.message);
        }
        std::process::exit(e.code);
    }
}
