//! Flag handling and the optional JSON config file whose keys mirror the
//! flags. Explicit command-line flags win over config-file values.

use clap::Args;
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Flags shared by the solver-facing subcommands. Every field is optional
/// here; each command validates the combination it needs.
#[derive(Debug, Clone, Args)]
pub struct CommonOpts {
    /// Standard nonlinearity power p in (2, 6]
    #[arg(long)]
    pub p: Option<f64>,
    /// Point nonlinearity power q in (2, 4]
    #[arg(long)]
    pub q: Option<f64>,
    /// Mass constraint (squared L2 norm)
    #[arg(long)]
    pub mass: Option<f64>,
    /// Frequency of the stationary state
    #[arg(long)]
    pub omega: Option<f64>,
    /// Sweep lower mass bound
    #[arg(long)]
    pub mass_min: Option<f64>,
    /// Sweep upper mass bound
    #[arg(long)]
    pub mass_max: Option<f64>,
    /// Sweep row count (>= 2, endpoints included)
    #[arg(long)]
    pub steps: Option<usize>,
    /// Grid node count (odd, >= 3)
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Grid half width L (domain [-L, L])
    #[arg(long)]
    pub half_width: Option<f64>,
    /// Minimizer gradient tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Artifact format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Verify: run only checks whose name contains this substring
    #[arg(long)]
    pub only: Option<String>,
    /// Verify: multiply every tolerance by this factor
    #[arg(long)]
    pub tolerance_scale: Option<f64>,
    /// JSON config file whose keys mirror the flags
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Config-file form of [`CommonOpts`]; keys are the flag names with
/// underscores.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub mass: Option<f64>,
    pub omega: Option<f64>,
    pub mass_min: Option<f64>,
    pub mass_max: Option<f64>,
    pub steps: Option<usize>,
    pub grid_n: Option<usize>,
    pub half_width: Option<f64>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub only: Option<String>,
    pub tolerance_scale: Option<f64>,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub mass: Option<f64>,
    pub omega: Option<f64>,
    pub mass_min: Option<f64>,
    pub mass_max: Option<f64>,
    pub steps: Option<usize>,
    pub grid_n: Option<usize>,
    pub half_width: Option<f64>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub only: Option<String>,
    pub tolerance_scale: f64,
}

impl RunConfig {
    /// Merge flags over the optional config file.
    pub fn resolve(opts: &CommonOpts) -> Result<Self, String> {
        let file: FileConfig = match &opts.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
                serde_json::from_str(&text)
                    .map_err(|e| format!("bad config {}: {e}", path.display()))?
            }
            None => FileConfig::default(),
        };
        let format = match (&opts.format, file.format.as_deref()) {
            (Some(f), _) => *f,
            (None, Some("csv")) => OutputFormat::Csv,
            (None, Some("json")) => OutputFormat::Json,
            (None, Some(other)) => return Err(format!("bad format {other:?} in config")),
            (None, None) => OutputFormat::Csv,
        };
        Ok(RunConfig {
            p: opts.p.or(file.p),
            q: opts.q.or(file.q),
            mass: opts.mass.or(file.mass),
            omega: opts.omega.or(file.omega),
            mass_min: opts.mass_min.or(file.mass_min),
            mass_max: opts.mass_max.or(file.mass_max),
            steps: opts.steps.or(file.steps),
            grid_n: opts.grid_n.or(file.grid_n),
            half_width: opts.half_width.or(file.half_width),
            tol: opts.tol.or(file.tol),
            out: opts.out.clone().or(file.out),
            format,
            only: opts.only.clone().or(file.only),
            tolerance_scale: opts.tolerance_scale.or(file.tolerance_scale).unwrap_or(1.0),
        })
    }

    pub fn params(&self) -> Result<deltanls::EnergyParams, String> {
        deltanls::EnergyParams::new(self.p, self.q).map_err(|e| e.to_string())
    }
}
