//! Command-line flags, TOML config files, and their resolution into a
//! [`RunConfig`]. Precedence: flags, then config file, then defaults.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

use zonal_core::DEFAULT_SEED;

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "ZONAL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "zonal", version, about = "Zonal harmonics, their asymptotics, and Szegő-kernel oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Eval,
    Compare,
    Oracle,
    Scaling,
    Bench,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate P_{k,n+1}(cos θ) and the projector kernel.
    Eval(Flags),
    /// Exact versus leading-order comparison on the angle window (CSV rows).
    Compare(Flags),
    /// Monte Carlo push-forward, C-constant and decay oracles (n = 2 or 3, k <= 12).
    Oracle(Flags),
    /// Log-log fit of the relative bracket error over k = k-min, 2 k-min, ..., k-max.
    Scaling(Flags),
    /// Timing of the exact recurrence against the closed form.
    Bench(Flags),
}

impl Command {
    pub fn parts(&self) -> (CommandKind, &Flags) {
        match self {
            Command::Eval(f) => (CommandKind::Eval, f),
            Command::Compare(f) => (CommandKind::Compare, f),
            Command::Oracle(f) => (CommandKind::Oracle, f),
            Command::Scaling(f) => (CommandKind::Scaling, f),
            Command::Bench(f) => (CommandKind::Bench, f),
        }
    }
}

/// Flags shared by every subcommand. Options a subcommand does not use are
/// accepted and ignored.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    /// TOML file with any of the options below (field names use underscores).
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Master seed for every random stream.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo sample count.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Sphere dimension n >= 1.
    #[arg(long)]
    pub n: Option<u32>,
    /// Degree(s) k, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<u32>>,
    /// Angle(s) θ in radians, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub theta: Option<Vec<f64>>,
    /// Window constant C > 0.
    #[arg(long = "c", visible_alias = "C", allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Window exponent δ in [0, 1/6).
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Smallest degree of a geometric k-grid.
    #[arg(long)]
    pub k_min: Option<u32>,
    /// Largest degree of a geometric k-grid.
    #[arg(long)]
    pub k_max: Option<u32>,
    /// θ-grid points per window.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Random (q0, q1) pairs for the push-forward check.
    #[arg(long)]
    pub pairs: Option<usize>,
    /// Degrees for the decay probe, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub decay_k: Option<Vec<u32>>,
    /// Relative error budget for the crossover degree.
    #[arg(long, allow_negative_numbers = true)]
    pub budget: Option<f64>,
    /// Timed evaluations per path and degree.
    #[arg(long)]
    pub evaluations: Option<usize>,
}

/// Fully resolved configuration, echoed into every output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: u32,
    pub k: Vec<u32>,
    pub theta: Vec<f64>,
    #[serde(rename = "C")]
    pub c: f64,
    pub delta: f64,
    pub k_min: u32,
    pub k_max: u32,
    pub grid: usize,
    pub seed: u64,
    pub samples: usize,
    pub pairs: usize,
    pub decay_k: Vec<u32>,
    pub budget: f64,
    pub evaluations: usize,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

/// A configuration problem; reported with exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid configuration: `{}`: {}", self.field, self.message)
    }
}

fn err(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        field: field.into(),
        message: message.into(),
    }
}

fn load_file(path: &PathBuf) -> Result<Flags, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| err("config", format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| {
        let msg = e.message().to_string();
        let field = msg
            .split('`')
            .nth(1)
            .map(str::to_string)
            .unwrap_or_else(|| "config".to_string());
        err(&field, format!("{}: {msg}", path.display()))
    })
}

/// Picks `flag`, else `file`, else `default`.
fn pick<T: Clone>(flag: &Option<T>, file: &Option<T>, default: T) -> T {
    flag.clone().or_else(|| file.clone()).unwrap_or(default)
}

pub fn resolve(kind: CommandKind, flags: &Flags) -> Result<RunConfig, ConfigError> {
    let file = match &flags.config {
        Some(p) => load_file(p)?,
        None => Flags::default(),
    };
    let n: Option<u32> = flags.n.or(file.n);
    let k: Option<Vec<u32>> = flags.k.clone().or_else(|| file.k.clone());
    let theta: Option<Vec<f64>> = flags.theta.clone().or_else(|| file.theta.clone());
    let default_format = match kind {
        CommandKind::Eval | CommandKind::Compare => Format::Csv,
        _ => Format::Json,
    };
    let cfg = RunConfig {
        command: kind,
        n: n.ok_or_else(|| err("n", "missing (use --n)"))?,
        k: k.clone().unwrap_or_default(),
        theta: theta.clone().unwrap_or_default(),
        c: pick(&flags.c, &file.c, 1.0),
        delta: pick(&flags.delta, &file.delta, 0.0),
        k_min: pick(&flags.k_min, &file.k_min, 64),
        k_max: pick(&flags.k_max, &file.k_max, 4096),
        grid: pick(&flags.grid, &file.grid, zonal_core::harness::DEFAULT_THETA_GRID),
        seed: pick(&flags.seed, &file.seed, DEFAULT_SEED),
        samples: pick(&flags.samples, &file.samples, 1_000_000),
        pairs: pick(&flags.pairs, &file.pairs, 20),
        decay_k: pick(&flags.decay_k, &file.decay_k, (2..=12).collect()),
        budget: pick(&flags.budget, &file.budget, 1e-2),
        evaluations: pick(&flags.evaluations, &file.evaluations, 100_000),
        format: pick(&flags.format, &file.format, default_format),
        out: flags.out.clone().or(file.out),
    };
    validate(&cfg, k.is_some(), theta.is_some())?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig, has_k: bool, has_theta: bool) -> Result<(), ConfigError> {
    if cfg.n == 0 {
        return Err(err("n", "must be at least 1"));
    }
    let needs_k = matches!(cfg.command, CommandKind::Eval | CommandKind::Compare | CommandKind::Oracle);
    if needs_k && (!has_k || cfg.k.is_empty()) {
        return Err(err("k", "missing (use --k)"));
    }
    if cfg.command == CommandKind::Eval {
        if !has_theta || cfg.theta.is_empty() {
            return Err(err("theta", "missing (use --theta)"));
        }
        if let Some(t) = cfg.theta.iter().find(|t| !t.is_finite()) {
            return Err(err("theta", format!("{t} is not finite")));
        }
    }
    if matches!(cfg.command, CommandKind::Compare | CommandKind::Scaling | CommandKind::Bench) {
        if !(cfg.c > 0.0 && cfg.c.is_finite()) {
            return Err(err("C", format!("must be positive, got {}", cfg.c)));
        }
        if !(0.0..1.0 / 6.0).contains(&cfg.delta) {
            return Err(err("delta", format!("must lie in [0, 1/6), got {}", cfg.delta)));
        }
        if cfg.grid == 0 {
            return Err(err("grid", "must be positive"));
        }
    }
    if matches!(cfg.command, CommandKind::Scaling | CommandKind::Bench) {
        if cfg.k_min == 0 {
            return Err(err("k_min", "must be at least 1"));
        }
        if cfg.k_max < cfg.k_min {
            return Err(err("k_max", format!("{} is below k_min = {}", cfg.k_max, cfg.k_min)));
        }
    }
    if cfg.command == CommandKind::Scaling && zonal_core::harness::geometric_degrees(cfg.k_min, cfg.k_max).len() < 5 {
        return Err(err("k_max", "the grid k_min, 2 k_min, ..., k_max needs at least 5 degrees"));
    }
    if cfg.command == CommandKind::Bench {
        if cfg.budget.is_nan() || cfg.budget <= 0.0 {
            return Err(err("budget", format!("must be positive, got {}", cfg.budget)));
        }
        if cfg.evaluations == 0 {
            return Err(err("evaluations", "must be positive"));
        }
    }
    if cfg.command == CommandKind::Oracle {
        if !(2..=3).contains(&cfg.n) {
            return Err(err("n", format!("oracle supports n = 2 or 3, got {}", cfg.n)));
        }
        if let Some(k) = cfg.k.iter().chain(&cfg.decay_k).find(|&&k| k > 12) {
            return Err(err("k", format!("oracle supports k <= 12, got {k}")));
        }
        if cfg.samples < zonal_core::geometry::cone::MIN_GRAM_SAMPLES {
            return Err(err(
                "samples",
                format!(
                    "oracle needs at least {} samples, got {}",
                    zonal_core::geometry::cone::MIN_GRAM_SAMPLES,
                    cfg.samples
                ),
            ));
        }
        if cfg.pairs == 0 {
            return Err(err("pairs", "must be positive"));
        }
    }
    Ok(())
}

/// Thread count from [`THREADS_ENV`], if set.
pub fn threads_from_env() -> Result<Option<usize>, ConfigError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .map(Some)
            .ok_or_else(|| err(THREADS_ENV, format!("expected a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}
