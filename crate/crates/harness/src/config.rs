//! Command-line flags and their validation into a runnable plan.

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use planted_core::distinguish::{binary_feasible, real_feasible, BinaryFeasibility, RealFeasibility};
use planted_core::{BchCode, BinaryCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// Real-valued model: Reed-Solomon codes over GF(2^m), n = 2^m.
    Thm1,
    /// Binary model: BCH codes of length 2^m - 1.
    Thm2,
    /// The audit battery.
    Audits,
    /// Real-valued experiment under wraparound noise, one row group per beta.
    NoiseSweep,
}

impl Experiment {
    pub fn tag(self) -> &'static str {
        match self {
            Experiment::Thm1 => "thm1",
            Experiment::Thm2 => "thm2",
            Experiment::Audits => "audits",
            Experiment::NoiseSweep => "noise-sweep",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// Binary: flip the first floor(delta n) bits.
    FirstCoords,
    /// Real-valued: move uniquely-indexed tuples onto other unique indices.
    RetargetUnique,
    /// Real-valued: change the value of uniquely-indexed tuples.
    CorruptUnique,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::FirstCoords => "first-coords",
            Strategy::RetargetUnique => "retarget-unique",
            Strategy::CorruptUnique => "corrupt-unique",
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "planted", version, about = "Planted-versus-null distinguishing experiments and audits")]
pub struct Cli {
    #[arg(long, value_enum, env = "PLANTED_EXPERIMENT")]
    pub experiment: Experiment,

    /// Block length; must match --m when both are given.
    #[arg(long, env = "PLANTED_N")]
    pub n: Option<usize>,

    /// Field degree: n = 2^m for thm1, n = 2^m - 1 for thm2.
    #[arg(long, env = "PLANTED_M")]
    pub m: Option<u32>,

    /// Reed-Solomon degree fraction, k = ceil(alpha n).
    #[arg(long, env = "PLANTED_ALPHA", default_value_t = 0.05)]
    pub alpha: f64,

    /// BCH decoding radius.
    #[arg(long, env = "PLANTED_T")]
    pub t: Option<usize>,

    #[arg(long, env = "PLANTED_DELTA")]
    pub delta: Option<f64>,

    /// Comma-separated wraparound magnitudes.
    #[arg(long, env = "PLANTED_BETA_GRID", value_delimiter = ',', default_value = "0,0.5,1")]
    pub beta_grid: Vec<f64>,

    /// Trials per hypothesis.
    #[arg(long, env = "PLANTED_TRIALS", default_value_t = 200)]
    pub trials: usize,

    #[arg(long, env = "PLANTED_SEED", default_value_t = 1)]
    pub seed: u64,

    /// Replace resampling noise on the planted side with an adversary.
    #[arg(long, value_enum, env = "PLANTED_ADVERSARIAL")]
    pub adversarial: Option<Strategy>,

    #[arg(long, env = "PLANTED_OUT")]
    pub out: Option<PathBuf>,

    /// Defaults to csv for experiments and json for audits.
    #[arg(long, value_enum, env = "PLANTED_FORMAT")]
    pub format: Option<Format>,

    /// Run only the audits with this name.
    #[arg(long, env = "PLANTED_ONLY")]
    pub only: Option<String>,

    /// Exit with status 1 when a combined metric falls below this value.
    #[arg(long, env = "PLANTED_MIN_METRIC")]
    pub min_metric: Option<f64>,

    /// Write per-trial verdict diagnostics as JSON lines.
    #[arg(long, env = "PLANTED_DIAGNOSTICS")]
    pub diagnostics: Option<PathBuf>,

    /// Write the first sample of each hypothesis into this directory.
    #[arg(long, env = "PLANTED_DUMP_SAMPLE")]
    pub dump_sample: Option<PathBuf>,

    /// Write the generator matrix of the code in use.
    #[arg(long, env = "PLANTED_EXPORT_CODE")]
    pub export_code: Option<PathBuf>,

    /// Worker threads; results do not depend on it.
    #[arg(long, env = "PLANTED_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn invalid<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Clone, Debug)]
pub struct RealPlan {
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    pub adversary: Option<Strategy>,
    pub feasibility: RealFeasibility,
}

#[derive(Clone, Debug)]
pub struct BinaryPlan {
    pub m: u32,
    pub t: usize,
    pub n: usize,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    pub adversary: Option<Strategy>,
    pub feasibility: BinaryFeasibility,
}

#[derive(Clone, Debug)]
pub struct AuditPlan {
    pub seed: u64,
    pub only: Option<String>,
}

#[derive(Clone, Debug)]
pub enum Plan {
    Real(RealPlan),
    Binary(BinaryPlan),
    NoiseSweep(RealPlan, Vec<f64>),
    Audits(AuditPlan),
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub plan: Plan,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub min_metric: Option<f64>,
    pub diagnostics: Option<PathBuf>,
    pub dump_sample: Option<PathBuf>,
    pub export_code: Option<PathBuf>,
    pub threads: Option<usize>,
}

pub const DEFAULT_REAL_M: u32 = 10;
pub const DEFAULT_REAL_DELTA: f64 = 0.0035;
pub const DEFAULT_BINARY_M: u32 = 8;
pub const DEFAULT_BINARY_T: usize = 6;
pub const DEFAULT_BINARY_DELTA: f64 = 0.0059;

/// `ceil(alpha n)`, ignoring float noise below 1e-9.
pub fn degree_for(alpha: f64, n: usize) -> usize {
    let x = alpha * n as f64;
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

fn unit(name: &str, x: f64) -> Result<(), ConfigError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        invalid(format!("{name} must lie in [0, 1], got {x}"))
    }
}

fn real_plan(cli: &Cli) -> Result<RealPlan, ConfigError> {
    let m = match (cli.m, cli.n) {
        (Some(m), Some(n)) if n != 1usize.checked_shl(m).unwrap_or(0) => {
            return invalid(format!("n = {n} does not equal 2^m = 2^{m}"));
        }
        (Some(m), _) => m,
        (None, Some(n)) if n.is_power_of_two() => n.trailing_zeros(),
        (None, Some(n)) => return invalid(format!("n = {n} must be a power of two")),
        (None, None) => DEFAULT_REAL_M,
    };
    if !(1..=16).contains(&m) {
        return invalid(format!("m must lie in 1..=16, got {m}"));
    }
    let n = 1usize << m;
    unit("alpha", cli.alpha)?;
    let delta = cli.delta.unwrap_or(DEFAULT_REAL_DELTA);
    unit("delta", delta)?;
    let k = degree_for(cli.alpha, n);
    if k >= n {
        return invalid(format!("k = ceil(alpha n) = {k} must be below n = {n}"));
    }
    let feasibility = real_feasible(n, k, delta);
    if let Some(v) = feasibility.violation() {
        return invalid(format!(
            "infeasible parameters (n = {n}, k = {k}, delta = {delta}): {v}; 16*delta*n + 2n/3 + 4*delta*n = {:.2}, n - k = {}",
            feasibility.lhs,
            n - k
        ));
    }
    match cli.adversarial {
        None | Some(Strategy::RetargetUnique) | Some(Strategy::CorruptUnique) => {}
        Some(s) => return invalid(format!("strategy {} applies to binary samples only", s.name())),
    }
    Ok(RealPlan {
        m,
        n,
        k,
        alpha: cli.alpha,
        delta,
        trials: cli.trials,
        seed: cli.seed,
        adversary: cli.adversarial,
        feasibility,
    })
}

fn binary_plan(cli: &Cli) -> Result<BinaryPlan, ConfigError> {
    let m = match (cli.m, cli.n) {
        (Some(m), Some(n)) if n + 1 != 1usize.checked_shl(m).unwrap_or(0) => {
            return invalid(format!("n = {n} does not equal 2^m - 1 for m = {m}"));
        }
        (Some(m), _) => m,
        (None, Some(n)) if (n + 1).is_power_of_two() => (n + 1).trailing_zeros(),
        (None, Some(n)) => return invalid(format!("n = {n} must be of the form 2^m - 1")),
        (None, None) => DEFAULT_BINARY_M,
    };
    let t = cli.t.unwrap_or(DEFAULT_BINARY_T);
    let delta = cli.delta.unwrap_or(DEFAULT_BINARY_DELTA);
    unit("delta", delta)?;
    let code = BchCode::new(m, t).map_err(|e| ConfigError(format!("BCH(m = {m}, t = {t}): {e}")))?;
    let feasibility = binary_feasible(&code, delta);
    if let Some(v) = feasibility.violation() {
        return invalid(format!("infeasible parameters (n = {}, t = {t}, delta = {delta}): {v}", code.code().len()));
    }
    match cli.adversarial {
        None | Some(Strategy::FirstCoords) => {}
        Some(s) => return invalid(format!("strategy {} applies to real-valued samples only", s.name())),
    }
    Ok(BinaryPlan {
        m,
        t,
        n: code.code().len(),
        delta,
        trials: cli.trials,
        seed: cli.seed,
        adversary: cli.adversarial,
        feasibility,
    })
}

impl ExperimentConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, ConfigError> {
        let plan = match cli.experiment {
            Experiment::Thm1 => Plan::Real(real_plan(cli)?),
            Experiment::Thm2 => Plan::Binary(binary_plan(cli)?),
            Experiment::NoiseSweep => {
                if cli.adversarial.is_some() {
                    return invalid("noise-sweep does not take --adversarial");
                }
                if cli.beta_grid.is_empty() {
                    return invalid("beta grid is empty");
                }
                for &b in &cli.beta_grid {
                    unit("beta", b)?;
                }
                Plan::NoiseSweep(real_plan(cli)?, cli.beta_grid.clone())
            }
            Experiment::Audits => {
                if let Some(o) = &cli.only {
                    if !crate::battery::AUDIT_NAMES.contains(&o.as_str()) {
                        return invalid(format!(
                            "unknown audit {o:?}; known: {}",
                            crate::battery::AUDIT_NAMES.join(", ")
                        ));
                    }
                }
                Plan::Audits(AuditPlan { seed: cli.seed, only: cli.only.clone() })
            }
        };
        let format = match (cli.experiment, cli.format) {
            (Experiment::Audits, Some(Format::Csv)) => return invalid("audit reports are emitted as JSON only"),
            (Experiment::Audits, _) => Format::Json,
            (_, f) => f.unwrap_or(Format::Csv),
        };
        if let Some(t) = cli.threads {
            if t == 0 {
                return invalid("--threads must be at least 1");
            }
        }
        if let Some(x) = cli.min_metric {
            unit("min-metric", x)?;
        }
        Ok(ExperimentConfig {
            experiment: cli.experiment,
            plan,
            format,
            out: cli.out.clone(),
            min_metric: cli.min_metric,
            diagnostics: cli.diagnostics.clone(),
            dump_sample: cli.dump_sample.clone(),
            export_code: cli.export_code.clone(),
            threads: cli.threads,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<ExperimentConfig, ConfigError> {
        let mut full = vec!["planted"];
        full.extend_from_slice(args);
        ExperimentConfig::from_cli(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn degree_rounds_up() {
        assert_eq!(degree_for(0.05, 1024), 52);
        assert_eq!(degree_for(0.25, 8), 2);
        assert_eq!(degree_for(0.0, 8), 0);
    }

    #[test]
    fn real_defaults() {
        let c = parse(&["--experiment", "thm1"]).unwrap();
        let Plan::Real(p) = c.plan else { panic!() };
        assert_eq!((p.n, p.k, p.delta), (1024, 52, 0.0035));
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn infeasible_delta_cites_the_bound() {
        let e = parse(&["--experiment", "thm1", "--n", "1024", "--delta", "0.004"]).unwrap_err();
        assert!(e.0.contains("1/(96e)"), "{e}");
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        assert!(parse(&["--experiment", "thm1", "--n", "1000"]).is_err());
        assert!(parse(&["--experiment", "thm1", "--n", "512", "--m", "10"]).is_err());
        assert!(parse(&["--experiment", "thm2", "--n", "255", "--m", "7"]).is_err());
        assert!(parse(&["--experiment", "thm2", "--n", "63", "--t", "3", "--delta", "0.02"]).is_ok());
    }

    #[test]
    fn strategies_must_match_the_model() {
        assert!(parse(&["--experiment", "thm2", "--adversarial", "retarget-unique"]).is_err());
        assert!(parse(&["--experiment", "thm1", "--adversarial", "first-coords"]).is_err());
        assert!(parse(&["--experiment", "thm2", "--adversarial", "first-coords"]).is_ok());
    }

    #[test]
    fn audits_are_json() {
        assert_eq!(parse(&["--experiment", "audits"]).unwrap().format, Format::Json);
        assert!(parse(&["--experiment", "audits", "--format", "csv"]).is_err());
    }

    #[test]
    fn beta_grid_is_validated() {
        assert!(parse(&["--experiment", "noise-sweep", "--beta-grid", "0,1.5"]).is_err());
        let c = parse(&["--experiment", "noise-sweep", "--beta-grid", "0,0.25"]).unwrap();
        let Plan::NoiseSweep(_, grid) = c.plan else { panic!() };
        assert_eq!(grid, vec![0.0, 0.25]);
    }
}
