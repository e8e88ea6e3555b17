//! Executes a validated configuration and writes its outputs.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};

use crate::battery::run_audits;
use crate::config::{ExperimentConfig, Format, Plan};
use crate::experiments::{binary_setup, real_setup, run_noise_sweep, run_thm1, run_thm2, RunOutput};
use crate::formats::{write_code, write_sample};
use crate::output::{any_failed, write_csv, write_json};

/// Exit status of a completed run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// An applicable audit failed or a metric fell below `--min-metric`.
    Failure,
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_extras(cfg: &ExperimentConfig, out: &RunOutput) -> Result<()> {
    if let Some(path) = &cfg.diagnostics {
        let mut w = sink(Some(path))?;
        for r in &out.records {
            serde_json::to_writer(&mut w, r)?;
            writeln!(w)?;
        }
        w.flush()?;
    }
    if let Some(dir) = &cfg.dump_sample {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, sample) in &out.samples {
            let mut w = sink(Some(&dir.join(format!("{name}.txt"))))?;
            write_sample(sample, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn export_code(cfg: &ExperimentConfig) -> Result<()> {
    let Some(path) = &cfg.export_code else { return Ok(()) };
    let mut w = sink(Some(path))?;
    match &cfg.plan {
        Plan::Real(p) | Plan::NoiseSweep(p, _) => write_code(real_setup(p)?.code.code(), &mut w)?,
        Plan::Binary(p) => write_code(planted_core::BinaryCode::code(&binary_setup(p)?), &mut w)?,
        Plan::Audits(_) => anyhow::bail!("--export-code needs an experiment with a code"),
    }
    w.flush()?;
    Ok(())
}

fn execute_inner(cfg: &ExperimentConfig) -> Result<Status> {
    export_code(cfg)?;
    let out = match &cfg.plan {
        Plan::Audits(plan) => {
            let reports = run_audits(plan)?;
            let mut w = sink(cfg.out.as_deref())?;
            write_json(&reports, &mut w)?;
            w.flush()?;
            return Ok(if any_failed(&reports) { Status::Failure } else { Status::Success });
        }
        Plan::Real(p) => run_thm1(p)?,
        Plan::Binary(p) => run_thm2(p)?,
        Plan::NoiseSweep(p, betas) => run_noise_sweep(p, betas)?,
    };
    let mut w = sink(cfg.out.as_deref())?;
    match cfg.format {
        Format::Csv => write_csv(&out.rows, &mut w)?,
        Format::Json => write_json(&out.rows, &mut w)?,
    }
    w.flush()?;
    write_extras(cfg, &out)?;
    let below = cfg
        .min_metric
        .is_some_and(|min| out.rows.iter().filter(|r| r.hypothesis == "combined").any(|r| r.metric < min));
    Ok(if below { Status::Failure } else { Status::Success })
}

/// Runs the configuration on a dedicated thread pool when `--threads` is set.
pub fn execute(cfg: &ExperimentConfig) -> Result<Status> {
    match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build()?.install(|| execute_inner(cfg)),
        None => execute_inner(cfg),
    }
}
