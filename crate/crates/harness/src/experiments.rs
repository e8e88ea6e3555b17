//! Seeded, parallel runs of the two distinguishers.
//!
//! Trial `i` of each hypothesis reads from its own substream
//! `trial_rng(seed, "<experiment>/<hypothesis>", i)`, and results are collected
//! in trial order, so output does not depend on the thread count.

use anyhow::{ensure, Result};
use planted_core::distinguish::{
    binary_test, real_test, recheck_binary, recheck_real, Decision, DecodeStatus, Verdict,
};
use planted_core::noise::{
    adversarial_corrupt, t_delta, wraparound_noise, CorruptUniqueValues, FlipFirstBits, Noisy, Observation,
    RetargetUniqueIndices,
};
use planted_core::planted::{
    sample_null_binary, sample_null_real, sample_planted_binary, sample_planted_real, RealSymbol, TupleLayout,
};
use planted_core::stream::{trial_rng, TrialRng};
use planted_core::{BchCode, Field, FieldElement, ReedSolomon};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{BinaryPlan, RealPlan, Strategy};
use crate::output::{ResultRow, RowKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    Null,
    Planted,
}

impl Hypothesis {
    fn tag(self) -> &'static str {
        match self {
            Hypothesis::Null => "null",
            Hypothesis::Planted => "planted",
        }
    }

    fn correct(self) -> Decision {
        match self {
            Hypothesis::Null => Decision::Null,
            Hypothesis::Planted => Decision::Planted,
        }
    }
}

/// Diagnostics of one distinguisher run.
#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub experiment: String,
    pub hypothesis: Hypothesis,
    pub trial: usize,
    pub decision: Decision,
    pub status: DecodeStatus,
    pub distance: Option<usize>,
    pub erasures: usize,
    pub threshold: usize,
    /// Coordinates changed by the noise operator or adversary.
    pub changed: usize,
}

#[derive(Clone, Debug, Default)]
pub struct RunOutput {
    pub rows: Vec<ResultRow>,
    pub records: Vec<TrialRecord>,
    /// The first sample of each hypothesis, after noise.
    pub samples: Vec<(String, Observation)>,
}

struct Trial {
    verdict: Verdict,
    changed: usize,
    sample: Option<Observation>,
}

fn fresh_symbol(rng: &mut TrialRng) -> RealSymbol {
    RealSymbol(rng.random())
}

fn fresh_bit(rng: &mut TrialRng) -> FieldElement {
    FieldElement::from_index(rng.random_range(0..2u16))
}

/// Runs `trials` trials of both hypotheses, in parallel, in trial order.
fn run_sides<F>(experiment: &str, key: RowKey, trials: usize, run: F) -> Result<RunOutput>
where
    F: Fn(Hypothesis, usize) -> Result<Trial> + Sync,
{
    let mut out = RunOutput::default();
    let mut correct = [0u64; 2];
    for (side, h) in [Hypothesis::Null, Hypothesis::Planted].into_iter().enumerate() {
        let results: Vec<Trial> = (0..trials).into_par_iter().map(|i| run(h, i)).collect::<Result<_>>()?;
        for (i, t) in results.into_iter().enumerate() {
            if t.verdict.decision == h.correct() {
                correct[side] += 1;
            }
            let d = &t.verdict.diagnostics;
            out.records.push(TrialRecord {
                experiment: experiment.into(),
                hypothesis: h,
                trial: i,
                decision: t.verdict.decision,
                status: d.status,
                distance: d.distance,
                erasures: d.erasures,
                threshold: d.threshold,
                changed: t.changed,
            });
            if let Some(s) = t.sample {
                out.samples.push((format!("{experiment}-{}", h.tag()), s));
            }
        }
    }
    out.rows = key.rows(trials as u64, correct[0], correct[1]);
    Ok(out)
}

pub struct RealSetup {
    pub layout: TupleLayout,
    pub code: ReedSolomon,
}

pub fn real_setup(plan: &RealPlan) -> Result<RealSetup> {
    let layout = TupleLayout::new(plan.m)?;
    let code = ReedSolomon::new(Field::binary(plan.m)?, plan.n, plan.k)?;
    Ok(RealSetup { layout, code })
}

fn real_experiment_name(plan: &RealPlan, beta: Option<f64>) -> String {
    match (beta, plan.adversary) {
        (Some(b), _) => format!("noise-sweep:beta={b}"),
        (None, Some(s)) => format!("thm1:adversarial={}", s.name()),
        (None, None) => "thm1".into(),
    }
}

fn real_trial(plan: &RealPlan, setup: &RealSetup, beta: Option<f64>, h: Hypothesis, i: usize) -> Result<Trial> {
    let RealSetup { layout, code } = setup;
    let mut rng = trial_rng(plan.seed, &format!("thm1/{}", h.tag()), i as u64);
    let noisy: Noisy<Vec<RealSymbol>> = match h {
        Hypothesis::Null => Noisy { sample: sample_null_real(plan.n, &mut rng), changed: Vec::new() },
        Hypothesis::Planted => {
            let s = sample_planted_real(layout, code, &mut rng)?;
            match plan.adversary {
                None => t_delta(s.symbols(), plan.delta, fresh_symbol, &mut rng)?,
                Some(Strategy::RetargetUnique) => {
                    adversarial_corrupt(&s, plan.delta, &RetargetUniqueIndices { layout: *layout })?
                }
                Some(Strategy::CorruptUnique) => adversarial_corrupt(
                    &s,
                    plan.delta,
                    &CorruptUniqueValues { layout: *layout, field: code.field().clone() },
                )?,
                Some(Strategy::FirstCoords) => unreachable!("rejected by config validation"),
            }
        }
    };
    let mut symbols = noisy.sample;
    let mut changed = noisy.changed.len();
    if let Some(b) = beta {
        let mut wrng = trial_rng(plan.seed, &format!("thm1/{}/wrap", h.tag()), i as u64);
        symbols = wraparound_noise(&symbols, b, &mut wrng)?;
        if b > 0.0 {
            changed = symbols.len();
        }
    }
    let verdict = real_test(&symbols, layout, code, plan.delta);
    ensure!(
        recheck_real(&verdict, &symbols, layout, code),
        "trial {i}: Planted verdict failed the independent re-check"
    );
    Ok(Trial { verdict, changed, sample: (i == 0).then_some(Observation::Real(symbols)) })
}

fn run_real(plan: &RealPlan, setup: &RealSetup, beta: Option<f64>) -> Result<RunOutput> {
    let name = real_experiment_name(plan, beta);
    let key = RowKey { experiment: name.clone(), n: plan.n, k_or_t: plan.k, delta: plan.delta, seed: plan.seed };
    run_sides(&name, key, plan.trials, |h, i| real_trial(plan, setup, beta, h, i))
}

pub fn run_thm1(plan: &RealPlan) -> Result<RunOutput> {
    run_real(plan, &real_setup(plan)?, None)
}

/// One row group per `beta`; at `beta = 0` the rows equal [`run_thm1`]'s.
pub fn run_noise_sweep(plan: &RealPlan, betas: &[f64]) -> Result<RunOutput> {
    let setup = real_setup(plan)?;
    let mut out = RunOutput::default();
    for &b in betas {
        let r = run_real(plan, &setup, Some(b))?;
        out.rows.extend(r.rows);
        out.records.extend(r.records);
        out.samples.extend(r.samples);
    }
    Ok(out)
}

pub fn binary_setup(plan: &BinaryPlan) -> Result<BchCode> {
    Ok(BchCode::new(plan.m, plan.t)?)
}

pub fn run_thm2(plan: &BinaryPlan) -> Result<RunOutput> {
    let code = binary_setup(plan)?;
    let name = match plan.adversary {
        Some(s) => format!("thm2:adversarial={}", s.name()),
        None => "thm2".into(),
    };
    let key = RowKey { experiment: name.clone(), n: plan.n, k_or_t: plan.t, delta: plan.delta, seed: plan.seed };
    run_sides(&name, key, plan.trials, |h, i| {
        let mut rng = trial_rng(plan.seed, &format!("thm2/{}", h.tag()), i as u64);
        let noisy = match h {
            Hypothesis::Null => Noisy { sample: sample_null_binary(plan.n, &mut rng), changed: Vec::new() },
            Hypothesis::Planted => {
                let c = sample_planted_binary(&code, &mut rng);
                match plan.adversary {
                    None => t_delta(&c, plan.delta, fresh_bit, &mut rng)?,
                    Some(_) => adversarial_corrupt(&c[..], plan.delta, &FlipFirstBits)?,
                }
            }
        };
        let word = noisy.sample;
        let verdict = binary_test(&word, &code, plan.delta);
        ensure!(recheck_binary(&verdict, &word, &code), "trial {i}: Planted verdict failed the independent re-check");
        Ok(Trial { verdict, changed: noisy.changed.len(), sample: (i == 0).then_some(Observation::Binary(word)) })
    })
}
