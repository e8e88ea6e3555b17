//! Result tables and their CSV/JSON encodings.

use std::io::Write;

use anyhow::Result;
use planted_core::audit::AuditReport;
use planted_core::stats::{ConjectureMetric, Proportion};
use serde::{Deserialize, Serialize};

/// One line of the result table. `hypothesis` is `null`, `planted` or
/// `combined`; the combined row pools both sides and carries the conjecture
/// metric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub experiment: String,
    pub n: usize,
    pub k_or_t: usize,
    pub delta: f64,
    pub hypothesis: String,
    pub trials: u64,
    pub successes: u64,
    pub metric: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

/// Shared columns of one experiment's rows.
#[derive(Clone, Debug)]
pub struct RowKey {
    pub experiment: String,
    pub n: usize,
    pub k_or_t: usize,
    pub delta: f64,
    pub seed: u64,
}

impl RowKey {
    fn row(&self, hypothesis: &str, p: &Proportion) -> ResultRow {
        ResultRow {
            experiment: self.experiment.clone(),
            n: self.n,
            k_or_t: self.k_or_t,
            delta: self.delta,
            hypothesis: hypothesis.into(),
            trials: p.trials,
            successes: p.successes,
            metric: p.estimate,
            ci_low: p.low,
            ci_high: p.high,
            seed: self.seed,
        }
    }

    /// Rows for `null_correct` of `trials` Null verdicts on null samples and
    /// `planted_correct` Planted verdicts on planted samples. No rows when there
    /// were no trials.
    pub fn rows(&self, trials: u64, null_correct: u64, planted_correct: u64) -> Vec<ResultRow> {
        if trials == 0 {
            return Vec::new();
        }
        let m = ConjectureMetric::new(null_correct, trials, planted_correct, trials);
        let combined = ResultRow {
            hypothesis: "combined".into(),
            trials: 2 * trials,
            successes: null_correct + planted_correct,
            metric: m.value,
            ci_low: m.low,
            ci_high: m.high,
            ..self.row("", &m.null)
        };
        vec![self.row("null", &m.null), self.row("planted", &m.planted), combined]
    }
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record([
        "experiment",
        "n",
        "k_or_t",
        "delta",
        "hypothesis",
        "trials",
        "successes",
        "metric",
        "ci_low",
        "ci_high",
        "seed",
    ])?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<Vec<ResultRow>, _>>()?)
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn any_failed(reports: &[AuditReport]) -> bool {
    reports.iter().any(AuditReport::failed)
}
