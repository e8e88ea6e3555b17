//! The default audit battery, run sequentially in a fixed order.

use anyhow::Result;
use planted_core::audit::{
    ball_size_audit, dual_distance_audit, kwise_audit, rand_far_audit, sn_invariance_exact, tuple_kwise_exact,
    tuple_pmf_exact, unique_count_montecarlo, AuditReport, KwiseMode,
};
use planted_core::linear_code::ENUMERATION_BUDGET;
use planted_core::planted::TupleLayout;
use planted_core::stream::trial_rng;
use planted_core::{BchCode, BinaryCode, Field, ReedSolomon};

use crate::config::AuditPlan;

/// Audit names accepted by `--only`, in run order.
pub const AUDIT_NAMES: [&str; 7] =
    ["unique-index", "rand-far", "ball-size", "k-wise", "dual-distance", "sn-invariance", "tuple-k-wise"];

fn rs(m: u32, n: usize, k: usize) -> Result<ReedSolomon> {
    Ok(ReedSolomon::new(Field::binary(m)?, n, k)?)
}

fn run_one(name: &str, seed: u64) -> Result<Vec<AuditReport>> {
    let mut rng = trial_rng(seed, &format!("audit/{name}"), 0);
    let reports = match name {
        "unique-index" => vec![unique_count_montecarlo(100_000, 100, 1.0 / 3.0, &mut rng)],
        "rand-far" => {
            let bch = BchCode::new(6, 3)?;
            let rs82 = rs(3, 8, 2)?;
            vec![rand_far_audit(&bch, &[], 1, 100_000, &mut rng), rand_far_audit(&rs82, &[], 0, 10_000, &mut rng)]
        }
        "ball-size" => vec![ball_size_audit(1_000, &mut rng)],
        "k-wise" => {
            let rs82 = rs(3, 8, 2)?;
            let bch = BchCode::new(6, 3)?;
            let d = bch.dual_bound().value.saturating_sub(1);
            vec![
                kwise_audit(rs82.code(), 3, KwiseMode::Exhaustive, ENUMERATION_BUDGET, &mut rng)?,
                kwise_audit(bch.code(), d, KwiseMode::Sampled(10_000), ENUMERATION_BUDGET, &mut rng)?,
            ]
        }
        "dual-distance" => {
            let bch = BchCode::new(6, 3)?;
            vec![
                dual_distance_audit("RS(8,2)/GF(8)", rs(3, 8, 2)?.code(), 4, false)?,
                dual_distance_audit("RS(8,4)/GF(8)", rs(3, 8, 4)?.code(), 6, false)?,
                dual_distance_audit("BCH(63,t=3)", bch.code(), 16, true)?,
            ]
        }
        "sn-invariance" => {
            let pmf = tuple_pmf_exact(&TupleLayout::new(2)?, &rs(2, 4, 1)?)?;
            vec![sn_invariance_exact(&pmf)]
        }
        "tuple-k-wise" => {
            let code = rs(2, 4, 1)?;
            let pmf = tuple_pmf_exact(&TupleLayout::new(2)?, &code)?;
            let guaranteed = code.params().dual_distance() - 1;
            (1..=3).map(|d| tuple_kwise_exact(&pmf, d, guaranteed)).collect()
        }
        other => anyhow::bail!("unknown audit {other:?}"),
    };
    Ok(reports)
}

pub fn run_audits(plan: &AuditPlan) -> Result<Vec<AuditReport>> {
    let mut out = Vec::new();
    for name in AUDIT_NAMES {
        if plan.only.as_deref().is_some_and(|o| o != name) {
            continue;
        }
        out.extend(run_one(name, plan.seed)?);
    }
    Ok(out)
}
