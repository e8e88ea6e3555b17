//! Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use clap::Parser;
use planted_core::audit::{
    ball_size_audit, kwise_audit, rand_far_audit, sn_invariance_exact, tuple_kwise_exact, tuple_pmf_exact,
    unique_count_montecarlo, KwiseMode,
};
use planted_core::linear_code::ENUMERATION_BUDGET;
use planted_core::planted::TupleLayout;
use planted_core::stats::bernoulli_sigma;
use planted_core::stream::trial_rng;
use planted_core::{BchCode, BinaryCode, DualBoundKind, Field, FieldElement, ReceivedWord, ReedSolomon};
use planted_harness::config::{Cli, ExperimentConfig, Plan};
use planted_harness::experiments::{run_noise_sweep, run_thm1, run_thm2};
use planted_harness::output::ResultRow;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn plan(args: &[&str]) -> Plan {
    let mut full = vec!["planted"];
    full.extend_from_slice(args);
    ExperimentConfig::from_cli(&Cli::try_parse_from(full).expect("flags parse")).expect("valid configuration").plan
}

fn combined(rows: &[ResultRow]) -> &ResultRow {
    rows.iter().find(|r| r.hypothesis == "combined").expect("combined row")
}

fn rs(m: u32, n: usize, k: usize) -> ReedSolomon {
    ReedSolomon::new(Field::binary(m).unwrap(), n, k).unwrap()
}

fn shuffled<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in 0..n {
        let j = rng.random_range(i..n);
        v.swap(i, j);
    }
    v
}

/// Calls `visit` on every `size`-subset of `pool`.
fn subsets(pool: &[usize], size: usize, visit: &mut dyn FnMut(&[usize])) {
    fn go(pool: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == size {
            visit(cur);
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            go(pool, size, i + 1, cur, visit);
            cur.pop();
        }
    }
    go(pool, size, 0, &mut Vec::new(), visit);
}

fn criterion_1() -> Check {
    let code = rs(3, 8, 2);
    let f = code.field().clone();
    let mut rng = trial_rng(1, "acceptance/1", 0);
    let (mut total, mut ok) = (0u64, 0u64);
    for _ in 0..50 {
        let c = code.code().sample_codeword(&mut rng);
        for r in 0..=2usize {
            for s in 0..=(5 - 2 * r) {
                let all: Vec<usize> = (0..8).collect();
                subsets(&all, s, &mut |erased| {
                    let rest: Vec<usize> = all.iter().copied().filter(|i| !erased.contains(i)).collect();
                    subsets(&rest, r, &mut |errs| {
                        for values in 0..7usize.pow(r as u32) {
                            let mut w = ReceivedWord::from_word(&c);
                            for &i in erased {
                                w.erase(i);
                            }
                            let mut v = values;
                            for &i in errs {
                                w.set(i, f.add(c[i], FieldElement::from_index((v % 7 + 1) as u16)));
                                v /= 7;
                            }
                            total += 1;
                            if code.decode(&w).unwrap().as_ref() == Some(&c) {
                                ok += 1;
                            }
                        }
                    });
                });
            }
        }
    }
    if ok != total {
        return Err(format!("RS(8,2): {ok}/{total} patterns recovered"));
    }
    let big = rs(10, 1024, 52);
    let s = 683;
    let r = big.params().error_capacity(s).unwrap();
    let mut rng = trial_rng(1, "acceptance/1-large", 0);
    let mut big_ok = 0;
    for _ in 0..1000 {
        let c = big.code().sample_codeword(&mut rng);
        let order = shuffled(1024, &mut rng);
        let mut w = ReceivedWord::from_word(&c);
        for &i in &order[..s] {
            w.erase(i);
        }
        for &i in &order[s..s + r] {
            w.set(i, big.field().add(c[i], FieldElement::from_index(rng.random_range(1..1024u16))));
        }
        if big.decode(&w).unwrap().as_ref() == Some(&c) {
            big_ok += 1;
        }
    }
    if big_ok != 1000 {
        return Err(format!("RS(1024,52): {big_ok}/1000 at s={s}, r={r}"));
    }
    Ok(format!("RS(8,2) {ok}/{total} patterns; RS(1024,52) 1000/1000 at s={s}, r={r}"))
}

fn criterion_2() -> Check {
    let d2 = rs(3, 8, 2).code().dual().min_weight_bruteforce().unwrap();
    let d4 = rs(3, 8, 4).code().dual().min_weight_bruteforce().unwrap();
    if (d2, d4) == (4, 6) {
        Ok(format!("dual distances {d2} and {d4}"))
    } else {
        Err(format!("dual distances {d2} and {d4}, expected 4 and 6"))
    }
}

fn criterion_3() -> Check {
    let mut rng = trial_rng(1, "acceptance/3", 0);
    let a = kwise_audit(rs(3, 8, 2).code(), 3, KwiseMode::Exhaustive, ENUMERATION_BUDGET, &mut rng).unwrap();
    if a.pass != Some(true) || a.expected != 92.0 {
        return Err(format!("RS(8,2) exhaustive: {a:?}"));
    }
    let bch = BchCode::new(6, 3).unwrap();
    let dual = bch.dual_bound();
    if dual.kind != DualBoundKind::ExactBruteforce || dual.value < 16 {
        return Err(format!("BCH(63,3) dual bound {dual:?}"));
    }
    let b = kwise_audit(bch.code(), dual.value - 1, KwiseMode::Sampled(10_000), ENUMERATION_BUDGET, &mut rng).unwrap();
    if b.pass != Some(true) {
        return Err(format!("BCH(63,3) sampled: {b:?}"));
    }
    Ok(format!(
        "92/92 subsets exact; BCH(63,3) dual distance {} (exact), 10000 subsets of size <= {}",
        dual.value,
        dual.value - 1
    ))
}

fn criterion_4() -> Check {
    let mut rng = trial_rng(1, "acceptance/4", 0);
    let r = unique_count_montecarlo(100_000, 100, 1.0 / 3.0, &mut rng);
    let min = match r.parameters["min_fraction"] {
        planted_core::audit::ParamValue::Real(x) => x,
        _ => f64::NAN,
    };
    let msg = format!("mean {:.5} (analytic {:.5}, band 0.3679 +- 0.003), min {min:.5}", r.observed, r.expected);
    if r.pass == Some(true) && (r.observed - 0.3679).abs() <= 0.003 && min >= 1.0 / 3.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_5() -> Check {
    let mut rng = trial_rng(1, "acceptance/5", 0);
    let bch = BchCode::new(6, 3).unwrap();
    let trials = 100_000;
    let r = rand_far_audit(&bch, &[], 1, trials, &mut rng);
    let closed = 2f64.powi(-12);
    let sigma = bernoulli_sigma(closed, trials as u64);
    let within = (r.observed - closed).abs() <= 3.0 * sigma && (r.expected - closed).abs() < 1e-15;
    let below = r.observed <= 1.0;
    let balls = ball_size_audit(1_000, &mut rng);
    let msg = format!(
        "frequency {:.3e} vs 2^-12 = {closed:.3e} (3 sigma {:.2e}); ball sizes {}/1000 within bounds",
        r.observed,
        3.0 * sigma,
        balls.observed
    );
    if within && below && r.pass == Some(true) && balls.pass == Some(true) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn metric_check(label: &str, rows: &[ResultRow], min: f64) -> Check {
    let c = combined(rows);
    let msg = format!("{label}: metric {:.4} [{:.4}, {:.4}] over {} trials", c.metric, c.ci_low, c.ci_high, c.trials);
    if c.metric >= min {
        Ok(msg)
    } else {
        Err(format!("{msg}, needed >= {min}"))
    }
}

fn all(checks: Vec<Check>) -> Check {
    let mut msgs = Vec::new();
    let mut failed = false;
    for c in checks {
        match c {
            Ok(m) => msgs.push(m),
            Err(m) => {
                failed = true;
                msgs.push(format!("FAILED {m}"));
            }
        }
    }
    if failed {
        Err(msgs.join("; "))
    } else {
        Ok(msgs.join("; "))
    }
}

const THM1: [&str; 10] =
    ["--experiment", "thm1", "--n", "1024", "--alpha", "0.05", "--delta", "0.0035", "--trials", "200"];
const THM2_255: [&str; 10] = ["--experiment", "thm2", "--n", "255", "--t", "6", "--delta", "0.0059", "--trials", "500"];
const THM2_63: [&str; 10] = ["--experiment", "thm2", "--n", "63", "--t", "3", "--delta", "0.02", "--trials", "500"];

fn with(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    let mut v = base.to_vec();
    v.extend_from_slice(extra);
    v
}

fn criterion_6() -> Check {
    let Plan::Real(p) = plan(&with(&THM1, &["--seed", "1"])) else { unreachable!() };
    metric_check("RS(1024,52)", &run_thm1(&p).map_err(|e| e.to_string())?.rows, 0.99)
}

fn criterion_7() -> Check {
    let Plan::Binary(a) = plan(&with(&THM2_255, &["--seed", "1"])) else { unreachable!() };
    let Plan::Binary(b) = plan(&with(&THM2_63, &["--seed", "1"])) else { unreachable!() };
    all(vec![
        metric_check("BCH(255,6)", &run_thm2(&a).map_err(|e| e.to_string())?.rows, 0.99),
        metric_check("BCH(63,3)", &run_thm2(&b).map_err(|e| e.to_string())?.rows, 0.95),
    ])
}

fn criterion_8() -> Check {
    let mut checks = Vec::new();
    for strategy in ["retarget-unique", "corrupt-unique"] {
        let Plan::Real(p) = plan(&with(&THM1, &["--seed", "1", "--adversarial", strategy])) else { unreachable!() };
        checks.push(metric_check(
            &format!("RS(1024,52) {strategy}"),
            &run_thm1(&p).map_err(|e| e.to_string())?.rows,
            0.95,
        ));
    }
    for (label, base) in [("BCH(255,6)", &THM2_255), ("BCH(63,3)", &THM2_63)] {
        let Plan::Binary(p) = plan(&with(base, &["--seed", "1", "--adversarial", "first-coords"])) else {
            unreachable!()
        };
        checks.push(metric_check(
            &format!("{label} first-coords"),
            &run_thm2(&p).map_err(|e| e.to_string())?.rows,
            0.95,
        ));
    }
    all(checks)
}

fn criterion_9() -> Check {
    let pmf = tuple_pmf_exact(&TupleLayout::new(2).unwrap(), &rs(2, 4, 1)).unwrap();
    let sn = sn_invariance_exact(&pmf);
    let kw = tuple_kwise_exact(&pmf, 2, 2);
    let msg = format!(
        "{}/24 permutations invariant, {}/{} subsets of size <= 2 exactly uniform (denominator {})",
        sn.observed, kw.observed, kw.expected, pmf.denominator
    );
    if sn.pass == Some(true) && kw.pass == Some(true) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_10() -> Check {
    let Plan::NoiseSweep(p, betas) = plan(&[
        "--experiment",
        "noise-sweep",
        "--n",
        "1024",
        "--delta",
        "0.0035",
        "--trials",
        "200",
        "--beta-grid",
        "0,0.5,1",
    ]) else {
        unreachable!()
    };
    let out = run_noise_sweep(&p, &betas).map_err(|e| e.to_string())?;
    let metric = |b: &str| {
        out.rows
            .iter()
            .find(|r| r.hypothesis == "combined" && r.experiment == format!("noise-sweep:beta={b}"))
            .map(|r| r.metric)
            .unwrap_or(f64::NAN)
    };
    let (m0, m5, m1) = (metric("0"), metric("0.5"), metric("1"));
    let msg = format!("beta 0 -> {m0:.4}, beta 0.5 -> {m5:.4}, beta 1 -> {m1:.4}");
    if m0 >= 0.99 && m5 <= 0.6 && (m1 - 0.5).abs() <= 0.05 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn cli_csv(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_planted")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn criterion_11() -> Check {
    let configs: Vec<Vec<&str>> = vec![
        with(&THM1, &["--seed", "7"]),
        with(&THM2_255, &["--seed", "7"]),
        with(&THM2_63, &["--seed", "7"]),
        with(&THM1, &["--seed", "7", "--adversarial", "retarget-unique"]),
        with(&THM1, &["--seed", "7", "--adversarial", "corrupt-unique"]),
        with(&THM2_255, &["--seed", "7", "--adversarial", "first-coords"]),
        with(&THM2_63, &["--seed", "7", "--adversarial", "first-coords"]),
    ];
    for c in &configs {
        let a = cli_csv(&with(c, &["--threads", "1"]))?;
        let b = cli_csv(&with(c, &["--threads", "3"]))?;
        if a != b || a.is_empty() {
            return Err(format!("outputs differ for {c:?}"));
        }
    }
    Ok(format!("{} configurations byte-identical across runs and thread counts", configs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 decoder contract", criterion_1),
        ("2 dual distance", criterion_2),
        ("3 k-wise independence", criterion_3),
        ("4 unique indices", criterion_4),
        ("5 random words are far", criterion_5),
        ("6 real-valued end-to-end", criterion_6),
        ("7 binary end-to-end", criterion_7),
        ("8 adversarial robustness", criterion_8),
        ("9 exchangeability and tuple independence", criterion_9),
        ("10 wraparound sensitivity", criterion_10),
        ("11 reproducibility", criterion_11),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("PASS criterion {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {name} ({secs:.1}s): {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
