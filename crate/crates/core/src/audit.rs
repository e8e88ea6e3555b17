//! Quantitative checks of the facts the distinguishers rely on.
//!
//! Each audit returns an [`AuditReport`]: an observed statistic, the value or
//! bound it is compared against, the tolerance used, and `pass`. `pass` is `None`
//! when the audit does not apply (for example zero trials) or is informational.
//!
//! Exact audits use integer weights over a common denominator; floating point
//! only appears in Monte-Carlo summaries.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::bch::{BchCode, BinaryCode};
use crate::error::CodeError;
use crate::field::FieldElement;
use crate::linear_code::LinearCode;
use crate::planted::{index_counts, TupleLayout};
use crate::reed_solomon::{ReceivedWord, ReedSolomon};
use crate::stats::bernoulli_sigma;

const E: f64 = core::f64::consts::E;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(untagged))]
pub enum ParamValue {
    Int(u64),
    Real(f64),
    Text(String),
}

impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as u64)
    }
}

impl From<u32> for ParamValue {
    fn from(v: u32) -> Self {
        ParamValue::Int(v as u64)
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Real(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.into())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditReport {
    pub name: String,
    pub parameters: BTreeMap<String, ParamValue>,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: Option<bool>,
}

impl AuditReport {
    fn new(name: &str) -> Self {
        AuditReport {
            name: name.into(),
            parameters: BTreeMap::new(),
            observed: 0.0,
            expected: 0.0,
            tolerance: 0.0,
            pass: None,
        }
    }

    fn param(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.parameters.insert(key.into(), value.into());
        self
    }

    fn not_applicable(self, reason: &str) -> Self {
        let mut r = self.param("not_applicable", reason);
        r.pass = None;
        r
    }

    /// `Some(false)` counts as a failure; `None` does not.
    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }
}

// ---------------------------------------------------------------------------
// Unique indices

/// `(1 - 1/n)^(n-1)`: the chance that a given position is drawn exactly once.
fn p_unique(n: usize) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    let nf = n as f64;
    libm::exp((nf - 1.0) * libm::log1p(-1.0 / nf))
}

/// `(1 - 1/n)(1 - 2/n)^(n-2)`: the chance that two given positions are both
/// drawn exactly once.
fn p_unique_pair(n: usize) -> f64 {
    if n <= 1 {
        return 0.0;
    }
    let nf = n as f64;
    if n == 2 {
        return 0.5;
    }
    (1.0 - 1.0 / nf) * libm::exp((nf - 2.0) * libm::log1p(-2.0 / nf))
}

/// Expected number of positions hit exactly once: `n (1 - 1/n)^(n-1)`.
pub fn unique_mean_analytic(n: usize) -> f64 {
    n as f64 * p_unique(n)
}

/// Variance of the number of positions hit exactly once, from the first two
/// moments of the indicator sum.
pub fn unique_count_variance(n: usize) -> f64 {
    let nf = n as f64;
    let p1 = p_unique(n);
    let p2 = p_unique_pair(n);
    (nf * p1 * (1.0 - p1) + nf * (nf - 1.0) * (p2 - p1 * p1)).max(0.0)
}

/// Draws `n` uniform positions `trials` times and compares the mean fraction of
/// unique positions with `(1 - 1/n)^(n-1)`. The band is three standard
/// deviations of the mean, from the exact variance; every trial must also have at
/// least an `alpha` fraction of unique positions.
pub fn unique_count_montecarlo<R: Rng + ?Sized>(n: usize, trials: usize, alpha: f64, rng: &mut R) -> AuditReport {
    let report = AuditReport::new("unique-index").param("n", n).param("trials", trials).param("alpha", alpha);
    if trials == 0 || n == 0 {
        return report.not_applicable("no trials");
    }
    let mut sum = 0.0;
    let mut min = f64::INFINITY;
    let mut indices = vec![0usize; n];
    for _ in 0..trials {
        for j in indices.iter_mut() {
            *j = rng.random_range(0..n);
        }
        let unique = index_counts(&indices, n).iter().filter(|&&c| c == 1).count();
        let frac = unique as f64 / n as f64;
        sum += frac;
        min = min.min(frac);
    }
    let mean = sum / trials as f64;
    let expected = p_unique(n);
    let sigma = libm::sqrt(unique_count_variance(n)) / n as f64;
    let sigma_mean = sigma / libm::sqrt(trials as f64);
    let tolerance = 3.0 * sigma_mean;
    let mut r = report.param("min_fraction", min).param("sigma_trial", sigma).param("sigma_mean", sigma_mean);
    r.observed = mean;
    r.expected = expected;
    r.tolerance = tolerance;
    r.pass = Some((mean - expected).abs() <= tolerance && min >= alpha);
    r
}

// ---------------------------------------------------------------------------
// Hamming balls

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallSize {
    /// `sum_{i <= r} C(n - s, i) (q - 1)^i`.
    pub exact: BigUint,
    /// `C(n - s, r) (q - 1)^r`.
    pub lower: BigUint,
    /// `(r + 1) C(n - s, r) (q - 1)^r`.
    pub upper: BigUint,
}

impl BallSize {
    pub fn within_bounds(&self) -> bool {
        self.lower <= self.exact && self.exact <= self.upper
    }
}

/// Size of a radius-`r` Hamming ball on the `n - s` non-erased positions over an
/// alphabet of size `q`, with the two bounds used to bound it.
pub fn ball_size(n: usize, s: usize, r: usize, q: u64) -> Result<BallSize, CodeError> {
    if s > n || r > n - s || q < 2 {
        return Err(CodeError::InvalidParameters("ball size needs s <= n, r <= n - s and q >= 2"));
    }
    let len = n - s;
    let base = BigUint::from(q - 1);
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    let mut exact = BigUint::zero();
    let mut term = BigUint::one();
    for i in 0..=r {
        if i > 0 {
            binom = binom * BigUint::from(len - i + 1) / BigUint::from(i);
            power *= &base;
        }
        term = &binom * &power;
        exact += &term;
    }
    let upper = &term * BigUint::from(r + 1);
    Ok(BallSize { exact, lower: term, upper })
}

/// `num / den` as a float, without overflowing on large operands.
fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    let shift = den.bits().max(num.bits()).saturating_sub(1000);
    let a = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let b = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    a / b
}

/// Checks the ball-size bounds on `tuples` random `(n, s, r, q)` with
/// `r <= (n - s) / (8e)`.
pub fn ball_size_audit<R: Rng + ?Sized>(tuples: usize, rng: &mut R) -> AuditReport {
    const ALPHABETS: [u64; 8] = [2, 3, 4, 5, 7, 8, 16, 1024];
    let mut within = 0usize;
    let mut first_failure = None;
    for _ in 0..tuples {
        let n = rng.random_range(1..=400usize);
        let s = rng.random_range(0..=n);
        let r_max = libm::floor((n - s) as f64 / (8.0 * E)) as usize;
        let r = rng.random_range(0..=r_max);
        let q = ALPHABETS[rng.random_range(0..ALPHABETS.len())];
        let ball = ball_size(n, s, r, q).expect("sampled parameters are valid");
        if ball.within_bounds() {
            within += 1;
        } else if first_failure.is_none() {
            first_failure = Some(format!("n={n} s={s} r={r} q={q}"));
        }
    }
    let mut report = AuditReport::new("ball-size").param("tuples", tuples);
    if let Some(f) = first_failure {
        report = report.param("first_failure", f);
    }
    report.observed = within as f64;
    report.expected = tuples as f64;
    report.pass = (tuples > 0).then_some(within == tuples);
    report
}

// ---------------------------------------------------------------------------
// Random words are far from the code

/// A code with a decoder that corrects a known number of errors alongside a
/// given number of erasures.
pub trait BoundedDecoder {
    fn linear_code(&self) -> &LinearCode;

    /// Correctable errors next to `erasures` erasures, or `None` if the decoder
    /// cannot handle that many erasures.
    fn capacity(&self, erasures: usize) -> Option<usize>;

    fn decode_received(&self, received: &ReceivedWord) -> Option<Vec<FieldElement>>;
}

impl BoundedDecoder for ReedSolomon {
    fn linear_code(&self) -> &LinearCode {
        self.code()
    }

    fn capacity(&self, erasures: usize) -> Option<usize> {
        self.params().error_capacity(erasures)
    }

    fn decode_received(&self, received: &ReceivedWord) -> Option<Vec<FieldElement>> {
        self.decode(received).ok().flatten()
    }
}

impl BoundedDecoder for BchCode {
    fn linear_code(&self) -> &LinearCode {
        self.code()
    }

    fn capacity(&self, erasures: usize) -> Option<usize> {
        (erasures == 0).then(|| self.radius())
    }

    fn decode_received(&self, received: &ReceivedWord) -> Option<Vec<FieldElement>> {
        let word: Option<Vec<FieldElement>> = received.symbols().iter().copied().collect();
        self.decode(&word?).ok().flatten()
    }
}

/// Codebooks up to this size are also searched exhaustively.
pub const EXHAUSTIVE_CODEBOOK: u128 = 1 << 12;

/// Frequency with which a uniformly random word on the positions outside `s` lies
/// within restricted distance `r` of the code.
///
/// Requires the decoder to correct `2r` errors next to `|s|` erasures and
/// `r <= (n - |s|) / (8e)`; otherwise the report is not applicable. Since the
/// radius-`r` balls around codewords are then disjoint, the frequency has the
/// closed form `|C_S| |B_r| / q^(n - |s|)` with `C_S` the code punctured to the
/// surviving positions. The audit passes when the frequency respects the general
/// bound `(r + 1) 2^-r` and sits within `3 sigma + 1/trials` of the closed form.
pub fn rand_far_audit<D, R>(code: &D, s: &[usize], r: usize, trials: usize, rng: &mut R) -> AuditReport
where
    D: BoundedDecoder + ?Sized,
    R: Rng + ?Sized,
{
    let lc = code.linear_code();
    let n = lc.len();
    let q = lc.field().size();
    let mut erased = vec![false; n];
    for &i in s {
        if i < n {
            erased[i] = true;
        }
    }
    let s_len = erased.iter().filter(|&&e| e).count();
    let union_bound = (r as f64 + 1.0) * libm::pow(2.0, -(r as f64));
    let report = AuditReport::new("rand-far")
        .param("n", n)
        .param("q", q)
        .param("erasures", s_len)
        .param("r", r)
        .param("trials", trials)
        .param("union_bound", union_bound);
    if trials == 0 {
        return report.not_applicable("no trials");
    }
    match code.capacity(s_len) {
        Some(c) if c >= 2 * r => {}
        _ => return report.not_applicable("decoder cannot correct 2r errors with these erasures"),
    }
    if (r as f64) > (n - s_len) as f64 / (8.0 * E) {
        return report.not_applicable("r exceeds (n - |S|)/(8e)");
    }

    let kept: Vec<usize> = (0..n).filter(|&i| !erased[i]).collect();
    let rank = lc.generator().select_columns(&kept).rank(lc.field());
    let ball = ball_size(n, s_len, r, q as u64).expect("r <= n - s checked above");
    let qb = BigUint::from(q);
    let closed = ratio_f64(&(qb.pow(rank as u32) * &ball.exact), &qb.pow(kept.len() as u32));

    let codebook = if lc.codebook_size() <= EXHAUSTIVE_CODEBOOK { lc.codewords().ok() } else { None };
    let mut hits = 0usize;
    let mut mismatches = 0usize;
    for _ in 0..trials {
        let received = ReceivedWord::new(
            (0..n).map(|i| (!erased[i]).then(|| FieldElement::from_index(rng.random_range(0..q) as u16))).collect(),
        );
        let near = code.decode_received(&received).is_some_and(|c| received.restricted_distance(&c) <= r);
        if near {
            hits += 1;
        }
        if let Some(book) = &codebook {
            let exhaustive = book.iter().any(|c| received.restricted_distance(c) <= r);
            if exhaustive != near {
                mismatches += 1;
            }
        }
    }
    let freq = hits as f64 / trials as f64;
    let tolerance = 3.0 * bernoulli_sigma(closed, trials as u64) + 1.0 / trials as f64;
    let mut report = report
        .param("hits", hits)
        .param("punctured_dimension", rank)
        .param("exhaustive", if codebook.is_some() { "yes" } else { "no" })
        .param("mismatches", mismatches);
    report.observed = freq;
    report.expected = closed;
    report.tolerance = tolerance;
    let bound_ok = freq <= union_bound + 3.0 * bernoulli_sigma(union_bound.min(1.0), trials as u64);
    report.pass = Some(bound_ok && (freq - closed).abs() <= tolerance && mismatches == 0);
    report
}

// ---------------------------------------------------------------------------
// k-wise independence of uniform codewords

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KwiseMode {
    /// Every subset of size `1..=D`, cross-checked by enumerating the codebook.
    Exhaustive,
    /// This many random subsets with uniformly random size in `1..=D`.
    Sampled(usize),
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Calls `visit` on every subset of `0..n` of size `size`, in lexicographic order.
fn for_each_subset(n: usize, size: usize, mut visit: impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        visit(&idx);
        let Some(pos) = (0..size).rev().find(|&p| idx[p] < n - size + p) else { return };
        idx[pos] += 1;
        for p in pos + 1..size {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// Checks that uniform codewords restricted to subsets of at most `d` positions
/// are uniform, using the rank criterion. Exhaustive mode also counts the
/// patterns of every codeword on every subset.
pub fn kwise_audit<R: Rng + ?Sized>(
    code: &LinearCode,
    d: usize,
    mode: KwiseMode,
    budget: u128,
    rng: &mut R,
) -> Result<AuditReport, CodeError> {
    let n = code.len();
    let q = code.field().size() as u128;
    let d = d.min(n);
    let mut report = AuditReport::new("k-wise").param("n", n).param("q", q as u64).param("d", d);
    let mut checked = 0usize;
    let mut passed = 0usize;
    let mut first_failure: Option<Vec<usize>> = None;
    let mut record = |subset: &[usize], ok: bool| {
        checked += 1;
        if ok {
            passed += 1;
        } else if first_failure.is_none() {
            first_failure = Some(subset.to_vec());
        }
    };
    match mode {
        KwiseMode::Exhaustive => {
            let subsets: u128 = (1..=d).map(|s| binomial_u128(n, s)).sum();
            let size = code.codebook_size();
            if subsets > budget || size.saturating_mul(subsets) > budget.saturating_mul(64) {
                return Err(CodeError::BudgetExceeded { words: size.saturating_mul(subsets), budget });
            }
            let book = code.codewords()?;
            report = report.param("mode", "exhaustive");
            for s in 1..=d {
                for_each_subset(n, s, |subset| {
                    let cells = q.pow(s as u32) as usize;
                    let mut counts = vec![0u64; cells];
                    for c in &book {
                        let cell = subset.iter().fold(0usize, |acc, &i| acc * q as usize + c[i].index() as usize);
                        counts[cell] += 1;
                    }
                    let even = (book.len() as u64).is_multiple_of(cells as u64);
                    let expected = book.len() as u64 / cells as u64;
                    let counted = even && counts.iter().all(|&x| x == expected);
                    record(subset, counted && code.subset_rank_uniform(subset));
                });
            }
        }
        KwiseMode::Sampled(count) => {
            if count as u128 > budget {
                return Err(CodeError::BudgetExceeded { words: count as u128, budget });
            }
            report = report.param("mode", "sampled");
            if d > 0 {
                let mut pool: Vec<usize> = (0..n).collect();
                for _ in 0..count {
                    let s = rng.random_range(1..=d);
                    for i in 0..s {
                        let j = rng.random_range(i..n);
                        pool.swap(i, j);
                    }
                    let mut subset = pool[..s].to_vec();
                    subset.sort_unstable();
                    record(&subset, code.subset_rank_uniform(&subset));
                }
            }
        }
    }
    if let Some(f) = first_failure {
        report = report.param("first_failure", format!("{f:?}"));
    }
    report = report.param("subsets", checked);
    report.observed = passed as f64;
    report.expected = checked as f64;
    report.pass = Some(passed == checked);
    Ok(report)
}

/// Compares the enumerated dual distance with an exact value or a lower bound.
pub fn dual_distance_audit(
    name: &str,
    code: &LinearCode,
    expected: usize,
    at_least: bool,
) -> Result<AuditReport, CodeError> {
    let observed = code.dual().min_weight_bruteforce()?;
    let mut r = AuditReport::new("dual-distance")
        .param("code", name)
        .param("n", code.len())
        .param("dimension", code.dimension())
        .param("comparison", if at_least { "at-least" } else { "exact" });
    r.observed = observed as f64;
    r.expected = expected as f64;
    r.pass = Some(if at_least { observed >= expected } else { observed == expected });
    Ok(r)
}

// ---------------------------------------------------------------------------
// Exact pmf of the planted real-valued model at enumeration scale

/// Largest outcome space `(nq)^n` the exact pmf will allocate.
pub const TUPLE_PMF_MAX_OUTCOMES: usize = 1 << 20;

/// Exact distribution of the tuple vector `((j_1, y_1), ..., (j_n, y_n))` under the
/// planted model, tails marginalized. Outcome `x` encodes coordinate `i` as the
/// base-`nq` digit `j_i q + y_i`, coordinate 0 least significant; its probability
/// is `weights[x] / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuplePmf {
    pub n: usize,
    pub q: usize,
    pub denominator: u64,
    pub weights: Vec<u64>,
}

impl TuplePmf {
    fn radix(&self) -> usize {
        self.n * self.q
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        let b = self.radix();
        (0..self.n)
            .map(|_| {
                let d = x % b;
                x /= b;
                d
            })
            .collect()
    }

    fn compose(&self, digits: &[usize]) -> usize {
        digits.iter().rev().fold(0, |acc, &d| acc * self.radix() + d)
    }

    /// Probability of the outcome encoded by per-coordinate `(index, value)` pairs.
    pub fn weight_of(&self, tuples: &[(usize, usize)]) -> u64 {
        let digits: Vec<usize> = tuples.iter().map(|&(j, y)| j * self.q + y).collect();
        self.weights[self.compose(&digits)]
    }
}

/// Enumerates codewords, index vectors and the uniform values of non-unique
/// coordinates.
pub fn tuple_pmf_exact(layout: &TupleLayout, code: &ReedSolomon) -> Result<TuplePmf, CodeError> {
    let n = layout.n();
    let q = code.field().size() as usize;
    if code.len() != n || q != n {
        return Err(CodeError::InvalidParameters("exact tuple pmf needs n = q = 2^m"));
    }
    let radix = n * q;
    let outcomes = (radix as u128).checked_pow(n as u32).filter(|&o| o <= TUPLE_PMF_MAX_OUTCOMES as u128);
    let Some(outcomes) = outcomes else {
        return Err(CodeError::BudgetExceeded { words: u128::MAX, budget: TUPLE_PMF_MAX_OUTCOMES as u128 });
    };
    let book = code.code().codewords()?;
    let index_vectors = n.pow(n as u32);
    let branches = (q as u64).pow(n as u32);
    let mut weights = vec![0u64; outcomes as usize];
    let mut pmf =
        TuplePmf { n, q, denominator: book.len() as u64 * index_vectors as u64 * branches, weights: Vec::new() };
    let mut digits = vec![0usize; n];
    for jv in 0..index_vectors {
        let mut x = jv;
        let indices: Vec<usize> = (0..n)
            .map(|_| {
                let j = x % n;
                x /= n;
                j
            })
            .collect();
        let counts = index_counts(&indices, n);
        let free: Vec<usize> = (0..n).filter(|&i| counts[indices[i]] != 1).collect();
        let weight = (q as u64).pow((n - free.len()) as u32);
        for c in &book {
            for branch in 0..q.pow(free.len() as u32) {
                let mut b = branch;
                for i in 0..n {
                    digits[i] = indices[i] * q + c[indices[i]].index() as usize;
                }
                for &i in &free {
                    digits[i] = indices[i] * q + b % q;
                    b /= q;
                }
                weights[pmf.compose(&digits)] += weight;
            }
        }
    }
    pmf.weights = weights;
    Ok(pmf)
}

/// Heap's algorithm: calls `visit` on every permutation of `0..n`.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Checks `P(x) = P(pi x)` for every outcome `x` and every coordinate permutation
/// `pi`, with exact integer weights.
pub fn sn_invariance_exact(pmf: &TuplePmf) -> AuditReport {
    let mut perms = 0usize;
    let mut invariant = 0usize;
    let mut first_failure = None;
    for_each_permutation(pmf.n, |perm| {
        perms += 1;
        let ok = (0..pmf.weights.len()).all(|x| {
            let d = pmf.digits(x);
            let permuted: Vec<usize> = perm.iter().map(|&p| d[p]).collect();
            pmf.weights[x] == pmf.weights[pmf.compose(&permuted)]
        });
        if ok {
            invariant += 1;
        } else if first_failure.is_none() {
            first_failure = Some(format!("{perm:?}"));
        }
    });
    let mut r = AuditReport::new("sn-invariance")
        .param("n", pmf.n)
        .param("q", pmf.q)
        .param("denominator", pmf.denominator)
        .param("permutations", perms);
    if let Some(f) = first_failure {
        r = r.param("first_failure", f);
    }
    r.observed = invariant as f64;
    r.expected = perms as f64;
    r.pass = Some(invariant == perms);
    r
}

/// Checks that every marginal on at most `d` coordinates equals the uniform
/// distribution on `([n] x F)^|S|`, with exact integer weights. `guaranteed`
/// is the largest `d` for which uniformity is promised; beyond it the report is
/// informational and names the first non-uniform subset.
pub fn tuple_kwise_exact(pmf: &TuplePmf, d: usize, guaranteed: usize) -> AuditReport {
    let radix = pmf.radix();
    let d = d.min(pmf.n);
    let mut checked = 0usize;
    let mut uniform = 0usize;
    let mut first_failure = None;
    for s in 1..=d {
        let cells = radix.pow(s as u32);
        for_each_subset(pmf.n, s, |subset| {
            let mut marginal = vec![0u64; cells];
            for (x, &w) in pmf.weights.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let digits = pmf.digits(x);
                let cell = subset.iter().fold(0usize, |acc, &i| acc * radix + digits[i]);
                marginal[cell] += w;
            }
            checked += 1;
            let ok = pmf.denominator.is_multiple_of(cells as u64)
                && marginal.iter().all(|&m| m == pmf.denominator / cells as u64);
            if ok {
                uniform += 1;
            } else if first_failure.is_none() {
                first_failure = Some(format!("{subset:?}"));
            }
        });
    }
    let mut r = AuditReport::new("tuple-k-wise")
        .param("n", pmf.n)
        .param("q", pmf.q)
        .param("d", d)
        .param("guaranteed_up_to", guaranteed)
        .param("denominator", pmf.denominator);
    r = r.param("first_failure", first_failure.unwrap_or_else(|| "none".to_string()));
    r.observed = uniform as f64;
    r.expected = checked as f64;
    r.pass = (d <= guaranteed).then_some(uniform == checked);
    r
}
