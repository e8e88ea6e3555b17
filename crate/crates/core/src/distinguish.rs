//! Decoding-based distinguishers for the real-valued and binary models.
//!
//! Both tests decode and answer Planted only when the decoder returns a codeword
//! close enough to the input. Every Planted verdict carries that codeword so it
//! can be re-checked without trusting the decoder (see [`recheck_real`] and
//! [`recheck_binary`]).

use alloc::vec;
use alloc::vec::Vec;

use crate::bch::BinaryCode;
use crate::field::FieldElement;
use crate::planted::{RealSymbol, Tuple, TupleLayout};
use crate::reed_solomon::{ReceivedWord, ReedSolomon};

/// `1 / e`.
const INV_E: f64 = 0.367_879_441_171_442_3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Decision {
    Planted,
    Null,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum DecodeStatus {
    /// Decoded to a codeword within the acceptance threshold.
    Accepted,
    /// Decoded, but the codeword is farther than the threshold.
    TooFar,
    /// The decoder reported failure (or the input was malformed).
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Diagnostics {
    pub decoded: Option<Vec<FieldElement>>,
    /// Restricted distance to the decoded codeword, if any.
    pub distance: Option<usize>,
    pub erasures: usize,
    pub status: DecodeStatus,
    pub threshold: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verdict {
    pub decision: Decision,
    pub diagnostics: Diagnostics,
}

impl Verdict {
    fn from_decoding(
        decoded: Option<Vec<FieldElement>>,
        distance: Option<usize>,
        erasures: usize,
        threshold: usize,
    ) -> Self {
        let status = match distance {
            None => DecodeStatus::Failed,
            Some(d) if d <= threshold => DecodeStatus::Accepted,
            Some(_) => DecodeStatus::TooFar,
        };
        let decision = if status == DecodeStatus::Accepted { Decision::Planted } else { Decision::Null };
        Verdict { decision, diagnostics: Diagnostics { decoded, distance, erasures, status, threshold } }
    }
}

/// `|{i not in s : x_i != y_i}|`. Positions past the shorter input are ignored.
pub fn restricted_hamming<T: PartialEq>(x: &[T], y: &[T], s: &[usize]) -> usize {
    let mut skip = vec![false; x.len().max(y.len())];
    for &i in s {
        if i < skip.len() {
            skip[i] = true;
        }
    }
    x.iter().zip(y).zip(&skip).filter(|((a, b), &erased)| !erased && a != b).count()
}

/// Builds the received word from decoded tuples: position `j` takes the value of
/// the only tuple pointing at it, and is erased when no tuple or several tuples
/// point at it. Tuples with `index >= n` are ignored.
pub fn unique_index_assembly(tuples: &[Tuple], n: usize) -> ReceivedWord {
    let mut hits = vec![0u32; n];
    let mut value = vec![FieldElement::ZERO; n];
    for t in tuples.iter().filter(|t| t.index < n) {
        hits[t.index] += 1;
        value[t.index] = t.value;
    }
    ReceivedWord::new(hits.iter().zip(value).map(|(&h, v)| (h == 1).then_some(v)).collect())
}

/// Parameter checks and derived budgets for the real-valued test.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RealFeasibility {
    pub n: usize,
    pub k: usize,
    pub delta: f64,
    /// `8 delta n`.
    pub error_budget: f64,
    /// `2n/3 + 4 delta n`.
    pub erasure_budget: f64,
    /// `2 * error_budget + erasure_budget`, to be compared with `n - k`.
    pub lhs: f64,
    /// `1 / (96 e)`.
    pub delta_max: f64,
    /// `floor(4 delta n)`.
    pub threshold: usize,
    pub decodable: bool,
    pub delta_ok: bool,
}

impl RealFeasibility {
    pub fn feasible(&self) -> bool {
        self.decodable && self.delta_ok
    }

    /// The first violated inequality, as text.
    pub fn violation(&self) -> Option<&'static str> {
        if !self.delta_ok {
            Some("delta must satisfy delta <= 1/(96e) ~ 0.003832")
        } else if !self.decodable {
            Some("16*delta*n + 2n/3 + 4*delta*n must be below n - k")
        } else {
            None
        }
    }
}

pub fn real_feasible(n: usize, k: usize, delta: f64) -> RealFeasibility {
    let nf = n as f64;
    let error_budget = 8.0 * delta * nf;
    let erasure_budget = 2.0 * nf / 3.0 + 4.0 * delta * nf;
    let lhs = 2.0 * error_budget + erasure_budget;
    let delta_max = INV_E / 96.0;
    RealFeasibility {
        n,
        k,
        delta,
        error_budget,
        erasure_budget,
        lhs,
        delta_max,
        threshold: libm::floor(4.0 * delta * nf) as usize,
        decodable: k < n && lhs < (n - k.min(n)) as f64,
        delta_ok: (0.0..=delta_max).contains(&delta),
    }
}

/// Decodes each symbol's tuple, assembles the received word, runs the
/// errors-and-erasures decoder once and answers Planted iff it returns a codeword
/// within restricted distance `floor(4 delta n)`.
pub fn real_test(symbols: &[RealSymbol], layout: &TupleLayout, code: &ReedSolomon, delta: f64) -> Verdict {
    let n = code.len();
    let threshold = libm::floor(4.0 * delta * n as f64) as usize;
    let tuples: Vec<Tuple> = symbols.iter().map(|&s| layout.tuple(s)).collect();
    let received = unique_index_assembly(&tuples, n);
    let erasures = received.erasure_count();
    let decoded = if symbols.len() == n { code.decode(&received).ok().flatten() } else { None };
    let distance = decoded.as_ref().map(|c| received.restricted_distance(c));
    Verdict::from_decoding(decoded, distance, erasures, threshold)
}

/// Parameter checks for the binary test.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BinaryFeasibility {
    pub n: usize,
    pub t: usize,
    /// `2t / n`.
    pub zeta: f64,
    pub delta: f64,
    /// `floor(2 delta n)`.
    pub threshold: usize,
    /// `1 / (16 e)`.
    pub delta_max: f64,
    /// `min(1/(16e), zeta/8)`.
    pub conservative_max: f64,
}

impl BinaryFeasibility {
    /// Enforced rule: the threshold fits in the decoding radius and
    /// `delta <= 1/(16e)`.
    pub fn feasible(&self) -> bool {
        self.threshold <= self.t && (0.0..=self.delta_max).contains(&self.delta)
    }

    /// Whether `delta <= min(1/(16e), zeta/8)`, the stricter regime where
    /// `2 delta n <= t/2`. Reported, not enforced.
    pub fn conservative(&self) -> bool {
        (0.0..=self.conservative_max).contains(&self.delta)
    }

    pub fn violation(&self) -> Option<&'static str> {
        if !(0.0..=self.delta_max).contains(&self.delta) {
            Some("delta must satisfy delta <= 1/(16e) ~ 0.022992")
        } else if self.threshold > self.t {
            Some("floor(2*delta*n) must not exceed the decoding radius t")
        } else {
            None
        }
    }
}

pub fn binary_feasible<C: BinaryCode + ?Sized>(code: &C, delta: f64) -> BinaryFeasibility {
    let n = code.len();
    let zeta = code.zeta();
    let delta_max = INV_E / 16.0;
    BinaryFeasibility {
        n,
        t: code.radius(),
        zeta,
        delta,
        threshold: libm::floor(2.0 * delta * n as f64) as usize,
        delta_max,
        conservative_max: delta_max.min(zeta / 8.0),
    }
}

/// Decodes the word and answers Planted iff the decoder returns a codeword within
/// Hamming distance `floor(2 delta n)`.
pub fn binary_test<C: BinaryCode + ?Sized>(word: &[FieldElement], code: &C, delta: f64) -> Verdict {
    let threshold = libm::floor(2.0 * delta * code.len() as f64) as usize;
    let decoded = code.decode(word).ok().flatten();
    let distance = decoded.as_ref().map(|c| restricted_hamming(word, c, &[]));
    Verdict::from_decoding(decoded, distance, 0, threshold)
}

/// Independent check of a real-valued verdict: a Planted answer must carry a word
/// that satisfies the parity checks and lies within the threshold of the
/// re-assembled input. Null answers always pass.
pub fn recheck_real(verdict: &Verdict, symbols: &[RealSymbol], layout: &TupleLayout, code: &ReedSolomon) -> bool {
    if verdict.decision == Decision::Null {
        return true;
    }
    let Some(c) = &verdict.diagnostics.decoded else { return false };
    let tuples: Vec<Tuple> = symbols.iter().map(|&s| layout.tuple(s)).collect();
    let assembled = unique_index_assembly(&tuples, code.len());
    let erasures = assembled.erasures();
    let known: Vec<Option<FieldElement>> = assembled.symbols().to_vec();
    let candidate: Vec<Option<FieldElement>> = c.iter().copied().map(Some).collect();
    code.code().contains(c) && restricted_hamming(&known, &candidate, &erasures) <= verdict.diagnostics.threshold
}

/// Independent check of a binary verdict.
pub fn recheck_binary<C: BinaryCode + ?Sized>(verdict: &Verdict, word: &[FieldElement], code: &C) -> bool {
    if verdict.decision == Decision::Null {
        return true;
    }
    let Some(c) = &verdict.diagnostics.decoded else { return false };
    c.len() == word.len()
        && code.code().contains(c)
        && restricted_hamming(word, c, &[]) <= verdict.diagnostics.threshold
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bch::BchCode;
    use crate::field::Field;
    use crate::noise::t_delta;
    use crate::planted::{sample_null_binary, sample_null_real, sample_planted_real};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fe(i: u16) -> FieldElement {
        FieldElement::from_index(i)
    }

    #[test]
    fn restricted_hamming_examples() {
        let (a, b, c, d) = (Some(fe(1)), Some(fe(2)), Some(fe(3)), Some(fe(4)));
        let x = [a, None, b, c];
        let y = [a, d, b, d];
        assert_eq!(restricted_hamming(&x, &y, &[1]), 1);
        assert_eq!(restricted_hamming(&x, &x, &[]), 0);
    }

    #[test]
    fn unrestricted_distance_is_hamming() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let x: Vec<u8> = (0..20).map(|_| rng.random_range(0..3)).collect();
            let y: Vec<u8> = (0..20).map(|_| rng.random_range(0..3)).collect();
            let direct = (0..20).filter(|&i| x[i] != y[i]).count();
            assert_eq!(restricted_hamming(&x, &y, &[]), direct);
        }
    }

    #[test]
    fn assembly_examples() {
        let t = |j: usize, v: u16| Tuple { index: j, value: fe(v) };
        let w = unique_index_assembly(&[t(0, 1), t(1, 2), t(2, 3), t(3, 0)], 4);
        assert_eq!(w.erasure_count(), 0);
        assert_eq!(w.get(2), Some(fe(3)));
        let w = unique_index_assembly(&[t(0, 1), t(0, 2), t(1, 3), t(2, 0)], 4);
        assert_eq!(w.erasures(), vec![0, 3]);
        assert_eq!(w.get(1), Some(fe(3)));
        assert_eq!(w.get(2), Some(fe(0)));
    }

    #[test]
    fn real_feasibility_examples() {
        let f = real_feasible(1024, 52, 0.0035);
        assert!(f.feasible());
        assert!((f.lhs - 754.35).abs() < 0.01, "{}", f.lhs);
        assert_eq!(f.threshold, 14);
        assert!((f.delta_max - 0.003832).abs() < 1e-6);
        let f = real_feasible(1024, 52, 0.004);
        assert!(!f.feasible() && f.violation().unwrap().contains("96e"));
        assert!(real_feasible(999, 332, 0.0).feasible());
        assert!(!real_feasible(999, 333, 0.0).feasible());
    }

    #[test]
    fn binary_feasibility_reports_both_regimes() {
        let code = BchCode::new(8, 6).unwrap();
        let f = binary_feasible(&code, 0.0059);
        assert!(f.feasible());
        assert!(!f.conservative());
        assert_eq!(f.threshold, 3);
        assert!(binary_feasible(&code, 0.005).conservative());
        assert!(!binary_feasible(&code, 0.03).feasible());
    }

    #[test]
    fn clean_planted_sample_with_distinct_indices_is_planted() {
        let layout = TupleLayout::new(4).unwrap();
        let code = ReedSolomon::new(Field::binary(4).unwrap(), 16, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let c = code.code().sample_codeword(&mut rng);
        let symbols: Vec<RealSymbol> = (0..16).map(|j| layout.encode(j, c[j], 0).unwrap()).collect();
        let v = real_test(&symbols, &layout, &code, 0.0);
        assert_eq!(v.decision, Decision::Planted);
        assert_eq!(v.diagnostics.distance, Some(0));
        assert_eq!(v.diagnostics.decoded.as_deref(), Some(&c[..]));
        assert!(recheck_real(&v, &symbols, &layout, &code));
    }

    #[test]
    fn real_test_separates_small_instance() {
        let layout = TupleLayout::new(8).unwrap();
        let code = ReedSolomon::new(Field::binary(8).unwrap(), 256, 13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let delta = 0.0035;
        for _ in 0..30 {
            let null = sample_null_real(256, &mut rng);
            let v = real_test(&null, &layout, &code, delta);
            assert_eq!(v.decision, Decision::Null);
            let planted = sample_planted_real(&layout, &code, &mut rng).unwrap();
            let noisy =
                t_delta(planted.symbols(), delta, |r: &mut ChaCha8Rng| RealSymbol(r.random()), &mut rng).unwrap();
            let v = real_test(&noisy.sample, &layout, &code, delta);
            assert!(recheck_real(&v, &noisy.sample, &layout, &code));
            if noisy.changed.is_empty() {
                assert_eq!(v.decision, Decision::Planted);
            }
        }
    }

    #[test]
    fn binary_test_on_codewords_and_noise() {
        let code = BchCode::new(6, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = code.code().sample_codeword(&mut rng);
        let v = binary_test(&c, &code, 0.02);
        assert_eq!(v.decision, Decision::Planted);
        assert_eq!(v.diagnostics.distance, Some(0));
        let mut flipped = c.clone();
        for b in flipped.iter_mut().take(3) {
            *b = fe(1 - b.index() as u16);
        }
        let v = binary_test(&flipped, &code, 0.02);
        assert_eq!(v.diagnostics.status, DecodeStatus::TooFar);
        assert_eq!(v.decision, Decision::Null);
        let null = sample_null_binary(63, &mut rng);
        let v = binary_test(&null, &code, 0.02);
        assert!(recheck_binary(&v, &null, &code));
    }

    #[test]
    fn forged_planted_verdicts_fail_the_recheck() {
        let code = BchCode::new(4, 2).unwrap();
        let word = vec![FieldElement::ZERO; 15];
        let mut v = binary_test(&word, &code, 0.05);
        assert!(recheck_binary(&v, &word, &code));
        v.diagnostics.decoded = Some({
            let mut w = word.clone();
            w[0] = FieldElement::ONE;
            w
        });
        assert!(!recheck_binary(&v, &word, &code));
        v.diagnostics.decoded = None;
        assert!(!recheck_binary(&v, &word, &code));
    }
}
