//! Reed-Solomon codes `RS_q(n, k)`: evaluations of polynomials of degree at most `k`
//! at the field elements with indices `0..n`.
//!
//! Decoding punctures away the erased coordinates and runs Gao's algorithm on what
//! is left: with `N = n - s` surviving points it corrects up to
//! `floor((N - k - 1) / 2)` errors, which is exactly the `2r + s < n - k` contract.

use alloc::vec::Vec;

use crate::error::CodeError;
use crate::field::{Field, FieldElement};
use crate::linear_code::LinearCode;
use crate::poly;

/// A word over `F ∪ {⊥}`; `None` marks an erasure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedWord {
    symbols: Vec<Option<FieldElement>>,
}

impl ReceivedWord {
    pub fn new(symbols: Vec<Option<FieldElement>>) -> Self {
        ReceivedWord { symbols }
    }

    /// A fully known word with no erasures.
    pub fn from_word(word: &[FieldElement]) -> Self {
        ReceivedWord { symbols: word.iter().copied().map(Some).collect() }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<FieldElement> {
        self.symbols[i]
    }

    pub fn symbols(&self) -> &[Option<FieldElement>] {
        &self.symbols
    }

    pub fn set(&mut self, i: usize, value: FieldElement) {
        self.symbols[i] = Some(value);
    }

    pub fn erase(&mut self, i: usize) {
        self.symbols[i] = None;
    }

    pub fn is_erased(&self, i: usize) -> bool {
        self.symbols[i].is_none()
    }

    /// The erasure set `S`, in increasing order.
    pub fn erasures(&self) -> Vec<usize> {
        self.symbols.iter().enumerate().filter(|(_, s)| s.is_none()).map(|(i, _)| i).collect()
    }

    pub fn erasure_count(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_none()).count()
    }

    /// Number of non-erased positions where `word` disagrees with this word.
    pub fn restricted_distance(&self, word: &[FieldElement]) -> usize {
        self.symbols.iter().zip(word).filter(|(s, w)| s.is_some_and(|v| v != **w)).count()
    }
}

#[derive(Clone, Debug)]
pub struct RsParams {
    pub field: Field,
    pub n: usize,
    /// Maximum polynomial degree; the dimension is `k + 1`.
    pub k: usize,
    /// Evaluation points: the elements with indices `0..n`.
    pub points: Vec<FieldElement>,
}

impl RsParams {
    pub fn dimension(&self) -> usize {
        self.k + 1
    }

    /// Minimum distance `n - k`.
    pub fn distance(&self) -> usize {
        self.n - self.k
    }

    /// Dual distance `k + 2`.
    pub fn dual_distance(&self) -> usize {
        self.k + 2
    }

    /// Errors correctable alongside `erasures` erasures, or `None` once
    /// `erasures >= n - k` leaves the codeword undetermined.
    pub fn error_capacity(&self, erasures: usize) -> Option<usize> {
        let left = self.n.checked_sub(erasures)?;
        (left > self.k).then(|| (left - self.k - 1) / 2)
    }
}

#[derive(Clone, Debug)]
pub struct ReedSolomon {
    params: RsParams,
    code: LinearCode,
}

impl ReedSolomon {
    /// `RS_q(n, k)` over `field`, with generator rows `(a_j^i)_j` for `i = 0..=k`.
    pub fn new(field: Field, n: usize, k: usize) -> Result<Self, CodeError> {
        if n as u64 > field.size() as u64 {
            return Err(CodeError::InvalidParameters("Reed-Solomon length exceeds the field size"));
        }
        if k >= n {
            return Err(CodeError::InvalidParameters("Reed-Solomon degree must be below the length"));
        }
        let points: Vec<FieldElement> = field.elements().take(n).collect();
        let rows: Vec<Vec<FieldElement>> =
            (0..=k).map(|i| points.iter().map(|&a| field.pow(a, i as u64)).collect()).collect();
        let code = LinearCode::from_generator(field.clone(), n, &rows)?;
        Ok(ReedSolomon { params: RsParams { field, n, k, points }, code })
    }

    pub fn params(&self) -> &RsParams {
        &self.params
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn field(&self) -> &Field {
        &self.params.field
    }

    pub fn len(&self) -> usize {
        self.params.n
    }

    pub fn is_empty(&self) -> bool {
        self.params.n == 0
    }

    /// Evaluations of the polynomial with the given coefficients (low degree first).
    pub fn evaluate(&self, coeffs: &[FieldElement]) -> Vec<FieldElement> {
        self.params.points.iter().map(|&a| poly::eval(&self.params.field, coeffs, a)).collect()
    }

    /// Membership test: the word is a codeword iff the interpolant through its
    /// first `k + 1` coordinates reproduces the rest. O(n k).
    pub fn is_codeword(&self, word: &[FieldElement]) -> bool {
        let p = &self.params;
        if word.len() != p.n || word.iter().any(|&x| !p.field.contains(x)) {
            return false;
        }
        let d = p.dimension();
        let f = poly::interpolate(&p.field, &p.points[..d], &word[..d]);
        p.points[d..].iter().zip(&word[d..]).all(|(&a, &w)| poly::eval(&p.field, &f, a) == w)
    }

    /// Bounded-distance errors-and-erasures decoding.
    ///
    /// Returns the unique codeword `c` with `2 * Δ_S(c, received) + s < n - k` when
    /// one exists and `Ok(None)` (fail) otherwise; also fails outright when
    /// `s >= n - k`. Any returned word has passed a membership check.
    pub fn decode(&self, received: &ReceivedWord) -> Result<Option<Vec<FieldElement>>, CodeError> {
        let p = &self.params;
        if received.len() != p.n {
            return Err(CodeError::LengthMismatch { expected: p.n, actual: received.len() });
        }
        let (points, values): (Vec<FieldElement>, Vec<FieldElement>) =
            p.points.iter().zip(received.symbols()).filter_map(|(&a, s)| s.map(|v| (a, v))).unzip();
        if let Some(bad) = values.iter().find(|v| !p.field.contains(**v)) {
            p.field.element(bad.index())?;
        }
        let Some(radius) = p.error_capacity(received.erasure_count()) else {
            return Ok(None);
        };
        let Some(message) = gao_decode(&p.field, &points, &values, p.dimension()) else {
            return Ok(None);
        };
        let codeword = self.evaluate(&message);
        if received.restricted_distance(&codeword) > radius || !self.is_codeword(&codeword) {
            return Ok(None);
        }
        Ok(Some(codeword))
    }
}

/// Gao's algorithm: finds the polynomial of degree below `dim` agreeing with
/// `values` on all but at most `(len - dim) / 2` of `points`.
fn gao_decode(field: &Field, points: &[FieldElement], values: &[FieldElement], dim: usize) -> Option<poly::Poly> {
    let len = points.len();
    let g1 = poly::interpolate(field, points, values);
    let mut r_prev = poly::from_roots(field, points);
    let mut r_cur = g1;
    let mut v_prev: poly::Poly = Vec::new();
    let mut v_cur: poly::Poly = alloc::vec![FieldElement::ONE];
    // Stop at the first remainder of degree below (len + dim) / 2.
    while let Some(d) = poly::degree(&r_cur) {
        if 2 * d < len + dim {
            break;
        }
        let (q, rem) = poly::div_rem(field, &r_prev, &r_cur);
        let v_next = poly::sub(field, &v_prev, &poly::mul(field, &q, &v_cur));
        r_prev = core::mem::replace(&mut r_cur, rem);
        v_prev = core::mem::replace(&mut v_cur, v_next);
    }
    let (f, rem) = poly::div_rem(field, &r_cur, &v_cur);
    (rem.is_empty() && f.len() <= dim).then_some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rs(m: u32, n: usize, k: usize) -> ReedSolomon {
        ReedSolomon::new(Field::binary(m).unwrap(), n, k).unwrap()
    }

    #[test]
    fn rs_4_1_over_gf4() {
        let code = rs(2, 4, 1);
        assert_eq!(code.code().dimension(), 2);
        assert_eq!(code.code().codewords().unwrap().len(), 16);
        assert_eq!(code.code().min_weight_bruteforce().unwrap(), 3);
    }

    #[test]
    fn constant_polynomials_give_a_repetition_code() {
        let code = rs(3, 8, 0);
        assert_eq!(code.code().min_weight_bruteforce().unwrap(), 8);
    }

    #[test]
    fn invalid_parameters() {
        let f = Field::binary(3).unwrap();
        assert!(ReedSolomon::new(f.clone(), 9, 2).is_err());
        assert!(ReedSolomon::new(f, 8, 8).is_err());
    }

    #[test]
    fn encode_is_member_of_both_views() {
        let code = rs(3, 8, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let c = code.code().sample_codeword(&mut rng);
            assert!(code.code().contains(&c));
            assert!(code.is_codeword(&c));
        }
    }

    #[test]
    fn clean_codeword_decodes_to_itself() {
        let code = rs(4, 16, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let c = code.code().sample_codeword(&mut rng);
            assert_eq!(code.decode(&ReceivedWord::from_word(&c)).unwrap(), Some(c));
        }
    }

    #[test]
    fn too_many_erasures_fail() {
        let code = rs(3, 8, 2);
        let c = vec![FieldElement::ZERO; 8];
        let mut r = ReceivedWord::from_word(&c);
        for i in 0..6 {
            r.erase(i);
        }
        assert_eq!(code.decode(&r).unwrap(), None);
        assert!(code.decode(&ReceivedWord::from_word(&c[..7])).is_err());
    }

    #[test]
    fn corrects_up_to_capacity_with_erasures() {
        let code = rs(6, 50, 9);
        let f = code.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for s in [0usize, 5, 17, 30, 39] {
            let r = code.params().error_capacity(s).unwrap();
            for _ in 0..20 {
                let c = code.code().sample_codeword(&mut rng);
                let mut positions: Vec<usize> = (0..50).collect();
                for i in 0..positions.len() {
                    let j = rng.random_range(i..positions.len());
                    positions.swap(i, j);
                }
                let mut received = ReceivedWord::from_word(&c);
                for &i in &positions[..s] {
                    received.erase(i);
                }
                for &i in &positions[s..s + r] {
                    let e = FieldElement::from_index(rng.random_range(1..f.size()) as u16);
                    received.set(i, f.add(c[i], e));
                }
                assert_eq!(code.decode(&received).unwrap(), Some(c), "s = {s}, r = {r}");
            }
        }
    }

    #[test]
    fn random_words_never_decode_to_non_codewords() {
        let code = rs(3, 8, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2_000 {
            let mut r = ReceivedWord::new(
                (0..8)
                    .map(|_| rng.random_bool(0.8).then(|| FieldElement::from_index(rng.random_range(0..8u16))))
                    .collect(),
            );
            if rng.random_bool(0.1) {
                r.erase(0);
            }
            if let Some(c) = code.decode(&r).unwrap() {
                assert!(code.code().contains(&c));
                let radius = code.params().error_capacity(r.erasure_count()).unwrap();
                assert!(r.restricted_distance(&c) <= radius);
            }
        }
    }
}
