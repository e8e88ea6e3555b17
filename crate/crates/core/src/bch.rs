//! Binary codes with a certified dual-distance bound and an efficient decoder.
//!
//! [`BinaryCode`] is the interface the binary distinguisher needs: a linear code
//! over GF(2), a guaranteed error-correction radius `t` and a lower bound on the
//! dual distance. [`BchCode`] implements it with narrow-sense primitive BCH codes,
//! decoded by syndromes, Berlekamp-Massey and a Chien search.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::CodeError;
use crate::field::{Field, FieldElement};
use crate::linear_code::LinearCode;
use crate::poly;

/// Dual codes of at most this dimension get an exact, enumerated dual distance.
pub const EXACT_DUAL_MAX_DIM: usize = 24;

/// Largest supported extension degree (block length 1023).
pub const MAX_BCH_DEGREE: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum DualBoundKind {
    /// Minimum weight of the dual code, found by enumerating it.
    ExactBruteforce,
    /// A closed-form lower bound that has not been checked by enumeration.
    AnalyticBound,
}

impl DualBoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DualBoundKind::ExactBruteforce => "exact-bruteforce",
            DualBoundKind::AnalyticBound => "analytic-bound",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualBound {
    pub value: usize,
    pub kind: DualBoundKind,
}

/// A binary linear code that decodes up to [`radius`](Self::radius) errors and
/// whose dual distance is at least [`dual_bound`](Self::dual_bound).
pub trait BinaryCode {
    fn code(&self) -> &LinearCode;

    /// Guaranteed number of correctable errors `t`.
    fn radius(&self) -> usize;

    fn dual_bound(&self) -> DualBound;

    /// Decodes a word over GF(2). Returns the codeword within distance
    /// [`radius`](Self::radius) if there is one; otherwise some codeword or `None`,
    /// never a non-codeword.
    fn decode(&self, word: &[FieldElement]) -> Result<Option<Vec<FieldElement>>, CodeError>;

    fn len(&self) -> usize {
        self.code().len()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Fractional decoding radius `2t / n`.
    fn zeta(&self) -> f64 {
        2.0 * self.radius() as f64 / self.len() as f64
    }
}

/// Narrow-sense primitive binary BCH code of length `2^m - 1` and designed
/// distance `2t + 1`.
#[derive(Clone, Debug)]
pub struct BchCode {
    m: u32,
    t: usize,
    ext: Field,
    generator_poly: Vec<FieldElement>,
    code: LinearCode,
    dual: DualBound,
}

fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    let mut r = libm::sqrt(x as f64) as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// `ceil(2^(m-1) - (t-1) 2^(m/2))`, clamped below at 1: the Carlitz-Uchiyama style
/// lower bound on the dual distance of a binary BCH code.
pub fn carlitz_uchiyama_bound(m: u32, t: usize) -> usize {
    let half = 1u128 << (m - 1);
    let tm1 = t.saturating_sub(1) as u128;
    let cut = isqrt(tm1 * tm1 * (1u128 << m));
    half.saturating_sub(cut).max(1) as usize
}

impl BchCode {
    pub fn new(m: u32, t: usize) -> Result<Self, CodeError> {
        if !(2..=MAX_BCH_DEGREE).contains(&m) {
            return Err(CodeError::InvalidParameters("BCH degree m must lie in 2..=10"));
        }
        if t == 0 {
            return Err(CodeError::InvalidParameters("BCH radius t must be at least 1"));
        }
        let n = (1usize << m) - 1;
        if 2 * t + 1 > n {
            return Err(CodeError::InvalidParameters("designed distance exceeds the length"));
        }
        let ext = Field::binary(m)?;
        let gf2 = Field::binary(1)?;

        let mut seen = vec![false; n];
        let mut g: poly::Poly = vec![FieldElement::ONE];
        for i in 1..=2 * t {
            if seen[i % n] {
                continue;
            }
            let mut roots = Vec::new();
            let mut e = i % n;
            while !seen[e] {
                seen[e] = true;
                roots.push(ext.exp(e as u64));
                e = (2 * e) % n;
            }
            let minimal = poly::from_roots(&ext, &roots);
            debug_assert!(minimal.iter().all(|c| c.index() < 2));
            g = poly::mul(&ext, &g, &minimal);
        }
        let deg = g.len() - 1;
        if deg >= n {
            return Err(CodeError::InvalidParameters("BCH code has dimension zero"));
        }
        let dim = n - deg;
        let rows: Vec<Vec<FieldElement>> = (0..dim)
            .map(|shift| {
                let mut row = vec![FieldElement::ZERO; n];
                row[shift..shift + g.len()].copy_from_slice(&g);
                row
            })
            .collect();
        let code = LinearCode::from_generator(gf2, n, &rows)?;

        let dual = if deg <= EXACT_DUAL_MAX_DIM {
            DualBound { value: code.dual().min_weight_bruteforce()?, kind: DualBoundKind::ExactBruteforce }
        } else {
            DualBound { value: carlitz_uchiyama_bound(m, t), kind: DualBoundKind::AnalyticBound }
        };

        Ok(BchCode { m, t, ext, generator_poly: g, code, dual })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Generator polynomial over GF(2), low degree first.
    pub fn generator_poly(&self) -> &[FieldElement] {
        &self.generator_poly
    }

    fn syndromes(&self, word: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.code.len() as u64;
        let ones: Vec<u64> = word.iter().enumerate().filter(|(_, b)| !b.is_zero()).map(|(j, _)| j as u64).collect();
        (1..=2 * self.t as u64)
            .map(|l| ones.iter().fold(FieldElement::ZERO, |acc, &j| self.ext.add(acc, self.ext.exp((l * j) % n))))
            .collect()
    }

    /// Berlekamp-Massey: the shortest connection polynomial generating `syn`.
    fn error_locator(&self, syn: &[FieldElement]) -> (poly::Poly, usize) {
        let f = &self.ext;
        let mut c: poly::Poly = vec![FieldElement::ONE];
        let mut b: poly::Poly = vec![FieldElement::ONE];
        let mut len = 0usize;
        let mut shift = 1usize;
        let mut last = FieldElement::ONE;
        for step in 0..syn.len() {
            let mut d = syn[step];
            for i in 1..=len.min(c.len() - 1) {
                d = f.add(d, f.mul(c[i], syn[step - i]));
            }
            if d.is_zero() {
                shift += 1;
                continue;
            }
            let coef = f.div(d, last).expect("last discrepancy is nonzero");
            let mut next = c.clone();
            if next.len() < b.len() + shift {
                next.resize(b.len() + shift, FieldElement::ZERO);
            }
            for (i, &bc) in b.iter().enumerate() {
                next[i + shift] = f.sub(next[i + shift], f.mul(coef, bc));
            }
            if 2 * len <= step {
                len = step + 1 - len;
                b = core::mem::replace(&mut c, next);
                last = d;
                shift = 1;
            } else {
                c = next;
                shift += 1;
            }
        }
        poly::trim(&mut c);
        (c, len)
    }
}

impl BinaryCode for BchCode {
    fn code(&self) -> &LinearCode {
        &self.code
    }

    fn radius(&self) -> usize {
        self.t
    }

    fn dual_bound(&self) -> DualBound {
        self.dual
    }

    fn decode(&self, word: &[FieldElement]) -> Result<Option<Vec<FieldElement>>, CodeError> {
        let n = self.code.len();
        if word.len() != n {
            return Err(CodeError::LengthMismatch { expected: n, actual: word.len() });
        }
        if let Some(bad) = word.iter().find(|b| b.index() > 1) {
            return Err(CodeError::Field(crate::FieldError::NotAnElement { index: bad.index(), q: 2 }));
        }
        let syn = self.syndromes(word);
        if syn.iter().all(|s| s.is_zero()) {
            return Ok(Some(word.to_vec()));
        }
        let (locator, len) = self.error_locator(&syn);
        if len > self.t || poly::degree(&locator) != Some(len) {
            return Ok(None);
        }
        // Chien search: an error at position j makes alpha^{-j} a root.
        let order = n as u64;
        let positions: Vec<usize> = (0..n)
            .filter(|&j| poly::eval(&self.ext, &locator, self.ext.exp((order - j as u64) % order)).is_zero())
            .collect();
        if positions.len() != len {
            return Ok(None);
        }
        let mut out = word.to_vec();
        for j in positions {
            out[j] = FieldElement::from_index(1 - out[j].index() as u16);
        }
        if self.syndromes(&out).iter().any(|s| !s.is_zero()) {
            return Ok(None);
        }
        Ok(Some(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn flip(word: &mut [FieldElement], i: usize) {
        word[i] = FieldElement::from_index(1 - word[i].index() as u16);
    }

    #[test]
    fn bch_15_2_parameters() {
        // g = (x^4 + x + 1)(x^4 + x^3 + x^2 + x + 1), the classic (15, 7) code.
        let c = BchCode::new(4, 2).unwrap();
        assert_eq!(c.code().dimension(), 7);
        assert_eq!(c.code().min_weight_bruteforce().unwrap(), 5);
        assert_eq!(c.dual_bound().kind, DualBoundKind::ExactBruteforce);
    }

    #[test]
    fn bch_63_3_and_255_6_dimensions() {
        let c = BchCode::new(6, 3).unwrap();
        assert_eq!(c.code().dimension(), 45);
        assert_eq!(c.dual_bound().kind, DualBoundKind::ExactBruteforce);
        assert!(c.dual_bound().value >= 16);

        let c = BchCode::new(8, 6).unwrap();
        assert_eq!(c.code().dimension(), 207);
        assert_eq!(c.dual_bound(), DualBound { value: 48, kind: DualBoundKind::AnalyticBound });
        assert!((c.zeta() - 12.0 / 255.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_radius_is_rejected() {
        assert!(BchCode::new(6, 0).is_err());
        assert!(BchCode::new(1, 1).is_err());
        assert!(BchCode::new(3, 4).is_err());
    }

    #[test]
    fn analytic_bound_formula() {
        assert_eq!(carlitz_uchiyama_bound(8, 6), 48);
        assert_eq!(carlitz_uchiyama_bound(6, 3), 16);
        // odd m: 2^6 - floor(2 sqrt(128)) = 64 - 22
        assert_eq!(carlitz_uchiyama_bound(7, 3), 42);
        assert_eq!(carlitz_uchiyama_bound(4, 10), 1);
    }

    #[test]
    fn corrects_every_pattern_up_to_radius() {
        let c = BchCode::new(5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = c.len();
        for _ in 0..5 {
            let cw = c.code().sample_codeword(&mut rng);
            for a in 0..n {
                let mut w = cw.clone();
                flip(&mut w, a);
                assert_eq!(c.decode(&w).unwrap().as_ref(), Some(&cw));
                for b in a + 1..n {
                    let mut w2 = w.clone();
                    flip(&mut w2, b);
                    assert_eq!(c.decode(&w2).unwrap().as_ref(), Some(&cw));
                }
            }
        }
    }

    #[test]
    fn outputs_are_always_codewords() {
        let c = BchCode::new(6, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..3_000 {
            let w: Vec<FieldElement> = (0..63).map(|_| FieldElement::from_index(rng.random_range(0..2u16))).collect();
            if let Some(out) = c.decode(&w).unwrap() {
                assert!(c.code().contains(&out));
                let d = w.iter().zip(&out).filter(|(a, b)| a != b).count();
                assert!(d <= 3);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let c = BchCode::new(4, 2).unwrap();
        assert!(c.decode(&[FieldElement::ZERO; 14]).is_err());
        let mut w = vec![FieldElement::ZERO; 15];
        w[3] = FieldElement::from_index(2);
        assert!(c.decode(&w).is_err());
    }
}
