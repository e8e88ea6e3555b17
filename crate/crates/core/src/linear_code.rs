//! Linear codes given by a generator matrix and a parity-check matrix.
//!
//! The parity-check matrix is derived from the reduced row echelon form of the
//! generator, so every construction path yields the same `H` for the same row
//! space. Uniformity of codeword marginals is decided by the rank criterion: the
//! uniform distribution over codewords restricted to coordinates `S` is uniform on
//! `F^|S|` exactly when the columns of `G` indexed by `S` are linearly independent.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::CodeError;
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;

/// Largest codebook that brute-force enumeration will walk.
pub const ENUMERATION_BUDGET: u128 = 1 << 24;

#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    n: usize,
    generator: Matrix,
    parity_check: Matrix,
}

/// Basis of the right kernel of a matrix in reduced row echelon form.
fn kernel_basis(field: &Field, rref: &Matrix, pivots: &[usize], n: usize) -> Matrix {
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut h = Matrix::zeros(free.len(), n);
    for (row, &f) in free.iter().enumerate() {
        h.set(row, f, FieldElement::ONE);
        for (i, &p) in pivots.iter().enumerate() {
            h.set(row, p, field.neg(rref.get(i, f)));
        }
    }
    h
}

impl LinearCode {
    /// A code of length `n` spanned by `rows`, which must be linearly independent.
    pub fn from_generator(field: Field, n: usize, rows: &[Vec<FieldElement>]) -> Result<Self, CodeError> {
        for r in rows {
            if r.len() != n {
                return Err(CodeError::LengthMismatch { expected: n, actual: r.len() });
            }
            if let Some(bad) = r.iter().find(|&&x| !field.contains(x)) {
                field.element(bad.index())?;
            }
        }
        Self::from_generator_matrix(field, Matrix::from_rows(n, rows))
    }

    pub fn from_generator_matrix(field: Field, generator: Matrix) -> Result<Self, CodeError> {
        let n = generator.cols();
        let (rref, pivots) = generator.rref(&field);
        if pivots.len() != generator.rows() {
            return Err(CodeError::RankDeficient { rows: generator.rows(), rank: pivots.len() });
        }
        let parity_check = kernel_basis(&field, &rref, &pivots, n);
        Ok(LinearCode { field, n, generator, parity_check })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Block length `n`.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity_check
    }

    /// `msg^T G`.
    pub fn encode(&self, msg: &[FieldElement]) -> Result<Vec<FieldElement>, CodeError> {
        if msg.len() != self.dimension() {
            return Err(CodeError::LengthMismatch { expected: self.dimension(), actual: msg.len() });
        }
        Ok(self.generator.left_mul(&self.field, msg))
    }

    /// A uniformly random codeword: a uniform message pushed through [`encode`](Self::encode).
    pub fn sample_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<FieldElement> {
        let q = self.field.size();
        let msg: Vec<FieldElement> =
            (0..self.dimension()).map(|_| FieldElement::from_index(rng.random_range(0..q) as u16)).collect();
        self.generator.left_mul(&self.field, &msg)
    }

    pub fn syndrome(&self, word: &[FieldElement]) -> Result<Vec<FieldElement>, CodeError> {
        if word.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, actual: word.len() });
        }
        Ok(self.parity_check.mul_vec(&self.field, word))
    }

    /// Membership test via the parity checks.
    pub fn contains(&self, word: &[FieldElement]) -> bool {
        word.len() == self.n
            && word.iter().all(|&x| self.field.contains(x))
            && self.parity_check.mul_vec(&self.field, word).iter().all(|s| s.is_zero())
    }

    /// The dual code. Its generator is this code's parity-check matrix.
    pub fn dual(&self) -> LinearCode {
        let (rref, pivots) = self.parity_check.rref(&self.field);
        debug_assert_eq!(pivots.len(), self.parity_check.rows());
        let parity_check = kernel_basis(&self.field, &rref, &pivots, self.n);
        LinearCode { field: self.field.clone(), n: self.n, generator: self.parity_check.clone(), parity_check }
    }

    /// Whether both codes have the same set of codewords.
    pub fn same_row_space(&self, other: &LinearCode) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.generator.rref(&self.field).0 == other.generator.rref(&other.field).0
    }

    /// `q^dim`, saturating.
    pub fn codebook_size(&self) -> u128 {
        (self.field.size() as u128).saturating_pow(self.dimension() as u32)
    }

    fn check_budget(&self, budget: u128) -> Result<(), CodeError> {
        let words = self.codebook_size();
        if words > budget {
            return Err(CodeError::BudgetExceeded { words, budget });
        }
        Ok(())
    }

    /// Calls `visit` on every codeword, starting with zero. Consecutive messages
    /// differ in one digit (with carries), so each step costs one row update.
    pub fn for_each_codeword<F>(&self, budget: u128, mut visit: F) -> Result<(), CodeError>
    where
        F: FnMut(&[FieldElement]),
    {
        self.check_budget(budget)?;
        let f = &self.field;
        let q = f.size();
        let k = self.dimension();
        let mut digits = vec![0u32; k];
        let mut word = vec![FieldElement::ZERO; self.n];
        visit(&word);
        'outer: loop {
            let mut i = 0;
            loop {
                if i == k {
                    break 'outer;
                }
                let old = FieldElement::from_index(digits[i] as u16);
                let (new_digit, carry) = if digits[i] + 1 < q { (digits[i] + 1, false) } else { (0, true) };
                let new = FieldElement::from_index(new_digit as u16);
                let delta = f.sub(new, old);
                for (w, &g) in word.iter_mut().zip(self.generator.row(i)) {
                    *w = f.add(*w, f.mul(delta, g));
                }
                digits[i] = new_digit;
                if !carry {
                    break;
                }
                i += 1;
            }
            visit(&word);
        }
        Ok(())
    }

    /// Every codeword, within [`ENUMERATION_BUDGET`].
    pub fn codewords(&self) -> Result<Vec<Vec<FieldElement>>, CodeError> {
        let mut out = Vec::new();
        self.for_each_codeword(ENUMERATION_BUDGET, |w| out.push(w.to_vec()))?;
        Ok(out)
    }

    /// A nonzero codeword of minimum weight, or `None` for the zero code.
    pub fn min_weight_codeword(&self) -> Result<Option<Vec<FieldElement>>, CodeError> {
        let mut best: Option<(usize, Vec<FieldElement>)> = None;
        self.for_each_codeword(ENUMERATION_BUDGET, |w| {
            let wt = w.iter().filter(|x| !x.is_zero()).count();
            if wt > 0 && best.as_ref().is_none_or(|(b, _)| wt < *b) {
                best = Some((wt, w.to_vec()));
            }
        })?;
        Ok(best.map(|(_, w)| w))
    }

    /// Exact minimum Hamming weight over nonzero codewords, by enumeration.
    /// The zero code reports `n + 1`, matching the convention that the full
    /// space has dual distance `n + 1`.
    pub fn min_weight_bruteforce(&self) -> Result<usize, CodeError> {
        let mut best = self.n + 1;
        self.for_each_codeword(ENUMERATION_BUDGET, |w| {
            let wt = w.iter().filter(|x| !x.is_zero()).count();
            if wt > 0 && wt < best {
                best = wt;
            }
        })?;
        Ok(best)
    }

    /// True iff the columns of `G` indexed by `subset` are linearly independent,
    /// i.e. the uniform codeword restricted to `subset` is uniform on `F^|subset|`.
    /// Panics if an index is out of range.
    pub fn subset_rank_uniform(&self, subset: &[usize]) -> bool {
        assert!(subset.iter().all(|&i| i < self.n), "subset index out of range");
        if subset.is_empty() {
            return true;
        }
        if subset.len() > self.dimension() {
            return false;
        }
        self.generator.select_columns(subset).rank(&self.field) == subset.len()
    }
}
