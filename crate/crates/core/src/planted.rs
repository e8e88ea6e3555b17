//! Null and planted distributions.
//!
//! The real-valued model represents a number in `[0, 1)` as a 64-bit fraction.
//! Its top `m` bits hold a position `j` in `[0, n)`, the next `m` bits hold a
//! field element `y`, and the remaining `64 - 2m` bits are an unused tail. The
//! layout is a bijection on the top `2m` bits, so a uniform symbol carries a
//! uniform `(j, y)` pair.
//!
//! Under the planted model a Reed-Solomon codeword `c` is drawn, each coordinate
//! draws an independent uniform position `j_i`, and `y_i = c[j_i]` when `j_i` is
//! hit by exactly one coordinate (otherwise `y_i` is uniform).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::bch::BinaryCode;
use crate::error::PlantedError;
use crate::field::FieldElement;
use crate::reed_solomon::ReedSolomon;

/// The real number `bits / 2^64`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RealSymbol(pub u64);

impl RealSymbol {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 18_446_744_073_709_551_616.0
    }
}

impl fmt::Debug for RealSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealSymbol({:#018x})", self.0)
    }
}

/// A decoded `(position, value)` pair, positions zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tuple {
    pub index: usize,
    pub value: FieldElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleLayout {
    m: u32,
}

impl TupleLayout {
    pub fn new(m: u32) -> Result<Self, PlantedError> {
        if m == 0 || 2 * m > 64 {
            return Err(PlantedError::Layout { m });
        }
        Ok(TupleLayout { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `n = q = 2^m`.
    pub fn n(&self) -> usize {
        1usize << self.m
    }

    pub fn tail_bits(&self) -> u32 {
        64 - 2 * self.m
    }

    fn field_mask(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    fn tail_mask(&self) -> u64 {
        match self.tail_bits() {
            0 => 0,
            b => u64::MAX >> (64 - b),
        }
    }

    /// Packs position `index` (zero-based, so the one-based `j` minus one), the
    /// value and the tail.
    pub fn encode(&self, index: usize, value: FieldElement, tail: u64) -> Result<RealSymbol, PlantedError> {
        let n = self.n();
        if index >= n {
            return Err(PlantedError::IndexOutOfRange { index, n });
        }
        if value.index() as u64 > self.field_mask() {
            return Err(PlantedError::IndexOutOfRange { index: value.index() as usize, n });
        }
        if tail & !self.tail_mask() != 0 {
            return Err(PlantedError::TailTooWide { tail, bits: self.tail_bits() });
        }
        let hi = (index as u64) << (64 - self.m);
        let mid = (value.index() as u64) << self.tail_bits();
        Ok(RealSymbol(hi | mid | tail))
    }

    /// Inverse of [`encode`](Self::encode): `(index, value, tail)`.
    pub fn decode(&self, s: RealSymbol) -> (usize, FieldElement, u64) {
        let index = (s.0 >> (64 - self.m)) as usize;
        let value = ((s.0 >> self.tail_bits()) & self.field_mask()) as u16;
        (index, FieldElement::from_index(value), s.0 & self.tail_mask())
    }

    pub fn tuple(&self, s: RealSymbol) -> Tuple {
        let (index, value, _) = self.decode(s);
        Tuple { index, value }
    }
}

/// Fields a planted sample was built from. Distinguishers only ever see
/// [`PlantedSample::symbols`]; these are for diagnostics and adversaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hidden {
    pub codeword: Vec<FieldElement>,
    /// Position drawn by each coordinate, zero-based.
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedSample {
    symbols: Vec<RealSymbol>,
    hidden: Hidden,
}

impl PlantedSample {
    pub fn symbols(&self) -> &[RealSymbol] {
        &self.symbols
    }

    pub fn hidden(&self) -> &Hidden {
        &self.hidden
    }

    pub fn into_symbols(self) -> Vec<RealSymbol> {
        self.symbols
    }
}

/// `n` i.i.d. uniform symbols.
pub fn sample_null_real<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<RealSymbol> {
    (0..n).map(|_| RealSymbol(rng.random())).collect()
}

/// `n` i.i.d. fair bits as GF(2) elements.
pub fn sample_null_binary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<FieldElement> {
    (0..n).map(|_| FieldElement::from_index(rng.random_range(0..2u16))).collect()
}

/// Number of coordinates drawing each position.
pub fn index_counts(indices: &[usize], n: usize) -> Vec<u32> {
    let mut counts = vec![0u32; n];
    for &j in indices {
        counts[j] += 1;
    }
    counts
}

fn check_layout(layout: &TupleLayout, code: &ReedSolomon) -> Result<(), PlantedError> {
    let field = code.field();
    if code.len() != layout.n() {
        return Err(PlantedError::Mismatch("code length must equal 2^m"));
    }
    if field.characteristic() != 2 || field.degree() != layout.m() {
        return Err(PlantedError::Mismatch("code must be over GF(2^m)"));
    }
    Ok(())
}

/// One draw from the planted real-valued model.
pub fn sample_planted_real<R: Rng + ?Sized>(
    layout: &TupleLayout,
    code: &ReedSolomon,
    rng: &mut R,
) -> Result<PlantedSample, PlantedError> {
    check_layout(layout, code)?;
    let n = layout.n();
    let q = code.field().size();
    let codeword = code.code().sample_codeword(rng);
    let indices: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
    let counts = index_counts(&indices, n);
    let tail_mask = layout.tail_mask();
    let symbols = indices
        .iter()
        .map(|&j| {
            let value =
                if counts[j] == 1 { codeword[j] } else { FieldElement::from_index(rng.random_range(0..q) as u16) };
            let tail = rng.random::<u64>() & tail_mask;
            layout.encode(j, value, tail)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PlantedSample { symbols, hidden: Hidden { codeword, indices } })
}

/// One draw from the planted binary model: a uniform codeword.
pub fn sample_planted_binary<C: BinaryCode + ?Sized, R: Rng + ?Sized>(code: &C, rng: &mut R) -> Vec<FieldElement> {
    code.code().sample_codeword(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bit_layout_examples() {
        let layout = TupleLayout::new(2).unwrap();
        // j = 3 (index 2), y = 1
        let s = layout.encode(2, FieldElement::ONE, 0).unwrap();
        assert_eq!(s.0, 0b1001u64 << 60);
        assert_eq!(s.value(), 0.5625);
        assert_eq!(layout.encode(0, FieldElement::ZERO, 0).unwrap().value(), 0.0);
        assert!(matches!(layout.encode(4, FieldElement::ZERO, 0), Err(PlantedError::IndexOutOfRange { .. })));
        assert!(layout.encode(0, FieldElement::ZERO, 1 << 60).is_err());
    }

    #[test]
    fn full_width_layout_has_no_tail() {
        let layout = TupleLayout::new(32).unwrap();
        assert_eq!(layout.tail_bits(), 0);
        assert!(TupleLayout::new(33).is_err());
        assert!(TupleLayout::new(0).is_err());
        let s = layout.encode(5, FieldElement::from_index(7), 0).unwrap();
        assert_eq!(layout.decode(s), (5, FieldElement::from_index(7), 0));
    }

    #[test]
    fn smallest_layout_keeps_unique_values() {
        let layout = TupleLayout::new(1).unwrap();
        let code = ReedSolomon::new(Field::binary(1).unwrap(), 2, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            let s = sample_planted_real(&layout, &code, &mut rng).unwrap();
            let h = s.hidden();
            for (i, sym) in s.symbols().iter().enumerate() {
                let t = layout.tuple(*sym);
                assert_eq!(t.index, h.indices[i]);
                if h.indices.iter().filter(|&&j| j == t.index).count() == 1 {
                    assert_eq!(t.value, h.codeword[t.index]);
                }
            }
        }
    }

    #[test]
    fn layout_mismatch_is_rejected() {
        let layout = TupleLayout::new(3).unwrap();
        let code = ReedSolomon::new(Field::binary(4).unwrap(), 8, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(sample_planted_real(&layout, &code, &mut rng).is_err());
    }
}
