//! Arithmetic over GF(p^m) for p^m <= 2^16.
//!
//! Elements are plain indices: the element with index `i` is the polynomial whose
//! base-`p` digits (least significant first) are its coefficients, reduced modulo
//! the field's monic irreducible modulus. Multiplication goes through exp/log
//! tables built from a generator of the multiplicative group; addition is XOR in
//! characteristic 2 and digit-wise otherwise.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::FieldError;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// Default moduli for GF(2^m), bit-encoded (bit `i` is the coefficient of `x^i`).
/// All of them are primitive, so `x` generates the multiplicative group.
const BINARY_MODULI: [u32; 17] =
    [0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x89, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x4443, 0x8003, 0x1100b];

/// An element of some [`Field`], stored as its canonical index in `[0, q)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps an index without checking it against a field. Use
    /// [`Field::element`] when the index comes from outside.
    #[inline]
    pub const fn from_index(index: u16) -> Self {
        FieldElement(index)
    }

    #[inline]
    pub const fn index(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, coefficients least significant first (length `m + 1`).
    modulus: Vec<u32>,
    generator: FieldElement,
    /// `exp[i] = g^i` for `i < 2(q - 1)`, doubled so products need no reduction.
    exp: Vec<u16>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u16>,
}

/// A finite field GF(p^m). Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.m)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_size(p: u32, m: u32) -> Option<u32> {
    if m == 0 || !is_prime(p) {
        return None;
    }
    let mut q: u64 = 1;
    for _ in 0..m {
        q *= p as u64;
        if q > MAX_FIELD_SIZE as u64 {
            return None;
        }
    }
    Some(q as u32)
}

// Polynomials over the prime field GF(p), least significant coefficient first.

fn gfp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn gfp_inv(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2).
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo nonzero `b` over GF(p).
fn gfp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    gfp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = gfp_inv(b[db], p) as u64;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (factor as u64 * bc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        gfp_trim(&mut r);
    }
    r
}

fn digits(mut index: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(index % p);
        index /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 || poly[deg] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for lower in 0..count {
            let mut divisor = digits(lower as u32, p, d as u32);
            divisor.push(1);
            if gfp_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The modulus used by [`Field::new`] for GF(p^m): a fixed primitive polynomial in
/// characteristic 2, `x` for prime fields, and otherwise the monic irreducible
/// polynomial whose lower coefficients have the smallest index.
pub fn default_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    checked_size(p, m)?;
    if p == 2 {
        let bits = BINARY_MODULI[m as usize];
        return Some((0..=m).map(|i| (bits >> i) & 1).collect());
    }
    if m == 1 {
        return Some(vec![0, 1]);
    }
    let count = (p as u64).pow(m);
    (0..count).find_map(|lower| {
        let mut poly = digits(lower as u32, p, m);
        poly.push(1);
        is_irreducible(&poly, p).then_some(poly)
    })
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Product of two elements by polynomial multiplication and reduction, without tables.
fn schoolbook_mul(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let mut prod = vec![0u32; 2 * m as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = gfp_rem(&prod, modulus, p);
    r.resize(m as usize, 0);
    from_digits(&r, p)
}

fn schoolbook_pow(mut base: u32, mut e: u64, p: u32, m: u32, modulus: &[u32]) -> u32 {
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = schoolbook_mul(acc, base, p, m, modulus);
        }
        base = schoolbook_mul(base, base, p, m, modulus);
        e >>= 1;
    }
    acc
}

impl Field {
    /// GF(p^m) with the default modulus from [`default_modulus`].
    pub fn new(p: u32, m: u32) -> Result<Field, FieldError> {
        let modulus = default_modulus(p, m).ok_or(FieldError::Unsupported { p, m })?;
        Field::with_modulus(p, m, &modulus)
    }

    /// GF(2^m) with the default primitive modulus.
    pub fn binary(m: u32) -> Result<Field, FieldError> {
        Field::new(2, m)
    }

    /// GF(p^m) with an explicit monic modulus (coefficients least significant first).
    pub fn with_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<Field, FieldError> {
        let q = checked_size(p, m).ok_or(FieldError::Unsupported { p, m })?;
        if modulus.len() != m as usize + 1
            || modulus[m as usize] != 1
            || modulus.iter().any(|&c| c >= p)
            || !is_irreducible(modulus, p)
        {
            return Err(FieldError::Reducible);
        }

        let order = q - 1;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| q == 2 || factors.iter().all(|&r| schoolbook_pow(g, (order / r) as u64, p, m, modulus) != 1))
            .expect("the multiplicative group of a field is cyclic");

        let mut exp = vec![0u16; 2 * order as usize];
        let mut log = vec![0u16; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x as u16;
            log[x as usize] = i as u16;
            x = schoolbook_mul(x, generator, p, m, modulus);
        }
        debug_assert_eq!(x, 1);
        for i in order..2 * order {
            exp[i as usize] = exp[(i - order) as usize];
        }

        Ok(Field(Arc::new(Tables {
            p,
            m,
            q,
            modulus: modulus.to_vec(),
            generator: FieldElement(generator as u16),
            exp,
            log,
        })))
    }

    #[inline]
    pub fn size(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The generator of the multiplicative group used for the tables.
    pub fn generator(&self) -> FieldElement {
        self.0.generator
    }

    #[inline]
    pub fn contains(&self, a: FieldElement) -> bool {
        a.index() < self.0.q
    }

    pub fn element(&self, index: u32) -> Result<FieldElement, FieldError> {
        if index < self.0.q {
            Ok(FieldElement(index as u16))
        } else {
            Err(FieldError::NotAnElement { index, q: self.0.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(|i| FieldElement(i as u16))
    }

    fn check(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.element(a.index())
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        let t = &self.0;
        if t.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if t.m == 1 {
            return FieldElement(((a.0 as u32 + b.0 as u32) % t.p) as u16);
        }
        let (mut x, mut y) = (a.index(), b.index());
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..t.m {
            out += ((x % t.p + y % t.p) % t.p) * place;
            x /= t.p;
            y /= t.p;
            place *= t.p;
        }
        FieldElement(out as u16)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let t = &self.0;
        if t.p == 2 {
            return a;
        }
        if t.m == 1 {
            return FieldElement(((t.p - a.0 as u32) % t.p) as u16);
        }
        let mut x = a.index();
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..t.m {
            out += ((t.p - x % t.p) % t.p) * place;
            x /= t.p;
            place *= t.p;
        }
        FieldElement(out as u16)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.0.p == 2 {
            FieldElement(a.0 ^ b.0)
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &self.0;
        FieldElement(t.exp[t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        let a = self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let t = &self.0;
        let order = t.q - 1;
        let l = t.log[a.0 as usize] as u32;
        Ok(FieldElement(t.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let t = &self.0;
        let order = (t.q - 1) as u64;
        let l = t.log[a.0 as usize] as u64;
        FieldElement(t.exp[((l * (e % order)) % order) as usize])
    }

    /// `g^i` for the table generator `g`.
    #[inline]
    pub fn exp(&self, i: u64) -> FieldElement {
        let order = (self.0.q - 1) as u64;
        FieldElement(self.0.exp[(i % order) as usize])
    }

    /// Discrete logarithm base the table generator; `None` for zero.
    #[inline]
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.0.log[a.0 as usize] as u32)
    }

    /// Addition that rejects operands from outside this field.
    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.add(self.check(a)?, self.check(b)?))
    }

    /// Multiplication that rejects operands from outside this field.
    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    /// Product computed by polynomial multiplication and reduction modulo the
    /// modulus, bypassing the tables.
    pub fn mul_schoolbook(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let t = &self.0;
        FieldElement(schoolbook_mul(a.index(), b.index(), t.p, t.m, &t.modulus) as u16)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fe(i: u16) -> FieldElement {
        FieldElement::from_index(i)
    }

    #[test]
    fn gf2_has_characteristic_two() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
    }

    #[test]
    fn gf4_alpha_squared_is_alpha_plus_one() {
        // x^2 + x + 1, alpha = x = index 2, alpha + 1 = index 3.
        let f = Field::with_modulus(2, 2, &[1, 1, 1]).unwrap();
        assert_eq!(f.mul(fe(2), fe(2)), fe(3));
        assert_eq!(f.inv(fe(2)).unwrap(), fe(3));
        // brute-force oracle for the inverse
        let found: Vec<_> = (0..4).filter(|&b| f.mul_schoolbook(fe(2), fe(b)) == fe(1)).collect();
        assert_eq!(found, vec![3]);
    }

    #[test]
    fn gf8_alpha_has_order_seven() {
        let f = Field::new(2, 3).unwrap();
        let alpha = fe(2);
        assert_eq!(f.pow(alpha, 7), FieldElement::ONE);
        assert!((1..7).all(|e| f.pow(alpha, e) != FieldElement::ONE));
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
    }

    #[test]
    fn inverse_of_zero_and_foreign_elements_are_rejected() {
        let f = Field::new(2, 3).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(FieldError::ZeroInverse));
        assert_eq!(f.inv(FieldElement::ONE), Ok(FieldElement::ONE));
        assert!(matches!(f.checked_mul(fe(9), fe(1)), Err(FieldError::NotAnElement { .. })));
        assert!(matches!(f.element(8), Err(FieldError::NotAnElement { .. })));
    }

    #[test]
    fn unsupported_parameters() {
        assert!(Field::new(4, 2).is_err());
        assert!(Field::new(2, 17).is_err());
        assert!(Field::new(2, 0).is_err());
        assert!(Field::new(257, 2).is_err());
        assert_eq!(Field::with_modulus(2, 2, &[1, 0, 1]).unwrap_err(), FieldError::Reducible);
    }

    #[test]
    fn default_binary_moduli_are_irreducible() {
        for m in 1..=16 {
            let modulus = default_modulus(2, m).unwrap();
            assert!(is_irreducible(&modulus, 2), "m = {m}");
        }
    }

    fn check_axioms_exhaustive(f: &Field) {
        let els: Vec<_> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            assert_eq!(f.sub(a, a), FieldElement::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b), "{f:?}: {a:?}*{b:?}");
            }
        }
    }

    fn check_axioms_sampled(f: &Field, triples: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = f.size();
        for _ in 0..triples {
            let a = fe(rng.random_range(0..q) as u16);
            let b = fe(rng.random_range(0..q) as u16);
            let c = fe(rng.random_range(0..q) as u16);
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms_exhaustively() {
        let mut fields = Vec::new();
        for m in 1..=8 {
            fields.push(Field::binary(m).unwrap());
        }
        for (p, m) in [(3, 1), (5, 1), (7, 1), (3, 2), (3, 3), (5, 2), (3, 4), (13, 2), (251, 1)] {
            fields.push(Field::new(p, m).unwrap());
        }
        for f in &fields {
            check_axioms_exhaustive(f);
            check_axioms_sampled(f, 2_000, 1);
        }
    }

    #[test]
    fn large_fields_satisfy_axioms_on_sampled_triples() {
        for (p, m) in [(2, 9), (2, 10), (2, 12), (2, 16), (3, 10), (257, 1), (65521, 1)] {
            let f = Field::new(p, m).unwrap();
            check_axioms_sampled(&f, 100_000, 7);
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..2_000 {
                let a = fe(rng.random_range(0..f.size()) as u16);
                let b = fe(rng.random_range(0..f.size()) as u16);
                assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
            }
        }
    }

    #[test]
    fn exp_and_log_are_inverse() {
        for (p, m) in [(2, 6), (3, 3), (2, 10)] {
            let f = Field::new(p, m).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.exp(f.log(a).unwrap() as u64), a);
            }
            assert_eq!(f.log(FieldElement::ZERO), None);
        }
    }
}
