//! Dense univariate polynomials over a [`Field`], coefficients least significant first.
//!
//! These are free functions over slices so the decoders can keep their own buffers.
//! A polynomial is "trimmed" when it has no trailing zero coefficients; the zero
//! polynomial is the empty vector.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Field, FieldElement};

pub type Poly = Vec<FieldElement>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for zero.
pub fn degree(p: &[FieldElement]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(field: &Field, p: &[FieldElement], x: FieldElement) -> FieldElement {
    p.iter().rev().fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
}

pub fn add(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let mut out = vec![FieldElement::ZERO; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or_default();
        let y = b.get(i).copied().unwrap_or_default();
        *o = field.add(x, y);
    }
    trim(&mut out);
    out
}

pub fn sub(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let mut out = vec![FieldElement::ZERO; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or_default();
        let y = b.get(i).copied().unwrap_or_default();
        *o = field.sub(x, y);
    }
    trim(&mut out);
    out
}

pub fn mul(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElement::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`. Panics if `b` is zero.
pub fn div_rem(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lead_inv = field.inv(b[db]).expect("leading coefficient is nonzero");
    let mut quot = vec![FieldElement::ZERO; rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let factor = field.mul(rem[dr], lead_inv);
        let shift = dr - db;
        quot[shift] = factor;
        for (i, &bc) in b[..=db].iter().enumerate() {
            rem[shift + i] = field.sub(rem[shift + i], field.mul(factor, bc));
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// `prod (x - r)` over the given roots.
pub fn from_roots(field: &Field, roots: &[FieldElement]) -> Poly {
    let mut out = vec![FieldElement::ONE];
    for &r in roots {
        // multiply by (x - r) in place
        out.push(FieldElement::ZERO);
        for i in (0..out.len()).rev() {
            let lower = if i > 0 { out[i - 1] } else { FieldElement::ZERO };
            out[i] = field.sub(lower, field.mul(r, out[i]));
        }
    }
    out
}

/// Synthetic division of `p` by `(x - r)`, assuming `r` is a root.
pub fn deflate(field: &Field, p: &[FieldElement], r: FieldElement) -> Poly {
    let n = p.len();
    if n <= 1 {
        return Vec::new();
    }
    let mut out = vec![FieldElement::ZERO; n - 1];
    let mut carry = FieldElement::ZERO;
    for i in (1..n).rev() {
        carry = field.add(p[i], field.mul(carry, r));
        out[i - 1] = carry;
    }
    out
}

/// Formal derivative.
pub fn derivative(field: &Field, p: &[FieldElement]) -> Poly {
    let mut out: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| {
            // i * c as repeated addition, reduced by the characteristic
            let k = (i as u32) % field.characteristic();
            (0..k).fold(FieldElement::ZERO, |acc, _| field.add(acc, c))
        })
        .collect();
    trim(&mut out);
    out
}

/// Lagrange interpolation through distinct `points` with the given `values`,
/// in O(len^2). The result has degree below `points.len()`.
pub fn interpolate(field: &Field, points: &[FieldElement], values: &[FieldElement]) -> Poly {
    assert_eq!(points.len(), values.len());
    if points.is_empty() {
        return Vec::new();
    }
    let full = from_roots(field, points);
    let dfull = derivative(field, &full);
    let mut out = vec![FieldElement::ZERO; points.len()];
    for (&x, &y) in points.iter().zip(values) {
        if y.is_zero() {
            continue;
        }
        let basis = deflate(field, &full, x);
        let w = field.div(y, eval(field, &dfull, x)).expect("interpolation points are distinct");
        for (o, &b) in out.iter_mut().zip(&basis) {
            *o = field.add(*o, field.mul(w, b));
        }
    }
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(f: &Field, len: usize, rng: &mut impl Rng) -> Poly {
        let mut p: Poly = (0..len).map(|_| FieldElement::from_index(rng.random_range(0..f.size()) as u16)).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn division_identity() {
        for (p, m) in [(2, 4), (3, 2), (7, 1)] {
            let f = Field::new(p, m).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for _ in 0..200 {
                let a = random_poly(&f, 9, &mut rng);
                let mut b = random_poly(&f, 4, &mut rng);
                if b.is_empty() {
                    b.push(FieldElement::ONE);
                }
                let (q, r) = div_rem(&f, &a, &b);
                assert!(degree(&r).is_none_or(|d| d < degree(&b).unwrap()));
                assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
            }
        }
    }

    #[test]
    fn interpolation_reproduces_values() {
        for (p, m) in [(2, 5), (5, 2)] {
            let f = Field::new(p, m).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            let points: Vec<_> = f.elements().take(11).collect();
            for _ in 0..50 {
                let values: Vec<_> =
                    (0..11).map(|_| FieldElement::from_index(rng.random_range(0..f.size()) as u16)).collect();
                let poly = interpolate(&f, &points, &values);
                assert!(poly.len() <= 11);
                for (&x, &y) in points.iter().zip(&values) {
                    assert_eq!(eval(&f, &poly, x), y);
                }
            }
        }
    }

    #[test]
    fn roots_and_deflation() {
        let f = Field::binary(4).unwrap();
        let roots: Vec<_> = [3u16, 7, 11].iter().map(|&i| FieldElement::from_index(i)).collect();
        let p = from_roots(&f, &roots);
        assert_eq!(degree(&p), Some(3));
        for &r in &roots {
            assert!(eval(&f, &p, r).is_zero());
        }
        let d = deflate(&f, &p, roots[0]);
        assert_eq!(mul(&f, &d, &from_roots(&f, &roots[..1])), p);
    }
}
