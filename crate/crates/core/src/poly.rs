//! Dense univariate polynomials over a [`Field`], lowest degree first.
//!
//! Coefficient `i` is the coefficient of `x^i`, so a codeword's coordinate `i`
//! is exactly coefficient `i` of its polynomial.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{ElementRepr, Embedding, Field, FieldElement, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("root set is empty")]
    EmptyRoots,
    #[error("root {0} appears more than once")]
    DuplicateRoot(String),
    #[error("coefficient {index} does not lie in the base field")]
    NotInBaseField { index: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Arc<Field>,
    coeffs: Vec<u32>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl Polynomial {
    /// Builds from raw element indices, dropping trailing zeros.
    pub fn new(field: &Arc<Field>, coeffs: Vec<u32>) -> Result<Self, PolyError> {
        for &c in &coeffs {
            field.check(c as u64)?;
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub(crate) fn from_raw(field: &Arc<Field>, coeffs: Vec<u32>) -> Self {
        Polynomial {
            field: Arc::clone(field),
            coeffs: trim(coeffs),
        }
    }

    pub fn from_elements(field: &Arc<Field>, coeffs: &[FieldElement]) -> Result<Self, PolyError> {
        let raw = coeffs
            .iter()
            .map(|c| {
                if **c.field() == **field {
                    Ok(c.value())
                } else {
                    Err(FieldError::FieldMismatch)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_raw(field, raw))
    }

    pub fn zero(field: &Arc<Field>) -> Self {
        Self::from_raw(field, Vec::new())
    }

    pub fn one(field: &Arc<Field>) -> Self {
        Self::from_raw(field, vec![1])
    }

    /// `c * x^deg`.
    pub fn monomial(field: &Arc<Field>, c: u32, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::from_raw(field, coeffs)
    }

    /// `x^n - 1`.
    pub fn cycle(field: &Arc<Field>, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = field.neg(1);
        coeffs[n] = 1;
        Self::from_raw(field, coeffs)
    }

    /// `x^s - c`.
    pub fn binomial(field: &Arc<Field>, s: usize, c: u32) -> Self {
        let mut coeffs = vec![0; s + 1];
        coeffs[0] = field.neg(c);
        coeffs[s] = 1;
        Self::from_raw(field, coeffs)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    /// Coefficients padded with zeros to `len`.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), 0);
        v
    }

    pub fn to_repr(&self) -> Vec<ElementRepr> {
        self.coeffs.iter().map(|&c| self.field.encode(c)).collect()
    }

    pub fn from_repr(field: &Arc<Field>, repr: &[ElementRepr]) -> Result<Self, PolyError> {
        let raw = repr
            .iter()
            .map(|r| field.decode(r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_raw(field, raw))
    }

    fn same(&self, other: &Self) -> Result<(), PolyError> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch.into())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let f = &self.field;
        let v = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_raw(f, v))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let f = &self.field;
        let v = (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_raw(f, v))
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Self::from_raw(f, out))
    }

    /// Euclidean division: `self = quotient * divisor + remainder`,
    /// `deg remainder < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.same(divisor)?;
        let f = &self.field;
        let dlen = divisor.coeffs.len();
        let lead = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = f.inv(lead)?;
        let mut rem = self.coeffs.clone();
        if rem.len() < dlen {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let top = rem[shift + dlen - 1];
            if top == 0 {
                continue;
            }
            let factor = f.mul(top, lead_inv);
            quot[shift] = factor;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(factor, c));
            }
        }
        rem.truncate(dlen - 1);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Scales to leading coefficient 1.
    pub fn monic(&self) -> Result<Self, PolyError> {
        let lead = self.leading().ok_or(PolyError::ZeroPolynomial)?;
        Ok(self.scale(self.field.inv(lead)?))
    }

    /// Horner evaluation at a raw element of the same field.
    pub fn eval_raw(&self, a: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn eval(&self, a: &FieldElement) -> Result<FieldElement, PolyError> {
        if **a.field() != *self.field {
            return Err(FieldError::FieldMismatch.into());
        }
        Ok(self.field.element(self.eval_raw(a.value()))?)
    }

    /// `x^{deg f} f(1/x)`: the coefficient sequence reversed, not normalized.
    pub fn reciprocal(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut v = self.coeffs.clone();
        v.reverse();
        Ok(Self::from_raw(&self.field, v))
    }

    /// True iff `self` divides `x^n - 1`.
    pub fn divides_cycle(&self, n: usize) -> Result<bool, PolyError> {
        Ok(Polynomial::cycle(&self.field, n).rem(self)?.is_zero())
    }

    /// `prod (x - root)` over pairwise distinct roots.
    pub fn from_roots(roots: &[FieldElement]) -> Result<Self, PolyError> {
        let first = roots.first().ok_or(PolyError::EmptyRoots)?;
        let field = Arc::clone(first.field());
        let mut raw = Vec::with_capacity(roots.len());
        for r in roots {
            if **r.field() != *field {
                return Err(FieldError::FieldMismatch.into());
            }
            raw.push(r.value());
        }
        Self::from_root_values(&field, &raw)
    }

    pub(crate) fn from_root_values(field: &Arc<Field>, roots: &[u32]) -> Result<Self, PolyError> {
        if roots.is_empty() {
            return Err(PolyError::EmptyRoots);
        }
        let mut seen = std::collections::HashSet::new();
        for &r in roots {
            if !seen.insert(r) {
                return Err(PolyError::DuplicateRoot(field.element(r)?.to_string()));
            }
        }
        // Multiply by (x - r) in place.
        let mut acc = vec![1u32];
        for &r in roots {
            let neg_r = field.neg(r);
            let mut next = vec![0u32; acc.len() + 1];
            for (i, &c) in acc.iter().enumerate() {
                next[i + 1] = field.add(next[i + 1], c);
                next[i] = field.add(next[i], field.mul(c, neg_r));
            }
            acc = next;
        }
        Ok(Self::from_raw(field, acc))
    }

    /// Moves every coefficient into the base field of `emb`.
    pub fn project(&self, emb: &Embedding) -> Result<Self, PolyError> {
        if *self.field != **emb.ext() {
            return Err(FieldError::FieldMismatch.into());
        }
        let raw = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(index, &c)| emb.project_raw(c).ok_or(PolyError::NotInBaseField { index }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_raw(emb.base(), raw))
    }

    pub fn lift(&self, emb: &Embedding) -> Result<Self, PolyError> {
        if *self.field != **emb.base() {
            return Err(FieldError::FieldMismatch.into());
        }
        let raw = self.coeffs.iter().map(|&c| emb.lift_raw(c)).collect();
        Ok(Self::from_raw(emb.ext(), raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{in_base_subfield, make_field};

    fn poly(f: &Arc<Field>, c: &[u32]) -> Polynomial {
        Polynomial::new(f, c.to_vec()).unwrap()
    }

    #[test]
    fn long_division_over_f5() {
        let f5 = make_field(5, 1).unwrap();
        let (q, r) = Polynomial::cycle(&f5, 8).divmod(&poly(&f5, &[3, 0, 1])).unwrap();
        // x^6 + 2x^4 + 4x^2 + 3
        assert_eq!(q.coeffs(), &[3, 0, 4, 0, 2, 0, 1]);
        assert!(r.is_zero());
    }

    #[test]
    fn self_division() {
        let f = make_field(7, 1).unwrap();
        let a = poly(&f, &[3, 1, 4, 1, 5]);
        let (q, r) = a.divmod(&a).unwrap();
        assert_eq!(q, Polynomial::one(&f));
        assert!(r.is_zero());
        assert_eq!(a.divmod(&Polynomial::zero(&f)).unwrap_err(), PolyError::DivisionByZero);
    }

    #[test]
    fn product_over_f13() {
        let f = make_field(13, 1).unwrap();
        let p = poly(&f, &[12, 1]).mul(&poly(&f, &[11, 1])).unwrap();
        assert_eq!(p.coeffs(), &[2, 10, 1]);
    }

    #[test]
    fn roots_of_the_q5_distance_four_generator() {
        // roots 1, 2 and the two square roots of 2 live in F_25
        let f25 = make_field(5, 2).unwrap();
        let two = 2u32;
        let sqrt2: Vec<u32> = (0..25).filter(|&v| f25.mul(v, v) == two).collect();
        assert_eq!(sqrt2.len(), 2);
        let g = Polynomial::from_root_values(&f25, &[1, 2, sqrt2[0], sqrt2[1]]).unwrap();
        let f5 = make_field(5, 1).unwrap();
        let emb = Embedding::new(&f5, &f25).unwrap();
        let g5 = g.project(&emb).unwrap();
        assert_eq!(g5.coeffs(), &[1, 1, 0, 2, 1]);
        assert_eq!(g5.to_string(), "x^4 + 2x^3 + x + 1");
        assert_eq!(g5.eval_raw(1), 0);
        assert!(g5.divides_cycle(8).unwrap());
    }

    #[test]
    fn conjugate_closed_roots_over_f121() {
        let f121 = make_field(11, 2).unwrap();
        let beta = f121.primitive_nth_root(12).unwrap();
        let roots: Vec<u32> = (-4i64..=4).map(|i| f121.pow(beta, i).unwrap()).collect();
        let g = Polynomial::from_root_values(&f121, &roots).unwrap();
        assert_eq!(g.degree(), Some(9));
        assert!(g.is_monic());
        for &c in g.coeffs() {
            assert!(in_base_subfield(&f121.element(c).unwrap(), 11).unwrap());
        }
    }

    #[test]
    fn simple_roots() {
        let f5 = make_field(5, 1).unwrap();
        let g = Polynomial::from_roots(&[f5.one()]).unwrap();
        assert_eq!(g.coeffs(), &[4, 1]);
        assert!(matches!(
            Polynomial::from_roots(&[f5.one(), f5.one()]),
            Err(PolyError::DuplicateRoot(_))
        ));
        assert_eq!(Polynomial::from_roots(&[]).unwrap_err(), PolyError::EmptyRoots);
    }

    #[test]
    fn reciprocals() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(poly(&f5, &[4, 1]).reciprocal().unwrap().coeffs(), &[1, 4]);
        let w = poly(&f5, &[3, 0, 4, 0, 2, 0, 1]);
        assert_eq!(w.reciprocal().unwrap().coeffs(), &[1, 0, 2, 0, 4, 0, 3]);
        assert_eq!(Polynomial::one(&f5).reciprocal().unwrap(), Polynomial::one(&f5));
        assert_eq!(Polynomial::zero(&f5).reciprocal().unwrap_err(), PolyError::ZeroPolynomial);
    }

    #[test]
    fn cycle_divisors() {
        let f5 = make_field(5, 1).unwrap();
        for n in 1..20 {
            assert!(poly(&f5, &[4, 1]).divides_cycle(n).unwrap());
        }
        let g = poly(&f5, &[1, 1, 0, 2, 1]);
        assert_eq!(g.eval_raw(1), 0);
        assert!(g.divides_cycle(8).unwrap());
        assert!(!g.divides_cycle(7).unwrap());
    }

    #[test]
    fn display() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(Polynomial::zero(&f).to_string(), "0");
        assert_eq!(poly(&f, &[4, 0, 3]).to_string(), "3x^2 + 4");
    }
}
