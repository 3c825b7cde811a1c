//! Exact arithmetic in `F_p` and `F_{p^m}`.
//!
//! A [`Field`] fixes a monic irreducible modulus and a canonical
//! multiplicative generator. Fields up to [`TABLE_MAX_ORDER`] precompute
//! log/exp tables; larger ones multiply polynomials directly. Elements are stored as
//! their integer index `sum d_i p^i`, where `d_i` are the base-`p` digits of the
//! canonical representative (lowest degree first). The raw `u32` API on
//! [`Field`] is what the enumeration oracles use; [`FieldElement`] is the
//! checked, owner-carrying wrapper.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

/// Default ceiling on field order; bigger fields are rejected, not degraded.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 30;

/// Fields at or below this order get log/exp tables.
pub const TABLE_MAX_ORDER: u32 = 1 << 20;

/// Fields at or below this order get a full addition table.
const ADD_TABLE_MAX_ORDER: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the configured limit {limit}")]
    OrderTooLarge { p: u64, m: u32, limit: u64 },
    #[error("modulus must be monic of degree {0}")]
    BadModulus(u32),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {value} is not an element of a field of order {order}")]
    OutOfRange { value: u64, order: u32 },
    #[error("no primitive {n}-th root of unity in a field of order {order}")]
    NoPrimitiveRoot { n: u64, order: u32 },
    #[error("F_{base} is not a subfield of F_{order}")]
    NotASubfield { base: u64, order: u32 },
    #[error("element is not fixed by the q-Frobenius, so it does not lie in F_{0}")]
    NotInSubfield(u64),
    #[error("gcd(n, q) = {gcd} for n = {n}, q = {q}: no primitive n-th root exists")]
    NotCoprime { n: u64, q: u64, gcd: u64 },
    #[error("no discrete log table for a field of order {0}")]
    NoLogTable(u32),
}

/// Serializable identity of a field: characteristic, degree and modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    /// Monic modulus digits, constant term first; `None` for prime fields.
    pub modulus: Option<Vec<u32>>,
}

/// JSON encoding of an element: a bare residue for prime fields, a base-`p`
/// digit array (lowest degree first) otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Residue(u32),
    Digits(Vec<u32>),
}

struct LogTables {
    /// `g^i` for `i` in `0 .. 2(Q-1)`, so sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub struct Field {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: u32,
    tables: Option<LogTables>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.p == other.p && self.modulus == other.modulus && self.m == other.m)
    }
}

impl Eq for Field {}

/// Builds `F_{p^m}` with the canonical modulus under the default order limit.
pub fn make_field(p: u64, m: u32) -> Result<Arc<Field>, FieldError> {
    Field::new(p, m, DEFAULT_MAX_ORDER)
}

impl Field {
    /// `F_{p^m}` with the lexicographically smallest monic irreducible modulus
    /// (coefficients compared from the constant term upward).
    pub fn new(p: u64, m: u32, max_order: u64) -> Result<Arc<Field>, FieldError> {
        let (p, order) = check_params(p, m, max_order)?;
        let modulus = if m == 1 { vec![0, 1] } else { canonical_modulus(p, m) };
        Ok(Arc::new(Self::build(p, m, order, modulus)))
    }

    /// Rebuilds a field from a descriptor, validating the stored modulus.
    pub fn from_descriptor(desc: &FieldDescriptor, max_order: u64) -> Result<Arc<Field>, FieldError> {
        let (p, order) = check_params(desc.p as u64, desc.m, max_order)?;
        let modulus = match (&desc.modulus, desc.m) {
            (None, 1) => vec![0, 1],
            (Some(md), m) if m > 1 => {
                if md.len() != m as usize + 1 || md[m as usize] != 1 || md.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus(m));
                }
                if !is_irreducible(md, p) {
                    return Err(FieldError::ReducibleModulus(p));
                }
                md.clone()
            }
            (_, m) => return Err(FieldError::BadModulus(m)),
        };
        Ok(Arc::new(Self::build(p, desc.m, order, modulus)))
    }

    fn build(p: u32, m: u32, order: u32, modulus: Vec<u32>) -> Field {
        let mut field = Field {
            p,
            m,
            order,
            modulus,
            generator: 0,
            tables: None,
            add_table: None,
        };
        let group = (order - 1) as u64;
        let factors = arith::prime_factors(group);
        let generator = (1..order)
            .find(|&v| {
                factors
                    .iter()
                    .all(|&l| field.slow_pow(v, group / l) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        field.generator = generator;
        if order <= TABLE_MAX_ORDER {
            let mut exp = Vec::with_capacity(2 * group as usize);
            let mut log = vec![0u32; order as usize];
            let mut acc = 1u32;
            for i in 0..group as u32 {
                exp.push(acc);
                log[acc as usize] = i;
                acc = field.slow_mul(acc, generator);
            }
            exp.extend_from_within(..);
            field.tables = Some(LogTables { exp, log });
        }
        if m > 1 && order <= ADD_TABLE_MAX_ORDER {
            let mut table = Vec::with_capacity((order * order) as usize);
            for a in 0..order {
                for b in 0..order {
                    table.push(field.digit_add(a, b));
                }
            }
            field.add_table = Some(table);
        }
        field
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    /// Modulus digits, constant term first (`[0, 1]` stands in for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus: (self.m > 1).then(|| self.modulus.clone()),
        }
    }

    /// Canonical multiplicative generator: the smallest index of order `Q - 1`.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<u32, FieldError> {
        if digits.len() > self.m as usize || digits.iter().any(|&d| d >= self.p) {
            return Err(FieldError::OutOfRange {
                value: digits.iter().rev().fold(0u64, |acc, &d| acc * self.p as u64 + d as u64),
                order: self.order,
            });
        }
        Ok(digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d))
    }

    pub fn encode(&self, v: u32) -> ElementRepr {
        if self.m == 1 {
            ElementRepr::Residue(v)
        } else {
            ElementRepr::Digits(self.digits(v))
        }
    }

    pub fn decode(&self, repr: &ElementRepr) -> Result<u32, FieldError> {
        match repr {
            ElementRepr::Residue(v) if self.m == 1 => self.check(*v as u64),
            ElementRepr::Residue(v) => Err(FieldError::OutOfRange {
                value: *v as u64,
                order: self.order,
            }),
            ElementRepr::Digits(d) if d.len() == self.m as usize => self.from_digits(d),
            ElementRepr::Digits(d) => Err(FieldError::OutOfRange {
                value: d.len() as u64,
                order: self.order,
            }),
        }
    }

    pub fn check(&self, v: u64) -> Result<u32, FieldError> {
        if v < self.order as u64 {
            Ok(v as u32)
        } else {
            Err(FieldError::OutOfRange {
                value: v,
                order: self.order,
            })
        }
    }

    /// The integer `k` reduced into the prime subfield.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }

    // Raw arithmetic on element indices.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.order + b) as usize]
        } else if self.p == 2 {
            a ^ b
        } else {
            self.digit_add(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let mut out = 0;
            let mut place = 1;
            let mut rest = a;
            for _ in 0..self.m {
                let d = rest % self.p;
                rest /= self.p;
                out += ((self.p - d) % self.p) * place;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else if let Some(t) = &self.tables {
            t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
        } else {
            self.slow_mul(a, b)
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let group = self.order - 1;
        Ok(match &self.tables {
            Some(t) => t.exp[((group - t.log[a as usize]) % group) as usize],
            None => self.slow_pow(a, group as u64 - 1),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents need `a != 0`, and `0^0 = 1`.
    pub fn pow(&self, a: u32, e: i64) -> Result<u32, FieldError> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(FieldError::DivisionByZero),
            };
        }
        let group = (self.order - 1) as i64;
        let e = e.rem_euclid(group);
        Ok(match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] as i64 * e).rem_euclid(group) as usize],
            None => self.slow_pow(a, e as u64),
        })
    }

    /// Discrete log base the canonical generator (`a != 0`); table fields only.
    pub fn log(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        match &self.tables {
            Some(t) => Ok(t.log[a as usize]),
            None => Err(FieldError::NoLogTable(self.order)),
        }
    }

    /// `g^k` for the canonical generator `g`.
    pub fn exp(&self, k: u64) -> u32 {
        let k = k % (self.order as u64 - 1);
        match &self.tables {
            Some(t) => t.exp[k as usize],
            None => self.slow_pow(self.generator, k),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let group = self.order as u64 - 1;
        if let Some(t) = &self.tables {
            return Ok(group / arith::gcd(t.log[a as usize] as u64, group));
        }
        let mut ord = group;
        for l in arith::prime_factors(group) {
            while ord % l == 0 && self.slow_pow(a, ord / l) == 1 {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// `beta = g^{(Q-1)/n}`: the canonical primitive `n`-th root of unity.
    pub fn primitive_nth_root(&self, n: u64) -> Result<u32, FieldError> {
        let group = self.order as u64 - 1;
        if n == 0 || group % n != 0 {
            return Err(FieldError::NoPrimitiveRoot { n, order: self.order });
        }
        Ok(self.exp(group / n))
    }

    pub fn element(self: &Arc<Self>, v: u32) -> Result<FieldElement, FieldError> {
        let value = self.check(v as u64)?;
        Ok(FieldElement {
            field: Arc::clone(self),
            value,
        })
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            field: Arc::clone(self),
            value: 0,
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            field: Arc::clone(self),
            value: 1,
        }
    }

    /// All elements in ascending index order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |value| FieldElement {
            field: Arc::clone(self),
            value,
        })
    }

    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    /// Schoolbook product reduced by the modulus.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let prod = fp_poly::mul(&da, &db, self.p);
        let r = fp_poly::rem(&prod, &self.modulus, self.p);
        r.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn check_params(p: u64, m: u32, max_order: u64) -> Result<(u32, u32), FieldError> {
    if !arith::is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if m < 1 {
        return Err(FieldError::ZeroDegree);
    }
    let limit = max_order.min(u32::MAX as u64);
    match arith::checked_pow(p, m) {
        Some(order) if order <= limit => Ok((p as u32, order as u32)),
        _ => Err(FieldError::OrderTooLarge { p, m, limit }),
    }
}

fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    // Index with c_0 as the most significant digit gives the lexicographic order
    // over (c_0, c_1, ..., c_{m-1}).
    for idx in 0..count {
        let mut coeffs = vec![0u32; m as usize + 1];
        let mut rest = idx;
        for i in (0..m as usize).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[m as usize] = 1;
        if coeffs[0] != 0 && is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Irreducibility of a monic polynomial over `F_p`: root test up to degree 3,
/// otherwise `gcd(f, x^{p^i} - x) = 1` for every `i <= deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    if f[0] == 0 {
        return false;
    }
    if deg <= 3 {
        return (0..p).all(|x| fp_poly::eval(f, x, p) != 0);
    }
    let x = vec![0, 1];
    let mut frob = x.clone();
    for _ in 0..deg / 2 {
        frob = fp_poly::pow_mod(&frob, p as u64, f, p);
        let diff = fp_poly::sub(&frob, &x, p);
        let g = fp_poly::gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Dense polynomials over a prime field, used only for modulus selection and
/// table construction.
mod fp_poly {
    pub fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn inv(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = a as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn eval(f: &[u32], x: u32, p: u32) -> u32 {
        f.iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let lead_inv = inv(*b.last().expect("nonzero divisor"), p) as u64;
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let factor = *r.last().unwrap() as u64 * lead_inv % p as u64;
            for (i, &c) in b.iter().enumerate() {
                let sub = factor * c as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn pow_mod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, modulus, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), modulus, p);
            }
            b = rem(&mul(&b, &b, p), modulus, p);
            e >>= 1;
        }
        acc
    }
}

/// An element together with the field it lives in.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<Field>,
    value: u32,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.m == 1 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{:?}@F{}", self.field.digits(self.value), self.field.order)
        }
    }
}

/// Prints the element index, which for prime fields is the residue itself.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn digits(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn same(&self, other: &Self) -> Result<(), FieldError> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn with(&self, value: u32) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        Ok(self.with(self.field.pow(self.value, e)?))
    }
}

/// Least `m` with `q^m = 1 (mod n)`: the degree of the smallest extension of
/// `F_q` holding a primitive `n`-th root of unity.
pub fn splitting_degree(q: u64, n: u64) -> Result<u32, FieldError> {
    let g = arith::gcd(n, q);
    if n == 0 || g != 1 {
        return Err(FieldError::NotCoprime { n, q, gcd: g });
    }
    Ok(arith::multiplicative_order(q, n))
}

/// Frobenius test `a^q = a`; the owner must have order a power of `q`.
pub fn in_base_subfield(a: &FieldElement, q: u64) -> Result<bool, FieldError> {
    let order = a.field.order as u64;
    if !is_power_of(order, q) {
        return Err(FieldError::NotASubfield {
            base: q,
            order: a.field.order,
        });
    }
    Ok(a.field.pow(a.value, q as i64)? == a.value)
}

fn is_power_of(order: u64, q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut acc = q;
    while acc < order {
        acc *= q;
    }
    acc == order
}

/// A fixed embedding of `F_q` (canonical representation) into `F_{q^t}`.
///
/// The image of the base field's polynomial generator `y` is the smallest
/// root (by index) of the base modulus in the extension; for prime base fields
/// this is the identity on residues.
#[derive(Debug, Clone)]
pub struct Embedding {
    base: Arc<Field>,
    ext: Arc<Field>,
    lift: Vec<u32>,
    project: std::collections::HashMap<u32, u32>,
}

impl Embedding {
    pub fn new(base: &Arc<Field>, ext: &Arc<Field>) -> Result<Embedding, FieldError> {
        let not_sub = || FieldError::NotASubfield {
            base: base.order as u64,
            order: ext.order,
        };
        if base.p != ext.p || ext.m % base.m != 0 {
            return Err(not_sub());
        }
        let lift: Vec<u32> = if base.m == 1 {
            (0..base.order).collect()
        } else {
            let root_of_modulus = |theta: u32| {
                let value = base
                    .modulus
                    .iter()
                    .rev()
                    .fold(0u32, |acc, &c| ext.add(ext.mul(acc, theta), c));
                value == 0
            };
            // the roots lie in the copy of F_q: zero and the powers of
            // g^{(Q-1)/(q-1)}
            let omega = ext.exp((ext.order as u64 - 1) / (base.order as u64 - 1));
            let mut acc = 1u32;
            let mut theta: Option<u32> = None;
            for _ in 1..base.order {
                if root_of_modulus(acc) && theta.is_none_or(|t| acc < t) {
                    theta = Some(acc);
                }
                acc = ext.mul(acc, omega);
            }
            let theta = theta.ok_or_else(not_sub)?;
            (0..base.order)
                .map(|v| {
                    base.digits(v)
                        .iter()
                        .rev()
                        .fold(0u32, |acc, &d| ext.add(ext.mul(acc, theta), d))
                })
                .collect()
        };
        let project = lift.iter().enumerate().map(|(b, &e)| (e, b as u32)).collect();
        Ok(Embedding {
            base: Arc::clone(base),
            ext: Arc::clone(ext),
            lift,
            project,
        })
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<Field> {
        &self.ext
    }

    pub fn lift_raw(&self, v: u32) -> u32 {
        self.lift[v as usize]
    }

    pub fn project_raw(&self, v: u32) -> Option<u32> {
        self.project.get(&v).copied()
    }

    pub fn lift(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if *a.field != *self.base {
            return Err(FieldError::FieldMismatch);
        }
        self.ext.element(self.lift_raw(a.value))
    }

    /// Inverse of the embedding; fails for elements outside the subfield.
    pub fn project(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if *a.field != *self.ext {
            return Err(FieldError::FieldMismatch);
        }
        let v = self
            .project_raw(a.value)
            .ok_or(FieldError::NotInSubfield(self.base.order as u64))?;
        self.base.element(v)
    }
}

/// The smallest extension `F_{q^m}` of a base field holding a primitive
/// `n`-th root of unity, with the canonical root `beta` and the embedding of
/// the base field.
#[derive(Debug, Clone)]
pub struct SplittingField {
    embedding: Embedding,
    n: usize,
    beta: u32,
}

impl SplittingField {
    pub fn new(base: &Arc<Field>, n: usize, max_order: u64) -> Result<SplittingField, FieldError> {
        let q = base.order as u64;
        let m = splitting_degree(q, n as u64)?;
        let ext = if m == 1 {
            Arc::clone(base)
        } else {
            Field::new(base.p as u64, base.m * m, max_order)?
        };
        let beta = ext.primitive_nth_root(n as u64)?;
        let embedding = Embedding::new(base, &ext)?;
        Ok(SplittingField { embedding, n, beta })
    }

    pub fn base(&self) -> &Arc<Field> {
        self.embedding.base()
    }

    pub fn ext(&self) -> &Arc<Field> {
        self.embedding.ext()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    /// `beta^e` for any integer exponent.
    pub fn beta_pow(&self, e: i64) -> u32 {
        self.ext()
            .pow(self.beta, e.rem_euclid(self.n as i64))
            .expect("beta is nonzero")
    }

    pub fn beta_element(&self) -> FieldElement {
        self.ext().element(self.beta).expect("beta lies in the extension")
    }
}
