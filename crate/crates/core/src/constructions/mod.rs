//! Generator-polynomial constructions of optimal cyclic LRCs.
//!
//! Every scheme implements [`Construction`] and is looked up by name in a
//! [`Registry`]. A construction validates its preconditions, builds `g(x)` in
//! the splitting field of `x^n - 1`, asserts that the coefficients descend to
//! `F_q`, and returns an [`LrcCode`] whose claimed distance meets the
//! Singleton-type bound with equality.

mod bounded;
mod double_length;
mod unbounded;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;
use crate::cyclic::{make_cyclic, CodeError, CyclicCode};
use crate::field::{Field, FieldElement, FieldError, SplittingField, DEFAULT_MAX_ORDER};
use crate::poly::{PolyError, Polynomial};
use crate::verify::singleton_bound;

pub use bounded::{ConjugatePairFamily, SubgroupFamily};
pub use double_length::DoubleLength;
pub use unbounded::{DistanceFour, DistanceThree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),
    #[error("scheme {scheme} needs --{param}")]
    MissingParameter { scheme: &'static str, param: &'static str },
    #[error("{0}")]
    Precondition(String),
    #[error("construction assertion failed: {0}")]
    Assertion(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn precondition(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Precondition(msg.into())
}

fn assertion(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Assertion(msg.into())
}

/// Parameters handed to a construction. `n` is derived by schemes that fix it
/// (length `2(q-1)`), `d` is only read by the bounded-length families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeParams {
    pub q: u64,
    pub n: Option<usize>,
    pub r: usize,
    pub d: Option<usize>,
}

impl SchemeParams {
    pub fn new(q: u64, n: usize, r: usize) -> Self {
        SchemeParams { q, n: Some(n), r, d: None }
    }

    pub fn with_distance(q: u64, n: usize, r: usize, d: usize) -> Self {
        SchemeParams { q, n: Some(n), r, d: Some(d) }
    }
}

/// `[n, k, d]` with locality `r`, as claimed by a scheme before construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Claim {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub d: usize,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]_{} locality {}", self.n, self.k, self.d, self.q, self.r)
    }
}

/// One admissible parameter set of a scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamRecord {
    pub scheme: &'static str,
    pub params: SchemeParams,
    pub claim: Claim,
}

pub trait Construction: Send + Sync {
    /// Kebab-case identifier used on the command line and in code files.
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Whether the scheme takes a target distance.
    fn takes_distance(&self) -> bool {
        false
    }

    /// Checks the stated hypotheses and returns the claimed parameters.
    fn check(&self, params: &SchemeParams) -> Result<Claim, ConstructionError>;

    fn construct(&self, params: &SchemeParams) -> Result<LrcCode, ConstructionError>;

    /// Candidate grid scanned by [`enumerate_valid_params`]: every `(q, n, r[, d])`
    /// with `q <= q_max` a prime power and `n <= n_max`, ascending.
    fn candidates(&self, q_max: u64, n_max: usize) -> Vec<SchemeParams> {
        let mut out = Vec::new();
        for q in prime_powers(q_max) {
            for n in 2..=n_max {
                for r in 1..n {
                    if self.takes_distance() {
                        out.extend((1..=n).map(|d| SchemeParams::with_distance(q, n, r, d)));
                    } else {
                        out.push(SchemeParams::new(q, n, r));
                    }
                }
            }
        }
        out
    }
}

pub fn prime_powers(q_max: u64) -> impl Iterator<Item = u64> {
    (2..=q_max).filter(|&q| arith::prime_power(q).is_some())
}

/// Every parameter set passing the scheme's hypotheses within the bounds.
pub fn enumerate_valid_params(scheme: &dyn Construction, q_max: u64, n_max: usize) -> Vec<ParamRecord> {
    scheme
        .candidates(q_max, n_max)
        .into_iter()
        .filter_map(|params| {
            scheme.check(&params).ok().map(|claim| ParamRecord {
                scheme: scheme.name(),
                params,
                claim,
            })
        })
        .collect()
}

/// Name-keyed set of constructions, in registration order.
#[derive(Default)]
pub struct Registry {
    entries: Vec<Box<dyn Construction>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// All five schemes.
    pub fn with_defaults() -> Self {
        let mut reg = Self::new();
        reg.register(Box::new(DistanceThree));
        reg.register(Box::new(DistanceFour));
        reg.register(Box::new(SubgroupFamily));
        reg.register(Box::new(ConjugatePairFamily));
        reg.register(Box::new(DoubleLength));
        reg
    }

    /// Adds a construction, replacing any previous one of the same name.
    pub fn register(&mut self, c: Box<dyn Construction>) {
        self.entries.retain(|e| e.name() != c.name());
        self.entries.push(c);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Construction, ConstructionError> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|b| b.as_ref())
            .ok_or_else(|| ConstructionError::UnknownScheme(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Construction> {
        self.entries.iter().map(|b| b.as_ref())
    }

    pub fn construct(&self, name: &str, params: &SchemeParams) -> Result<LrcCode, ConstructionError> {
        self.get(name)?.construct(params)
    }
}

/// A cyclic code with its locality, claimed distance and construction record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrcCode {
    base: CyclicCode,
    r: usize,
    d_claimed: usize,
    scheme: String,
    beta: FieldElement,
    alpha: Option<FieldElement>,
    gamma: Option<FieldElement>,
}

impl LrcCode {
    /// Assembles a code, checking `(r+1) | n` and that `d_claimed` equals the
    /// Singleton-type bound.
    pub fn from_parts(
        base: CyclicCode,
        r: usize,
        d_claimed: usize,
        scheme: impl Into<String>,
        beta: FieldElement,
        alpha: Option<FieldElement>,
        gamma: Option<FieldElement>,
    ) -> Result<LrcCode, ConstructionError> {
        let n = base.n();
        if r == 0 || n % (r + 1) != 0 {
            return Err(assertion(format!("r + 1 = {} does not divide n = {n}", r + 1)));
        }
        let bound = singleton_bound(n, base.k(), r).map_err(|e| assertion(e.to_string()))?;
        if bound.value != d_claimed as i64 {
            return Err(assertion(format!(
                "claimed distance {d_claimed} differs from the Singleton-type bound {} for [{n}, {}] with r = {r}",
                bound.value,
                base.k()
            )));
        }
        for el in alpha.iter().chain(gamma.iter()) {
            if **el.field() != **base.field() {
                return Err(FieldError::FieldMismatch.into());
            }
        }
        Ok(LrcCode {
            base,
            r,
            d_claimed,
            scheme: scheme.into(),
            beta,
            alpha,
            gamma,
        })
    }

    /// Builds an instance without the optimality check, for negative controls.
    pub fn unchecked(base: CyclicCode, r: usize, d_claimed: usize, scheme: impl Into<String>, beta: FieldElement) -> LrcCode {
        LrcCode {
            base,
            r,
            d_claimed,
            scheme: scheme.into(),
            beta,
            alpha: None,
            gamma: None,
        }
    }

    pub fn code(&self) -> &CyclicCode {
        &self.base
    }

    pub fn field(&self) -> &Arc<Field> {
        self.base.field()
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn k(&self) -> usize {
        self.base.k()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d_claimed(&self) -> usize {
        self.d_claimed
    }

    pub fn scheme(&self) -> &str {
        &self.scheme
    }

    /// Distance between consecutive members of a repair group, `n / (r+1)`.
    pub fn stride(&self) -> usize {
        self.n() / (self.r + 1)
    }

    /// The primitive `n`-th root of unity used, as an element of the splitting field.
    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn alpha(&self) -> Option<&FieldElement> {
        self.alpha.as_ref()
    }

    pub fn gamma(&self) -> Option<&FieldElement> {
        self.gamma.as_ref()
    }
}

impl fmt::Display for LrcCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: [{}, {}, {}]_{} locality {}",
            self.scheme,
            self.n(),
            self.k(),
            self.d_claimed,
            self.base.q(),
            self.r
        )
    }
}

/// Shared front half of every construction: the base field and the splitting
/// field of `x^n - 1` over it.
pub(crate) struct Setting {
    pub base: Arc<Field>,
    pub split: SplittingField,
}

impl Setting {
    pub fn new(q: u64, n: usize) -> Result<Setting, ConstructionError> {
        let (p, e) = arith::prime_power(q).ok_or_else(|| precondition(format!("q = {q} is not a prime power")))?;
        let g = arith::gcd(n as u64, q);
        if g != 1 {
            return Err(precondition(format!("gcd(n, q) = gcd({n}, {q}) = {g} != 1")));
        }
        let base = Field::new(p, e, DEFAULT_MAX_ORDER)?;
        let split = SplittingField::new(&base, n, DEFAULT_MAX_ORDER)?;
        Ok(Setting { base, split })
    }

    pub fn ext(&self) -> &Arc<Field> {
        self.split.ext()
    }

    /// `beta^e` for each exponent, checked pairwise distinct.
    pub fn roots(&self, exponents: &[i64]) -> Vec<u32> {
        exponents.iter().map(|&e| self.split.beta_pow(e)).collect()
    }

    /// Projects an extension element that must lie in `F_q`.
    pub fn to_base(&self, v: u32, what: &str) -> Result<FieldElement, ConstructionError> {
        let fixed = self.ext().pow(v, self.base.order() as i64)? == v;
        match self.split.embedding().project_raw(v) {
            Some(b) if fixed => Ok(self.base.element(b)?),
            _ => Err(assertion(format!("{what} is not an element of F_{}", self.base.order()))),
        }
    }

    /// Projects `g` to `F_q` (asserting every coefficient is Frobenius-fixed),
    /// builds the cyclic code and checks the scheme's dimension formula.
    pub fn finish(
        &self,
        scheme: &'static str,
        g_ext: &Polynomial,
        r: usize,
        d_claimed: usize,
        k_formula: usize,
        alpha: Option<FieldElement>,
        gamma: Option<FieldElement>,
    ) -> Result<LrcCode, ConstructionError> {
        let q = self.base.order() as i64;
        for (i, &c) in g_ext.coeffs().iter().enumerate() {
            if self.ext().pow(c, q)? != c {
                return Err(assertion(format!(
                    "coefficient {i} of g(x) is not fixed by the Frobenius map"
                )));
            }
        }
        let g = g_ext.project(self.split.embedding())?;
        let n = self.split.n();
        let code = make_cyclic(&self.base, n, g)?;
        if code.k() != k_formula {
            return Err(assertion(format!(
                "n - deg g = {} but the dimension formula gives {k_formula}",
                code.k()
            )));
        }
        LrcCode::from_parts(code, r, d_claimed, scheme, self.split.beta_element(), alpha, gamma)
    }
}

/// `(r+1) | n` and the stride `n / (r+1)`.
pub(crate) fn stride(n: usize, r: usize) -> Result<usize, ConstructionError> {
    if n % (r + 1) != 0 {
        return Err(precondition(format!("r + 1 = {} does not divide n = {n}", r + 1)));
    }
    Ok(n / (r + 1))
}

pub(crate) fn require_n(scheme: &'static str, params: &SchemeParams) -> Result<usize, ConstructionError> {
    match params.n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(precondition("n must be positive")),
        None => Err(ConstructionError::MissingParameter { scheme, param: "n" }),
    }
}

pub(crate) fn require_d(scheme: &'static str, params: &SchemeParams) -> Result<usize, ConstructionError> {
    params
        .d
        .ok_or(ConstructionError::MissingParameter { scheme, param: "d" })
}

pub(crate) fn require_prime_power(q: u64) -> Result<(), ConstructionError> {
    arith::prime_power(q)
        .map(|_| ())
        .ok_or_else(|| precondition(format!("q = {q} is not a prime power")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let reg = Registry::with_defaults();
        assert_eq!(
            reg.names(),
            vec!["thm-1.1-i", "thm-1.1-ii", "ex-3.2", "ex-3.3", "thm-3.4"]
        );
        assert!(reg.get("thm-1.1-ii").is_ok());
        assert_eq!(
            reg.get("rs").err(),
            Some(ConstructionError::UnknownScheme("rs".into()))
        );
    }

    #[test]
    fn register_replaces_by_name() {
        let mut reg = Registry::with_defaults();
        reg.register(Box::new(DistanceThree));
        assert_eq!(reg.names().len(), 5);
        assert_eq!(reg.names().last(), Some(&"thm-1.1-i"));
    }

    #[test]
    fn missing_parameters() {
        let reg = Registry::with_defaults();
        let p = SchemeParams { q: 13, n: Some(12), r: 2, d: None };
        assert_eq!(
            reg.construct("ex-3.2", &p).unwrap_err(),
            ConstructionError::MissingParameter { scheme: "ex-3.2", param: "d" }
        );
        let p = SchemeParams { q: 5, n: None, r: 3, d: None };
        assert!(matches!(
            reg.construct("thm-1.1-ii", &p),
            Err(ConstructionError::MissingParameter { param: "n", .. })
        ));
    }
}
