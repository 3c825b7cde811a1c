//! Repair groups, repair vectors and single-erasure repair.
//!
//! For the constructed codes, coordinate `i` is repaired from the other
//! members of its residue class mod `n/(r+1)`: a dual codeword `a` supported
//! on that class gives `c_i = -a_i^{-1} sum_{j != i} a_j c_j`.

use std::sync::OnceLock;

use thiserror::Error;

use crate::constructions::LrcCode;
use crate::cyclic::{space_size, CyclicCode, Distance, SpanWalker};
use crate::field::{Field, FieldElement, FieldError};
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepairError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("r + 1 = {r1} does not divide n = {n}")]
    NonIntegralStride { n: usize, r1: usize },
    #[error("coordinate {i} out of range for length {n}")]
    OutOfRange { i: usize, n: usize },
    #[error("a repair plan needs k >= 1")]
    ZeroCode,
    #[error("no dual codeword on the coset of coordinate {0} has every coset entry nonzero")]
    NoRepairVector(usize),
    #[error("expected {expected} symbols, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("expected exactly one erasure, found {0}")]
    ErasureCount(usize),
    #[error("cannot parse symbol `{0}`")]
    BadSymbol(String),
    #[error("dual space of size {size} exceeds the budget {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
}

/// A dual codeword restricted to its support, positions ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairVector {
    pub support: Vec<usize>,
    pub coeffs: Vec<u32>,
}

impl RepairVector {
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn coeff_at(&self, i: usize) -> Option<u32> {
        self.support.iter().position(|&j| j == i).map(|t| self.coeffs[t])
    }

    /// The full length-`n` word.
    pub fn to_word(&self, n: usize) -> Vec<u32> {
        let mut w = vec![0u32; n];
        for (&j, &c) in self.support.iter().zip(&self.coeffs) {
            w[j] = c;
        }
        w
    }
}

/// Per-coordinate repair groups, with repair vectors computed on first use.
pub struct RepairPlan<'a> {
    code: &'a LrcCode,
    basis: Vec<Vec<u32>>,
    vectors: Vec<OnceLock<Result<RepairVector, RepairError>>>,
}

/// The repair plan of an LRC; groups are the cosets mod `n/(r+1)`.
pub fn repair_groups(code: &LrcCode) -> Result<RepairPlan<'_>, RepairError> {
    let n = code.n();
    let r1 = code.r() + 1;
    if n % r1 != 0 {
        return Err(RepairError::NonIntegralStride { n, r1 });
    }
    let stride = n / r1;
    Ok(RepairPlan {
        code,
        basis: code.code().generator_basis(),
        vectors: (0..stride).map(|_| OnceLock::new()).collect(),
    })
}

impl<'a> RepairPlan<'a> {
    pub fn code(&self) -> &'a LrcCode {
        self.code
    }

    fn stride(&self) -> usize {
        self.vectors.len()
    }

    fn check(&self, i: usize) -> Result<(), RepairError> {
        let n = self.code.n();
        if i >= n {
            Err(RepairError::OutOfRange { i, n })
        } else {
            Ok(())
        }
    }

    /// `{i + t n/(r+1) mod n : t = 1..r}`.
    pub fn group(&self, i: usize) -> Result<Vec<usize>, RepairError> {
        self.check(i)?;
        let n = self.code.n();
        Ok((1..=self.code.r()).map(|t| (i + t * self.stride()) % n).collect())
    }

    /// All coordinates of the coset of `i`, ascending.
    pub fn coset(&self, i: usize) -> Result<Vec<usize>, RepairError> {
        self.check(i)?;
        let start = i % self.stride();
        Ok((start..self.code.n()).step_by(self.stride()).collect())
    }

    /// A dual codeword supported on the coset of `i` with every coset entry
    /// nonzero, scaled so its first entry is 1.
    pub fn vector(&self, i: usize) -> Result<&RepairVector, RepairError> {
        self.check(i)?;
        if self.code.k() == 0 {
            return Err(RepairError::ZeroCode);
        }
        let slot = &self.vectors[i % self.stride()];
        slot.get_or_init(|| self.solve(i))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn solve(&self, i: usize) -> Result<RepairVector, RepairError> {
        let field = self.code.field();
        let support = self.coset(i)?;
        let restricted: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|row| support.iter().map(|&j| row[j]).collect())
            .collect();
        let ns = linalg::nullspace(field, &restricted, support.len());
        let coeffs = all_nonzero_combination(field, &ns).ok_or(RepairError::NoRepairVector(i))?;
        let lead_inv = field.inv(coeffs[0])?;
        let coeffs = coeffs.into_iter().map(|c| field.mul(c, lead_inv)).collect();
        Ok(RepairVector { support, coeffs })
    }

    /// Recovers the erased symbol from the `r` other members of its group.
    pub fn repair(&self, word: &ErasedWord) -> Result<Repair, RepairError> {
        let n = self.code.n();
        if word.symbols.len() != n {
            return Err(RepairError::WrongLength {
                expected: n,
                got: word.symbols.len(),
            });
        }
        let i = word.erased_at;
        let field = self.code.field();
        let v = self.vector(i)?;
        let read = self.group(i)?;
        let mut acc = 0u32;
        for &j in &read {
            let c = word.symbols[j].expect("only one erasure");
            let a = v.coeff_at(j).expect("group lies in the coset");
            acc = field.add(acc, field.mul(a, c));
        }
        let a_i = v.coeff_at(i).expect("coordinate lies in its coset");
        let value = field.neg(field.div(acc, a_i)?);
        Ok(Repair {
            value: field.element(value)?,
            read,
        })
    }
}

/// Picks a vector of the span with no zero entry: the lone basis vector, or the
/// first combination with all coefficients nonzero (odometer order) that works.
fn all_nonzero_combination(field: &Field, basis: &[Vec<u32>]) -> Option<Vec<u32>> {
    let len = basis.first()?.len();
    let q = field.order();
    let mut coeffs = vec![1u32; basis.len()];
    for _ in 0..1 << 16 {
        let mut v = vec![0u32; len];
        for (row, &c) in basis.iter().zip(&coeffs) {
            for (x, &b) in v.iter_mut().zip(row) {
                *x = field.add(*x, field.mul(c, b));
            }
        }
        if v.iter().all(|&c| c != 0) {
            return Some(v);
        }
        // nullspace basis vectors are unit on distinct free columns, so a zero
        // coefficient would leave a zero entry
        let mut t = 0;
        loop {
            if t == coeffs.len() {
                return None;
            }
            coeffs[t] += 1;
            if coeffs[t] < q {
                break;
            }
            coeffs[t] = 1;
            t += 1;
        }
    }
    None
}

/// The repair vector for coordinate `i` (groups and vectors for one-off use).
pub fn repair_vector(code: &LrcCode, i: usize) -> Result<RepairVector, RepairError> {
    repair_groups(code)?.vector(i).cloned()
}

pub fn repair_erasure(code: &LrcCode, word: &ErasedWord) -> Result<Repair, RepairError> {
    repair_groups(code)?.repair(word)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Repair {
    pub value: FieldElement,
    /// Coordinates that were read.
    pub read: Vec<usize>,
}

/// A received word with exactly one erased coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasedWord {
    symbols: Vec<Option<u32>>,
    erased_at: usize,
}

impl ErasedWord {
    pub fn new(field: &Field, symbols: Vec<Option<u32>>) -> Result<Self, RepairError> {
        let erased: Vec<usize> = symbols
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.is_none().then_some(i))
            .collect();
        if erased.len() != 1 {
            return Err(RepairError::ErasureCount(erased.len()));
        }
        for s in symbols.iter().flatten() {
            field.check(*s as u64)?;
        }
        Ok(ErasedWord {
            symbols,
            erased_at: erased[0],
        })
    }

    /// Erases coordinate `i` of a full word.
    pub fn erase(word: &[u32], i: usize) -> Result<Self, RepairError> {
        if i >= word.len() {
            return Err(RepairError::OutOfRange { i, n: word.len() });
        }
        let symbols = word
            .iter()
            .enumerate()
            .map(|(j, &c)| (j != i).then_some(c))
            .collect();
        Ok(ErasedWord { symbols, erased_at: i })
    }

    /// Comma-separated element indices with `_` marking the erasure.
    pub fn parse(field: &Field, text: &str) -> Result<Self, RepairError> {
        let symbols = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok == "_" {
                    Ok(None)
                } else {
                    tok.parse::<u32>()
                        .map(Some)
                        .map_err(|_| RepairError::BadSymbol(tok.to_string()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, symbols)
    }

    pub fn erased_at(&self) -> usize {
        self.erased_at
    }

    pub fn symbols(&self) -> &[Option<u32>] {
        &self.symbols
    }
}

/// Comma-separated element indices, as used for messages and words.
pub fn parse_symbols(field: &Field, text: &str) -> Result<Vec<u32>, RepairError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: u64 = tok.parse().map_err(|_| RepairError::BadSymbol(tok.to_string()))?;
            Ok(field.check(v)?)
        })
        .collect()
}

pub fn format_symbols(word: &[u32]) -> String {
    word.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Exact minimum weight of the dual code, bracketed when over budget.
pub fn dual_distance_exact(code: &CyclicCode, budget: u64) -> Distance {
    crate::cyclic::min_distance_exhaustive(&code.dual(), budget)
}

/// Outcome of an exhaustive locality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityCheck {
    pub r_test: usize,
    pub holds: bool,
    /// For each coordinate, a dual word of weight `<= r_test + 1` through it.
    pub witnesses: Vec<Option<Vec<u32>>>,
    pub failing: Option<usize>,
}

/// True iff every coordinate lies in the support of a dual codeword of weight
/// at most `r_test + 1`, decided by enumerating the whole dual code.
pub fn verify_locality(code: &CyclicCode, r_test: usize, budget: u64) -> Result<LocalityCheck, RepairError> {
    let n = code.n();
    let dual = code.dual();
    let size = space_size(dual.q(), dual.k());
    if size > budget {
        return Err(RepairError::BudgetExceeded { size, budget });
    }
    let mut witnesses: Vec<Option<Vec<u32>>> = vec![None; n];
    let mut missing = n;
    let rows = dual.generator_basis();
    let mut walker = SpanWalker::new(code.field(), &rows, n);
    while missing > 0 && walker.advance() {
        let w = walker.word();
        if w.iter().filter(|&&c| c != 0).count() > r_test + 1 {
            continue;
        }
        for (i, &c) in w.iter().enumerate() {
            if c != 0 && witnesses[i].is_none() {
                witnesses[i] = Some(w.to_vec());
                missing -= 1;
            }
        }
    }
    let failing = witnesses.iter().position(Option::is_none);
    Ok(LocalityCheck {
        r_test,
        holds: failing.is_none(),
        witnesses,
        failing,
    })
}

/// Checks the repair plan as a locality certificate without enumeration:
/// every coset vector is orthogonal to the generator basis, has weight
/// `<= r + 1` and is nonzero at each coordinate it serves.
pub fn certify_plan(code: &LrcCode) -> Result<Vec<RepairVector>, RepairError> {
    let plan = repair_groups(code)?;
    let field = code.field();
    let basis = code.code().generator_basis();
    let mut out = Vec::with_capacity(code.n());
    for i in 0..code.n() {
        let v = plan.vector(i)?;
        let word = v.to_word(code.n());
        let orthogonal = basis.iter().all(|row| linalg::dot(field, row, &word) == 0);
        if !orthogonal || v.weight() > code.r() + 1 || v.coeff_at(i).is_none_or(|c| c == 0) {
            return Err(RepairError::NoRepairVector(i));
        }
        out.push(v.clone());
    }
    Ok(out)
}
