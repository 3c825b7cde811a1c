//! Cyclic codes `<g(x)>` in `F_q[x]/(x^n - 1)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::field::{Field, FieldElement, FieldError, SplittingField, DEFAULT_MAX_ORDER};
use crate::poly::{PolyError, Polynomial};

/// Default enumeration budget for the exhaustive oracles.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("gcd(n, q) = {gcd} != 1 for n = {n}, q = {q}")]
    NotCoprime { n: usize, q: u64, gcd: u64 },
    #[error("block length must be positive")]
    EmptyLength,
    #[error("generator polynomial must be monic and nonzero")]
    NotMonic,
    #[error("generator degree {deg} exceeds the block length {n}")]
    DegreeTooLarge { deg: usize, n: usize },
    #[error("g(x) = {g} does not divide x^{n} - 1")]
    NotADivisor { g: String, n: usize },
    #[error("expected {expected} symbols, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("supplied root exponents {supplied:?} differ from the zeros of g, {actual:?}")]
    InconsistentExponents { supplied: Vec<usize>, actual: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCode {
    field: Arc<Field>,
    n: usize,
    k: usize,
    g: Polynomial,
    h: Polynomial,
    dual_g: Polynomial,
}

/// Validates `g | x^n - 1` and derives the parity polynomial and dual generator.
pub fn make_cyclic(field: &Arc<Field>, n: usize, g: Polynomial) -> Result<CyclicCode, CodeError> {
    if n == 0 {
        return Err(CodeError::EmptyLength);
    }
    let q = field.order() as u64;
    let gcd = arith::gcd(n as u64, q);
    if gcd != 1 {
        return Err(CodeError::NotCoprime { n, q, gcd });
    }
    if **g.field() != **field {
        return Err(FieldError::FieldMismatch.into());
    }
    if !g.is_monic() {
        return Err(CodeError::NotMonic);
    }
    let deg = g.degree().expect("monic implies nonzero");
    if deg > n {
        return Err(CodeError::DegreeTooLarge { deg, n });
    }
    let (h, rem) = Polynomial::cycle(field, n).divmod(&g)?;
    if !rem.is_zero() {
        return Err(CodeError::NotADivisor { g: g.to_string(), n });
    }
    let dual_g = h.reciprocal()?.monic()?;
    Ok(CyclicCode {
        field: Arc::clone(field),
        n,
        k: n - deg,
        g,
        h,
        dual_g,
    })
}

impl CyclicCode {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &Polynomial {
        &self.g
    }

    /// `h(x) = (x^n - 1) / g(x)`.
    pub fn parity(&self) -> &Polynomial {
        &self.h
    }

    /// Monic reciprocal of `h(x)`, the generator of the dual code.
    pub fn dual_generator(&self) -> &Polynomial {
        &self.dual_g
    }

    /// The `k` shifts `x^i g(x)` as length-`n` rows.
    pub fn generator_basis(&self) -> Vec<Vec<u32>> {
        (0..self.k)
            .map(|i| {
                let mut row = vec![0u32; self.n];
                for (j, &c) in self.g.coeffs().iter().enumerate() {
                    row[i + j] = c;
                }
                row
            })
            .collect()
    }

    pub fn dual(&self) -> CyclicCode {
        make_cyclic(&self.field, self.n, self.dual_g.clone())
            .expect("the reciprocal of a divisor of x^n - 1 divides x^n - 1")
    }

    /// Systematic encoding on raw indices: the message occupies the last `k`
    /// coordinates, parity the first `n - k`.
    pub fn encode_raw(&self, message: &[u32]) -> Result<Vec<u32>, CodeError> {
        if message.len() != self.k {
            return Err(CodeError::WrongLength {
                expected: self.k,
                got: message.len(),
            });
        }
        let r = self.n - self.k;
        let mut shifted = vec![0u32; self.n];
        for (i, &m) in message.iter().enumerate() {
            shifted[r + i] = self.field.check(m as u64)?;
        }
        let rem = Polynomial::new(&self.field, shifted.clone())?.rem(&self.g)?;
        for (i, &c) in rem.coeffs().iter().enumerate() {
            shifted[i] = self.field.neg(c);
        }
        Ok(shifted)
    }

    pub fn systematic_encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>, CodeError> {
        let raw = self.raw_symbols(message, self.k)?;
        let word = self.encode_raw(&raw)?;
        word.into_iter().map(|v| Ok(self.field.element(v)?)).collect()
    }

    /// The message carried by a systematic codeword.
    pub fn extract_message(&self, word: &[u32]) -> Result<Vec<u32>, CodeError> {
        if word.len() != self.n {
            return Err(CodeError::WrongLength {
                expected: self.n,
                got: word.len(),
            });
        }
        Ok(word[self.n - self.k..].to_vec())
    }

    pub fn contains_raw(&self, word: &[u32]) -> Result<bool, CodeError> {
        if word.len() != self.n {
            return Err(CodeError::WrongLength {
                expected: self.n,
                got: word.len(),
            });
        }
        let w = Polynomial::new(&self.field, word.to_vec())?;
        Ok(w.rem(&self.g)?.is_zero())
    }

    pub fn contains(&self, word: &[FieldElement]) -> Result<bool, CodeError> {
        let raw = self.raw_symbols(word, self.n)?;
        self.contains_raw(&raw)
    }

    fn raw_symbols(&self, symbols: &[FieldElement], expected: usize) -> Result<Vec<u32>, CodeError> {
        if symbols.len() != expected {
            return Err(CodeError::WrongLength {
                expected,
                got: symbols.len(),
            });
        }
        symbols
            .iter()
            .map(|s| {
                if **s.field() == *self.field {
                    Ok(s.value())
                } else {
                    Err(FieldError::FieldMismatch.into())
                }
            })
            .collect()
    }

    pub fn splitting_field(&self) -> Result<SplittingField, CodeError> {
        Ok(SplittingField::new(&self.field, self.n, DEFAULT_MAX_ORDER)?)
    }

    /// `{e in [0, n) : g(beta^e) = 0}` for the canonical `beta`, ascending.
    pub fn root_exponents(&self) -> Result<Vec<usize>, CodeError> {
        let split = self.splitting_field()?;
        Ok(self.root_exponents_in(&split)?)
    }

    fn root_exponents_in(&self, split: &SplittingField) -> Result<Vec<usize>, PolyError> {
        let lifted = self.g.lift(split.embedding())?;
        Ok((0..self.n)
            .filter(|&e| lifted.eval_raw(split.beta_pow(e as i64)) == 0)
            .collect())
    }

    /// BCH bound from the zeros of `g`: the largest `delta` such that
    /// `beta^t, ..., beta^{t+delta-2}` are all zeros for some `t` (cyclically).
    /// The supplied set must match the recomputed one.
    pub fn bch_lower_bound(&self, root_exponents: &[usize]) -> Result<usize, CodeError> {
        let mut supplied: Vec<usize> = root_exponents.to_vec();
        supplied.sort_unstable();
        supplied.dedup();
        let actual = self.root_exponents()?;
        if supplied != actual {
            return Err(CodeError::InconsistentExponents { supplied, actual });
        }
        Ok(longest_cyclic_run(&actual, self.n) + 1)
    }

    /// [`Self::bch_lower_bound`] on the recomputed zero set.
    pub fn bch_bound(&self) -> Result<usize, CodeError> {
        Ok(longest_cyclic_run(&self.root_exponents()?, self.n) + 1)
    }
}

/// Longest run of cyclically consecutive residues mod `n`; `n` when full.
pub fn longest_cyclic_run(exponents: &[usize], n: usize) -> usize {
    let mut present = vec![false; n];
    for &e in exponents {
        present[e % n] = true;
    }
    if present.iter().all(|&b| b) {
        return n;
    }
    // Start right after a gap so runs never straddle the origin twice.
    let gap = present.iter().position(|&b| !b).expect("not full");
    let mut best = 0;
    let mut run = 0;
    for i in 1..=n {
        if present[(gap + i) % n] {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

/// Result of a minimum-distance oracle run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    /// Every nonzero codeword was enumerated.
    Exact(usize),
    /// BCH lower bound and the minimum weight over a deterministic sample.
    BoundOnly { lower: usize, upper: Option<usize> },
    /// Nothing could be certified (zero code, or no sample and a trivial bound).
    Indeterminate,
}

impl Distance {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(*d),
            _ => None,
        }
    }

    /// Whether `d` is compatible with what was measured.
    pub fn admits(&self, d: usize) -> bool {
        match *self {
            Distance::Exact(x) => x == d,
            Distance::BoundOnly { lower, upper } => lower <= d && upper.is_none_or(|u| d <= u),
            Distance::Indeterminate => true,
        }
    }

    pub fn upper(&self) -> Option<usize> {
        match *self {
            Distance::Exact(x) => Some(x),
            Distance::BoundOnly { upper, .. } => upper,
            Distance::Indeterminate => None,
        }
    }
}

/// Walks every nonzero vector in the `F_q`-span of a set of rows.
///
/// Each row is expanded into `m` rows over `F_p` (scaled by `1, y, ..., y^{m-1}`),
/// and a base-`p` odometer advances one digit at a time, so every step is a
/// single vector addition. Message `(m_0, ..., m_{k-1})` is visited at position
/// `sum m_i q^i`, with `m_i` read as its element index.
pub struct SpanWalker<'a> {
    field: &'a Field,
    gens: Vec<Vec<u32>>,
    digits: Vec<u32>,
    word: Vec<u32>,
}

impl<'a> SpanWalker<'a> {
    pub fn new(field: &'a Field, rows: &[Vec<u32>], len: usize) -> Self {
        let p = field.characteristic();
        let mut gens = Vec::with_capacity(rows.len() * field.degree() as usize);
        for row in rows {
            let mut scale = 1u32;
            for _ in 0..field.degree() {
                gens.push(row.iter().map(|&c| field.mul(c, scale)).collect());
                scale *= p;
            }
        }
        SpanWalker {
            field,
            digits: vec![0; gens.len()],
            gens,
            word: vec![0; len],
        }
    }

    /// Advances to the next vector; `false` once the odometer wraps to zero.
    pub fn advance(&mut self) -> bool {
        let p = self.field.characteristic();
        let mut t = 0;
        while t < self.gens.len() {
            let g = &self.gens[t];
            for (w, &c) in self.word.iter_mut().zip(g) {
                *w = self.field.add(*w, c);
            }
            self.digits[t] += 1;
            if self.digits[t] < p {
                return true;
            }
            self.digits[t] = 0;
            t += 1;
        }
        false
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }
}

fn weight(word: &[u32]) -> usize {
    word.iter().filter(|&&c| c != 0).count()
}

/// `q^k`, saturating.
pub fn space_size(q: u32, k: usize) -> u64 {
    u32::try_from(k)
        .ok()
        .and_then(|k| arith::checked_pow(q as u64, k))
        .unwrap_or(u64::MAX)
}

/// Minimum weight over the first `limit` nonzero vectors of the span, and
/// whether the whole span was covered.
pub(crate) fn min_weight(field: &Field, rows: &[Vec<u32>], len: usize, limit: u64) -> (Option<usize>, bool) {
    let mut walker = SpanWalker::new(field, rows, len);
    let mut best: Option<usize> = None;
    let mut seen = 0u64;
    while seen < limit {
        if !walker.advance() {
            return (best, true);
        }
        seen += 1;
        let w = weight(walker.word());
        if best.is_none_or(|b| w < b) {
            best = Some(w);
        }
    }
    // Exactly `limit` vectors were visited; covered iff nothing follows.
    let done = !walker.advance();
    (best, done)
}

/// Minimum distance by enumerating all `q^k - 1` nonzero codewords when
/// `q^k <= budget`. Otherwise [`min_distance_by_support`] is tried with the same
/// budget, and failing that the BCH bound is bracketed with the best weight in
/// the first `budget` messages.
pub fn min_distance_exhaustive(code: &CyclicCode, budget: u64) -> Distance {
    if code.k == 0 {
        return Distance::Indeterminate;
    }
    let rows = code.generator_basis();
    if space_size(code.q(), code.k) <= budget {
        let (best, _) = min_weight(&code.field, &rows, code.n, u64::MAX);
        return Distance::Exact(best.expect("k >= 1 gives a nonzero codeword"));
    }
    if let Some(d) = min_distance_by_support(code, budget) {
        return Distance::Exact(d);
    }
    let (upper, _) = min_weight(&code.field, &rows, code.n, budget);
    let lower = code.bch_bound().unwrap_or(1);
    if upper.is_none() && lower <= 1 {
        return Distance::Indeterminate;
    }
    Distance::BoundOnly { lower, upper }
}

/// Exact minimum distance from the parity-check side, or `None` once more
/// than `budget` supports would be examined.
///
/// Every nonzero codeword has a cyclic shift whose support contains 0, so it
/// suffices to scan supports `{0} + S`, `|S| = w - 1`, for `w = 1, 2, ...`. A
/// support admits a nonzero codeword iff the parity-check columns on it are
/// dependent; the first `w` where that happens is the distance.
pub fn min_distance_by_support(code: &CyclicCode, budget: u64) -> Option<usize> {
    if code.k == 0 {
        return None;
    }
    let checks = code.dual().generator_basis();
    let field = code.field.as_ref();
    let n = code.n;
    let mut examined = 0u64;
    for w in 1..=n {
        let mut rest: Vec<usize> = (1..w).collect();
        loop {
            examined += 1;
            if examined > budget {
                return None;
            }
            let cols: Vec<usize> = std::iter::once(0).chain(rest.iter().copied()).collect();
            let restricted: Vec<Vec<u32>> = checks
                .iter()
                .map(|row| cols.iter().map(|&j| row[j]).collect())
                .collect();
            if crate::linalg::rank(field, &restricted, w) < w {
                return Some(w);
            }
            if !next_combination(&mut rest, n) {
                break;
            }
        }
    }
    unreachable!("the full support always carries a codeword when k >= 1")
}

/// Advances an ascending selection from `1..n` in lexicographic order.
fn next_combination(sel: &mut [usize], n: usize) -> bool {
    let t = sel.len();
    for i in (0..t).rev() {
        if sel[i] < n - t + i {
            sel[i] += 1;
            for j in i + 1..t {
                sel[j] = sel[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The dual code `<reciprocal(h)>`.
pub fn dual_code(code: &CyclicCode) -> CyclicCode {
    code.dual()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn q5_code() -> CyclicCode {
        let f5 = make_field(5, 1).unwrap();
        make_cyclic(&f5, 8, Polynomial::new(&f5, vec![1, 1, 0, 2, 1]).unwrap()).unwrap()
    }

    #[test]
    fn dimensions() {
        let c = q5_code();
        assert_eq!(c.k(), 4);
        let f7 = make_field(7, 1).unwrap();
        let par = make_cyclic(&f7, 6, Polynomial::new(&f7, vec![6, 1]).unwrap()).unwrap();
        assert_eq!(par.k(), 5);
    }

    #[test]
    fn x2_plus_1_over_f5() {
        // x^2 + 1 = (x - 2)(x - 3) and both are 4th roots of unity
        let f5 = make_field(5, 1).unwrap();
        let c = make_cyclic(&f5, 8, Polynomial::new(&f5, vec![1, 0, 1]).unwrap()).unwrap();
        assert_eq!(c.k(), 6);
        let bad = make_cyclic(&f5, 6, Polynomial::new(&f5, vec![1, 0, 1]).unwrap());
        assert!(matches!(bad, Err(CodeError::NotADivisor { .. })));
    }

    #[test]
    fn constructor_errors() {
        let f4 = make_field(2, 2).unwrap();
        let g = Polynomial::new(&f4, vec![1, 1]).unwrap();
        assert!(matches!(make_cyclic(&f4, 10, g), Err(CodeError::NotCoprime { .. })));
        let f5 = make_field(5, 1).unwrap();
        let g = Polynomial::new(&f5, vec![3, 2]).unwrap();
        assert_eq!(make_cyclic(&f5, 8, g).unwrap_err(), CodeError::NotMonic);
        let g = Polynomial::monomial(&f5, 1, 9);
        assert!(matches!(make_cyclic(&f5, 8, g), Err(CodeError::DegreeTooLarge { .. })));
    }

    #[test]
    fn systematic_encoding() {
        let c = q5_code();
        assert_eq!(c.encode_raw(&[0, 0, 0, 0]).unwrap(), vec![0; 8]);
        let w = c.encode_raw(&[1, 0, 0, 0]).unwrap();
        // x^4 mod g = -(2x^3 + x + 1), so the parity block is (1, 1, 0, 2)
        assert_eq!(w, vec![1, 1, 0, 2, 1, 0, 0, 0]);
        assert!(c.contains_raw(&w).unwrap());
        assert_eq!(c.extract_message(&w).unwrap(), vec![1, 0, 0, 0]);
        assert!(matches!(c.encode_raw(&[1, 2]), Err(CodeError::WrongLength { .. })));
    }

    #[test]
    fn membership() {
        let c = q5_code();
        assert!(c.contains_raw(&c.generator().padded(8)).unwrap());
        let mut unit = vec![0; 8];
        unit[0] = 1;
        assert!(!c.contains_raw(&unit).unwrap());
        assert!(c.contains_raw(&[0; 7]).is_err());
    }

    #[test]
    fn duals() {
        let f7 = make_field(7, 1).unwrap();
        let par = make_cyclic(&f7, 6, Polynomial::new(&f7, vec![6, 1]).unwrap()).unwrap();
        let rep = par.dual();
        assert_eq!(rep.k(), 1);
        assert_eq!(rep.generator().coeffs(), &[1; 6]);

        let full = make_cyclic(&f7, 6, Polynomial::one(&f7)).unwrap();
        assert_eq!(full.dual().k(), 0);

        let c = q5_code();
        assert!(c.dual().contains_raw(&[1, 0, 2, 0, 4, 0, 3, 0]).unwrap());
        assert_eq!(c.k() + c.dual().k(), 8);
    }

    #[test]
    fn runs() {
        assert_eq!(longest_cyclic_run(&[0, 1, 4, 7], 9), 2);
        assert_eq!(longest_cyclic_run(&[0, 1, 2, 3, 6, 9], 12), 4);
        assert_eq!(longest_cyclic_run(&[0, 1, 11], 12), 3);
        assert_eq!(longest_cyclic_run(&[], 5), 0);
        assert_eq!(longest_cyclic_run(&[0, 1, 2], 3), 3);
    }

    #[test]
    fn bch_rejects_wrong_exponents() {
        let c = q5_code();
        let zeros = c.root_exponents().unwrap();
        assert_eq!(c.bch_lower_bound(&zeros).unwrap(), c.bch_bound().unwrap());
        assert!(matches!(
            c.bch_lower_bound(&[0, 1]),
            Err(CodeError::InconsistentExponents { .. })
        ));
    }

    #[test]
    fn full_space_and_zero_code() {
        let f5 = make_field(5, 1).unwrap();
        let full = make_cyclic(&f5, 4, Polynomial::one(&f5)).unwrap();
        assert_eq!(min_distance_exhaustive(&full, DEFAULT_BUDGET), Distance::Exact(1));
        let zero = make_cyclic(&f5, 4, Polynomial::cycle(&f5, 4)).unwrap();
        assert_eq!(zero.k(), 0);
        assert_eq!(zero.bch_bound().unwrap(), 5);
        assert_eq!(min_distance_exhaustive(&zero, DEFAULT_BUDGET), Distance::Indeterminate);
    }

    #[test]
    fn over_budget_brackets() {
        let c = q5_code();
        let d = min_distance_exhaustive(&c, 1);
        assert!(matches!(d, Distance::BoundOnly { .. }));
        assert!(d.admits(4));
        assert_eq!(min_distance_exhaustive(&c, 625), Distance::Exact(4));
    }

    #[test]
    fn support_scan_matches_enumeration() {
        let c = q5_code();
        assert_eq!(min_distance_by_support(&c, DEFAULT_BUDGET), Some(4));
        // 1 + 7 + 21 supports precede the first weight-4 one
        assert_eq!(min_distance_by_support(&c, 29), None);
        assert_eq!(min_distance_exhaustive(&c, 100), Distance::Exact(4));
        let f7 = make_field(7, 1).unwrap();
        for g in [vec![6, 1], vec![1, 1], vec![6, 0, 1], vec![1, 0, 0, 1]] {
            let code = make_cyclic(&f7, 6, Polynomial::new(&f7, g).unwrap()).unwrap();
            let exact = min_distance_exhaustive(&code, DEFAULT_BUDGET).exact();
            assert_eq!(min_distance_by_support(&code, DEFAULT_BUDGET), exact);
        }
        let mut sel = vec![1, 2];
        let mut count = 1;
        while next_combination(&mut sel, 5) {
            count += 1;
        }
        assert_eq!((count, sel), (6, vec![3, 4]));
    }

    #[test]
    fn walker_visits_each_vector_once() {
        let f4 = make_field(2, 2).unwrap();
        let rows = vec![vec![1, 0], vec![0, 1]];
        let mut w = SpanWalker::new(&f4, &rows, 2);
        let mut seen = std::collections::HashSet::new();
        while w.advance() {
            assert!(seen.insert(w.word().to_vec()));
        }
        assert_eq!(seen.len(), 15);
        assert_eq!(w.word(), &[0, 0]);
    }
}
