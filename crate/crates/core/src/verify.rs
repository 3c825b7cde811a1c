//! The Singleton-type bound and end-to-end optimality certification.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::LrcCode;
use crate::cyclic::{min_distance_exhaustive, Distance};
use crate::repair::{certify_plan, dual_distance_exact, verify_locality, RepairError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("Singleton-type bound needs 1 <= k <= n and r >= 1 (n = {n}, k = {k}, r = {r})")]
    OutOfRange { n: usize, k: usize, r: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingletonBound {
    pub value: i64,
    pub degenerate: bool,
}

/// `n - k - ceil(k/r) + 2`; flagged degenerate when `k = n`.
pub fn singleton_bound(n: usize, k: usize, r: usize) -> Result<SingletonBound, VerifyError> {
    if k < 1 || k > n || r < 1 {
        return Err(VerifyError::OutOfRange { n, k, r });
    }
    let (n, k, r) = (n as i64, k as i64, r as i64);
    Ok(SingletonBound {
        value: n - k - crate::arith::div_ceil(k, r) + 2,
        degenerate: k == n,
    })
}

/// Four-valued outcome of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    OptimalCertified,
    OptimalConsistent,
    Refuted,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::OptimalCertified => "optimal-certified",
            Verdict::OptimalConsistent => "optimal-consistent",
            Verdict::Refuted => "refuted",
            Verdict::Indeterminate => "indeterminate",
        }
    }

    /// Exit status of the `verify` command.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::OptimalCertified => 0,
            Verdict::OptimalConsistent => 2,
            Verdict::Refuted => 3,
            Verdict::Indeterminate => 4,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalityMethod {
    /// Whole dual code enumerated.
    Exhaustive,
    /// Dual space over budget; the repair vectors were checked directly.
    RepairVectors,
    /// Neither route produced a certificate.
    Unavailable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub d_claimed: usize,
}

/// A dual word of weight at most `r + 1` through `coordinate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityWitness {
    pub coordinate: usize,
    pub support: Vec<usize>,
    pub coeffs: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scheme: String,
    pub params: ReportParams,
    pub d_measured: Distance,
    pub d_dual: Distance,
    pub bch_bound: Option<usize>,
    pub locality_ok: bool,
    pub locality_method: LocalityMethod,
    pub witnesses: Vec<LocalityWitness>,
    /// Whether locality `r - 1` also holds; informational only.
    pub locality_below_r: Option<bool>,
    pub singleton_rhs: Option<i64>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

fn witness_from_word(coordinate: usize, word: &[u32]) -> LocalityWitness {
    let (support, coeffs) = word
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c))
        .unzip();
    LocalityWitness {
        coordinate,
        support,
        coeffs,
    }
}

/// Distance, dual distance, BCH bound and locality of `code`, combined into a
/// verdict on the claim `d_claimed = n - k - ceil(k/r) + 2`.
pub fn verify_optimal(code: &LrcCode, budget: u64) -> VerificationReport {
    let cyc = code.code();
    let (n, k, r, d) = (code.n(), code.k(), code.r(), code.d_claimed());
    let mut notes = Vec::new();

    let singleton_rhs = match singleton_bound(n, k, r) {
        Ok(b) => {
            if b.degenerate {
                notes.push("k = n: Singleton-type bound is degenerate".to_string());
            }
            Some(b.value)
        }
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    let d_measured = min_distance_exhaustive(cyc, budget);
    let d_dual = dual_distance_exact(cyc, budget);
    let bch_bound = match cyc.bch_bound() {
        Ok(b) => Some(b),
        Err(e) => {
            notes.push(format!("BCH bound unavailable: {e}"));
            None
        }
    };

    let (locality_ok, locality_method, witnesses, exhaustive_fail) = match verify_locality(cyc, r, budget) {
        Ok(check) => {
            let ws = check
                .witnesses
                .iter()
                .enumerate()
                .filter_map(|(i, w)| w.as_ref().map(|w| witness_from_word(i, w)))
                .collect();
            if let Some(i) = check.failing {
                notes.push(format!("coordinate {i} has no dual word of weight <= {}", r + 1));
            }
            (check.holds, LocalityMethod::Exhaustive, ws, !check.holds)
        }
        Err(RepairError::BudgetExceeded { .. }) => match certify_plan(code) {
            Ok(vectors) => {
                let ws = vectors
                    .iter()
                    .enumerate()
                    .map(|(i, v)| witness_from_word(i, &v.to_word(n)))
                    .collect();
                (true, LocalityMethod::RepairVectors, ws, false)
            }
            Err(e) => {
                notes.push(format!("no locality certificate: {e}"));
                (false, LocalityMethod::Unavailable, Vec::new(), false)
            }
        },
        Err(e) => {
            notes.push(format!("locality check failed: {e}"));
            (false, LocalityMethod::Unavailable, Vec::new(), false)
        }
    };
    let locality_below_r = if r >= 2 {
        verify_locality(cyc, r - 1, budget).ok().map(|c| c.holds)
    } else {
        None
    };

    let mut refuted = Vec::new();
    if !d_measured.admits(d) {
        refuted.push(format!("measured distance {d_measured:?} contradicts claimed d = {d}"));
    }
    if let Some(rhs) = singleton_rhs.filter(|&v| v != d as i64) {
        refuted.push(format!("claimed d = {d} differs from the Singleton-type bound {rhs}"));
    }
    if bch_bound.is_some_and(|b| k >= 1 && b > d) {
        refuted.push(format!("BCH bound {} exceeds claimed d = {d}", bch_bound.unwrap()));
    }
    if exhaustive_fail {
        refuted.push(format!("locality r = {r} does not hold"));
    }
    if let Some(dd) = d_dual.exact().filter(|&dd| dd > r + 1) {
        refuted.push(format!("dual distance {dd} exceeds r + 1 = {}", r + 1));
    }

    let verdict = if !refuted.is_empty() {
        Verdict::Refuted
    } else if d_measured.exact() == Some(d) && singleton_rhs == Some(d as i64) && locality_ok {
        Verdict::OptimalCertified
    } else if matches!(d_measured, Distance::Indeterminate) || singleton_rhs.is_none() {
        Verdict::Indeterminate
    } else {
        Verdict::OptimalConsistent
    };
    notes.extend(refuted);

    VerificationReport {
        scheme: code.scheme().to_string(),
        params: ReportParams {
            q: cyc.q(),
            n,
            k,
            r,
            d_claimed: d,
        },
        d_measured,
        d_dual,
        bch_bound,
        locality_ok,
        locality_method,
        witnesses,
        locality_below_r,
        singleton_rhs,
        verdict,
        notes,
    }
}
