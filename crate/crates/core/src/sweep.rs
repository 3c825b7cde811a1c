//! Parameter sweeps: enumerate admissible parameters, construct, optionally verify.

use serde::{Deserialize, Serialize};

use crate::constructions::{enumerate_valid_params, Construction, ConstructionError, Registry};
use crate::verify::verify_optimal;

/// Verdict column for rows that were constructed but not verified.
pub const UNVERIFIED: &str = "unverified";
/// Verdict column for rows whose construction failed a runtime assertion.
pub const REJECTED: &str = "rejected";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub scheme: String,
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub d: usize,
    pub verdict: String,
    pub diagnostic: String,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub q_max: u64,
    pub n_max: usize,
    /// Verify each row with this oracle budget.
    pub verify: Option<u64>,
}

/// Rows for one scheme, or every registered scheme when `scheme` is `None`,
/// in registry then candidate order.
pub fn sweep(registry: &Registry, scheme: Option<&str>, opts: SweepOptions) -> Result<Vec<SweepRow>, ConstructionError> {
    let schemes: Vec<&dyn Construction> = match scheme {
        Some(name) => vec![registry.get(name)?],
        None => registry.iter().collect(),
    };
    let mut rows = Vec::new();
    for s in schemes {
        for rec in enumerate_valid_params(s, opts.q_max, opts.n_max) {
            let c = rec.claim;
            let mut row = SweepRow {
                scheme: rec.scheme.to_string(),
                q: c.q,
                n: c.n,
                k: c.k,
                r: c.r,
                d: c.d,
                verdict: UNVERIFIED.to_string(),
                diagnostic: String::new(),
            };
            match s.construct(&rec.params) {
                Err(e) => {
                    row.verdict = REJECTED.to_string();
                    row.diagnostic = e.to_string();
                }
                Ok(code) => {
                    if let Some(budget) = opts.verify {
                        let rep = verify_optimal(&code, budget);
                        row.verdict = rep.verdict.to_string();
                        row.diagnostic = rep.notes.join("; ");
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_length_gap_is_listed() {
        let reg = Registry::with_defaults();
        let rows = sweep(
            &reg,
            Some("thm-3.4"),
            SweepOptions {
                q_max: 8,
                n_max: 64,
                verify: None,
            },
        )
        .unwrap();
        let q5 = rows.iter().find(|r| r.q == 5 && r.r == 3).unwrap();
        assert_eq!(q5.verdict, UNVERIFIED);
        let q7 = rows.iter().find(|r| r.q == 7 && r.r == 3).unwrap();
        assert_eq!(q7.verdict, REJECTED);
        assert!(q7.diagnostic.contains("not an element of F_7"));
    }

    #[test]
    fn empty_bounds() {
        let reg = Registry::with_defaults();
        let opts = SweepOptions {
            q_max: 1,
            n_max: 1,
            verify: Some(1),
        };
        assert!(sweep(&reg, None, opts).unwrap().is_empty());
        assert!(sweep(&reg, Some("nope"), opts).is_err());
    }
}
