//! Bounded-length families with arbitrary target distance `d = a(r+1) + b`.
//!
//! [`SubgroupFamily`] has `n | q - 1` (all roots already in `F_q`);
//! [`ConjugatePairFamily`] has `n | q + 1`, where the zero set is closed under
//! `e -> -e` so `g` descends from `F_{q^2}` to `F_q`.

use super::{
    precondition, require_d, require_n, require_prime_power, stride, Claim, Construction, ConstructionError,
    LrcCode, SchemeParams, Setting,
};
use crate::poly::Polynomial;

pub struct SubgroupFamily;

pub struct ConjugatePairFamily;

impl SubgroupFamily {
    /// Zero exponents of `g`: the run `0..=d-2` plus `(r+1)j + b - 2` for
    /// `j = a+1 .. n/(r+1) - 1` when `b >= 2`, or `j = a+1 .. n/(r+1)` when `b = 0`.
    pub fn exponents(n: usize, r: usize, d: usize) -> Vec<i64> {
        let s = n / (r + 1);
        let (a, b) = (d / (r + 1), d % (r + 1));
        let last = if b >= 2 { s - 1 } else { s };
        let run = (0..=d as i64 - 2).collect::<Vec<_>>();
        let tail = (a + 1..=last).map(|j| (j * (r + 1) + b) as i64 - 2);
        run.into_iter().chain(tail).collect()
    }
}

impl Construction for SubgroupFamily {
    fn name(&self) -> &'static str {
        "ex-3.2"
    }

    fn description(&self) -> &'static str {
        "any distance d, length n | q-1 with (r+1) | n"
    }

    fn takes_distance(&self) -> bool {
        true
    }

    fn check(&self, params: &SchemeParams) -> Result<Claim, ConstructionError> {
        require_prime_power(params.q)?;
        let n = require_n(self.name(), params)?;
        let d = require_d(self.name(), params)?;
        let (q, r) = (params.q, params.r);
        if (q - 1) % n as u64 != 0 {
            return Err(precondition(format!("n = {n} does not divide q - 1 = {}", q - 1)));
        }
        if r < 2 {
            return Err(precondition(format!("{} needs r >= 2, got r = {r}", self.name())));
        }
        let s = stride(n, r)?;
        if d < 1 || d > n {
            return Err(precondition(format!("d = {d} outside 1..={n}")));
        }
        let (a, b) = (d / (r + 1), d % (r + 1));
        let k = match b {
            1 => {
                return Err(precondition(format!(
                    "d = {d} = 1 (mod r+1): the generator is a shift of the d = {} one and has \
                     distance {}, so no code of distance {d} meets the bound here",
                    d + 1,
                    d + 1
                )))
            }
            0 => r * s - a * r + 1,
            _ => r * s + 2 - a * r - b,
        };
        Ok(Claim { q, n, k, r, d })
    }

    fn construct(&self, params: &SchemeParams) -> Result<LrcCode, ConstructionError> {
        let claim = self.check(params)?;
        let set = Setting::new(params.q, claim.n)?;
        let exps = Self::exponents(claim.n, claim.r, claim.d);
        let g = Polynomial::from_root_values(set.ext(), &set.roots(&exps))?;
        set.finish(self.name(), &g, claim.r, claim.d, claim.k, None, None)
    }
}

impl ConjugatePairFamily {
    /// `-(d-2)/2 ..= (d-2)/2` together with `(r+1)j` for
    /// `j = (a+2)/2 ..= n/(r+1) - (a+2)/2`.
    pub fn exponents(n: usize, r: usize, d: usize) -> Vec<i64> {
        let s = (n / (r + 1)) as i64;
        let a = (d / (r + 1)) as i64;
        let half = (d as i64 - 2) / 2;
        let lo = (a + 2) / 2;
        let hi = s - (a + 2) / 2;
        (-half..=half).chain((lo..=hi).map(|j| j * (r as i64 + 1))).collect()
    }
}

impl Construction for ConjugatePairFamily {
    fn name(&self) -> &'static str {
        "ex-3.3"
    }

    fn description(&self) -> &'static str {
        "distance d = a(r+1) + b with a, b even, length n | q+1 with (r+1) | n"
    }

    fn takes_distance(&self) -> bool {
        true
    }

    fn check(&self, params: &SchemeParams) -> Result<Claim, ConstructionError> {
        require_prime_power(params.q)?;
        let n = require_n(self.name(), params)?;
        let d = require_d(self.name(), params)?;
        let (q, r) = (params.q, params.r);
        if (q + 1) % n as u64 != 0 {
            return Err(precondition(format!("n = {n} does not divide q + 1 = {}", q + 1)));
        }
        if r < 2 {
            return Err(precondition(format!("{} needs r >= 2, got r = {r}", self.name())));
        }
        let s = stride(n, r)?;
        if d < 2 || d > n {
            return Err(precondition(format!("d = {d} outside 2..={n}")));
        }
        let (a, b) = (d / (r + 1), d % (r + 1));
        let b_max = 2 * (r - 1).div_ceil(2);
        if a % 2 != 0 || b % 2 != 0 || b < 2 || b > b_max {
            return Err(precondition(format!(
                "d = {d} = {a}*(r+1) + {b} needs even a and b in {{2, 4, ..., {b_max}}}"
            )));
        }
        Ok(Claim {
            q,
            n,
            k: r * s + 2 - a * r - b,
            r,
            d,
        })
    }

    fn construct(&self, params: &SchemeParams) -> Result<LrcCode, ConstructionError> {
        let claim = self.check(params)?;
        let set = Setting::new(params.q, claim.n)?;
        let exps = Self::exponents(claim.n, claim.r, claim.d);
        let g = Polynomial::from_root_values(set.ext(), &set.roots(&exps))?;
        set.finish(self.name(), &g, claim.r, claim.d, claim.k, None, None)
    }
}
