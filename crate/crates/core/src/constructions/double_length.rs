//! Length `2(q - 1)`, distance 4: `g(x) = (x - 1)(x - beta^2)(x^{n/(r+1)} - alpha)`.
//!
//! The stated hypothesis `(r+1) | 2(q-1)` does not force `alpha = beta^{n/(r+1)}`
//! into `F_q`; that needs `(r+1) | q - 1`. Membership is checked at
//! construction time and reported as a diagnostic when it fails (e.g. `q = 7`,
//! `r = 3`). The Singleton-type bound is met with equality only for `r >= 3`,
//! which is also enforced.

use super::{
    assertion, precondition, require_prime_power, stride, Claim, Construction, ConstructionError, LrcCode,
    SchemeParams, Setting,
};
use crate::poly::Polynomial;

pub struct DoubleLength;

impl DoubleLength {
    fn length(q: u64) -> usize {
        2 * (q as usize - 1)
    }
}

impl Construction for DoubleLength {
    fn name(&self) -> &'static str {
        "thm-3.4"
    }

    fn description(&self) -> &'static str {
        "distance 4, length n = 2(q-1) with (r+1) | n"
    }

    fn check(&self, params: &SchemeParams) -> Result<Claim, ConstructionError> {
        require_prime_power(params.q)?;
        let (q, r) = (params.q, params.r);
        let n = Self::length(q);
        if let Some(given) = params.n {
            if given != n {
                return Err(precondition(format!("{} fixes n = 2(q - 1) = {n}, got n = {given}", self.name())));
            }
        }
        if q % 2 == 0 {
            return Err(precondition(format!("gcd(n, q) = gcd({n}, {q}) = 2 != 1")));
        }
        if r < 3 {
            return Err(precondition(format!(
                "{} meets the Singleton-type bound only for r >= 3, got r = {r}",
                self.name()
            )));
        }
        let s = stride(n, r)?;
        Ok(Claim {
            q,
            n,
            k: n - s - 2,
            r,
            d: 4,
        })
    }

    fn construct(&self, params: &SchemeParams) -> Result<LrcCode, ConstructionError> {
        let claim = self.check(params)?;
        let (n, r, q) = (claim.n, claim.r, claim.q);
        let s = n / (r + 1);
        let set = Setting::new(q, n)?;
        let ext = set.ext();
        let beta_sq = set.split.beta_pow(2);
        set.to_base(beta_sq, "beta^2")?;
        let alpha_ext = set.split.beta_pow(s as i64);
        let alpha = set.to_base(alpha_ext, "alpha = beta^(n/(r+1))").map_err(|_| {
            assertion(format!(
                "alpha = beta^(n/(r+1)) has order r + 1 = {} which does not divide q - 1 = {}, \
                 so alpha is not an element of F_{q}",
                r + 1,
                q - 1
            ))
        })?;
        if alpha.is_zero() || alpha.is_one() {
            return Err(assertion("alpha lies in {0, 1}"));
        }

        let exps: Vec<i64> = [0, 2]
            .into_iter()
            .chain((0..s).map(|j| 1 + (j * (r + 1)) as i64))
            .collect();
        let g = Polynomial::from_root_values(ext, &set.roots(&exps))?;
        let factored = Polynomial::binomial(ext, 1, 1)
            .mul(&Polynomial::binomial(ext, 1, beta_sq))?
            .mul(&Polynomial::binomial(ext, s, alpha_ext))?;
        if g != factored {
            return Err(assertion("root product differs from (x - 1)(x - beta^2)(x^s - alpha)"));
        }
        set.finish(self.name(), &g, r, 4, claim.k, Some(alpha), None)
    }

    fn candidates(&self, q_max: u64, n_max: usize) -> Vec<SchemeParams> {
        super::prime_powers(q_max)
            .filter(|&q| Self::length(q) <= n_max)
            .flat_map(|q| {
                let n = Self::length(q);
                (1..n).map(move |r| SchemeParams { q, n: Some(n), r, d: None })
            })
            .collect()
    }
}
