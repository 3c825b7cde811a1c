//! Distance-3 and distance-4 codes whose length is independent of `q`.
//!
//! Both use `alpha = beta^{n/(r+1)}`, a nontrivial `(r+1)`-th root of unity in
//! `F_q`, and the factor `x^{n/(r+1)} - alpha` of `x^n - 1`. Its zeros are the
//! `beta^e` with `e = 1 (mod r+1)`, which is what gives every coordinate a
//! weight-`(r+1)` dual word on its residue class mod `n/(r+1)`.

use crate::arith;
use crate::poly::Polynomial;

use super::{
    assertion, precondition, require_n, require_prime_power, stride, Claim, Construction, ConstructionError,
    LrcCode, SchemeParams, Setting,
};

/// `g(x) = (x - 1)(x^{n/(r+1)} - alpha)`, an `[n, n - 1 - n/(r+1), 3]` code.
pub struct DistanceThree;

/// `g(x) = (x - 1)(x - gamma)(x^{n/(r+1)} - alpha)`, an `[n, n - 2 - n/(r+1), 4]` code.
pub struct DistanceFour;

fn common_checks(params: &SchemeParams, scheme: &'static str, r_min: usize) -> Result<(usize, usize), ConstructionError> {
    require_prime_power(params.q)?;
    let n = require_n(scheme, params)?;
    let q = params.q;
    let r = params.r;
    let g = arith::gcd(n as u64, q);
    if g != 1 {
        return Err(precondition(format!("gcd(n, q) = gcd({n}, {q}) = {g} != 1")));
    }
    if r < r_min {
        return Err(precondition(format!("{scheme} needs r >= {r_min}, got r = {r}")));
    }
    let shared = arith::gcd(n as u64, q - 1);
    if shared % (r as u64 + 1) != 0 {
        return Err(precondition(format!(
            "gcd(n, q - 1) = gcd({n}, {}) = {shared} is not divisible by r + 1 = {}",
            q - 1,
            r + 1
        )));
    }
    Ok((n, stride(n, r)?))
}

/// `(x - 1)(x^s - alpha)`-style product of explicit factors in the extension.
fn product(factors: &[Polynomial]) -> Result<Polynomial, ConstructionError> {
    let mut acc = Polynomial::one(factors[0].field());
    for f in factors {
        acc = acc.mul(f)?;
    }
    Ok(acc)
}

/// Exponents `1, 1 + (r+1), ..., 1 + (s-1)(r+1)`: the zeros of `x^s - alpha`.
fn binomial_zeros(r: usize, s: usize) -> impl Iterator<Item = i64> {
    (0..s).map(move |j| 1 + (j * (r + 1)) as i64)
}

impl Construction for DistanceThree {
    fn name(&self) -> &'static str {
        "thm-1.1-i"
    }

    fn description(&self) -> &'static str {
        "distance 3, any length n with gcd(n, q) = 1 and (r+1) | gcd(n, q-1)"
    }

    fn check(&self, params: &SchemeParams) -> Result<Claim, ConstructionError> {
        let (n, s) = common_checks(params, self.name(), 2)?;
        Ok(Claim {
            q: params.q,
            n,
            k: n - 1 - s,
            r: params.r,
            d: 3,
        })
    }

    fn construct(&self, params: &SchemeParams) -> Result<LrcCode, ConstructionError> {
        let claim = self.check(params)?;
        let (n, r) = (claim.n, claim.r);
        let s = n / (r + 1);
        let set = Setting::new(params.q, n)?;
        let ext = set.ext();
        let alpha_ext = set.split.beta_pow(s as i64);
        let alpha = set.to_base(alpha_ext, "alpha = beta^(n/(r+1))")?;
        if alpha.is_zero() || alpha.is_one() {
            return Err(assertion("alpha lies in {0, 1}"));
        }

        let exps: Vec<i64> = std::iter::once(0).chain(binomial_zeros(r, s)).collect();
        let g = Polynomial::from_root_values(ext, &set.roots(&exps))?;
        let factored = product(&[
            Polynomial::binomial(ext, 1, 1),
            Polynomial::binomial(ext, s, alpha_ext),
        ])?;
        if g != factored {
            return Err(assertion("root product differs from (x - 1)(x^s - alpha)"));
        }
        set.finish(self.name(), &g, r, 3, claim.k, Some(alpha), None)
    }
}

/// The Bezout pair `(a, b)` with `a*s + b*t = 2` and `a` the least
/// nonnegative solution (`a` is determined modulo `t / gcd(s, t)`).
pub fn bezout_pair(s: usize, t: usize) -> Option<(i64, i64)> {
    let (g, x, _) = arith::ext_gcd(s as i64, t as i64);
    if 2 % g != 0 {
        return None;
    }
    let period = t as i64 / g;
    let a = (x * (2 / g)).rem_euclid(period);
    let b = (2 - a * s as i64) / t as i64;
    debug_assert_eq!(a * s as i64 + b * t as i64, 2);
    Some((a, b))
}

impl Construction for DistanceFour {
    fn name(&self) -> &'static str {
        "thm-1.1-ii"
    }

    fn description(&self) -> &'static str {
        "distance 4, any length n with gcd(n, q) = 1, (r+1) | gcd(n, q-1) and gcd(n/(r+1), r+1) | 2"
    }

    fn check(&self, params: &SchemeParams) -> Result<Claim, ConstructionError> {
        let (n, s) = common_checks(params, self.name(), 3)?;
        let t = params.r + 1;
        let g = arith::gcd(s as u64, t as u64);
        if 2 % g != 0 {
            return Err(precondition(format!(
                "gcd(n/(r+1), r+1) = gcd({s}, {t}) = {g} does not divide 2"
            )));
        }
        Ok(Claim {
            q: params.q,
            n,
            k: n - 2 - s,
            r: params.r,
            d: 4,
        })
    }

    fn construct(&self, params: &SchemeParams) -> Result<LrcCode, ConstructionError> {
        let claim = self.check(params)?;
        let (n, r) = (claim.n, claim.r);
        let s = n / (r + 1);
        let set = Setting::new(params.q, n)?;
        let ext = set.ext();
        let f = ext.as_ref();
        let alpha_ext = set.split.beta_pow(s as i64);
        let alpha = set.to_base(alpha_ext, "alpha = beta^(n/(r+1))")?;
        if alpha.is_zero() || alpha.is_one() {
            return Err(assertion("alpha lies in {0, 1}"));
        }

        let (a, _) = bezout_pair(s, r + 1).expect("checked gcd(s, r+1) | 2");
        let gamma_ext = f.pow(alpha_ext, a)?;
        let gamma = set.to_base(gamma_ext, "gamma = alpha^a")?;
        if gamma.is_zero() || gamma.is_one() {
            return Err(assertion("gamma lies in {0, 1}"));
        }
        let gamma_s = f.pow(gamma_ext, s as i64)?;
        if gamma_s == alpha_ext {
            return Err(assertion("x - gamma divides x^(n/(r+1)) - alpha"));
        }
        if gamma_s != f.mul(alpha_ext, alpha_ext) {
            return Err(assertion("gamma^(n/(r+1)) != alpha^2"));
        }

        let mut roots = vec![1, gamma_ext];
        roots.extend(set.roots(&binomial_zeros(r, s).collect::<Vec<_>>()));
        let g = Polynomial::from_root_values(ext, &roots)?;
        let factored = product(&[
            Polynomial::binomial(ext, 1, 1),
            Polynomial::binomial(ext, 1, gamma_ext),
            Polynomial::binomial(ext, s, alpha_ext),
        ])?;
        if g != factored {
            return Err(assertion("root product differs from (x - 1)(x - gamma)(x^s - alpha)"));
        }
        set.finish(self.name(), &g, r, 4, claim.k, Some(alpha), Some(gamma))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_canonical() {
        assert_eq!(bezout_pair(2, 4), Some((1, 0)));
        assert_eq!(bezout_pair(6, 4), Some((1, -1)));
        assert_eq!(bezout_pair(3, 4), Some((2, -1)));
        assert_eq!(bezout_pair(3, 6), None);
        for s in 1..30 {
            for t in 4..12 {
                if let Some((a, b)) = bezout_pair(s, t) {
                    assert_eq!(a * s as i64 + b * t as i64, 2);
                    assert!(a >= 0);
                }
            }
        }
    }

    #[test]
    fn distance_three_q4_n9() {
        let c = DistanceThree.construct(&SchemeParams::new(4, 9, 2)).unwrap();
        assert_eq!((c.n(), c.k(), c.d_claimed()), (9, 5, 3));
        let alpha = c.alpha().unwrap();
        assert_eq!(c.field().order(), 4);
        // nontrivial cube root of unity in F_4
        assert_eq!(alpha.pow(3).unwrap(), c.field().one());
        assert!(!alpha.is_one());
        assert_eq!(c.code().root_exponents().unwrap(), vec![0, 1, 4, 7]);
    }

    #[test]
    fn distance_three_q7_n15() {
        let c = DistanceThree.construct(&SchemeParams::new(7, 15, 2)).unwrap();
        assert_eq!((c.n(), c.k()), (15, 9));
    }

    #[test]
    fn distance_three_rejects_shared_factor() {
        let err = DistanceThree.check(&SchemeParams::new(4, 10, 2)).unwrap_err();
        assert!(err.to_string().contains("gcd(n, q) = gcd(10, 4) = 2"), "{err}");
        assert!(DistanceThree.check(&SchemeParams::new(6, 5, 2)).is_err());
        assert!(DistanceThree.check(&SchemeParams::new(7, 12, 1)).is_err());
    }

    #[test]
    fn distance_four_q5_n8() {
        let c = DistanceFour.construct(&SchemeParams::new(5, 8, 3)).unwrap();
        assert_eq!((c.n(), c.k(), c.d_claimed()), (8, 4, 4));
        let alpha = c.alpha().unwrap().value();
        assert!(alpha == 2 || alpha == 3);
        assert_eq!(c.gamma().unwrap().value(), alpha);
        let expected: &[u32] = if alpha == 2 { &[1, 1, 0, 2, 1] } else { &[1, 2, 0, 1, 1] };
        assert_eq!(c.code().generator().coeffs(), expected);
    }

    #[test]
    fn distance_four_q13_n24() {
        let c = DistanceFour.construct(&SchemeParams::new(13, 24, 3)).unwrap();
        assert_eq!((c.n(), c.k()), (24, 16));
    }

    #[test]
    fn distance_four_rejects() {
        let err = DistanceFour.check(&SchemeParams::new(7, 8, 3)).unwrap_err();
        assert!(err.to_string().contains("not divisible by r + 1 = 4"), "{err}");
        // gcd(n/(r+1), r+1) = 4 for n = 16, r = 3
        assert!(DistanceFour.check(&SchemeParams::new(17, 16, 3)).is_err());
        assert!(DistanceFour.check(&SchemeParams::new(13, 12, 2)).is_err());
    }
}
