//! Independent brute-force checks. Arithmetic here is hand-rolled (residues
//! mod p, an explicit F_4 table) and shares nothing with the library beyond
//! the integer encoding of elements.

use std::collections::HashMap;

use cyclic_lrc::constructions::{LrcCode, Registry, SchemeParams};
use cyclic_lrc::cyclic::{make_cyclic, min_distance_exhaustive, Distance, DEFAULT_BUDGET};
use cyclic_lrc::field::{make_field, Embedding};
use cyclic_lrc::poly::Polynomial;
use cyclic_lrc::repair::{dual_distance_exact, repair_vector, verify_locality};

/// Addition and multiplication tables of a small field.
struct Gf {
    q: u32,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
}

impl Gf {
    fn prime(p: u32) -> Gf {
        let t = |f: &dyn Fn(u32, u32) -> u32| (0..p).map(|a| (0..p).map(|b| f(a, b)).collect()).collect();
        Gf {
            q: p,
            add: t(&|a, b| (a + b) % p),
            mul: t(&|a, b| (a * b) % p),
        }
    }

    /// F_4 = F_2[y]/(y^2 + y + 1) with index d0 + 2 d1.
    fn four() -> Gf {
        Gf {
            q: 4,
            add: (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect(),
            mul: vec![vec![0, 0, 0, 0], vec![0, 1, 2, 3], vec![0, 2, 3, 1], vec![0, 3, 1, 2]],
        }
    }

    fn neg(&self, a: u32) -> u32 {
        (0..self.q).find(|&b| self.add[a as usize][b as usize] == 0).unwrap()
    }

    fn inv(&self, a: u32) -> u32 {
        (1..self.q).find(|&b| self.mul[a as usize][b as usize] == 1).unwrap()
    }

    /// Remainder of `w` modulo monic `g`.
    fn rem(&self, w: &[u32], g: &[u32]) -> Vec<u32> {
        let mut w = w.to_vec();
        let dg = g.len() - 1;
        for top in (dg..w.len()).rev() {
            let c = w[top];
            if c == 0 {
                continue;
            }
            let nc = self.neg(c);
            for (i, &gi) in g.iter().enumerate() {
                let j = top - dg + i;
                w[j] = self.add[w[j] as usize][self.mul[nc as usize][gi as usize] as usize];
            }
        }
        w.truncate(dg);
        w
    }

    fn poly_mul(&self, a: &[u32], b: &[u32], n: usize) -> Vec<u32> {
        let mut out = vec![0u32; n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                let p = self.mul[x as usize][y as usize];
                out[i + j] = self.add[out[i + j] as usize][p as usize];
            }
        }
        out
    }

    fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add[acc as usize][self.mul[x as usize][y as usize] as usize])
    }

    /// Every vector of length `len`, in base-`q` counting order.
    fn words(&self, len: usize) -> impl Iterator<Item = Vec<u32>> + '_ {
        let total = (self.q as u64).pow(len as u32);
        (0..total).map(move |mut idx| {
            (0..len)
                .map(|_| {
                    let d = (idx % self.q as u64) as u32;
                    idx /= self.q as u64;
                    d
                })
                .collect()
        })
    }

    /// Codewords as products `m(x) g(x)`, `deg m < k`.
    fn codewords(&self, g: &[u32], n: usize) -> Vec<Vec<u32>> {
        let k = n + 1 - g.len();
        self.words(k).map(|m| self.poly_mul(&m, g, n)).collect()
    }
}

fn weight(w: &[u32]) -> usize {
    w.iter().filter(|&&c| c != 0).count()
}

fn build(scheme: &str, params: SchemeParams) -> LrcCode {
    Registry::with_defaults().construct(scheme, &params).unwrap()
}

/// Minimum weight over all of `F_q^n`, membership by remainder mod `g`.
fn distance_over_all_words(gf: &Gf, g: &[u32], n: usize) -> usize {
    gf.words(n)
        .filter(|w| weight(w) > 0 && gf.rem(w, g).iter().all(|&c| c == 0))
        .map(|w| weight(&w))
        .min()
        .unwrap()
}

/// Minimum weight of `{w : <w, c> = 0 for all codewords c}` by scanning all words.
fn dual_distance_over_all_words(gf: &Gf, g: &[u32], n: usize) -> usize {
    let k = n + 1 - g.len();
    let basis: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut row = vec![0u32; n];
            row[i..i + g.len()].copy_from_slice(g);
            row
        })
        .collect();
    gf.words(n)
        .filter(|w| weight(w) > 0 && basis.iter().all(|b| gf.dot(b, w) == 0))
        .map(|w| weight(&w))
        .min()
        .unwrap()
}

/// Definition of locality read literally: some `I` of size `<= r` avoiding
/// `i` on which the projections of `C(i, a)` for different `a` are disjoint.
fn has_repair_set(codewords: &[Vec<u32>], n: usize, i: usize, r: usize) -> bool {
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    subsets(&others, r).into_iter().any(|set| {
        let mut seen: HashMap<Vec<u32>, u32> = HashMap::new();
        codewords.iter().all(|c| {
            let key: Vec<u32> = set.iter().map(|&j| c[j]).collect();
            *seen.entry(key).or_insert(c[i]) == c[i]
        })
    })
}

fn subsets(items: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &x in items {
        let grown: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut t = s.clone();
                t.push(x);
                t
            })
            .collect();
        out.extend(grown);
    }
    out
}

#[test]
fn canonical_quadratic_modulus_over_f5() {
    // scan monic x^2 + c1 x + c0 ordered by (c0, c1); irreducible iff no root
    let first = (0..25u32)
        .map(|idx| (idx / 5, idx % 5))
        .find(|&(c0, c1)| (0..5).all(|x| (x * x + c1 * x + c0) % 5 != 0))
        .unwrap();
    assert_eq!(first, (1, 1));
    assert_eq!(make_field(5, 2).unwrap().modulus(), &[1, 1, 1]);
}

#[test]
fn canonical_generators_of_prime_fields() {
    for p in [5u32, 7, 11, 13] {
        let order = |a: u32| (1..p).find(|&e| (0..e).fold(1, |acc, _| acc * a % p) == 1).unwrap();
        let smallest = (1..p).find(|&a| order(a) == p - 1).unwrap();
        assert_eq!(make_field(p as u64, 1).unwrap().generator(), smallest);
    }
    assert_eq!(make_field(13, 1).unwrap().primitive_nth_root(12).unwrap(), 2);
}

#[test]
fn long_division_example() {
    let f = make_field(5, 1).unwrap();
    let (quo, rem) = Polynomial::cycle(&f, 8)
        .divmod(&Polynomial::binomial(&f, 2, 2))
        .unwrap();
    assert!(rem.is_zero());
    assert_eq!(quo.coeffs(), &[3, 0, 4, 0, 2, 0, 1]);
    let gf = Gf::prime(5);
    // x^8 - 1 = x^8 + 4 over F_5
    let mut cycle = vec![4, 0, 0, 0, 0, 0, 0, 0, 1];
    assert!(gf.rem(&cycle, &[3, 0, 1]).iter().all(|&c| c == 0));
    cycle[0] = 0;
    assert!(!gf.rem(&cycle, &[3, 0, 1]).iter().all(|&c| c == 0));
}

#[test]
fn root_product_over_f25() {
    let base = make_field(5, 1).unwrap();
    let ext = make_field(5, 2).unwrap();
    let emb = Embedding::new(&base, &ext).unwrap();
    let two = emb.lift_raw(2);
    let roots_of_two: Vec<u32> = (0..25).filter(|&v| ext.mul(v, v) == two).collect();
    assert_eq!(roots_of_two.len(), 2);
    let roots: Vec<_> = [1, two]
        .into_iter()
        .chain(roots_of_two)
        .map(|v| ext.element(v).unwrap())
        .collect();
    let g = Polynomial::from_roots(&roots).unwrap().project(&emb).unwrap();
    assert_eq!(g.to_string(), "x^4 + 2x^3 + x + 1");
}

#[test]
fn distance_matches_full_word_scan() {
    let cases: Vec<(Gf, LrcCode)> = vec![
        (Gf::prime(5), build("thm-1.1-ii", SchemeParams::new(5, 8, 3))),
        (Gf::four(), build("thm-1.1-i", SchemeParams::new(4, 9, 2))),
        (Gf::prime(7), build("ex-3.2", SchemeParams::with_distance(7, 6, 2, 2))),
        (Gf::prime(7), build("ex-3.2", SchemeParams::with_distance(7, 6, 2, 3))),
    ];
    for (gf, code) in cases {
        let g = code.code().generator().coeffs().to_vec();
        let brute = distance_over_all_words(&gf, &g, code.n());
        assert_eq!(brute, code.d_claimed(), "{code}");
        assert_eq!(min_distance_exhaustive(code.code(), DEFAULT_BUDGET), Distance::Exact(brute));
        let dual = dual_distance_over_all_words(&gf, &g, code.n());
        assert_eq!(dual_distance_exact(code.code(), DEFAULT_BUDGET), Distance::Exact(dual));
        assert!(dual <= code.r() + 1);
    }
}

#[test]
fn distance_matches_product_enumeration() {
    for (q, code) in [
        (11, build("ex-3.3", SchemeParams::with_distance(11, 12, 3, 10))),
        (13, build("ex-3.2", SchemeParams::with_distance(13, 12, 2, 6))),
        (13, build("ex-3.2", SchemeParams::with_distance(13, 12, 3, 7))),
    ] {
        let gf = Gf::prime(q);
        let g = code.code().generator().coeffs().to_vec();
        let brute = gf
            .codewords(&g, code.n())
            .iter()
            .map(|w| weight(w))
            .filter(|&w| w > 0)
            .min()
            .unwrap();
        assert_eq!(brute, code.d_claimed(), "{code}");
        assert_eq!(min_distance_exhaustive(code.code(), DEFAULT_BUDGET), Distance::Exact(brute));
    }
}

#[test]
fn locality_matches_definition() {
    for (gf, code) in [
        (Gf::prime(5), build("thm-1.1-ii", SchemeParams::new(5, 8, 3))),
        (Gf::four(), build("thm-1.1-i", SchemeParams::new(4, 9, 2))),
    ] {
        let g = code.code().generator().coeffs().to_vec();
        let words = gf.codewords(&g, code.n());
        let r = code.r();
        for r_test in [r - 1, r] {
            let literal = (0..code.n()).all(|i| has_repair_set(&words, code.n(), i, r_test));
            let check = verify_locality(code.code(), r_test, DEFAULT_BUDGET).unwrap();
            assert_eq!(check.holds, literal, "{code} r_test = {r_test}");
        }
    }
}

#[test]
fn worked_example_on_the_alpha_two_code() {
    let f = make_field(5, 1).unwrap();
    let reference = build("thm-1.1-ii", SchemeParams::new(5, 8, 3));
    let g = Polynomial::new(&f, vec![1, 1, 0, 2, 1]).unwrap();
    let code = make_cyclic(&f, 8, g).unwrap();
    assert!(code.dual().contains_raw(&[1, 0, 2, 0, 4, 0, 3, 0]).unwrap());
    let two = f.element(2).unwrap();
    let lrc = LrcCode::from_parts(
        code,
        3,
        4,
        "thm-1.1-ii",
        reference.beta().clone(),
        Some(two.clone()),
        Some(two),
    )
    .unwrap();
    let v = repair_vector(&lrc, 0).unwrap();
    assert_eq!((v.support, v.coeffs), (vec![0, 2, 4, 6], vec![1, 2, 4, 3]));
    // hand inverse check: -(2*0 + 4*1 + 3*0) = 1 over F_5
    let gf = Gf::prime(5);
    let s = gf.dot(&[2, 4, 3], &[0, 1, 0]);
    assert_eq!(gf.mul[gf.neg(s) as usize][gf.inv(1) as usize], 1);
}

#[test]
fn canonical_instance_generators() {
    // frozen after the checks above; each divides x^n - 1 by independent division
    let cases: [(&str, SchemeParams, &[u32]); 6] = [
        ("thm-1.1-i", SchemeParams::new(4, 9, 2), &[3, 3, 0, 1, 1]),
        ("thm-1.1-ii", SchemeParams::new(5, 8, 3), &[1, 2, 0, 1, 1]),
        ("thm-3.4", SchemeParams { q: 5, n: None, r: 3, d: None }, &[1, 2, 0, 1, 1]),
        ("ex-3.2", SchemeParams::with_distance(13, 12, 2, 5), &[5, 6, 12, 0, 8, 7, 1]),
        ("ex-3.2", SchemeParams::with_distance(13, 12, 2, 6), &[5, 11, 0, 10, 7, 5, 0, 1]),
        ("ex-3.3", SchemeParams::with_distance(11, 12, 3, 10), &[10, 6, 3, 2, 8, 3, 9, 8, 5, 1]),
    ];
    for (scheme, params, g) in cases {
        let code = build(scheme, params);
        assert_eq!(code.code().generator().coeffs(), g, "{scheme}");
        let gf = if code.field().order() == 4 { Gf::four() } else { Gf::prime(code.field().order()) };
        let mut cycle = vec![0u32; code.n() + 1];
        cycle[0] = gf.neg(1);
        cycle[code.n()] = 1;
        assert!(gf.rem(&cycle, g).iter().all(|&c| c == 0), "{scheme}");
    }
}
