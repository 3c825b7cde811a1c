//! JSON persistence of constructed codes.
//!
//! Keys are written in declaration order and elements use the canonical
//! encoding, so saving the same code twice gives identical bytes. Loading
//! rebuilds the code from `g` and checks every stored derived quantity
//! against a recomputation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::LrcCode;
use crate::cyclic::make_cyclic;
use crate::field::{ElementRepr, Field, FieldDescriptor, DEFAULT_MAX_ORDER};
use crate::poly::Polynomial;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CodeFileError {
    #[error("malformed code file: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("code file fails {} invariant check(s): {}", .0.len(), .0.join("; "))]
    Invalid(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaRecord {
    pub field: FieldDescriptor,
    pub value: ElementRepr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub schema_version: u32,
    pub scheme: String,
    pub q: u32,
    pub p: u32,
    pub m: u32,
    pub modulus: Option<Vec<u32>>,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub d_claimed: usize,
    pub g: Vec<ElementRepr>,
    pub h: Vec<ElementRepr>,
    pub dual_g: Vec<ElementRepr>,
    pub beta: BetaRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ElementRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<ElementRepr>,
}

impl CodeFile {
    pub fn from_code(code: &LrcCode) -> CodeFile {
        let field = code.field();
        let desc = field.descriptor();
        let cyc = code.code();
        let beta = code.beta();
        CodeFile {
            schema_version: SCHEMA_VERSION,
            scheme: code.scheme().to_string(),
            q: field.order(),
            p: desc.p,
            m: desc.m,
            modulus: desc.modulus,
            n: code.n(),
            k: code.k(),
            r: code.r(),
            d_claimed: code.d_claimed(),
            g: cyc.generator().to_repr(),
            h: cyc.parity().to_repr(),
            dual_g: cyc.dual_generator().to_repr(),
            beta: BetaRecord {
                field: beta.field().descriptor(),
                value: beta.field().encode(beta.value()),
            },
            alpha: code.alpha().map(|a| field.encode(a.value())),
            gamma: code.gamma().map(|a| field.encode(a.value())),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("code file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<CodeFile, CodeFileError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuilds the code, listing every invariant that fails.
    pub fn to_code(&self) -> Result<LrcCode, CodeFileError> {
        let mut fails = Vec::new();
        let code = self.rebuild(&mut fails);
        match code {
            Some(c) if fails.is_empty() => Ok(c),
            _ => Err(CodeFileError::Invalid(fails)),
        }
    }

    fn rebuild(&self, fails: &mut Vec<String>) -> Option<LrcCode> {
        if self.schema_version != SCHEMA_VERSION {
            fails.push(format!(
                "schema_version {} is not {SCHEMA_VERSION}",
                self.schema_version
            ));
        }
        let desc = FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        };
        let field = Field::from_descriptor(&desc, DEFAULT_MAX_ORDER)
            .map_err(|e| fails.push(format!("field: {e}")))
            .ok()?;
        if field.order() != self.q {
            fails.push(format!("q = {} but p^m = {}", self.q, field.order()));
        }
        let g = Polynomial::from_repr(&field, &self.g)
            .map_err(|e| fails.push(format!("g: {e}")))
            .ok()?;
        let cyc = make_cyclic(&field, self.n, g)
            .map_err(|e| fails.push(format!("g: {e}")))
            .ok()?;
        if cyc.k() != self.k {
            fails.push(format!("k = {} but n - deg g = {}", self.k, cyc.k()));
        }
        if cyc.parity().to_repr() != self.h {
            fails.push("h differs from (x^n - 1) / g".to_string());
        }
        if cyc.dual_generator().to_repr() != self.dual_g {
            fails.push("dual_g differs from the monic reciprocal of h".to_string());
        }

        let beta = self.load_beta(&field, fails)?;
        let mut base_element = |name: &str, repr: &Option<ElementRepr>| -> Option<_> {
            let repr = repr.as_ref()?;
            field
                .decode(repr)
                .and_then(|v| field.element(v))
                .map_err(|e| fails.push(format!("{name}: {e}")))
                .ok()
        };
        let alpha = base_element("alpha", &self.alpha);
        let gamma = base_element("gamma", &self.gamma);
        let code = LrcCode::from_parts(cyc, self.r, self.d_claimed, self.scheme.clone(), beta, alpha, gamma)
            .map_err(|e| fails.push(e.to_string()))
            .ok()?;
        Some(code)
    }

    fn load_beta(&self, base: &Field, fails: &mut Vec<String>) -> Option<crate::field::FieldElement> {
        let ext = Field::from_descriptor(&self.beta.field, DEFAULT_MAX_ORDER)
            .map_err(|e| fails.push(format!("beta field: {e}")))
            .ok()?;
        if ext.characteristic() != base.characteristic() || ext.degree() % base.degree() != 0 {
            fails.push(format!(
                "beta field of order {} does not contain F_{}",
                ext.order(),
                base.order()
            ));
            return None;
        }
        let v = ext
            .decode(&self.beta.value)
            .map_err(|e| fails.push(format!("beta: {e}")))
            .ok()?;
        match ext.element_order(v) {
            Ok(o) if o == self.n as u64 => {}
            Ok(o) => fails.push(format!("beta has order {o}, expected n = {}", self.n)),
            Err(e) => fails.push(format!("beta: {e}")),
        }
        ext.element(v).ok()
    }
}

pub fn save(code: &LrcCode) -> String {
    CodeFile::from_code(code).to_json()
}

pub fn load(text: &str) -> Result<LrcCode, CodeFileError> {
    CodeFile::from_json(text)?.to_code()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{Construction, ConjugatePairFamily, DistanceFour, SchemeParams};

    #[test]
    fn round_trip_is_byte_identical() {
        for code in [
            DistanceFour.construct(&SchemeParams::new(5, 8, 3)).unwrap(),
            ConjugatePairFamily
                .construct(&SchemeParams::with_distance(11, 12, 3, 10))
                .unwrap(),
        ] {
            let text = save(&code);
            let back = load(&text).unwrap();
            assert_eq!(back, code);
            assert_eq!(save(&back), text);
        }
    }

    #[test]
    fn key_order_is_stable() {
        let code = DistanceFour.construct(&SchemeParams::new(5, 8, 3)).unwrap();
        let text = save(&code);
        let keys: Vec<usize> = ["schema_version", "scheme", "q", "modulus", "d_claimed", "dual_g", "beta", "alpha", "gamma"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{text}");
    }

    #[test]
    fn tampered_coefficient_is_reported() {
        let code = DistanceFour.construct(&SchemeParams::new(5, 8, 3)).unwrap();
        let mut file = CodeFile::from_code(&code);
        file.g[1] = ElementRepr::Residue(4);
        match file.to_code() {
            Err(CodeFileError::Invalid(f)) => assert!(!f.is_empty()),
            other => panic!("{other:?}"),
        }
        let mut file = CodeFile::from_code(&code);
        file.d_claimed = 5;
        file.h[0] = ElementRepr::Residue(0);
        match file.to_code() {
            Err(CodeFileError::Invalid(f)) => assert_eq!(f.len(), 2, "{f:?}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(load("{"), Err(CodeFileError::Malformed(_))));
        assert!(matches!(load("{\"schema_version\": 1}"), Err(CodeFileError::Malformed(_))));
    }
}
