//! JSON forms of braces, factor sets, cohomology results and extensions.
//! Objects are `serde_json::Value` maps, whose keys serialize sorted.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::brace::{validate_brace, SkewBrace};
use crate::cohomology::{BraceFactorSet, Cocycle, CohomologyGroup, GroupFactorSet, MultiplierResult};
use crate::error::{Error, Result};
use crate::extension::{build_extension, AnnihilatorExtension};
use crate::linalg::FinAbGroup;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BraceDoc {
    order: usize,
    add: Vec<Vec<usize>>,
    circ: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorSetDoc {
    modulus: u64,
    alpha: Vec<Vec<u64>>,
    mu: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct ExtensionDoc {
    #[serde(rename = "K")]
    k: Vec<u64>,
    #[serde(rename = "Q")]
    q: Value,
    cocycle: Vec<Value>,
}

fn parse_err(e: serde_json::Error) -> Error {
    if e.line() == 0 {
        Error::Parse(e.to_string())
    } else {
        Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
    }
}

pub fn brace_to_json(q: &SkewBrace) -> Value {
    json!({ "order": q.order(), "add": q.add_rows(), "circ": q.circ_rows() })
}

fn brace_from_doc(doc: BraceDoc) -> Result<SkewBrace> {
    if doc.add.len() != doc.order || doc.circ.len() != doc.order {
        return Err(Error::MismatchedData(format!(
            "declared order {} but tables have {} and {} rows",
            doc.order,
            doc.add.len(),
            doc.circ.len()
        )));
    }
    validate_brace(&doc.add, &doc.circ)
}

pub fn brace_from_str(text: &str) -> Result<SkewBrace> {
    brace_from_doc(serde_json::from_str(text).map_err(parse_err)?)
}

pub fn brace_from_value(v: &Value) -> Result<SkewBrace> {
    brace_from_doc(BraceDoc::deserialize(v).map_err(parse_err)?)
}

pub fn group_to_json(g: &FinAbGroup) -> Value {
    json!(g.invariants())
}

pub fn factor_set_to_json(c: &BraceFactorSet) -> Value {
    json!({ "modulus": c.modulus(), "alpha": c.alpha_rows(), "mu": c.mu_rows() })
}

pub fn group_factor_set_to_json(c: &GroupFactorSet) -> Value {
    json!({ "modulus": c.modulus(), "f": c.rows() })
}

/// A validated factor set over `q`.
pub fn factor_set_from_value(q: &SkewBrace, v: &Value) -> Result<BraceFactorSet> {
    let doc = FactorSetDoc::deserialize(v).map_err(parse_err)?;
    BraceFactorSet::new(q, doc.modulus, &doc.alpha, &doc.mu)
}

/// Rendering of cocycles of either kind.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for BraceFactorSet {
    fn to_json(&self) -> Value {
        factor_set_to_json(self)
    }
}

impl ToJson for GroupFactorSet {
    fn to_json(&self) -> Value {
        group_factor_set_to_json(self)
    }
}

pub fn cohomology_to_json<C: Cocycle + ToJson>(h: &CohomologyGroup<C>) -> Value {
    let gens: Vec<Value> = h.generators().iter().map(ToJson::to_json).collect();
    json!({ "invariant_factors": h.group().invariants(), "modulus": h.modulus(), "generators": gens })
}

pub fn multiplier_to_json<C: Cocycle + ToJson>(r: &MultiplierResult<C>) -> Value {
    let gens: Vec<Value> = r.representatives().iter().map(ToJson::to_json).collect();
    json!({ "multiplier": r.group().invariants(), "modulus": r.modulus(), "generators": gens })
}

pub fn extension_to_json(ext: &AnnihilatorExtension) -> Value {
    let cocycle: Vec<Value> = ext.cocycle().iter().map(factor_set_to_json).collect();
    json!({
        "K": ext.kernel_group().invariants(),
        "Q": brace_to_json(ext.base()),
        "cocycle": cocycle,
    })
}

pub fn extension_from_value(v: &Value) -> Result<AnnihilatorExtension> {
    let doc = ExtensionDoc::deserialize(v).map_err(parse_err)?;
    let q = brace_from_value(&doc.q)?;
    let k = FinAbGroup::from_cyclic_orders(&doc.k);
    if k.invariants() != doc.k.as_slice() {
        return Err(Error::Parse(format!("K = {:?} is not in invariant-factor form", doc.k)));
    }
    let parts = doc
        .cocycle
        .iter()
        .map(|c| factor_set_from_value(&q, c))
        .collect::<Result<Vec<_>>>()?;
    build_extension(&k, &parts, &q)
}

pub fn extension_from_str(text: &str) -> Result<AnnihilatorExtension> {
    extension_from_value(&serde_json::from_str(text).map_err(parse_err)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::build_schur_cover;
    use crate::group::GroupTable;

    #[test]
    fn brace_round_trip() {
        let q = SkewBrace::b_p(3).unwrap();
        let text = serde_json::to_string(&brace_to_json(&q)).unwrap();
        assert!(text.starts_with("{\"add\""));
        assert_eq!(brace_from_str(&text).unwrap(), q);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(brace_from_str("{\"order\": 2, \"add\": [[0,1],[1,0]]"), Err(Error::Parse(m)) if m.contains("line 1")));
        let bad = r#"{"order": 2, "add": [[0,1],[1,0]], "circ": [[0,1],[1,1]]}"#;
        assert!(matches!(brace_from_str(bad), Err(Error::NotAGroup { .. })));
        let short = r#"{"order": 3, "add": [[0,1],[1,0]], "circ": [[0,1],[1,0]]}"#;
        assert!(matches!(brace_from_str(short), Err(Error::MismatchedData(_))));
    }

    #[test]
    fn extension_round_trip() {
        let ext = build_schur_cover(&SkewBrace::trivial(&GroupTable::cyclic(2))).unwrap();
        let v = extension_to_json(&ext);
        let back = extension_from_value(&v).unwrap();
        assert_eq!(back.brace(), ext.brace());
        assert_eq!(extension_to_json(&back), v);
    }
}
