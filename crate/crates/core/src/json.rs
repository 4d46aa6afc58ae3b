//! JSON encoding of rings, groups, biquandles, brackets, cocycles and diagrams.
//!
//! Element labels in files are 1-based; the in-memory API is 0-based.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value as Json};
use thiserror::Error;

use crate::algebra::{AbelianGroup, AlgebraError, GroupElement, GroupKind, Ring, RingElement, RingKind, Value};
use crate::biquandle::{Biquandle, BiquandleError, BiquandleTables};
use crate::bracket::{BiquandleBracket, BracketData};
use crate::cocycle::{CocycleData, TwoCocycle};
use crate::diagram::{DiagramError, LinkDiagram};
use crate::matrix::Matrix;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: {source}")]
    Algebra { path: String, source: AlgebraError },
    #[error("biquandle: {0}")]
    Biquandle(#[from] BiquandleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn schema(path: &str, message: impl Into<String>) -> JsonError {
    JsonError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn algebra(path: &str) -> impl FnOnce(AlgebraError) -> JsonError + '_ {
    move |source| JsonError::Algebra {
        path: path.to_string(),
        source,
    }
}

fn field<'a>(v: &'a Json, key: &str, path: &str) -> Result<&'a Json, JsonError> {
    v.as_object()
        .ok_or_else(|| schema(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| schema(path, format!("missing field '{key}'")))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn as_i64(v: &Json, path: &str) -> Result<i64, JsonError> {
    v.as_i64().ok_or_else(|| schema(path, "expected an integer"))
}

fn as_u64(v: &Json, path: &str) -> Result<u64, JsonError> {
    v.as_u64().ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Json, path: &str) -> Result<&'a Vec<Json>, JsonError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn as_str<'a>(v: &'a Json, path: &str) -> Result<&'a str, JsonError> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

pub fn ring_to_json(ring: &Ring) -> Json {
    match ring.kind() {
        RingKind::Modular { n } => json!({"type": "Zn", "n": n}),
        RingKind::Quotient { modulus, poly } => json!({"type": "quotient", "mod": modulus, "poly": poly}),
        RingKind::Laurent { vars } => json!({"type": "laurent", "vars": vars}),
    }
}

pub fn ring_from_json(v: &Json) -> Result<Ring, JsonError> {
    ring_at(v, "ring")
}

fn ring_at(v: &Json, path: &str) -> Result<Ring, JsonError> {
    let kind = as_str(field(v, "type", path)?, &join(path, "type"))?;
    match kind {
        "Zn" => {
            let n = as_u64(field(v, "n", path)?, &join(path, "n"))?;
            Ring::modular(n).map_err(algebra(path))
        }
        "quotient" => {
            let m = as_u64(field(v, "mod", path)?, &join(path, "mod"))?;
            let p = join(path, "poly");
            let poly = as_array(field(v, "poly", path)?, &p)?
                .iter()
                .map(|c| as_i64(c, &p))
                .collect::<Result<Vec<_>, _>>()?;
            Ring::quotient(m, &poly).map_err(algebra(path))
        }
        "laurent" => {
            let p = join(path, "vars");
            let vars = as_array(field(v, "vars", path)?, &p)?
                .iter()
                .map(|s| as_str(s, &p))
                .collect::<Result<Vec<_>, _>>()?;
            Ring::laurent(&vars).map_err(algebra(path))
        }
        other => Err(schema(&join(path, "type"), format!("unknown ring type '{other}'"))),
    }
}

pub fn element_to_json(x: &RingElement) -> Json {
    match x.value() {
        Value::Mod(a) => json!(a),
        Value::Poly(c) => json!(c),
        Value::Laurent(terms) => {
            let vars = x.ring().variables();
            Json::Array(
                terms
                    .iter()
                    .map(|(e, k)| {
                        let mono: Map<String, Json> = vars
                            .iter()
                            .zip(e)
                            .filter(|(_, p)| **p != 0)
                            .map(|(v, p)| (v.clone(), json!(p)))
                            .collect();
                        json!([k, mono])
                    })
                    .collect(),
            )
        }
    }
}

/// Decodes an element of `ring`. A bare integer is accepted for every ring.
pub fn element_from_json(ring: &Ring, v: &Json) -> Result<RingElement, JsonError> {
    element_at(ring, v, "element")
}

fn element_at(ring: &Ring, v: &Json, path: &str) -> Result<RingElement, JsonError> {
    if let Some(k) = v.as_i64() {
        return Ok(ring.int(k));
    }
    let items = as_array(v, path)?;
    match ring.kind() {
        RingKind::Modular { .. } => Err(schema(path, "expected an integer")),
        RingKind::Quotient { .. } => {
            let coeffs = items.iter().map(|c| as_i64(c, path)).collect::<Result<Vec<_>, _>>()?;
            ring.poly(&coeffs).map_err(algebra(path))
        }
        RingKind::Laurent { vars } => {
            let mut terms = Vec::with_capacity(items.len());
            for term in items {
                let pair = as_array(term, path)?;
                if pair.len() != 2 {
                    return Err(schema(path, "expected [coefficient, {variable: exponent}]"));
                }
                let k = as_i64(&pair[0], path)?;
                let mono = pair[1]
                    .as_object()
                    .ok_or_else(|| schema(path, "expected a monomial object"))?;
                let mut e = vec![0i64; vars.len()];
                for (name, p) in mono {
                    let slot = vars
                        .iter()
                        .position(|v| v == name)
                        .ok_or_else(|| schema(path, format!("unknown variable '{name}'")))?;
                    e[slot] += as_i64(p, path)?;
                }
                terms.push((e, k));
            }
            ring.laurent_from_terms(terms).map_err(algebra(path))
        }
    }
}

pub fn group_to_json(group: &AbelianGroup) -> Json {
    match group.kind() {
        GroupKind::FreeAbelian { symbols } => json!({"type": "free_abelian", "symbols": symbols}),
        GroupKind::RingUnits(r) => json!({"type": "ring_units", "ring": ring_to_json(r)}),
    }
}

pub fn group_from_json(v: &Json) -> Result<AbelianGroup, JsonError> {
    group_at(v, "group")
}

fn group_at(v: &Json, path: &str) -> Result<AbelianGroup, JsonError> {
    let kind = as_str(field(v, "type", path)?, &join(path, "type"))?;
    match kind {
        "free_abelian" => {
            let p = join(path, "symbols");
            let symbols = as_array(field(v, "symbols", path)?, &p)?
                .iter()
                .map(|s| as_str(s, &p))
                .collect::<Result<Vec<_>, _>>()?;
            AbelianGroup::free_abelian(&symbols).map_err(algebra(path))
        }
        "ring_units" => Ok(AbelianGroup::ring_units(ring_at(
            field(v, "ring", path)?,
            &join(path, "ring"),
        )?)),
        other => Err(schema(&join(path, "type"), format!("unknown group type '{other}'"))),
    }
}

pub fn group_element_to_json(x: &GroupElement) -> Json {
    match x {
        GroupElement::Free(powers) => Json::Object(
            powers
                .iter()
                .filter(|(_, p)| **p != 0)
                .map(|(s, p)| (s.clone(), json!(p)))
                .collect(),
        ),
        GroupElement::Unit(u) => element_to_json(u),
    }
}

pub fn group_element_from_json(group: &AbelianGroup, v: &Json) -> Result<GroupElement, JsonError> {
    group_element_at(group, v, "element")
}

fn group_element_at(group: &AbelianGroup, v: &Json, path: &str) -> Result<GroupElement, JsonError> {
    match group.kind() {
        GroupKind::FreeAbelian { .. } => {
            let obj = v
                .as_object()
                .ok_or_else(|| schema(path, "expected {symbol: exponent}"))?;
            let mut powers = BTreeMap::new();
            for (s, p) in obj {
                *powers.entry(s.as_str()).or_insert(0) += as_i64(p, path)?;
            }
            let powers: Vec<(&str, i64)> = powers.into_iter().collect();
            group.word(&powers).map_err(algebra(path))
        }
        GroupKind::RingUnits(r) => {
            let x = element_at(r, v, path)?;
            group.unit(x).map_err(algebra(path))
        }
    }
}

fn matrix_at<T>(
    v: &Json,
    path: &str,
    n: usize,
    mut entry: impl FnMut(&Json, &str) -> Result<T, JsonError>,
) -> Result<Matrix<T>, JsonError> {
    let rows = as_array(v, path)?;
    if rows.len() != n {
        return Err(schema(path, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{}]", i + 1);
        let row = as_array(row, &rp)?;
        if row.len() != n {
            return Err(schema(&rp, format!("expected {n} entries, found {}", row.len())));
        }
        let mut r = Vec::with_capacity(n);
        for (j, e) in row.iter().enumerate() {
            r.push(entry(e, &format!("{path}[{}][{}]", i + 1, j + 1))?);
        }
        out.push(r);
    }
    Ok(Matrix::from_rows(out, Some(n)).expect("shape checked"))
}

fn matrix_to_json<T>(m: &Matrix<T>, f: impl Fn(&T) -> Json) -> Json {
    Json::Array(m.rows().map(|r| Json::Array(r.iter().map(&f).collect())).collect())
}

pub fn tables_to_json(t: &BiquandleTables) -> Json {
    json!({"size": t.under.len(), "under": t.under, "over": t.over})
}

pub fn biquandle_to_json(b: &Biquandle) -> Json {
    tables_to_json(&BiquandleTables::from(b))
}

/// Reads operation tables without checking the axioms.
pub fn tables_from_json(v: &Json) -> Result<BiquandleTables, JsonError> {
    tables_at(v, "biquandle")
}

fn tables_at(v: &Json, path: &str) -> Result<BiquandleTables, JsonError> {
    let n = as_u64(field(v, "size", path)?, &join(path, "size"))? as usize;
    let table = |key: &str| -> Result<Vec<Vec<usize>>, JsonError> {
        let p = join(path, key);
        let m = matrix_at(field(v, key, path)?, &p, n, |e, ep| Ok(as_u64(e, ep)? as usize))?;
        Ok(m.to_rows())
    };
    Ok(BiquandleTables {
        under: table("under")?,
        over: table("over")?,
    })
}

/// Reads tables and requires the biquandle axioms to hold.
pub fn biquandle_from_json(v: &Json) -> Result<Biquandle, JsonError> {
    Ok(tables_from_json(v)?.build()?)
}

pub fn bracket_data_to_json(d: &BracketData) -> Json {
    json!({
        "biquandle": biquandle_to_json(&d.biquandle),
        "ring": ring_to_json(&d.ring),
        "A": matrix_to_json(&d.a, element_to_json),
        "B": matrix_to_json(&d.b, element_to_json),
    })
}

pub fn bracket_to_json(b: &BiquandleBracket) -> Json {
    bracket_data_to_json(&BracketData::from(b))
}

/// Reads a bracket file. The biquandle must be valid; the bracket conditions
/// are left to the caller.
pub fn bracket_data_from_json(v: &Json) -> Result<BracketData, JsonError> {
    let biquandle = tables_at(field(v, "biquandle", "")?, "biquandle")?.build()?;
    let ring = ring_at(field(v, "ring", "")?, "ring")?;
    let n = biquandle.size();
    let a = matrix_at(field(v, "A", "")?, "A", n, |e, p| element_at(&ring, e, p))?;
    let b = matrix_at(field(v, "B", "")?, "B", n, |e, p| element_at(&ring, e, p))?;
    Ok(BracketData { biquandle, ring, a, b })
}

pub fn cocycle_data_to_json(d: &CocycleData) -> Json {
    json!({
        "biquandle": biquandle_to_json(&d.biquandle),
        "group": group_to_json(&d.group),
        "phi": matrix_to_json(&d.phi, group_element_to_json),
    })
}

pub fn cocycle_to_json(c: &TwoCocycle) -> Json {
    cocycle_data_to_json(&CocycleData::from(c))
}

pub fn cocycle_data_from_json(v: &Json) -> Result<CocycleData, JsonError> {
    let biquandle = tables_at(field(v, "biquandle", "")?, "biquandle")?.build()?;
    let group = group_at(field(v, "group", "")?, "group")?;
    let phi = matrix_at(field(v, "phi", "")?, "phi", biquandle.size(), |e, p| {
        group_element_at(&group, e, p)
    })?;
    Ok(CocycleData { biquandle, group, phi })
}

/// Parses a diagram file: PD text, or JSON `{"pd": "..."}` /
/// `{"braid": {"strands": n, "word": [...]}}`.
pub fn diagram_from_str(text: &str) -> Result<LinkDiagram, JsonError> {
    if !text.trim_start().starts_with('{') {
        return Ok(LinkDiagram::parse_pd(text)?);
    }
    let v: Json = serde_json::from_str(text)?;
    if let Some(pd) = v.get("pd") {
        return Ok(LinkDiagram::parse_pd(as_str(pd, "pd")?)?);
    }
    if let Some(b) = v.get("braid") {
        let strands = as_u64(field(b, "strands", "braid")?, "braid.strands")? as usize;
        let word = as_array(field(b, "word", "braid")?, "braid.word")?
            .iter()
            .map(|g| as_i64(g, "braid.word").map(|g| g as i32))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(LinkDiagram::braid_closure(strands, &word)?);
    }
    Err(schema("", "expected a 'pd' or 'braid' field"))
}

pub fn diagram_to_json(d: &LinkDiagram) -> Json {
    json!({"pd": d.to_pd()})
}

/// Deterministic rendering: sorted keys, two-space indent, and any value
/// whose compact form fits on a line kept on one line.
pub fn to_canonical_string(v: &Json) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

const LINE: usize = 72;

fn write_value(v: &Json, indent: usize, out: &mut String) {
    let compact = serde_json::to_string(v).expect("serializable");
    if compact.len() + indent <= LINE || !(v.is_array() || v.is_object()) {
        out.push_str(&compact);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Json::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
        }
        Json::Object(map) => {
            out.push_str("{\n");
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            for (i, k) in keys.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("string"));
                out.push_str(": ");
                write_value(&map[k.as_str()], indent + 1, out);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
        }
        _ => unreachable!(),
    }
    out.push_str(&"  ".repeat(indent));
    out.push(if v.is_array() { ']' } else { '}' });
}
