use std::fs;

use bqlab_core::biquandle::BiquandleError;
use bqlab_core::json::{self, JsonError};
use bqlab_core::{fixtures, Biquandle, BiquandleTables, BracketData, CocycleData, LinkDiagram, Ring, RingElement};
use serde_json::{json, Value};

use crate::report::{CliError, Res};

/// Reads `fixture:NAME` from the built-in corpus, anything else from disk.
pub fn read_source(src: &str) -> Res<String> {
    if let Some(name) = src.strip_prefix("fixture:") {
        return fixtures::find(name)
            .map(|f| f.contents())
            .ok_or_else(|| CliError::msg(format!("unknown fixture '{name}'")));
    }
    fs::read_to_string(src).map_err(|e| CliError::msg(format!("cannot read {src}: {e}")))
}

pub fn read_json(src: &str) -> Res<Value> {
    let text = read_source(src)?;
    serde_json::from_str(&text).map_err(|e| CliError::msg(format!("{src}: invalid JSON: {e}")))
}

/// Schema problems are errors; an embedded biquandle that fails its axioms is
/// a violation of the file's content.
pub fn json_error(src: &str, e: JsonError) -> CliError {
    match e {
        JsonError::Biquandle(BiquandleError::Axioms(report)) => CliError::Violation {
            summary: format!("{src}: the biquandle fails its axioms: {report}"),
            payload: json!({ "biquandle": report }),
        },
        e => CliError::msg(format!("{src}: {e}")),
    }
}

pub fn tables(src: &str) -> Res<BiquandleTables> {
    json::tables_from_json(&read_json(src)?).map_err(|e| json_error(src, e))
}

pub fn biquandle(src: &str) -> Res<Biquandle> {
    let t = tables(src)?;
    t.build().map_err(|e| json_error(src, e.into()))
}

pub fn bracket(src: &str) -> Res<BracketData> {
    json::bracket_data_from_json(&read_json(src)?).map_err(|e| json_error(src, e))
}

pub fn cocycle(src: &str) -> Res<CocycleData> {
    json::cocycle_data_from_json(&read_json(src)?).map_err(|e| json_error(src, e))
}

pub fn diagram(src: &str) -> Res<LinkDiagram> {
    json::diagram_from_str(&read_source(src)?).map_err(|e| json_error(src, e))
}

/// `Z<n>`, inline ring JSON, or a source holding ring JSON (or an object,
/// such as a bracket, with a `ring` field).
pub fn ring(arg: &str) -> Res<Ring> {
    if let Some(n) = arg.strip_prefix('Z').and_then(|n| n.parse::<u64>().ok()) {
        return Ok(Ring::modular(n)?);
    }
    let v = if arg.trim_start().starts_with('{') {
        serde_json::from_str(arg).map_err(|e| CliError::msg(format!("ring: invalid JSON: {e}")))?
    } else {
        read_json(arg)?
    };
    let v = match v.get("ring") {
        Some(inner) if v.get("type").is_none() => inner.clone(),
        _ => v,
    };
    json::ring_from_json(&v).map_err(|e| json_error(arg, e))
}

pub fn element(ring: &Ring, text: &str) -> Res<RingElement> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::msg(format!("invalid element '{text}': {e}")))?;
    json::element_from_json(ring, &v).map_err(|e| json_error(text, e))
}

/// `"x,y"` (1-based) to a 0-based pair.
pub fn pair(text: &str, size: usize) -> Res<(usize, usize)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parse = |s: &str| s.parse::<usize>().ok().filter(|&k| (1..=size).contains(&k));
    match parts.as_slice() {
        [x, y] => match (parse(x), parse(y)) {
            (Some(x), Some(y)) => Ok((x - 1, y - 1)),
            _ => Err(CliError::msg(format!("'{text}': labels must lie in 1..={size}"))),
        },
        _ => Err(CliError::msg(format!("'{text}': expected x,y"))),
    }
}
