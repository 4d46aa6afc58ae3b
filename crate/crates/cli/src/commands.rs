use std::fs;
use std::path::Path;

use bqlab_core::algebra::{AbelianGroup, GroupElement};
use bqlab_core::biquandle::BiquandleReport;
use bqlab_core::bracket::{BracketCondition, BracketReport, BracketViolation};
use bqlab_core::cocycle::{CocycleReport, UpToConstant};
use bqlab_core::invariant::{bracket_invariant, cocycle_invariant, counting_invariant, kauffman_jones, InvariantValue};
use bqlab_core::json::{self, element_to_json, group_element_to_json};
use bqlab_core::structure::{self, Conclusion, FactorRejection, PsiCase};
use bqlab_core::{Biquandle, BiquandleKind, Coloring, LinkDiagram, Matrix, RingElement};
use serde_json::{json, Value};

use crate::args::{AnalyzeCmd, BiquandleCmd, BracketCmd, CocycleCmd, DiagramCmd, InvariantCmd, KindArg};
use crate::input;
use crate::report::{CliError, Outcome, Res};

fn matrix_json<T>(m: &Matrix<T>, f: impl Fn(&T) -> Value) -> Value {
    Value::Array(m.rows().map(|r| Value::Array(r.iter().map(&f).collect())).collect())
}

fn one_based(p: (usize, usize)) -> Value {
    json!([p.0 + 1, p.1 + 1])
}

fn write_canonical(path: &Path, v: &Value) -> Res<()> {
    fs::write(path, json::to_canonical_string(v)).map_err(|e| CliError::msg(format!("cannot write {}: {e}", path.display())))
}

fn biquandle_report_json(r: &BiquandleReport) -> Value {
    json!({
        "size": r.size,
        "passed": r.passed(),
        "violations": r.violations,
    })
}

fn biquandle_summary(r: &BiquandleReport) -> String {
    if r.passed() {
        format!("biquandle of size {}: all axioms hold", r.size)
    } else {
        let parts: Vec<String> = r
            .violations
            .iter()
            .map(|v| format!("{} at {:?}", serde_json::to_value(v.axiom).unwrap().as_str().unwrap(), v.witness))
            .collect();
        format!("not a biquandle: {}", parts.join("; "))
    }
}

pub fn biquandle(cmd: &BiquandleCmd) -> Res<Outcome> {
    match cmd {
        BiquandleCmd::Check { file } => {
            let report = input::tables(file)?.check()?;
            let mut payload = biquandle_report_json(&report);
            if report.passed() {
                let b = input::biquandle(file)?;
                payload["quandle"] = json!(b.is_quandle());
                payload["semi_transitive"] = json!(b.is_semi_transitive());
            }
            Ok(Outcome::judged(report.passed(), payload, biquandle_summary(&report)))
        }
        BiquandleCmd::Make { kind, n, out } => {
            let need = |n: &Option<usize>| n.ok_or_else(|| CliError::msg("--n is required for this kind"));
            let kind = match kind {
                KindArg::Trivial => BiquandleKind::Trivial(need(n)?),
                KindArg::Flip2 => BiquandleKind::Flip2,
                KindArg::Dihedral => BiquandleKind::Dihedral(need(n)?),
            };
            let b = Biquandle::make(kind)?;
            let v = json::biquandle_to_json(&b);
            if let Some(path) = out {
                write_canonical(path, &v)?;
            }
            Ok(Outcome::ok(json!({ "biquandle": v }), format!("{kind:?}: size {}", b.size())))
        }
        BiquandleCmd::Semitransitive { file } => {
            let b = input::biquandle(file)?;
            let w = b.semi_transitive_witness();
            let summary = match w {
                Some(x) => format!("semi-transitive, witnessed by {}", x + 1),
                None => "not semi-transitive".into(),
            };
            Ok(Outcome::ok(
                json!({ "semi_transitive": w.is_some(), "witness": w.map(|x| x + 1) }),
                summary,
            ))
        }
    }
}

fn condition_json(v: &BracketViolation) -> Value {
    let (code, equation) = match v.condition {
        BracketCondition::Units => ("units", None),
        BracketCondition::Delta => ("ii", None),
        BracketCondition::WUnit => ("w-unit", None),
        BracketCondition::W => ("i", None),
        BracketCondition::WInverse => ("i-inverse", None),
        BracketCondition::WSquare => ("w-square", None),
        BracketCondition::Exchange(k) => ("iii", Some(k)),
    };
    json!({
        "condition": code,
        "equation": equation,
        "witness": v.witness,
        "message": v.condition.to_string(),
    })
}

fn bracket_report_json(r: &BracketReport) -> Value {
    json!({
        "passed": r.passed(),
        "delta": r.delta.as_ref().map(element_to_json),
        "w": r.w.as_ref().map(element_to_json),
        "violations": r.violations.iter().map(condition_json).collect::<Vec<_>>(),
    })
}

fn bracket_summary(r: &BracketReport) -> String {
    match (r.passed(), &r.delta, &r.w) {
        (true, Some(d), Some(w)) => format!("bracket verified: delta = {d}, w = {w}"),
        _ => format!("not a bracket: {r}"),
    }
}

pub fn bracket(cmd: &BracketCmd) -> Res<Outcome> {
    match cmd {
        BracketCmd::Check { file } => {
            let report = input::bracket(file)?.check()?;
            Ok(Outcome::judged(report.passed(), bracket_report_json(&report), bracket_summary(&report)))
        }
        BracketCmd::Scale { file, by, out } => {
            let data = input::bracket(file)?;
            let c = input::element(&data.ring, by)?;
            let scaled = data.build()?.scale(&c)?;
            let v = json::bracket_to_json(&scaled);
            if let Some(path) = out {
                write_canonical(path, &v)?;
            }
            Ok(Outcome::ok(
                json!({ "bracket": v, "factor": element_to_json(&c) }),
                format!("scaled by {c}:\n{}", scaled.presentation()),
            ))
        }
    }
}

fn cocycle_report_json(r: &CocycleReport) -> Value {
    json!({ "passed": r.passed(), "violations": r.violations })
}

pub fn cocycle(cmd: &CocycleCmd) -> Res<Outcome> {
    match cmd {
        CocycleCmd::Check { file } => {
            let report = input::cocycle(file)?.check()?;
            let summary = if report.passed() {
                "2-cocycle verified".to_string()
            } else {
                format!("not a 2-cocycle: {report}")
            };
            Ok(Outcome::judged(report.passed(), cocycle_report_json(&report), summary))
        }
        CocycleCmd::UpToConstant { file } => {
            let data = input::cocycle(file)?;
            match data.up_to_constant()? {
            UpToConstant::Cocycle { constant, cocycle } => Ok(Outcome::ok(
                json!({
                    "cocycle": true,
                    "constant": group_element_to_json(&constant),
                    "reduced": json::cocycle_to_json(&cocycle),
                }),
                format!("a constant multiple of a cocycle, constant {}", group_text(&data.group, &constant)),
            )),
            UpToConstant::Rejected(v) => Ok(Outcome::judged(
                false,
                json!({ "cocycle": false, "violation": v }),
                format!("not a cocycle up to a constant: {:?} at {:?}", v.condition, v.witness),
            )),
            }
        }
    }
}

fn ring_matrix(src: &str, ring: &bqlab_core::Ring, n: usize) -> Res<Matrix<RingElement>> {
    let v = if src.trim_start().starts_with(['{', '[']) {
        serde_json::from_str(src).map_err(|e| CliError::msg(format!("phi: invalid JSON: {e}")))?
    } else {
        input::read_json(src)?
    };
    let m = v.get("phi").unwrap_or(&v);
    let rows = m.as_array().ok_or_else(|| CliError::msg(format!("{src}: expected a matrix")))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| CliError::msg(format!("{src}: expected matrix rows")))?;
        out.push(
            row.iter()
                .map(|e| json::element_from_json(ring, e).map_err(|e| input::json_error(src, e)))
                .collect::<Res<Vec<_>>>()?,
        );
    }
    Ok(Matrix::from_rows(out, Some(n))?)
}

pub fn analyze(cmd: &AnalyzeCmd) -> Res<Outcome> {
    match cmd {
        AnalyzeCmd::Ratio { bracket } => {
            let b = input::bracket(bracket)?.build()?;
            let p = structure::ratio_profile(&b);
            let list = |v: &[RingElement]| v.iter().map(element_to_json).collect::<Vec<_>>();
            let shown: Vec<String> = p.distinct.iter().map(|x| x.to_string()).collect();
            Ok(Outcome::ok(
                json!({
                    "ratios": matrix_json(&p.ratios, element_to_json),
                    "distinct": list(&p.distinct),
                    "distinct_inverse": list(&p.distinct_inverse),
                    "count": p.count(),
                    "dichotomy": p.dichotomy,
                }),
                format!("{} distinct ratio(s) A/B: {{{}}}", p.count(), shown.join(", ")),
            ))
        }
        AnalyzeCmd::Psi { bracket, base } => {
            let b = input::bracket(bracket)?.build()?;
            let base = input::pair(base, b.biquandle().size())?;
            let d = structure::theorem2_decompose(&b, base).expect("base checked");
            let diag: Vec<String> = (0..d.psi.size())
                .map(|x| match &d.psi[(x, x)] {
                    Some(v) => format!("psi({0},{0}) = {v}", x + 1),
                    None => format!("psi({0},{0}) undefined", x + 1),
                })
                .collect();
            let case = |c: &Option<PsiCase>| serde_json::to_value(c).unwrap();
            Ok(Outcome::ok(
                json!({
                    "base": one_based(base),
                    "a": element_to_json(&d.a),
                    "b": element_to_json(&d.b),
                    "psi": matrix_json(&d.psi, |v| v.as_ref().map_or(Value::Null, element_to_json)),
                    "cases": matrix_json(&d.cases, case),
                    "residuals": d.residuals.iter().map(|&p| one_based(p)).collect::<Vec<_>>(),
                }),
                format!("{}; {} residual pair(s)", diag.join(", "), d.residuals.len()),
            ))
        }
        AnalyzeCmd::Factor { bracket } => {
            let b = input::bracket(bracket)?.build()?;
            match structure::factor_constant(&b) {
                Ok(f) => Ok(Outcome::ok(
                    json!({
                        "a": element_to_json(&f.a),
                        "b": element_to_json(&f.b),
                        "cocycle": json::cocycle_to_json(&f.phi),
                    }),
                    format!("constant bracket ({}, {}) times a cocycle", f.a, f.b),
                )),
                Err(FactorRejection::RatioNotConstant { first, second }) => Ok(Outcome::judged(
                    false,
                    json!({ "rejection": "ratio-not-constant", "first": one_based(first), "second": one_based(second) }),
                    format!("ratios differ at {} and {}", one_based(first), one_based(second)),
                )),
                Err(FactorRejection::TheoremViolation(v)) => Ok(Outcome::judged(
                    false,
                    json!({ "rejection": "not-a-cocycle", "violation": v }),
                    format!("quotient is not a cocycle: {:?} at {:?}", v.condition, v.witness),
                )),
            }
        }
        AnalyzeCmd::Theorem1 { bracket, phi } => {
            let b = input::bracket(bracket)?.build()?;
            let m = ring_matrix(phi, b.ring(), b.biquandle().size())?;
            let r = structure::theorem1_verify(&b, &m)?;
            let (cocycle, detail) = match &r.cocycle {
                UpToConstant::Cocycle { constant, .. } => (true, json!({ "constant": group_element_to_json(constant) })),
                UpToConstant::Rejected(v) => (false, json!({ "violation": v })),
            };
            Ok(Outcome::judged(
                r.holds,
                json!({
                    "quotient_is_bracket": r.quotient_is_bracket(),
                    "quotient": bracket_report_json(&r.quotient),
                    "cocycle_up_to_constant": cocycle,
                    "cocycle": detail,
                    "holds": r.holds,
                }),
                format!(
                    "quotient is {}a bracket; phi is {}a cocycle up to a constant",
                    if r.quotient_is_bracket() { "" } else { "not " },
                    if cocycle { "" } else { "not " }
                ),
            ))
        }
        AnalyzeCmd::Corollaries { bracket } => {
            let b = input::bracket(bracket)?.build()?;
            let r = structure::corollary_checks(&b);
            Ok(Outcome::judged(
                r.passed(),
                json!({
                    "diagonal_orbit_failures": r.diagonal_orbit_failures.iter().map(|&p| one_based(p)).collect::<Vec<_>>(),
                    "corollary1": r.corollary1,
                    "corollary2": r.corollary2,
                    "passed": r.passed(),
                }),
                format!(
                    "{} diagonal-orbit failure(s); A = B rigidity: {}; diagonal rigidity: {}",
                    r.diagonal_orbit_failures.len(),
                    conclusion_text(&r.corollary1),
                    conclusion_text(&r.corollary2)
                ),
            ))
        }
    }
}

fn conclusion_text(c: &Conclusion) -> String {
    match c {
        Conclusion::Holds => "holds".into(),
        Conclusion::NotApplicable(why) => format!("not applicable ({why})"),
        Conclusion::Violated(why) => format!("violated ({why})"),
    }
}

fn coloring_json(d: &LinkDiagram, c: &Coloring) -> Value {
    let (edges, free) = c.labelled(d);
    json!({ "edges": edges, "free": free })
}

pub fn diagram(cmd: &DiagramCmd) -> Res<Outcome> {
    match cmd {
        DiagramCmd::Info { file } => {
            let d = input::diagram(file)?;
            let k = d.components().len();
            let linking: Vec<Vec<i64>> = (0..k)
                .map(|i| (0..k).map(|j| d.linking_number(i, j).unwrap_or(0)).collect())
                .collect();
            Ok(Outcome::ok(
                json!({
                    "pd": d.to_pd(),
                    "crossings": d.crossing_count(),
                    "components": d.component_count(),
                    "free_loops": d.free_loops(),
                    "writhe": d.writhe(),
                    "signs": d.signs(),
                    "linking_numbers": linking,
                }),
                format!(
                    "{} crossing(s), {} component(s), writhe {}",
                    d.crossing_count(),
                    d.component_count(),
                    d.writhe()
                ),
            ))
        }
        DiagramCmd::Colorings { file, biquandle } => {
            let d = input::diagram(file)?;
            let b = input::biquandle(biquandle)?;
            let cs = d.colorings(&b);
            Ok(Outcome::ok(
                json!({
                    "count": cs.len(),
                    "colorings": cs.iter().map(|c| coloring_json(&d, c)).collect::<Vec<_>>(),
                }),
                format!("{} coloring(s)", cs.len()),
            ))
        }
    }
}

fn multiset_json<T: Ord + Clone>(
    d: &LinkDiagram,
    inv: &InvariantValue<T>,
    per_coloring: bool,
    enc: impl Fn(&T) -> Value,
) -> Value {
    let mut v = json!({
        "colorings": inv.len(),
        "multiset": inv.multiset().iter().map(|(x, k)| json!({ "value": enc(x), "count": k })).collect::<Vec<_>>(),
    });
    if per_coloring {
        v["per_coloring"] = inv
            .entries()
            .iter()
            .map(|(x, c)| json!({ "coloring": coloring_json(d, c), "value": enc(x) }))
            .collect();
    }
    v
}

fn multiset_summary<T: Ord + Clone>(inv: &InvariantValue<T>, show: impl Fn(&T) -> String) -> String {
    let parts: Vec<String> = inv
        .multiset()
        .iter()
        .map(|(x, k)| if *k == 1 { show(x) } else { format!("{} x{k}", show(x)) })
        .collect();
    format!("{{{}}} over {} coloring(s)", parts.join(", "), inv.len())
}

fn group_text(g: &AbelianGroup, x: &GroupElement) -> String {
    match x {
        GroupElement::Unit(u) => u.to_string(),
        GroupElement::Free(p) if x == &g.identity() || p.values().all(|e| *e == 0) => "1".into(),
        GroupElement::Free(p) => p
            .iter()
            .filter(|(_, e)| **e != 0)
            .map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") })
            .collect::<Vec<_>>()
            .join(" "),
    }
}

pub fn invariant(cmd: &InvariantCmd) -> Res<Outcome> {
    match cmd {
        InvariantCmd::Bracket { diagram, bracket, per_coloring } => {
            let d = input::diagram(diagram)?;
            let b = input::bracket(bracket)?.build()?;
            let inv = bracket_invariant(&d, &b);
            Ok(Outcome::ok(
                multiset_json(&d, &inv, *per_coloring, element_to_json),
                multiset_summary(&inv, |x| x.to_string()),
            ))
        }
        InvariantCmd::Cocycle { diagram, cocycle, per_coloring } => {
            let d = input::diagram(diagram)?;
            let c = input::cocycle(cocycle)?.build()?;
            let inv = cocycle_invariant(&d, &c);
            let g = c.group().clone();
            Ok(Outcome::ok(
                multiset_json(&d, &inv, *per_coloring, group_element_to_json),
                multiset_summary(&inv, |x| group_text(&g, x)),
            ))
        }
        InvariantCmd::Counting { diagram, biquandle } => {
            let d = input::diagram(diagram)?;
            let b = input::biquandle(biquandle)?;
            let n = counting_invariant(&d, &b);
            Ok(Outcome::ok(json!({ "count": n }), format!("{n} coloring(s)")))
        }
        InvariantCmd::Jones { diagram } => {
            let d = input::diagram(diagram)?;
            let v = kauffman_jones(&d);
            Ok(Outcome::ok(
                json!({ "value": element_to_json(&v), "text": v.to_string() }),
                format!("Jones polynomial: {v}"),
            ))
        }
    }
}
