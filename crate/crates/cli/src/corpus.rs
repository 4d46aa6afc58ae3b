use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use bqlab_core::fixtures;
use bqlab_core::json::{self, diagram_from_str};
use bqlab_core::search::search_brackets;
use bqlab_core::SearchSpec;
use serde_json::{json, Value};

use crate::args::{FixturesCmd, SearchCmd};
use crate::input;
use crate::report::{CliError, Outcome, Res, Status};

pub const INDEX: &str = "index.json";

fn create_dir(dir: &Path) -> Res<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::msg(format!("cannot create {}: {e}", dir.display())))
}

fn write(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text).map_err(|e| CliError::msg(format!("cannot write {}: {e}", path.display())))
}

pub fn search(cmd: &SearchCmd) -> Res<Outcome> {
    let SearchCmd::Brackets {
        biquandle,
        ring,
        up_to_scaling,
        limit,
        jobs,
        time_budget,
        out,
    } = cmd;
    let b = input::biquandle(biquandle)?;
    let r = input::ring(ring)?;
    let time_budget = match time_budget {
        Some(s) if !(s.is_finite() && *s > 0.0) => return Err(CliError::msg("--time-budget must be positive")),
        Some(s) => Some(Duration::from_secs_f64(*s)),
        None => None,
    };
    let spec = SearchSpec {
        up_to_scaling: *up_to_scaling,
        limit: *limit,
        jobs: *jobs,
        time_budget,
        ..SearchSpec::new(b.clone(), r.clone())
    };
    let outcome = search_brackets(&spec)?;

    create_dir(out)?;
    let width = outcome.results.len().to_string().len().max(4);
    let mut files = Vec::with_capacity(outcome.results.len());
    for (k, br) in outcome.results.iter().enumerate() {
        let name = format!("bracket-{:0width$}.json", k + 1);
        write(&out.join(&name), &json::to_canonical_string(&json::bracket_to_json(br)))?;
        files.push(name);
    }
    let elapsed_ms = outcome.elapsed.as_secs_f64() * 1e3;
    let index = json!({
        "biquandle": json::biquandle_to_json(&b),
        "ring": json::ring_to_json(&r),
        "up_to_scaling": up_to_scaling,
        "limit": limit,
        "count": files.len(),
        "complete": outcome.complete,
        "nodes": outcome.nodes,
        "elapsed_ms": elapsed_ms,
        "files": files,
    });
    write(&out.join(INDEX), &json::to_canonical_string(&index))?;
    Ok(Outcome::ok(
        json!({
            "out": out.display().to_string(),
            "count": outcome.results.len(),
            "complete": outcome.complete,
            "nodes": outcome.nodes,
            "elapsed_ms": elapsed_ms,
        }),
        format!(
            "{} bracket(s) over {r}{} in {:.1} ms -> {}",
            outcome.results.len(),
            if outcome.complete { "" } else { " (incomplete)" },
            elapsed_ms,
            out.display()
        ),
    ))
}

pub fn fixtures_cmd(cmd: &FixturesCmd) -> Res<Outcome> {
    match cmd {
        FixturesCmd::List => {
            let list: Vec<Value> = fixtures::catalog()
                .iter()
                .map(|f| json!({ "name": f.name, "kind": f.kind.to_string(), "file": f.file_name(), "summary": f.summary }))
                .collect();
            let lines: Vec<String> = fixtures::catalog()
                .iter()
                .map(|f| format!("{:<10} {:<22} {}", f.kind.to_string(), f.name, f.summary))
                .collect();
            Ok(Outcome::ok(json!({ "fixtures": list }), lines.join("\n")))
        }
        FixturesCmd::Emit { dir } => {
            create_dir(dir)?;
            let mut written = Vec::new();
            for f in fixtures::catalog() {
                let name = f.file_name();
                write(&dir.join(&name), &f.contents())?;
                written.push(name);
            }
            Ok(Outcome::ok(
                json!({ "dir": dir.display().to_string(), "written": written }),
                format!("wrote {} fixture(s) to {}", written.len(), dir.display()),
            ))
        }
    }
}

fn collect_files(dir: &Path, out: &mut Vec<PathBuf>) -> Res<()> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::msg(format!("cannot read {}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();
    for p in paths {
        if p.is_dir() {
            collect_files(&p, out)?;
        } else if matches!(p.extension().and_then(|e| e.to_str()), Some("json" | "pd")) {
            out.push(p);
        }
    }
    Ok(())
}

struct Verdict {
    kind: &'static str,
    status: Status,
    detail: String,
}

impl Verdict {
    fn new(kind: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            kind,
            status: if passed { Status::Ok } else { Status::Violation },
            detail: detail.into(),
        }
    }
}

fn classify(v: &Value) -> Option<&'static str> {
    let has = |k: &str| v.get(k).is_some();
    if has("files") && has("count") {
        Some("search-index")
    } else if has("A") && has("B") {
        Some("bracket")
    } else if has("phi") && has("group") {
        Some("cocycle")
    } else if has("under") && has("over") {
        Some("biquandle")
    } else if has("pd") || has("braid") {
        Some("diagram")
    } else {
        None
    }
}

fn verify_file(path: &Path) -> Res<Verdict> {
    let src = path.to_string_lossy().into_owned();
    let text = input::read_source(&src)?;
    if path.extension().and_then(|e| e.to_str()) == Some("pd") {
        let d = diagram_from_str(&text).map_err(|e| input::json_error(&src, e))?;
        return Ok(Verdict::new("diagram", true, format!("{} crossing(s)", d.crossing_count())));
    }
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::msg(format!("invalid JSON: {e}")))?;
    let kind = classify(&v).ok_or_else(|| CliError::msg("unrecognised object"))?;
    Ok(match kind {
        "bracket" => {
            let r = json::bracket_data_from_json(&v).map_err(|e| input::json_error(&src, e))?.check()?;
            Verdict::new(kind, r.passed(), r.to_string())
        }
        "cocycle" => {
            let r = json::cocycle_data_from_json(&v).map_err(|e| input::json_error(&src, e))?.check()?;
            Verdict::new(kind, r.passed(), r.to_string())
        }
        "biquandle" => {
            let r = json::tables_from_json(&v).map_err(|e| input::json_error(&src, e))?.check()?;
            let detail = match r.violations.first() {
                None => "all axioms hold".to_string(),
                Some(x) => format!("axiom {} fails at {:?}", serde_json::to_value(x.axiom)?.as_str().unwrap_or("?"), x.witness),
            };
            Verdict::new(kind, r.passed(), detail)
        }
        "diagram" => {
            let d = diagram_from_str(&text).map_err(|e| input::json_error(&src, e))?;
            Verdict::new(kind, true, format!("{} crossing(s)", d.crossing_count()))
        }
        _ => {
            let files: Vec<&str> = v["files"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
            let dir = path.parent().unwrap_or(Path::new("."));
            let missing: Vec<&str> = files.iter().copied().filter(|f| !dir.join(f).is_file()).collect();
            let count_ok = v["count"].as_u64() == Some(files.len() as u64);
            let passed = missing.is_empty() && count_ok;
            let detail = if passed {
                format!("{} file(s) listed", files.len())
            } else if !count_ok {
                "count does not match the file list".to_string()
            } else {
                format!("missing: {}", missing.join(", "))
            };
            Verdict::new(kind, passed, detail)
        }
    })
}

pub fn verify_all(dir: &Path) -> Res<Outcome> {
    let mut files = Vec::new();
    collect_files(dir, &mut files)?;
    let mut entries = Vec::new();
    let mut worst = Status::Ok;
    let mut counts = [0usize; 3];
    for path in &files {
        let rel = path.strip_prefix(dir).unwrap_or(path).display().to_string();
        let verdict = verify_file(path).unwrap_or_else(|e| {
            let o = e.into_outcome();
            Verdict {
                kind: "unknown",
                status: o.status,
                detail: o.summary,
            }
        });
        worst = worst.max(verdict.status);
        counts[verdict.status.exit_code() as usize] += 1;
        entries.push(json!({
            "file": rel,
            "kind": verdict.kind,
            "status": verdict.status,
            "detail": verdict.detail,
        }));
    }
    let mut lines = vec![format!(
        "{} file(s): {} ok, {} violation, {} error",
        files.len(),
        counts[0],
        counts[1],
        counts[2]
    )];
    for e in &entries {
        if e["status"] != "ok" {
            lines.push(format!("  {} [{}] {}", e["file"].as_str().unwrap(), e["status"].as_str().unwrap(), e["detail"].as_str().unwrap()));
        }
    }
    Ok(Outcome {
        status: worst,
        payload: json!({ "files": entries, "ok": counts[0], "violation": counts[1], "error": counts[2] }),
        summary: lines.join("\n"),
    })
}
