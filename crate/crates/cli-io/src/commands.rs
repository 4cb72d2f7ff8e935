//! One function per subcommand. Each takes the raw input text plus flags
//! and produces a `Report`; exit-code policy lives here.

use serde_json::{json, Value};

use curve_model::{
    canonical_decomposition, closed_limit_class, stability, AppendEnd, CurveError, CurveGraph,
    ThreeValued, Variant,
};
use local_charts::{
    build_chart, chain_chamber_formula, chain_system, crosscheck_chart, ChartError,
};
use vgit_core::{minus_locus_with_cap, plus_locus_with_cap, VgitError, WeightSystem,
    DEFAULT_COORD_CAP};

use crate::report::{Report, EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN};

/// A curve document is either a bare curve or a corpus entry wrapping one
/// under a `curve` key; the same convention holds for weight systems.
fn unwrap_key<'a>(v: &'a Value, key: &str) -> &'a Value {
    match v.get(key) {
        Some(inner) => inner,
        None => v,
    }
}

fn parse_curve(input: &str) -> Result<CurveGraph, Report> {
    let v: Value = serde_json::from_str(input)
        .map_err(|e| Report::input_error(format!("input is not JSON: {e}")))?;
    let curve = CurveGraph::from_json_value(unwrap_key(&v, "curve"))
        .map_err(|e| Report::input_error(e.to_string()))?;
    let problems = curve.validate();
    if !problems.is_empty() {
        return Err(Report::input_error(format!(
            "invalid curve: {}",
            problems.join("; ")
        )));
    }
    Ok(curve)
}

fn parse_system(input: &str) -> Result<WeightSystem, Report> {
    let v: Value = serde_json::from_str(input)
        .map_err(|e| Report::input_error(format!("input is not JSON: {e}")))?;
    serde_json::from_value(unwrap_key(&v, "system").clone())
        .map_err(|e| Report::input_error(format!("bad weight system: {e}")))
}

/// Curves that fail stability are well-formed inputs with a negative
/// verdict; everything else a curve operation can raise is an input or
/// structural problem.
fn curve_error_report(e: CurveError) -> Report {
    match e {
        CurveError::NotStable { .. } => Report::new(
            EXIT_NEGATIVE,
            json!({ "pass": false, "detail": e.to_string() }),
            e.to_string(),
        ),
        other => Report::input_error(other.to_string()),
    }
}

fn chart_error_report(e: ChartError) -> Report {
    match e {
        ChartError::NotMaximallyDegenerate(_) | ChartError::TrivialTorus => Report::new(
            EXIT_NEGATIVE,
            json!({ "pass": false, "detail": e.to_string() }),
            e.to_string(),
        ),
        ChartError::Curve(inner) => curve_error_report(inner),
        other => Report::input_error(other.to_string()),
    }
}

fn vgit_error_report(e: VgitError) -> Report {
    Report::input_error(e.to_string())
}

fn strata_text(sets: &[Vec<String>]) -> String {
    if sets.is_empty() {
        return "empty".to_string();
    }
    sets.iter()
        .map(|s| format!("V({})", s.join(", ")))
        .collect::<Vec<_>>()
        .join(" u ")
}

pub fn cmd_stability(input: &str, k: u8, variant: Variant) -> Report {
    let curve = match parse_curve(input) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let verdict = match stability(&curve, k, variant) {
        Ok(v) => v,
        Err(e) => return curve_error_report(e),
    };
    let violations: Vec<Value> = verdict
        .violations
        .iter()
        .map(|v| json!({ "rule": v.rule, "witness": v.witness }))
        .collect();
    let json = json!({
        "k": k,
        "variant": variant.to_string(),
        "pass": verdict.pass,
        "violations": violations,
    });
    let mut text = format!(
        "stability at k = {k} ({variant} variant): {}",
        if verdict.pass { "stable" } else { "not stable" }
    );
    for v in &verdict.violations {
        text.push_str(&format!("\n  {}: {}", v.rule, v.witness));
    }
    Report::new(if verdict.pass { EXIT_OK } else { EXIT_NEGATIVE }, json, text)
}

fn end_json(end: &AppendEnd) -> Value {
    match end {
        AppendEnd::CoreQ(i) => json!({ "type": "core-q", "index": i }),
        AppendEnd::Mark(i) => json!({ "type": "mark", "index": i }),
        AppendEnd::Cyclic => json!({ "type": "cyclic" }),
    }
}

pub fn cmd_decompose(input: &str, k: u8) -> Report {
    let curve = match parse_curve(input) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let d = match canonical_decomposition(&curve, k) {
        Ok(d) => d,
        Err(e) => return curve_error_report(e),
    };
    let appendages: Vec<Value> = d
        .appendages
        .iter()
        .map(|a| {
            json!({
                "length": a.length,
                "ends": a.ends.iter().map(end_json).collect::<Vec<_>>(),
                "graph": a.graph.to_json_value(),
            })
        })
        .collect();
    let json = json!({
        "k": k,
        "case": d.case.to_string(),
        "core": d.core.as_ref().map(|c| c.to_json_value()).unwrap_or(Value::Null),
        "core_original_marks": d.core_original_marks,
        "appendages": appendages,
    });
    let lengths: Vec<usize> = d.appendages.iter().map(|a| a.length).collect();
    let text = format!(
        "case {}; core: {}; appendages: {} (lengths {:?})",
        d.case,
        if d.core.is_some() { "present" } else { "none" },
        d.appendages.len(),
        lengths,
    );
    Report::new(EXIT_OK, json, text)
}

pub fn cmd_closed(input: &str, k: u8) -> Report {
    let curve = match parse_curve(input) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let report = match curve_model::is_maximally_degenerate(&curve, k) {
        Ok(r) => r,
        Err(e) => return curve_error_report(e),
    };
    let (word, exit) = match report.verdict {
        ThreeValued::Yes => ("yes", EXIT_OK),
        ThreeValued::No => ("no", EXIT_NEGATIVE),
        ThreeValued::Unknown => ("unknown", EXIT_UNKNOWN),
    };
    let json = json!({ "k": k, "verdict": word, "reasons": report.reasons });
    let mut text = format!("maximally degenerate: {word}");
    for r in &report.reasons {
        text.push_str(&format!("\n  {r}"));
    }
    Report::new(exit, json, text)
}

pub fn cmd_degenerate(input: &str, k: u8) -> Report {
    let curve = match parse_curve(input) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let class = match closed_limit_class(&curve, k) {
        Ok(c) => c,
        Err(e) => return curve_error_report(e),
    };
    let json = json!({
        "k": k,
        "case": class.case.to_string(),
        "link_lengths": class.link_lengths,
        "curve": class.degeneration.to_json_value(),
    });
    let text = format!(
        "maximal degeneration: case {}, {} appendage(s), genus {}",
        class.case,
        class.link_lengths.len(),
        class.degeneration.arithmetic_genus(),
    );
    Report::new(EXIT_OK, json, text)
}

pub fn cmd_weights(input: &str, k: u8, core_block: Option<usize>) -> Report {
    let curve = match parse_curve(input) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let chart = match build_chart(&curve, k, core_block) {
        Ok(c) => c,
        Err(e) => return chart_error_report(e),
    };
    let mut text = format!(
        "case {}; torus rank {}; {} coordinates",
        chart.case,
        chart.system.rank(),
        chart.system.len(),
    );
    for (coord, role) in chart.system.coords().iter().zip(&chart.roles) {
        text.push_str(&format!("\n  {}  {:?}  ({role})", coord.label, coord.weights));
    }
    Report::new(EXIT_OK, chart.to_json_value(), text)
}

pub fn cmd_chambers(input: &str, cap: Option<usize>) -> Report {
    let system = match parse_system(input) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let cap = cap.unwrap_or(DEFAULT_COORD_CAP);
    let minus = match minus_locus_with_cap(&system, cap) {
        Ok(u) => u,
        Err(e) => return vgit_error_report(e),
    };
    let plus = match plus_locus_with_cap(&system, cap) {
        Ok(u) => u,
        Err(e) => return vgit_error_report(e),
    };
    let minus_sets = minus.to_label_sets(&system);
    let plus_sets = plus.to_label_sets(&system);
    let json = json!({
        "rank": system.rank(),
        "coordinates": system.len(),
        "minus": minus_sets,
        "plus": plus_sets,
    });
    let text = format!(
        "minus: {}\nplus:  {}",
        strata_text(&minus_sets),
        strata_text(&plus_sets),
    );
    Report::new(EXIT_OK, json, text)
}

pub fn cmd_crosscheck(input: &str, k: u8, cap: Option<usize>) -> Report {
    let curve = match parse_curve(input) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let chart = match build_chart(&curve, k, None) {
        Ok(c) => c,
        Err(e) => return chart_error_report(e),
    };
    let report = match crosscheck_chart(&chart, cap) {
        Ok(r) => r,
        Err(e) => return chart_error_report(e),
    };
    let mut json = report.to_json_value();
    json["k"] = json!(k);
    let text = if report.pass {
        format!("crosscheck: chart chambers match the kernel (case {})", report.case)
    } else {
        format!(
            "crosscheck: MISMATCH (case {}); minus diff {}, plus diff {}",
            report.case,
            strata_text(&report.minus_diff),
            strata_text(&report.plus_diff),
        )
    };
    Report::new(if report.pass { EXIT_OK } else { EXIT_NEGATIVE }, json, text)
}

pub fn cmd_chain_formula(r: usize, m: u32) -> Report {
    let system = match chain_system(r, m) {
        Ok(s) => s,
        Err(e) => return chart_error_report(e),
    };
    let formula = match chain_chamber_formula(r, m) {
        Ok(f) => f,
        Err(e) => return chart_error_report(e),
    };
    let kernel = match plus_locus_with_cap(&system, system.len()) {
        Ok(u) => u,
        Err(e) => return vgit_error_report(e),
    };
    let matches = formula == kernel;
    let sets = formula.to_label_sets(&system);
    let json = json!({
        "r": r,
        "m": m,
        "plus": sets,
        "matches_kernel": matches,
    });
    let text = format!(
        "chain r = {r}, m = {m}: plus = {}{}",
        strata_text(&sets),
        if matches { "" } else { "  (KERNEL DISAGREES)" },
    );
    Report::new(if matches { EXIT_OK } else { EXIT_NEGATIVE }, json, text)
}

pub fn cmd_limit_crimp(input: &str) -> Report {
    let v: Value = match serde_json::from_str(input) {
        Ok(v) => v,
        Err(e) => return Report::input_error(format!("input is not JSON: {e}")),
    };
    let valued = match crimping::ValuedCrimping::from_json_value(&v) {
        Ok(v) => v,
        Err(e) => return Report::input_error(e.to_string()),
    };
    let (b, limit) = crimping::limit_crimping(&valued);
    let parity = match valued.parity() {
        crimping::Parity::Even => "even",
        crimping::Parity::Odd => "odd",
    };
    let json = json!({
        "b": b,
        "limit": {
            "parity": parity,
            "m": valued.m(),
            "entries": limit.to_rational_strings(),
        },
        "monomial": limit.is_monomial(),
    });
    let text = format!(
        "b = {b}; limit crimping [{}]{}",
        limit.to_rational_strings().join(", "),
        if limit.is_monomial() { " (monomial)" } else { "" },
    );
    Report::new(EXIT_OK, json, text)
}
