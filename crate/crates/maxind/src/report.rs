//! JSON reports and their markdown rendering. Markdown is produced from
//! the JSON value only, so every printed number is a report field.

use std::collections::BTreeMap;
use std::fmt::Write;

use maxind_core::bounds::{BoundCase, BoundReport, NuReport};
use maxind_core::constructions::OrbitCensus;
use maxind_core::invariants::{GeneratorCount, Profile, ScriptM};
use maxind_core::probgen::{GenProbResult, NuEstimate};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::engine::Limits;

pub fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn counts(m: &BTreeMap<u64, u64>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn opt_float(x: Option<f64>) -> Value {
    x.map(float).unwrap_or(Value::Null)
}

pub fn generator_count(d: &GeneratorCount) -> Value {
    json!({ "lower": d.lower, "upper": d.upper, "exact": d.exact() })
}

pub fn provenance(limits: &Limits) -> Value {
    json!({
        "tool": "maxind",
        "version": env!("CARGO_PKG_VERSION"),
        "seed": limits.seed,
        "limits": limits,
    })
}

pub fn profile(p: &Profile) -> Value {
    let factor_counts: Vec<Value> = p
        .factor_counts
        .iter()
        .map(|(&(n, ab), &c)| json!({ "order": n, "abelian": ab, "count": c }))
        .collect();
    let crowns: Vec<Value> = p
        .crowns
        .iter()
        .map(|c| {
            json!({
                "abelian": c.abelian,
                "order": c.order,
                "length": c.length,
                "central": c.central,
                "undecided": c.undecided,
                "simple": c.simple,
                "primitive_order": c.primitive_order,
            })
        })
        .collect();
    let nonabelian: Vec<Value> = p
        .nonabelian
        .iter()
        .map(|f| {
            json!({
                "order": f.order,
                "simple": f.simple,
                "primitive_order": f.primitive_order,
                "core_free": f.core_free.as_ref().map(|v| {
                    v.iter().map(|(n, c)| json!({ "index": n, "count": c })).collect::<Vec<_>>()
                }),
            })
        })
        .collect();
    let by_type = p.m_by_type.as_ref().map(|m| {
        m.iter()
            .map(|(&(n, t), &c)| json!({ "index": n, "type": t, "count": c }))
            .collect::<Vec<_>>()
    });
    let script_m = match p.script_m {
        None => Value::Null,
        Some(ScriptM::NegInfinity) => json!({ "value": "-inf" }),
        Some(ScriptM::Value { n, m, value }) => json!({ "value": float(value), "index": n, "m": m }),
    };
    let skipped: Vec<Value> = p.skipped.iter().map(|(f, r)| json!({ "field": f, "reason": r })).collect();
    json!({
        "order": big(&p.order),
        "d": generator_count(&p.d),
        "min_index": p.min_index,
        "lambda": p.lambda,
        "chief_length": p.chief_length,
        "factor_counts": factor_counts,
        "cr_ab": counts(&p.cr_ab),
        "rks": counts(&p.rks),
        "rko": counts(&p.rko),
        "rkm": counts(&p.rkm),
        "s": counts(&p.s),
        "rk_iso": p.rk_iso,
        "crowns": crowns,
        "nonabelian": nonabelian,
        "undecided_complements": p.undecided_complements,
        "m_exact": p.m_exact.as_ref().map(counts),
        "m_by_type": by_type,
        "m_derived": counts(&p.m_derived),
        "script_M": script_m,
        "skipped": skipped,
    })
}

fn case_name(c: BoundCase) -> &'static str {
    match c {
        BoundCase::PrimePower => "prime power",
        BoundCase::SimplePower => "simple power",
        BoundCase::Other => "other",
        BoundCase::Conservative => "conservative",
    }
}

pub fn bound(r: &BoundReport) -> Value {
    let witnesses: Map<String, Value> = r.witnesses.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    json!({
        "n": r.n,
        "in_T": r.class.in_t,
        "in_S": r.class.in_s,
        "case": case_name(r.case),
        "m_exact": r.m_exact,
        "bound_mn": big(&r.bound_mn),
        "bound_mn_plain": r.bound_mn_plain.as_ref().map(big),
        "bound_lub_a": r.bound_lub_a.as_ref().map(big),
        "bound_lubotzky": big(&r.bound_lubotzky),
        "type_caps": r.type_caps.iter().map(big).collect::<Vec<_>>(),
        "m_by_type": r.m_by_type,
        "witnesses": witnesses,
        "violations": r.violations(),
    })
}

pub fn nu(r: &NuReport) -> Value {
    json!({
        "eta": opt_float(r.eta),
        "kappa": opt_float(r.kappa),
        "eta_omitted": r.eta_omitted,
        "eta_terms": r.eta_terms.iter().map(|&x| float(x)).collect::<Vec<_>>(),
        "kappa_terms": r.kappa_terms.iter().map(|&x| float(x)).collect::<Vec<_>>(),
        "script_M_plus_2_02": opt_float(r.script_m_plus),
        "script_M_minus_3_5": opt_float(r.script_m_minus),
        "lubotzky_m_route": opt_float(r.lubotzky_m_route),
        "general_m_route": opt_float(r.general_m_route),
        "lubotzky_nu": opt_float(r.lubotzky_nu),
        "dl_bound": r.dl_bound,
        "nu_exact": r.nu_exact,
        "violations": r.violations(),
    })
}

pub fn gen_prob(r: &GenProbResult) -> Value {
    json!({
        "k": r.k,
        "exact": r.exact.as_ref().map(|q| q.to_string()),
        "estimate": opt_float(r.estimate),
        "trials": r.trials,
        "successes": r.successes,
        "ci99_halfwidth": float(r.ci_halfwidth),
    })
}

pub fn nu_estimate(e: &NuEstimate) -> Value {
    json!({ "low": e.low, "high": e.high, "decided": e.is_decided() })
}

pub fn census(c: &OrbitCensus) -> Value {
    json!({
        "group_order": c.group_order,
        "d": c.d,
        "phi_d": big(&c.phi_d),
        "aut_order": c.aut_order,
        "orbit_count": c.orbit_count,
        "phi_check": c.phi_check.as_ref().map(big),
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Object(m) if m.is_empty() => "{}".into(),
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}: {}", cell(v))).collect::<Vec<_>>().join(", "),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn table(out: &mut String, rows: &[Value], cols: &[&str]) {
    let _ = writeln!(out, "| {} |", cols.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(cols.len()));
    for r in rows {
        let cells: Vec<String> = cols.iter().map(|c| cell(&r[*c])).collect();
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
}

fn key_values(out: &mut String, v: &Value, keys: &[&str]) {
    out.push_str("| field | value |\n|---|---|\n");
    for k in keys {
        if let Some(x) = v.get(*k) {
            let _ = writeln!(out, "| {k} | {} |", cell(x));
        }
    }
}

/// Markdown for any report produced by the commands.
pub fn markdown(report: &Value) -> String {
    let mut out = String::new();
    if let Some(s) = report.get("spec").and_then(Value::as_str) {
        let _ = writeln!(out, "# {s}\n");
    }
    if let Some(p) = report.get("profile") {
        out.push_str("## Profile\n\n");
        key_values(
            &mut out,
            p,
            &[
                "order", "d", "min_index", "lambda", "chief_length", "cr_ab", "rks", "rko", "rkm", "s", "rk_iso",
                "m_exact", "m_derived", "script_M", "undecided_complements",
            ],
        );
        if let Some(rows) = p.get("crowns").and_then(Value::as_array) {
            out.push_str("\n### Crowns\n\n");
            table(&mut out, rows, &["order", "abelian", "length", "central", "simple", "undecided"]);
        }
        if let Some(rows) = p.get("skipped").and_then(Value::as_array).filter(|r| !r.is_empty()) {
            out.push_str("\n### Skipped\n\n");
            table(&mut out, rows, &["field", "reason"]);
        }
        out.push('\n');
    }
    if let Some(rows) = report.get("bounds").and_then(Value::as_array) {
        out.push_str("## Bounds on m_n\n\n");
        table(
            &mut out,
            rows,
            &["n", "case", "m_exact", "bound_mn", "bound_mn_plain", "bound_lub_a", "bound_lubotzky", "violations"],
        );
        out.push('\n');
    }
    if let Some(nu) = report.get("nu") {
        out.push_str("## nu\n\n");
        key_values(
            &mut out,
            nu,
            &[
                "nu_exact", "estimate", "eta", "kappa", "eta_omitted", "script_M_plus_2_02", "script_M_minus_3_5",
                "lubotzky_m_route", "general_m_route", "lubotzky_nu", "dl_bound", "violations",
            ],
        );
        if let Some(rows) = nu.get("probabilities").and_then(Value::as_array) {
            out.push('\n');
            table(&mut out, rows, &["k", "exact", "estimate", "trials", "ci99_halfwidth"]);
        }
        out.push('\n');
    }
    if let Some(c) = report.get("construction") {
        out.push_str("## Construction\n\n");
        let keys: Vec<&str> = c.as_object().map(|m| m.keys().map(String::as_str).collect()).unwrap_or_default();
        key_values(&mut out, c, &keys);
        out.push('\n');
    }
    if let Some(rows) = report.get("corpus").and_then(Value::as_array) {
        out.push_str("## Corpus\n\n");
        table(&mut out, rows, &["spec", "order", "nu_exact", "checks", "violations", "error"]);
        out.push('\n');
    }
    if let Some(s) = report.get("summary") {
        out.push_str("## Summary\n\n");
        let keys: Vec<&str> = s.as_object().map(|m| m.keys().map(String::as_str).collect()).unwrap_or_default();
        key_values(&mut out, s, &keys);
    }
    out
}
