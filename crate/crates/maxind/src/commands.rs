//! The subcommands as library functions returning JSON reports.

use maxind_core::bounds::{bound_mn, bound_table, nu_report};
use maxind_core::invariants::{min_generators, Profile};
use maxind_core::probgen::{gen_prob_mc, nu_mc, PhiOracle, Sampler};
use maxind_core::small::SmallGroup;
use maxind_core::{constructions, Error, Group, Result};
use serde_json::{json, Value};

use crate::engine::{self, Built, Limits};
use crate::report;
use crate::spec::Spec;

/// Closure budget for exact generating-tuple counts.
pub const PHI_BUDGET: u64 = 1 << 24;

/// A finished report and the number of failed checks in it.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub violations: usize,
}

fn resolve(text: &str, limits: &Limits) -> Result<(Spec, Built)> {
    let spec = Spec::parse(text)?;
    let built = engine::build(&spec, limits)?;
    Ok((spec, built))
}

/// `nu(G)` from exact generating-tuple counts, when the group is small.
pub fn exact_nu(built: &Built, limits: &Limits) -> Result<Option<u32>> {
    let Some(g) = built.small_group(limits) else { return Ok(None) };
    match PhiOracle::new(&g, limits.lattice_limit, limits.table_limit, PHI_BUDGET).and_then(|mut o| o.nu()) {
        Ok(nu) => Ok(Some(nu)),
        Err(e) if e.is_limit() => Ok(None),
        Err(e) => Err(e),
    }
}

fn count_violations(v: &Value) -> usize {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match (k.as_str(), x) {
                ("violations", Value::Array(a)) => a.len(),
                _ => count_violations(x),
            })
            .sum(),
        Value::Array(a) => a.iter().map(count_violations).sum(),
        _ => 0,
    }
}

fn finish(report: Value) -> Outcome {
    let violations = count_violations(&report);
    Outcome { report, violations }
}

pub fn analyze(text: &str, limits: &Limits) -> Result<Outcome> {
    let (spec, built) = resolve(text, limits)?;
    let p = engine::profile(&built, limits)?;
    let nu = exact_nu(&built, limits)?;
    let bounds: Vec<Value> = bound_table(&p).iter().map(report::bound).collect();
    Ok(finish(json!({
        "spec": spec.to_string(),
        "provenance": report::provenance(limits),
        "profile": report::profile(&p),
        "bounds": bounds,
        "nu": report::nu(&nu_report(&p, nu)),
    })))
}

/// Bound table at the given indices (all relevant ones when empty).
pub fn bounds(text: &str, indices: &[u64], limits: &Limits) -> Result<Outcome> {
    let (spec, built) = resolve(text, limits)?;
    let p = engine::profile(&built, limits)?;
    Ok(finish(bounds_report(&spec, &p, indices, None, limits)))
}

pub fn bounds_report(spec: &Spec, p: &Profile, indices: &[u64], nu: Option<u32>, limits: &Limits) -> Value {
    let ns: Vec<u64> = if indices.is_empty() { p.relevant_indices() } else { indices.to_vec() };
    let rows: Vec<Value> = ns.iter().map(|&n| report::bound(&bound_mn(p, n))).collect();
    json!({
        "spec": spec.to_string(),
        "provenance": report::provenance(limits),
        "bounds": rows,
        "nu": report::nu(&nu_report(p, nu)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NuMode {
    Exact,
    MonteCarlo,
}

pub fn nu(text: &str, mode: NuMode, limits: &Limits) -> Result<Outcome> {
    let (spec, built) = resolve(text, limits)?;
    let body = match mode {
        NuMode::Exact => {
            let g = built.small_group(limits).ok_or_else(|| {
                Error::limit("exact nu: group order", "beyond table limit", limits.table_limit)
            })?;
            let mut o = PhiOracle::new(&g, limits.lattice_limit, limits.table_limit, PHI_BUDGET)?;
            let nu = o.nu()?;
            let probs = (1..=nu)
                .map(|k| Ok(report::gen_prob(&maxind_core::probgen::gen_prob(&mut o, k)?)))
                .collect::<Result<Vec<_>>>()?;
            json!({ "mode": "exact", "nu_exact": nu, "probabilities": probs })
        }
        NuMode::MonteCarlo => {
            let g = built.group(limits)?;
            let table = built.small_group(limits).and_then(|s| SmallGroup::from_group(&s, limits.table_limit).ok());
            let sampler = match &table {
                Some(t) => Sampler::Table(t),
                None => Sampler::Chain(&g),
            };
            let est = nu_mc(&sampler, limits.trials, limits.seed, 64)?;
            let probs: Vec<Value> = (1..=est.high)
                .map(|k| report::gen_prob(&gen_prob_mc(&sampler, k, limits.trials, limits.seed.wrapping_add(k as u64))))
                .collect();
            json!({ "mode": "monte-carlo", "estimate": report::nu_estimate(&est), "probabilities": probs })
        }
    };
    Ok(finish(json!({
        "spec": spec.to_string(),
        "provenance": report::provenance(limits),
        "nu": body,
    })))
}

fn describe_group(g: &Group) -> Value {
    let gens: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
    json!({
        "degree": g.degree(),
        "order": report::big(&g.order()),
        "generators": gens.clone(),
        "perm_spec": format!("perm:{}:{}", g.degree(), gens.join(";")),
    })
}

pub fn construct(text: &str, limits: &Limits) -> Result<Outcome> {
    let (spec, built) = resolve(text, limits)?;
    let mut c = match &built {
        Built::Group(g) => describe_group(g),
        Built::Tower(t) => {
            let mut v = describe_group(&t.tower);
            let d = min_generators(&t.base, &limits.invariant_options(), None);
            let n = t.socle_part.order();
            let n = num_traits::ToPrimitive::to_u64(&n).unwrap_or(0);
            // f(d) for the first few admissible d.
            let f: Vec<Value> = (d.upper..d.upper + 3)
                .filter_map(|d| constructions::f_of_d_from(n, t.q, t.h1, d).ok().map(|f| json!({ "d": d, "f": f })))
                .collect();
            v["k"] = json!(t.k);
            v["socle_part_order"] = json!(n);
            v["q"] = json!(t.q);
            v["h1"] = json!(t.h1);
            v["f_of_d"] = json!(f);
            v
        }
        Built::Hat(h) => {
            let mut v = match &h.group {
                Some(g) => {
                    let mut v = describe_group(g);
                    // The hat group's order comes from the tuple chain.
                    v["order"] = report::big(&h.tuple_group().order());
                    v
                }
                None => json!({
                    "degree": h.census.representatives.len() * h.base.degree(),
                    "materialized": false,
                }),
            };
            v["census"] = report::census(&h.census);
            v
        }
        Built::Dp(parts) => {
            let mut v = match built.group(limits) {
                Ok(g) => {
                    let gens: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
                    json!({ "degree": g.degree(), "perm_spec": format!("perm:{}:{}", g.degree(), gens.join(";")) })
                }
                Err(e) if e.is_limit() => json!({ "materialized": false }),
                Err(e) => return Err(e),
            };
            v["factors"] = json!(parts.len());
            v["order"] = report::big(&built.order());
            v
        }
    };
    c["kind"] = json!(match &built {
        Built::Group(_) => "group",
        Built::Tower(_) => "tower",
        Built::Hat(_) => "hat",
        Built::Dp(_) => "direct product",
    });
    Ok(finish(json!({
        "spec": spec.to_string(),
        "provenance": report::provenance(limits),
        "construction": c,
    })))
}
