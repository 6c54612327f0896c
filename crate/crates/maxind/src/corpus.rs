//! Corpus runner: every bound and sandwich inequality on groups small
//! enough for a full subgroup lattice, plus the oracle cross-checks.

use std::collections::HashSet;

use maxind_core::bounds::{bound_table, check_b2, nu_report};
use maxind_core::invariants::Profile;
use maxind_core::lattice::Lattice;
use maxind_core::probgen::{phi_brute, phi_direct, phi_moebius, PhiOracle};
use maxind_core::small::SmallGroup;
use maxind_core::{Error, Group, Perm, Result};
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::PHI_BUDGET;
use crate::engine::{self, Limits};
use crate::report;
use crate::spec::Spec;

/// Builtins of order at most 2000 and small products and towers built
/// from them.
pub const DEFAULT_CORPUS: &[&str] = &[
    "cyc:2",
    "cyc:4",
    "cyc:6",
    "cyc:8",
    "cyc:12",
    "cyc:30",
    "sym:3",
    "sym:4",
    "sym:5",
    "sym:6",
    "alt:4",
    "alt:5",
    "alt:6",
    "dih:4",
    "dih:5",
    "dih:6",
    "dih:8",
    "dih:12",
    "sl:2,3",
    "psl:2,7",
    "agl:1,8",
    "agammal:1,8",
    "agl:3,2",
    "dp:cyc:2+cyc:2",
    "dp:cyc:2+cyc:2+cyc:2",
    "dp:cyc:2+cyc:2+cyc:2+cyc:2",
    "dp:cyc:4+cyc:2",
    "dp:cyc:4+cyc:4",
    "dp:cyc:3+cyc:3",
    "dp:cyc:5+cyc:5",
    "dp:sym:3+cyc:2",
    "dp:sym:3+cyc:3",
    "dp:sym:3+sym:3",
    "dp:alt:4+cyc:3",
    "dp:dih:4+cyc:2",
    "dp:dih:4+dih:4",
    "dp:alt:4+cyc:2",
    "dp:sym:4+cyc:2",
    "dp:sym:4+cyc:3",
    "dp:sl:2,3+cyc:2",
    "dp:alt:5+cyc:2",
    "dp:dih:5+dih:5",
    "dp:sym:3+sym:3+cyc:2",
    "lk:sym:4,2",
    "lk:sym:4,3",
    "lk:alt:4,2",
    "lk:sym:3,3",
    "hat:sym:3;2",
    "hat:cyc:3;2",
    "sub:sym:4[(1,2);(1,2,3,4)]+cyc:2[(1,2);(1,2)]",
];

/// Reads a manifest: one spec per line, `#` starts a comment.
pub fn read_manifest(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

/// Naive closure of the generators (oracle for the stabilizer chain).
pub fn naive_order(g: &Group, limit: usize) -> Option<usize> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let id = g.identity();
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        for s in g.generators() {
            let y = queue[i].mul(s);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push(y);
            }
        }
        i += 1;
    }
    Some(seen.len())
}

/// The lattice's maximal subgroups, checked independently: each one joins
/// with any outside element to the whole group, and every proper subgroup
/// of the lattice lies inside one of them. Returns failures.
pub fn check_maximals(t: &SmallGroup, l: &Lattice) -> Vec<String> {
    let mut out = Vec::new();
    let maxes: Vec<_> = l.maximal_subgroups(t).into_iter().map(|m| m.0).collect();
    let n = t.order();
    for m in &maxes {
        if m.count() == n {
            out.push("whole group listed as maximal".to_string());
            continue;
        }
        let mut covered = m.clone();
        for x in 0..n {
            if covered.contains(x) {
                continue;
            }
            // One join per right coset Mx.
            for y in m.iter() {
                covered.insert(t.mul(y, x));
            }
            if t.join(m, &[x]).count() != n {
                out.push(format!("subgroup of order {} is not maximal", m.count()));
                break;
            }
        }
    }
    for h in l.subgroups() {
        if h.count() < n && !maxes.iter().any(|m| h.is_subset(m)) {
            out.push(format!("subgroup of order {} lies in no listed maximal", h.count()));
        }
    }
    out
}

/// `phi_d` through the Moebius function against plain enumeration (or the
/// coset recursion where enumeration is too large). Returns failures.
pub fn check_phi(t: &SmallGroup, l: &Lattice, dmax: u32) -> Vec<String> {
    let mut out = Vec::new();
    let n = t.order() as u64;
    let direct = phi_direct(t, dmax, PHI_BUDGET).ok();
    for d in 1..=dmax {
        let m = phi_moebius(l, d);
        let oracle: Option<BigUint> = if n.pow(d) <= 1_000_000 {
            Some(phi_brute(t, d))
        } else {
            direct.as_ref().map(|v| v[d as usize - 1].clone())
        };
        if let Some(o) = oracle {
            if m != BigInt::from(o.clone()) {
                out.push(format!("phi_{d}: Moebius {m} vs enumeration {o}"));
            }
        }
    }
    out
}

fn check_group(text: &str, limits: &Limits) -> Result<Value> {
    let spec = Spec::parse(text)?;
    let built = engine::build(&spec, limits)?;
    let g = built.group(limits)?;
    let order = g.order();
    if order > BigUint::from(limits.lattice_limit) {
        return Err(Error::limit("corpus group order", &order, limits.lattice_limit));
    }
    let mut checks = 0u32;
    let mut bounds: Vec<String> = Vec::new();
    let mut oracles: Vec<String> = Vec::new();

    let (p, _) = Profile::compute(&g, &limits.invariant_options())?;
    for b in bound_table(&p) {
        checks += 1;
        bounds.extend(b.violations());
    }
    let table = SmallGroup::from_group(&g, limits.table_limit)?;
    let lattice = Lattice::new(&table, limits.lattice_limit)?;
    let mut oracle = PhiOracle::with_lattice(table.clone(), lattice.clone());
    let nu = oracle.nu()?;
    let nr = nu_report(&p, Some(nu));
    checks += 1;
    let nu_failures = nr.violations();

    for (core, n, count, ok) in check_b2(&table, &lattice) {
        checks += 1;
        if !ok {
            bounds.push(format!("{count} core-free maximals of index {n} over a core of order {core}"));
        }
    }

    checks += 1;
    if naive_order(&g, 5000).map(BigUint::from) != Some(order.clone()) {
        oracles.push("stabilizer chain order differs from naive closure".into());
    }
    checks += 1;
    oracles.extend(check_maximals(&table, &lattice));
    if table.order() <= 600 {
        checks += 1;
        oracles.extend(check_phi(&table, &lattice, 3));
    }
    let by_suite = json!({ "bounds": bounds.len(), "nu": nu_failures.len(), "oracles": oracles.len() });
    let violations: Vec<String> = bounds.into_iter().chain(nu_failures).chain(oracles).collect();
    Ok(json!({
        "spec": spec.to_string(),
        "order": report::big(&order),
        "d": report::generator_count(&p.d),
        "nu_exact": nu,
        "nu": report::nu(&nr),
        "checks": checks,
        "by_suite": by_suite,
        "violations": violations,
    }))
}

/// Runs every spec, in parallel, and reports in input order. Budget
/// refusals are recorded per group and do not count as violations.
pub fn run(specs: &[String], limits: &Limits) -> Value {
    let rows: Vec<Value> = specs
        .par_iter()
        .map(|s| match check_group(s, limits) {
            Ok(v) => v,
            Err(e) => json!({
                "spec": s,
                "error": e.to_string(),
                "refused": e.is_limit(),
                "violations": if e.is_limit() { vec![] } else { vec![format!("error: {e}")] },
            }),
        })
        .collect();
    let violations: usize = rows
        .iter()
        .map(|r| r["violations"].as_array().map_or(0, Vec::len))
        .sum();
    let refused = rows.iter().filter(|r| r["refused"] == json!(true)).count();
    json!({
        "provenance": report::provenance(limits),
        "corpus": rows,
        "summary": { "groups": specs.len(), "refused": refused, "violations": violations },
    })
}
