//! Resolving specs to groups and computing their profiles.

use std::sync::Arc;

use maxind_core::constructions::{self, CrownedTower, OrbitCensus};
use maxind_core::invariants::{self, min_generators, GeneratorCount, Profile};
use maxind_core::small::SmallGroup;
use maxind_core::structure::{self, Analysis};
use maxind_core::subdirect::TupleGroup;
use maxind_core::{catalog, Error, Group, Perm, Result};
use num_bigint::BigUint;

use crate::spec::Spec;

/// Budgets shared by every command.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Limits {
    pub lattice_limit: usize,
    /// Largest permutation degree that is materialized.
    pub degree_limit: usize,
    pub table_limit: u64,
    pub seed: u64,
    pub trials: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            lattice_limit: maxind_core::lattice::DEFAULT_LATTICE_LIMIT,
            degree_limit: 4096,
            table_limit: constructions::AUT_TABLE_LIMIT,
            seed: 1,
            trials: 10_000,
        }
    }
}

impl Limits {
    pub fn invariant_options(&self) -> invariants::Options {
        invariants::Options {
            structure: structure::Options {
                table_limit: self.table_limit,
                lattice_limit: self.lattice_limit,
                seed: self.seed,
                ..structure::Options::default()
            },
            ..invariants::Options::default()
        }
    }

    pub fn construction_options(&self) -> constructions::Options {
        constructions::Options {
            table_limit: self.table_limit,
            lattice_limit: self.lattice_limit,
            ..constructions::Options::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct HatBuilt {
    pub base: Group,
    pub table: Arc<SmallGroup>,
    pub census: OrbitCensus,
    pub group: Option<Group>,
}

impl HatBuilt {
    pub fn tuple_group(&self) -> TupleGroup {
        constructions::hat_tuple(self.table.clone(), &self.census)
    }
}

/// A resolved spec, keeping the construction data around.
#[derive(Clone, Debug)]
pub enum Built {
    Group(Group),
    Tower(CrownedTower),
    Hat(HatBuilt),
    Dp(Vec<Built>),
}

pub fn build(spec: &Spec, limits: &Limits) -> Result<Built> {
    Ok(match spec {
        Spec::Builtin(name) => Built::Group(catalog::builtin(name)?),
        Spec::Perm { degree, gens } => Built::Group(Group::new(*degree, gens.clone())?),
        Spec::Dp(items) => Built::Dp(items.iter().map(|s| build(s, limits)).collect::<Result<_>>()?),
        Spec::Lk(inner, k) => {
            let l = build(inner, limits)?.group(limits)?;
            Built::Tower(tower(&l, *k, limits)?)
        }
        Spec::Hat(inner, d) => {
            let g = build(inner, limits)?.group(limits)?;
            let opts = limits.construction_options();
            let table = Arc::new(SmallGroup::from_group(&g, opts.table_limit)?);
            let census = constructions::tuple_orbits(&table, *d, &opts)?;
            let degree = census.representatives.len() * g.degree();
            let group = if degree <= limits.degree_limit {
                Some(constructions::hat(&g, *d, limits.degree_limit, &opts)?.group.expect("within limit"))
            } else {
                None
            };
            Built::Hat(HatBuilt { base: g, table, census, group })
        }
        Spec::Sub(items) => {
            let factors = items
                .iter()
                .map(|(s, gens)| Ok((build(s, limits)?.group(limits)?, gens.clone())))
                .collect::<Result<Vec<_>>>()?;
            Built::Group(constructions::subdirect(&factors)?)
        }
    })
}

/// `L_k` over the first abelian minimal normal subgroup that works.
fn tower(l: &Group, k: usize, limits: &Limits) -> Result<CrownedTower> {
    let opts = limits.construction_options();
    let mut last = Error::Invalid("no abelian minimal normal subgroup".into());
    for n in structure::minimal_normal_subgroups(l, limits.table_limit)? {
        if !n.is_abelian() {
            continue;
        }
        match constructions::build_lk_with(l, &n, k, &opts) {
            Ok(t) => return Ok(t),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn concat_blocks(parts: &[Group], gens_of: impl Fn(&Group) -> Vec<Perm>, zip: bool) -> Result<Group> {
    let total: usize = parts.iter().map(Group::degree).sum();
    let lists: Vec<Vec<Perm>> = parts.iter().map(&gens_of).collect();
    let mut gens = Vec::new();
    if zip {
        let len = lists.iter().map(Vec::len).max().unwrap_or(0);
        for j in 0..len {
            let blocks: Vec<Perm> = parts
                .iter()
                .zip(&lists)
                .map(|(g, l)| l.get(j).cloned().unwrap_or_else(|| g.identity()))
                .collect();
            let refs: Vec<&Perm> = blocks.iter().collect();
            gens.push(Perm::concat(&refs));
        }
    } else {
        let mut off = 0;
        for (g, l) in parts.iter().zip(&lists) {
            gens.extend(l.iter().map(|x| x.shifted(off, total)));
            off += g.degree();
        }
    }
    Group::lazy(total, gens)
}

impl Built {
    /// The permutation group, materialized when within the degree limit.
    pub fn group(&self, limits: &Limits) -> Result<Group> {
        match self {
            Built::Group(g) => Ok(g.clone()),
            Built::Tower(t) => Ok(t.tower.clone()),
            Built::Hat(h) => h.group.clone().ok_or_else(|| {
                Error::Limit {
                    what: "materialized degree",
                    needed: (h.census.representatives.len() * h.base.degree()).to_string(),
                    limit: limits.degree_limit.to_string(),
                }
            }),
            Built::Dp(parts) => {
                let groups = parts.iter().map(|p| p.group(limits)).collect::<Result<Vec<_>>>()?;
                let total: usize = groups.iter().map(Group::degree).sum();
                if total > limits.degree_limit {
                    return Err(Error::Limit {
                        what: "materialized degree",
                        needed: total.to_string(),
                        limit: limits.degree_limit.to_string(),
                    });
                }
                concat_blocks(&groups, |g| g.generators().to_vec(), false)
            }
        }
    }

    /// Small enough for element tables and lattices.
    pub fn small_group(&self, limits: &Limits) -> Option<Group> {
        match self {
            Built::Dp(_) if self.has_hat() => return None,
            Built::Hat(h) if h.group.is_none() => return None,
            _ => {}
        }
        if self.order() <= BigUint::from(limits.table_limit) {
            self.group(limits).ok()
        } else {
            None
        }
    }

    fn has_hat(&self) -> bool {
        match self {
            Built::Hat(_) => true,
            Built::Dp(parts) => parts.iter().any(Built::has_hat),
            _ => false,
        }
    }

    pub fn order(&self) -> BigUint {
        match self {
            Built::Group(g) => g.order(),
            Built::Tower(t) => t.tower.order(),
            Built::Hat(h) => h.tuple_group().order(),
            Built::Dp(parts) => parts.iter().map(Built::order).product(),
        }
    }
}

/// Invariant profile; direct products are assembled from their factors.
pub fn profile(b: &Built, limits: &Limits) -> Result<Profile> {
    let opts = limits.invariant_options();
    match b {
        Built::Group(g) => Ok(Profile::compute(g, &opts)?.0),
        Built::Tower(t) => Ok(Profile::compute(&t.tower, &opts)?.0),
        Built::Hat(h) => {
            let a = Analysis::from_tuple(h.tuple_group(), opts.structure.clone())?;
            let mut p = Profile::from_analysis(&a)?;
            let base = min_generators(&h.base, &opts, None);
            p.d = GeneratorCount { lower: base.lower, upper: h.census.d };
            p.skipped.push(("m_exact".into(), "hat group; lattice not enumerated".into()));
            p.finish();
            Ok(p)
        }
        Built::Dp(parts) => {
            // Small products go the direct route; the rest is assembled.
            if let Some(g) = b.small_group(limits) {
                return Ok(Profile::compute(&g, &opts)?.0);
            }
            let profiles = parts.iter().map(|p| profile(p, limits)).collect::<Result<Vec<_>>>()?;
            let d = dp_generators(parts, &profiles, limits);
            Ok(invariants::assemble_direct_product(&profiles, d))
        }
    }
}

/// `max d_i <= d <= sum d_i`; when the zipped natural generators of the
/// factors generate the whole product the upper bound drops to their
/// number.
fn dp_generators(parts: &[Built], profiles: &[Profile], limits: &Limits) -> GeneratorCount {
    let lower = profiles.iter().map(|p| p.d.lower).max().unwrap_or(0);
    let mut upper: u32 = profiles.iter().map(|p| p.d.upper).sum();
    let groups: Result<Vec<Group>> = parts.iter().map(|p| p.group(limits)).collect();
    if let Ok(groups) = groups {
        let len = groups.iter().map(|g| g.generators().len()).max().unwrap_or(0) as u32;
        if len < upper {
            let zipped = concat_blocks(&groups, |g| g.generators().to_vec(), true);
            let target: BigUint = profiles.iter().map(|p| p.order.clone()).product();
            let ok = zipped
                .and_then(|z| TupleGroup::from_group(&z, limits.table_limit))
                .map(|mut t| t.order() == target)
                .unwrap_or(false);
            if ok {
                upper = len;
            }
        }
    }
    GeneratorCount { lower, upper: upper.max(lower) }
}
