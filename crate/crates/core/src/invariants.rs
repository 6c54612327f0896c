//! Invariant profiles: crown ranks, exact maximal counts, `d(G)`, `P(G)`,
//! `lambda(G)` and `M(G)`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::group::StabChain;
use crate::lattice::Lattice;
use crate::probgen::phi_direct;
use crate::small::{prime_power, SmallGroup};
use crate::structure::{self, Analysis, Decision};
use crate::{Group, Result};

#[derive(Clone, Debug)]
pub struct Options {
    pub structure: structure::Options,
    /// Enumerate the subgroup lattice of `G` itself when it fits.
    pub exact_maximals: bool,
    /// Random tuples tried per size when lowering the generator count.
    pub generator_trials: u64,
    /// Closure budget for certifying that no smaller tuple generates.
    pub generator_budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            structure: structure::Options::default(),
            exact_maximals: true,
            generator_trials: 200,
            generator_budget: 1 << 22,
        }
    }
}

/// `d(G)` or a bracket around it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorCount {
    pub lower: u32,
    pub upper: u32,
}

impl GeneratorCount {
    pub fn exact(&self) -> Option<u32> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// `M(G) = max_n log m_n / log n`, or `-inf` without maximal subgroups.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScriptM {
    NegInfinity,
    /// Attained at index `n` with `m_n = m`.
    Value { n: u64, m: u64, value: f64 },
}

impl ScriptM {
    pub fn value(&self) -> f64 {
        match self {
            ScriptM::NegInfinity => f64::NEG_INFINITY,
            ScriptM::Value { value, .. } => *value,
        }
    }

    pub fn from_counts(counts: &BTreeMap<u64, u64>) -> ScriptM {
        let mut best = ScriptM::NegInfinity;
        for (&n, &m) in counts {
            if m == 0 || n < 2 {
                continue;
            }
            let v = log_base(m as f64, n as f64);
            if v > best.value() {
                best = ScriptM::Value { n, m, value: v };
            }
        }
        best
    }
}

pub fn log_base(x: f64, n: f64) -> f64 {
    libm::log(x) / libm::log(n)
}

/// One crown, as needed to merge profiles of direct factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrownSummary {
    pub abelian: bool,
    pub order: u64,
    pub length: u64,
    /// Abelian crown with trivial action.
    pub central: bool,
    pub undecided: bool,
    /// Non-abelian: simple constituent label, and `|G/C_G(A)|`.
    pub simple: Option<String>,
    pub primitive_order: Option<u64>,
}

/// A non-abelian chief factor with the core-free maximal indices of its
/// primitive group (`None` when that group was beyond the lattice limit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonAbelianFactor {
    pub order: u64,
    pub simple: String,
    pub primitive_order: u64,
    pub core_free: Option<Vec<(u64, u64)>>,
}

#[derive(Clone, Debug)]
pub struct Profile {
    pub order: BigUint,
    pub d: GeneratorCount,
    /// `P(G)`, smallest index of a proper subgroup.
    pub min_index: Option<u64>,
    /// Non-Frattini chief factors.
    pub lambda: u64,
    /// All chief factors.
    pub chief_length: u64,
    /// Chief factors per `(order, abelian)`.
    pub factor_counts: BTreeMap<(u64, bool), u64>,
    pub cr_ab: BTreeMap<u64, u64>,
    pub rks: BTreeMap<u64, u64>,
    pub rko: BTreeMap<u64, u64>,
    pub rkm: BTreeMap<u64, u64>,
    pub s: BTreeMap<u64, u64>,
    pub rk_iso: BTreeMap<String, u64>,
    pub crowns: Vec<CrownSummary>,
    pub nonabelian: Vec<NonAbelianFactor>,
    /// Abelian chief factors whose complement test ran out of budget.
    pub undecided_complements: u64,
    /// `m_n` from the full lattice.
    pub m_exact: Option<BTreeMap<u64, u64>>,
    /// `(n, Baer type) -> count` from the full lattice.
    pub m_by_type: Option<BTreeMap<(u64, u8), u64>>,
    /// Exact `m_p` obtained without the lattice (see [`derived_maximal_counts`]).
    pub m_derived: BTreeMap<u64, u64>,
    pub script_m: Option<ScriptM>,
    /// `(field, reason)` for every value that was not computed.
    pub skipped: Vec<(String, String)>,
}

impl Profile {
    /// `m_n` when known exactly, from the lattice or the derived rule.
    pub fn m(&self, n: u64) -> Option<u64> {
        if let Some(m) = &self.m_exact {
            return Some(m.get(&n).copied().unwrap_or(0));
        }
        self.m_derived.get(&n).copied()
    }

    pub fn get(map: &BTreeMap<u64, u64>, n: u64) -> u64 {
        map.get(&n).copied().unwrap_or(0)
    }

    /// `r_a` in the Lubotzky bound: abelian chief factors of order `n`.
    pub fn abelian_factors_of_order(&self, n: u64) -> u64 {
        self.factor_counts.get(&(n, true)).copied().unwrap_or(0)
    }

    /// `r_b` in the Lubotzky bound: non-abelian chief factors of order `n`
    /// or whose primitive group has a core-free maximal of index `n`.
    pub fn nonabelian_factors_for_index(&self, n: u64) -> u64 {
        self.nonabelian
            .iter()
            .filter(|f| {
                f.order == n
                    || f.core_free.as_ref().is_some_and(|v| v.iter().any(|&(i, _)| i == n))
            })
            .count() as u64
    }

    /// Indices that any bound should look at: prime powers with abelian
    /// factors, non-abelian orders, core-free indices, and lattice indices.
    pub fn relevant_indices(&self) -> Vec<u64> {
        let mut v: Vec<u64> = Vec::new();
        v.extend(self.factor_counts.keys().map(|&(n, _)| n));
        v.extend(self.rks.keys());
        if let Some(m) = &self.m_exact {
            v.extend(m.keys());
        }
        v.extend(self.m_derived.keys());
        v.sort_unstable();
        v.dedup();
        v.retain(|&n| n >= 2);
        v
    }

    /// Profile of a group from its structural analysis.
    pub fn compute(g: &Group, opts: &Options) -> Result<(Profile, Analysis)> {
        let a = Analysis::new(g, opts.structure.clone())?;
        let mut p = Profile::from_analysis(&a)?;
        p.d = min_generators(g, opts, Some(&a));
        if opts.exact_maximals {
            p.add_lattice(g, &opts.structure);
        } else {
            p.skipped.push(("m_exact".into(), "disabled".into()));
        }
        p.finish();
        Ok((p, a))
    }

    /// Everything except `d`, the lattice counts and `M(G)`.
    pub fn from_analysis(a: &Analysis) -> Result<Profile> {
        let mut p = Profile {
            order: a.order(),
            d: GeneratorCount { lower: 0, upper: u32::MAX },
            min_index: None,
            lambda: 0,
            chief_length: a.factors().len() as u64,
            factor_counts: BTreeMap::new(),
            cr_ab: BTreeMap::new(),
            rks: BTreeMap::new(),
            rko: BTreeMap::new(),
            rkm: BTreeMap::new(),
            s: BTreeMap::new(),
            rk_iso: BTreeMap::new(),
            crowns: Vec::new(),
            nonabelian: Vec::new(),
            undecided_complements: 0,
            m_exact: None,
            m_by_type: None,
            m_derived: BTreeMap::new(),
            script_m: None,
            skipped: Vec::new(),
        };
        for (idx, f) in a.factors().iter().enumerate() {
            *p.factor_counts.entry((f.order, f.abelian)).or_insert(0) += 1;
            if f.abelian {
                match f.complemented {
                    Decision::Yes => p.lambda += 1,
                    Decision::Unknown => p.undecided_complements += 1,
                    Decision::No => {}
                }
                continue;
            }
            p.lambda += 1;
            *p.rko.entry(f.order).or_insert(0) += 1;
            let simple = f.simple.as_ref().map(|s| s.label()).unwrap_or_default();
            *p.rk_iso.entry(simple.clone()).or_insert(0) += 1;
            let x = a.primitive_table(idx)?;
            let core_free = match a.primitive_core_free(idx) {
                Ok(v) => Some(v.into_iter().map(|(n, c)| (n as u64, c)).collect::<Vec<_>>()),
                Err(e) if e.is_limit() => {
                    p.skipped.push((
                        "rks".into(),
                        alloc::format!("primitive group of order {} beyond lattice limit", x.order()),
                    ));
                    None
                }
                Err(e) => return Err(e),
            };
            if let Some(cf) = &core_free {
                for &(n, _) in cf {
                    *p.rks.entry(n).or_insert(0) += 1;
                }
            }
            p.nonabelian.push(NonAbelianFactor {
                order: f.order,
                simple,
                primitive_order: x.order() as u64,
                core_free,
            });
        }
        if p.undecided_complements > 0 {
            p.skipped.push((
                "lambda".into(),
                alloc::format!("{} complement tests over budget", p.undecided_complements),
            ));
        }
        for c in a.crowns() {
            let f = &a.factors()[c.members[0]];
            let summary = CrownSummary {
                abelian: c.abelian,
                order: c.order,
                length: c.length() as u64,
                central: f.central,
                undecided: c.undecided,
                simple: f.simple.as_ref().map(|s| s.label()),
                primitive_order: if c.abelian {
                    None
                } else {
                    Some(a.primitive_table(c.members[0])?.order() as u64)
                },
            };
            p.crowns.push(summary);
        }
        p.rebuild_crown_maps();
        p.min_index = min_index(&p);
        Ok(p)
    }

    fn rebuild_crown_maps(&mut self) {
        self.cr_ab.clear();
        self.s.clear();
        self.rkm.clear();
        let mut nonab_total: BTreeMap<u64, u64> = BTreeMap::new();
        for c in &self.crowns {
            if c.abelian {
                *self.cr_ab.entry(c.order).or_insert(0) += 1;
            } else {
                *self.s.entry(c.order).or_insert(0) += 1;
                let m = self.rkm.entry(c.order).or_insert(0);
                *m = (*m).max(c.length);
                *nonab_total.entry(c.order).or_insert(0) += c.length;
            }
        }
        if self.crowns.iter().any(|c| c.undecided) {
            self.skipped.push(("crowns".into(), "some G-connectedness tests undecided".into()));
        }
        debug_assert!(nonab_total.iter().all(|(n, t)| Profile::get(&self.rko, *n) == *t));
    }

    fn add_lattice(&mut self, g: &Group, opts: &structure::Options) {
        let within = self
            .order
            .to_u64()
            .is_some_and(|n| n <= opts.lattice_limit as u64);
        if !within {
            self.skipped.push((
                "m_exact".into(),
                alloc::format!("|G| = {} beyond lattice limit {}", self.order, opts.lattice_limit),
            ));
            return;
        }
        let lat = SmallGroup::from_group(g, opts.table_limit)
            .and_then(|t| Lattice::new(&t, opts.lattice_limit));
        match lat {
            Ok(l) => {
                let counts: BTreeMap<u64, u64> =
                    l.maximal_counts().into_iter().map(|(n, c)| (n as u64, c)).collect();
                let by_type = l
                    .maximal_counts_by_type()
                    .into_iter()
                    .map(|(n, t, c)| ((n as u64, t), c))
                    .collect();
                self.min_index = counts.keys().next().copied().or(self.min_index);
                self.m_exact = Some(counts);
                self.m_by_type = Some(by_type);
            }
            Err(e) => self.skipped.push(("m_exact".into(), e.to_string())),
        }
    }

    /// Derived exact counts and `M(G)` once the other fields are final.
    pub fn finish(&mut self) {
        self.m_derived = derived_maximal_counts(self);
        self.script_m = match &self.m_exact {
            Some(m) => Some(ScriptM::from_counts(m)),
            None => {
                if !self.skipped.iter().any(|(f, _)| f == "script_M") {
                    self.skipped
                        .push(("script_M".into(), "needs every m_n (lattice unavailable)".into()));
                }
                None
            }
        };
    }
}

trait ToU64 {
    fn to_u64(&self) -> Option<u64>;
}

impl ToU64 for BigUint {
    fn to_u64(&self) -> Option<u64> {
        num_traits::ToPrimitive::to_u64(self)
    }
}

/// Exact `m_p` for primes `p` where every index-`p` maximal subgroup is
/// normal: `rks_p = 0` and every complemented factor of order `p` is
/// central. Those maximals are the kernels of the maps onto `C_p` from
/// `C_p^t`, `t` the length of the central `p`-crown, so
/// `m_p = (p^t - 1)/(p - 1)`.
pub fn derived_maximal_counts(p: &Profile) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    let primes: Vec<u64> = p
        .factor_counts
        .keys()
        .filter(|(n, ab)| *ab && prime_power(*n).is_some_and(|(_, k)| k == 1))
        .map(|&(n, _)| n)
        .collect();
    for q in primes {
        if Profile::get(&p.rks, q) != 0 || p.undecided_complements != 0 {
            continue;
        }
        let crowns: Vec<&CrownSummary> = p.crowns.iter().filter(|c| c.abelian && c.order == q).collect();
        if crowns.iter().any(|c| !c.central) {
            continue;
        }
        let t = crowns.iter().map(|c| c.length).sum::<u64>() as u32;
        let m = (q.pow(t) - 1) / (q - 1);
        out.insert(q, m);
    }
    out
}

/// `P(G)` from the chief structure: `|A|` for complemented abelian factors,
/// the core-free indices of non-abelian primitive groups, and `|A|` for
/// non-abelian crowns of length at least two.
fn min_index(p: &Profile) -> Option<u64> {
    let mut best: Option<u64> = None;
    let mut take = |n: u64| best = Some(best.map_or(n, |b: u64| b.min(n)));
    for c in &p.crowns {
        if c.abelian || c.length >= 2 {
            take(c.order);
        }
    }
    for f in &p.nonabelian {
        f.core_free.as_ref()?.iter().for_each(|&(n, _)| take(n));
    }
    if p.undecided_complements > 0 {
        return None;
    }
    best
}

/// `d(G)`: random tuples lower the upper bound, counting generating tuples
/// on the element table certifies the lower bound.
pub fn min_generators(g: &Group, opts: &Options, analysis: Option<&Analysis>) -> GeneratorCount {
    if g.is_trivial() {
        return GeneratorCount { lower: 0, upper: 0 };
    }
    let gens = irredundant(g);
    let mut upper = gens.len() as u32;
    let mut lower = if g.is_abelian() { 1 } else { 2 };
    if let Some(a) = analysis {
        // C_p^t is a quotient for a central p-crown of length t.
        for c in a.crowns() {
            let f = &a.factors()[c.members[0]];
            if f.abelian && f.central {
                lower = lower.max((c.length() as u32) * f.dim as u32);
            }
        }
    }
    let table = SmallGroup::from_group(g, opts.structure.table_limit).ok();
    let mut rng = crate::random::rng(opts.structure.seed ^ 0x5eed);
    let target = g.order();
    while upper > lower {
        let k = upper - 1;
        let found = (0..opts.generator_trials).any(|_| match &table {
            Some(t) => {
                let tuple: Vec<usize> = (0..k).map(|_| rng.random_range(0..t.order())).collect();
                t.generates(&tuple)
            }
            None => {
                let tuple: Vec<_> = (0..k).map(|_| g.random_element(&mut rng)).collect();
                StabChain::build(g.degree(), &tuple, &[]).order() == target
            }
        });
        if found {
            upper = k;
        } else {
            break;
        }
    }
    if upper > lower {
        if let Some(t) = &table {
            if let Ok(phis) = phi_direct(t, upper - 1, opts.generator_budget) {
                let first = phis.iter().position(|x| !x.is_zero_count()).map(|i| i as u32 + 1);
                match first {
                    Some(k) => {
                        lower = k;
                        upper = k;
                    }
                    None => lower = upper,
                }
            }
        }
    }
    GeneratorCount { lower, upper }
}

trait ZeroCount {
    fn is_zero_count(&self) -> bool;
}

impl ZeroCount for BigUint {
    fn is_zero_count(&self) -> bool {
        *self < BigUint::one()
    }
}

/// Drops generators that the others already generate.
fn irredundant(g: &Group) -> Vec<crate::Perm> {
    let mut gens: Vec<crate::Perm> = g.generators().iter().filter(|x| !x.is_identity()).cloned().collect();
    let target = g.order();
    let mut i = 0;
    while i < gens.len() {
        let rest: Vec<_> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
        if StabChain::build(g.degree(), &rest, &[]).order() == target {
            gens = rest;
        } else {
            i += 1;
        }
    }
    gens
}

/// Profile of `G_1 x .. x G_k` from profiles of the factors. Only central
/// abelian crowns of the same prime merge: a factor of `G_i` and one of
/// `G_j` are `G`-isomorphic only when both centralizers contain `G_i G_j`.
/// Non-abelian factors from different components are `G`-connected
/// exactly when both primitive groups are the simple factor itself (then
/// `G/(C_1 C_2)` is `T x T` in its diagonal action) with the same `T`.
/// `d` is supplied by the caller; the lattice-dependent fields are
/// dropped.
pub fn assemble_direct_product(parts: &[Profile], d: GeneratorCount) -> Profile {
    let mut order = BigUint::one();
    let mut p = Profile {
        order: BigUint::one(),
        d,
        min_index: None,
        lambda: 0,
        chief_length: 0,
        factor_counts: BTreeMap::new(),
        cr_ab: BTreeMap::new(),
        rks: BTreeMap::new(),
        rko: BTreeMap::new(),
        rkm: BTreeMap::new(),
        s: BTreeMap::new(),
        rk_iso: BTreeMap::new(),
        crowns: Vec::new(),
        nonabelian: Vec::new(),
        undecided_complements: 0,
        m_exact: None,
        m_by_type: None,
        m_derived: BTreeMap::new(),
        script_m: None,
        skipped: Vec::new(),
    };
    for part in parts {
        order *= &part.order;
        p.lambda += part.lambda;
        p.chief_length += part.chief_length;
        p.undecided_complements += part.undecided_complements;
        for (k, v) in &part.factor_counts {
            *p.factor_counts.entry(*k).or_insert(0) += v;
        }
        for (map, src) in [(&mut p.rks, &part.rks), (&mut p.rko, &part.rko)] {
            for (k, v) in src {
                *map.entry(*k).or_insert(0) += v;
            }
        }
        for (k, v) in &part.rk_iso {
            *p.rk_iso.entry(k.clone()).or_insert(0) += v;
        }
        p.nonabelian.extend(part.nonabelian.iter().cloned());
        for (f, why) in &part.skipped {
            if f != "m_exact" && f != "script_M" {
                p.skipped.push((f.clone(), why.clone()));
            }
        }
        for c in &part.crowns {
            let merge = p.crowns.iter_mut().find(|e| {
                if c.abelian {
                    e.abelian && c.central && e.central && e.order == c.order
                } else {
                    !e.abelian
                        && e.order == c.order
                        && e.simple == c.simple
                        && e.primitive_order == Some(c.order)
                        && c.primitive_order == Some(c.order)
                }
            });
            match merge {
                Some(e) => {
                    e.length += c.length;
                    e.undecided |= c.undecided;
                }
                None => p.crowns.push(c.clone()),
            }
        }
    }
    p.order = order;
    p.rebuild_crown_maps();
    p.min_index = min_index(&p);
    p.skipped.push(("m_exact".into(), "assembled profile; lattice not enumerated".into()));
    p.finish();
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn profile(g: &Group) -> Profile {
        Profile::compute(g, &Options::default()).unwrap().0
    }

    fn map(v: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn s4() {
        let p = profile(&catalog::symmetric(4).unwrap());
        assert_eq!(p.lambda, 3);
        assert_eq!(p.cr_ab, map(&[(2, 1), (3, 1), (4, 1)]));
        assert_eq!(p.m_exact, Some(map(&[(2, 1), (3, 3), (4, 4)])));
        assert_eq!(p.script_m.unwrap().value(), 1.0);
        assert_eq!(p.d.exact(), Some(2));
        assert_eq!(p.min_index, Some(2));
        assert!(p.rks.is_empty());
    }

    #[test]
    fn a5() {
        let p = profile(&catalog::alternating(5).unwrap());
        assert_eq!(p.rks, map(&[(5, 1), (6, 1), (10, 1)]));
        assert_eq!(p.rko, map(&[(60, 1)]));
        assert_eq!(p.rkm, map(&[(60, 1)]));
        assert_eq!(p.s, map(&[(60, 1)]));
        assert!(p.cr_ab.is_empty());
        assert_eq!(p.rk_iso.get("A5"), Some(&1));
        assert!((p.script_m.unwrap().value() - 1.0).abs() < 1e-12);
        assert_eq!(p.min_index, Some(5));
    }

    #[test]
    fn generator_counts() {
        let o = Options::default();
        let c6 = catalog::cyclic(6).unwrap();
        assert_eq!(min_generators(&c6, &o, None).exact(), Some(1));
        let c2 = crate::Perm::parse(6, "(1,2)").unwrap();
        let e8 = Group::new(
            6,
            alloc::vec![c2.clone(), crate::Perm::parse(6, "(3,4)").unwrap(), crate::Perm::parse(6, "(5,6)").unwrap()],
        )
        .unwrap();
        assert_eq!(min_generators(&e8, &o, None).exact(), Some(3));
        // S4 given by four generators.
        let s4 = Group::new(
            4,
            ["(1,2)", "(2,3)", "(3,4)", "(1,3)"].iter().map(|s| crate::Perm::parse(4, s).unwrap()).collect(),
        )
        .unwrap();
        assert_eq!(min_generators(&s4, &o, None).exact(), Some(2));
        assert_eq!(min_generators(&Group::trivial(2), &o, None).exact(), Some(0));
    }

    #[test]
    fn derived_m_p_matches_lattice() {
        // C3 x C3 x S3: central 3-crown of length 2 but rks_3 = 0 and a
        // non-central order-3 factor, so no derived value; C3 x C3 alone
        // gives (9 - 1)/2 = 4.
        let g = Group::new(
            6,
            alloc::vec![crate::Perm::parse(6, "(1,2,3)").unwrap(), crate::Perm::parse(6, "(4,5,6)").unwrap()],
        )
        .unwrap();
        let p = profile(&g);
        assert_eq!(p.m_derived, map(&[(3, 4)]));
        assert_eq!(p.m(3), Some(4));
        assert_eq!(p.m_exact.as_ref().unwrap()[&3], 4);
        let h = Group::new(
            9,
            alloc::vec![
                crate::Perm::parse(9, "(1,2,3)").unwrap(),
                crate::Perm::parse(9, "(4,5,6)").unwrap(),
                crate::Perm::parse(9, "(7,8)").unwrap(),
                crate::Perm::parse(9, "(7,8,9)").unwrap(),
            ],
        )
        .unwrap();
        let p = profile(&h);
        assert!(!p.m_derived.contains_key(&3));
    }

    #[test]
    fn assembly_merges_central_crowns_only() {
        let c3 = catalog::cyclic(3).unwrap();
        let s3 = catalog::symmetric(3).unwrap();
        let a5 = catalog::alternating(5).unwrap();
        let parts: Vec<Profile> = [&c3, &c3, &s3, &s3, &a5, &a5].iter().map(|g| profile(g)).collect();
        let p = assemble_direct_product(&parts, GeneratorCount { lower: 2, upper: 2 });
        // C3 central crowns merge (length 2); S3's C2 tops are central and
        // merge too; S3's C3 factors stay apart; A5 x A5 is one crown.
        assert_eq!(p.cr_ab, map(&[(2, 1), (3, 3)]));
        assert_eq!(p.s, map(&[(60, 1)]));
        assert_eq!(p.rkm, map(&[(60, 2)]));
        assert_eq!(p.rko, map(&[(60, 2)]));
        assert_eq!(p.m_derived.get(&2), Some(&3));
        // Directly: the same group as one permutation group.
        let direct = Group::new(
            22,
            [&c3, &c3, &s3, &s3, &a5, &a5]
                .iter()
                .scan(0usize, |off, g| {
                    let o = *off;
                    *off += g.degree();
                    Some(g.generators().iter().map(move |x| x.shifted(o, 22)).collect::<Vec<_>>())
                })
                .flatten()
                .collect(),
        )
        .unwrap();
        let a = Analysis::new(&direct, structure::Options::default()).unwrap();
        let q = Profile::from_analysis(&a).unwrap();
        assert_eq!(q.cr_ab, p.cr_ab);
        assert_eq!(q.rkm, p.rkm);
        assert_eq!(q.s, p.s);
        assert_eq!(q.lambda, p.lambda);
    }
}
