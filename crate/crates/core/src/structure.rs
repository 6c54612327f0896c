//! Chief series, chief factors, complements and crowns.
//!
//! Groups are analysed as tuple groups (see [`crate::subdirect`]). Between
//! `K_i` and `K_{i-1}` the chief factors are the `C_i`-chief factors of
//! `P_i = pi_i(K_{i-1})`, where `C_i` is the constituent at coordinate `i`,
//! so every factor is a section `Q_j / Q_{j-1}` of one constituent table.
//! The centralizer of such a factor is the preimage of its centralizer in
//! `C_i`, and `G` acts on it through `C_i`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigUint;

use crate::bitset::BitSet;
use crate::gf::{intertwiners, Matrix};
use crate::group::Group;
use crate::hom::Epimorphism;
use crate::lattice::{baer_type, Lattice};
use crate::perm::Perm;
use crate::small::{Section, SmallGroup};
use crate::subdirect::{Preimage, TupleChain, TupleGroup};
use crate::{Error, HashMap, Result};

/// Budgets for the structural computations.
#[derive(Clone, Debug)]
pub struct Options {
    /// Largest constituent (and quotient) element table.
    pub table_limit: u64,
    /// Largest group whose subgroup lattice is enumerated.
    pub lattice_limit: usize,
    /// Largest coset action materialized.
    pub degree_limit: usize,
    /// Largest search space `|A|^d` for complement searches.
    pub complement_budget: u64,
    /// Largest `|X_1| |X_2|` for pair closures of non-abelian factors.
    pub pair_limit: usize,
    /// Tie-breaking seed of the chief series (0: canonical choice).
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            table_limit: crate::small::DEFAULT_TABLE_LIMIT,
            lattice_limit: crate::lattice::DEFAULT_LATTICE_LIMIT,
            degree_limit: crate::hom::DEFAULT_DEGREE_LIMIT,
            complement_budget: 1 << 20,
            pair_limit: 1 << 26,
            seed: 0,
        }
    }
}

/// Three-valued answer; `Unknown` means a budget stopped the computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn from_bool(b: bool) -> Decision {
        if b { Decision::Yes } else { Decision::No }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }

    pub fn negate(self) -> Decision {
        match self {
            Decision::Yes => Decision::No,
            Decision::No => Decision::Yes,
            Decision::Unknown => Decision::Unknown,
        }
    }
}

/// Simple constituent of a non-abelian chief factor `S^copies`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleId {
    pub name: String,
    pub simple_order: u64,
    pub copies: u32,
    /// Other simple groups of the same order (before the element test).
    pub alternatives: Vec<String>,
    /// True when the name was decided by an element-order test.
    pub resolved_by_test: bool,
}

impl SimpleId {
    pub fn label(&self) -> String {
        if self.copies == 1 {
            self.name.clone()
        } else {
            alloc::format!("{}^{}", self.name, self.copies)
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChiefFactor {
    /// Constituent coordinate carrying the factor.
    pub coord: usize,
    /// `Q_j` and `Q_{j-1}` inside the constituent table.
    pub upper: BitSet,
    pub lower: BitSet,
    pub order: u64,
    pub abelian: bool,
    pub prime: Option<u32>,
    pub dim: usize,
    pub simple: Option<SimpleId>,
    /// `C_G(H/K)` as a preimage from the constituent.
    pub centralizer: Preimage,
    /// Action of each generator of `G` (abelian factors).
    pub matrices: Vec<Matrix>,
    /// Abelian factor with trivial action.
    pub central: bool,
    pub complemented: Decision,
    pub frattini: Decision,
}

/// One crown: a class of G-isomorphic complemented abelian factors, or of
/// G-connected non-abelian factors.
#[derive(Clone, Debug)]
pub struct Crown {
    pub abelian: bool,
    pub order: u64,
    /// Indices into [`Analysis::factors`], in series order.
    pub members: Vec<usize>,
    /// Some connectedness test against this crown was undecided.
    pub undecided: bool,
}

impl Crown {
    pub fn length(&self) -> usize {
        self.members.len()
    }
}

/// Data shared by all factors with the same table and section.
struct Shape {
    abelian: bool,
    section: Option<Section>,
    centralizer: BitSet,
    simple: Option<SimpleId>,
    /// Abelian: is `upper/lower` complemented in `C/lower`. Non-abelian:
    /// does the socle of `C/centralizer` have a complement.
    complement: Decision,
}

type QuotientEntry = Arc<(SmallGroup, Vec<u16>)>;

/// Structural analysis of one group.
pub struct Analysis {
    tuple: TupleGroup,
    chain: Arc<TupleChain>,
    options: Options,
    factors: Vec<ChiefFactor>,
    source: Option<Group>,
    quotients: RefCell<HashMap<(usize, BitSet), QuotientEntry>>,
    lattices: RefCell<HashMap<(usize, BitSet), Arc<Lattice>>>,
}

impl core::fmt::Debug for Analysis {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Analysis({} chief factors)", self.factors.len())
    }
}

impl Analysis {
    pub fn new(g: &Group, options: Options) -> Result<Analysis> {
        let tuple = TupleGroup::from_group(g, options.table_limit)?;
        let mut a = Analysis::from_tuple(tuple, options)?;
        a.source = Some(g.clone());
        Ok(a)
    }

    pub fn from_tuple(mut tuple: TupleGroup, options: Options) -> Result<Analysis> {
        let chain = tuple.chain();
        let mut a = Analysis {
            tuple,
            chain,
            options,
            factors: Vec::new(),
            source: None,
            quotients: RefCell::new(HashMap::new()),
            lattices: RefCell::new(HashMap::new()),
        };
        a.build_series()?;
        a.decide_complements()?;
        Ok(a)
    }

    pub fn options(&self) -> &Options {
        &self.options
    }

    pub fn tuple(&self) -> &TupleGroup {
        &self.tuple
    }

    pub fn chain(&self) -> &Arc<TupleChain> {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    /// Chief factors from the bottom of the series.
    pub fn factors(&self) -> &[ChiefFactor] {
        &self.factors
    }

    pub fn source(&self) -> Option<&Group> {
        self.source.as_ref()
    }

    fn build_series(&mut self) -> Result<()> {
        let k = self.tuple.coords();
        let mut series_cache: HashMap<(usize, BitSet), Arc<Vec<BitSet>>> = HashMap::new();
        let mut shapes: HashMap<(usize, BitSet, BitSet), Arc<Shape>> = HashMap::new();
        for i in (0..k).rev() {
            let p = self.chain.projection_set(i);
            if p.count() == 1 {
                continue;
            }
            let t = self.tuple.table(i).clone();
            let ti = self.tuple.table_index(i);
            let seed = self.options.seed;
            let series = series_cache
                .entry((ti, p.clone()))
                .or_insert_with(|| {
                    let s = t.chief_series_through_with(core::slice::from_ref(&p), seed);
                    Arc::new(s.into_iter().take_while(|x| x.count() <= p.count()).collect())
                })
                .clone();
            let gens = self.tuple.projected_generators(i);
            for w in series.windows(2) {
                let (lower, upper) = (&w[0], &w[1]);
                let key = (ti, lower.clone(), upper.clone());
                let shape = match shapes.get(&key) {
                    Some(s) => s.clone(),
                    None => {
                        let s = Arc::new(self.shape(&t, ti, lower, upper)?);
                        shapes.insert(key, s.clone());
                        s
                    }
                };
                let order = (upper.count() / lower.count()) as u64;
                let (prime, dim, matrices) = match &shape.section {
                    Some(s) => (
                        Some(s.p),
                        s.dim,
                        gens.iter().map(|&g| t.action_matrix(s, g)).collect(),
                    ),
                    None => (None, 0, Vec::new()),
                };
                let central = shape.abelian
                    && matrices.iter().all(|m: &Matrix| *m == Matrix::identity(m.prime(), m.rows()));
                let frattini = if shape.abelian { Decision::Unknown } else { Decision::No };
                self.factors.push(ChiefFactor {
                    coord: i,
                    upper: upper.clone(),
                    lower: lower.clone(),
                    order,
                    abelian: shape.abelian,
                    prime,
                    dim,
                    simple: shape.simple.clone(),
                    centralizer: Preimage {
                        coord: i,
                        set: shape.centralizer.clone(),
                    },
                    matrices,
                    central,
                    complemented: shape.complement,
                    frattini,
                });
            }
        }
        Ok(())
    }

    fn shape(&self, t: &SmallGroup, ti: usize, lower: &BitSet, upper: &BitSet) -> Result<Shape> {
        let ugens = t.subgroup_generators(upper);
        let abelian = ugens
            .iter()
            .all(|&a| ugens.iter().all(|&b| lower.contains(t.comm(a, b))));
        let centralizer = t.section_centralizer(upper, lower);
        if abelian {
            let section = t.section(upper, lower)?;
            let (q, proj) = &*self.quotient(ti, t, lower);
            let a = image_set(q, proj, upper);
            let complement = match q.complements(&a, Some(1), self.options.complement_budget) {
                Ok(v) => Decision::from_bool(!v.is_empty()),
                Err(e) if e.is_limit() => Decision::Unknown,
                Err(e) => return Err(e),
            };
            Ok(Shape {
                abelian,
                section: Some(section),
                centralizer,
                simple: None,
                complement,
            })
        } else {
            let simple = identify_simple(t, lower, upper);
            let (x, proj) = &*self.quotient(ti, t, &centralizer);
            let m = image_set(x, proj, upper);
            let complement = if m.count() == x.order() {
                Decision::Yes
            } else {
                match x.complements(&m, Some(1), self.options.complement_budget) {
                    Ok(v) => Decision::from_bool(!v.is_empty()),
                    Err(e) if e.is_limit() => Decision::Unknown,
                    Err(e) => return Err(e),
                }
            };
            Ok(Shape {
                abelian,
                section: None,
                centralizer,
                simple: Some(simple),
                complement,
            })
        }
    }

    fn quotient(&self, ti: usize, t: &SmallGroup, n: &BitSet) -> QuotientEntry {
        let key = (ti, n.clone());
        if let Some(q) = self.quotients.borrow().get(&key) {
            return q.clone();
        }
        let q = Arc::new(t.quotient(n));
        self.quotients.borrow_mut().insert(key, q.clone());
        q
    }

    /// Complement decisions for abelian factors that the constituent alone
    /// does not settle.
    fn decide_complements(&mut self) -> Result<()> {
        let mut p_cache: HashMap<(usize, BitSet, BitSet, BitSet), Decision> = HashMap::new();
        for idx in 0..self.factors.len() {
            let f = &self.factors[idx];
            if !f.abelian {
                continue;
            }
            let i = f.coord;
            let t = self.tuple.table(i).clone();
            let ti = self.tuple.table_index(i);
            let p = self.chain.projection_set(i);
            let mut d = f.complemented;
            if d != Decision::Yes && p.count() != t.order() {
                let key = (ti, p.clone(), f.lower.clone(), f.upper.clone());
                let in_p = match p_cache.get(&key) {
                    Some(&d) => d,
                    None => {
                        let d = complemented_in_subgroup(&t, &p, &f.lower, &f.upper, self.options.complement_budget)?;
                        p_cache.insert(key, d);
                        d
                    }
                };
                d = if in_p == Decision::No {
                    Decision::No
                } else {
                    self.truncated_complement(idx)?
                };
            }
            let f = &mut self.factors[idx];
            f.complemented = d;
            f.frattini = d.negate();
        }
        Ok(())
    }

    /// Complement search in `G/K` realized as the truncated tuple group.
    fn truncated_complement(&self, idx: usize) -> Result<Decision> {
        let f = &self.factors[idx];
        let i = f.coord;
        let t = self.tuple.table(i);
        let (q, proj) = &*self.quotient(self.tuple.table_index(i), t, &f.lower);
        let mut trunc = self.tuple.truncated_with_quotient(i, Arc::new(q.clone()), proj);
        let total = trunc.order();
        let a: Vec<usize> = image_set(q, proj, &f.upper).iter().collect();
        let d = trunc.generators().len() as u32;
        let space = (a.len() as u128).checked_pow(d).unwrap_or(u128::MAX);
        if space > self.options.complement_budget as u128 / 64 {
            return Ok(Decision::Unknown);
        }
        let target = &total / BigUint::from(a.len());
        let base_gens = trunc.generators().to_vec();
        let tables = trunc.tables().to_vec();
        let coord_table: Vec<usize> = (0..trunc.coords()).map(|c| trunc.table_index(c)).collect();
        let last = trunc.coords() - 1;
        let mut choice = vec![0usize; d as usize];
        loop {
            let gens: Vec<_> = base_gens
                .iter()
                .zip(&choice)
                .map(|(g, &c)| {
                    let mut g = g.clone();
                    g[last] = q.mul(g[last] as usize, a[c]) as u16;
                    g
                })
                .collect();
            let mut y = TupleGroup::from_tuples(tables.clone(), coord_table.clone(), gens);
            let yc = y.chain();
            if yc.order() == target && a.iter().all(|&x| x == 0 || !yc.projection_set(last).contains(x)) {
                return Ok(Decision::Yes);
            }
            // Next choice in A^d.
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return Ok(Decision::No);
                }
                choice[pos] += 1;
                if choice[pos] < a.len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    /// `G/C_G(F)` for a non-abelian factor, as a table with the projection
    /// from the constituent.
    fn rho(&self, f: &ChiefFactor) -> QuotientEntry {
        let i = f.coord;
        self.quotient(self.tuple.table_index(i), self.tuple.table(i), &f.centralizer.set)
    }

    /// Images of the generators of `G` in `G/C_G(F)`.
    fn rho_gens(&self, f: &ChiefFactor, proj: &[u16]) -> Vec<usize> {
        self.tuple
            .projected_generators(f.coord)
            .into_iter()
            .map(|g| proj[g] as usize)
            .collect()
    }

    /// Order of the image `D` of `G` in `X_1 x X_2`, with one `y` such that
    /// `(x, y)` lies in `D` for every `x` in `X_1`; `None` past the pair limit.
    fn pair_closure(&self, a: &ChiefFactor, b: &ChiefFactor) -> Option<(usize, Vec<usize>)> {
        let ra = self.rho(a);
        let rb = self.rho(b);
        let (x1, x2) = (&ra.0, &rb.0);
        let (n1, n2) = (x1.order(), x2.order());
        if n1.saturating_mul(n2) > self.options.pair_limit {
            return None;
        }
        let g1 = self.rho_gens(a, &ra.1);
        let g2 = self.rho_gens(b, &rb.1);
        let mut seen = BitSet::new(n1 * n2);
        seen.insert(0);
        let mut witness = vec![usize::MAX; n1];
        witness[0] = 0;
        let mut queue = vec![(0usize, 0usize)];
        let mut i = 0;
        while i < queue.len() {
            let (u, v) = queue[i];
            for (&s, &t) in g1.iter().zip(&g2) {
                let w = (x1.mul(u, s), x2.mul(v, t));
                if seen.insert(w.0 * n2 + w.1) {
                    if witness[w.0] == usize::MAX {
                        witness[w.0] = w.1;
                    }
                    queue.push(w);
                }
            }
            i += 1;
        }
        Some((queue.len(), witness))
    }

    /// G-isomorphism of two chief factors.
    pub fn g_isomorphic(&self, a: usize, b: usize) -> Decision {
        let (fa, fb) = (&self.factors[a], &self.factors[b]);
        if fa.abelian != fb.abelian || fa.order != fb.order {
            return Decision::No;
        }
        if a == b {
            return Decision::Yes;
        }
        if fa.abelian {
            if fa.prime != fb.prime || fa.dim != fb.dim {
                return Decision::No;
            }
            if fa.central && fb.central {
                return Decision::Yes;
            }
            if fa.central != fb.central {
                return Decision::No;
            }
            return Decision::from_bool(!intertwiners(&fa.matrices, &fb.matrices).is_empty());
        }
        if fa.coord == fb.coord {
            return Decision::from_bool(fa.centralizer.set == fb.centralizer.set);
        }
        let n1 = self.rho(fa).0.order();
        let n2 = self.rho(fb).0.order();
        if n1 != n2 {
            return Decision::No;
        }
        match self.pair_closure(fa, fb) {
            Some((d, _)) => Decision::from_bool(d == n1),
            None => Decision::Unknown,
        }
    }

    /// G-connectedness: G-isomorphic, or the two minimal normal subgroups
    /// of a primitive quotient of type 3.
    pub fn g_connected(&self, a: usize, b: usize) -> Decision {
        let iso = self.g_isomorphic(a, b);
        let (fa, fb) = (&self.factors[a], &self.factors[b]);
        if iso != Decision::No || fa.abelian || fb.abelian || fa.order != fb.order {
            return iso;
        }
        let ra = self.rho(fa);
        let rb = self.rho(fb);
        let (x1, x2) = (&ra.0, &rb.0);
        let m1 = image_set(x1, &ra.1, &fa.upper);
        let m2 = image_set(x2, &rb.1, &fb.upper);
        if x1.order() != x2.order() || m1.count() != m2.count() {
            return Decision::No;
        }
        let (d, witness) = match self.pair_closure(fa, fb) {
            Some(d) => d,
            None => return Decision::Unknown,
        };
        if d != x1.order() * m2.count() {
            return Decision::No;
        }
        // D has kernel M2 on X1, so x -> witness[x] M2 is a homomorphism
        // X1 -> X2/M2; alpha has to lift it.
        let mut g1: Vec<usize> = x1.generators().iter().map(|&g| g as usize).filter(|&g| g != 0).collect();
        g1.sort_unstable();
        g1.dedup();
        let g2: Vec<usize> = g1.iter().map(|&g| witness[g]).collect();
        match twisted_isomorphism(x1, &g1, x2, &g2, &m2, self.options.complement_budget) {
            Some(found) => Decision::from_bool(found),
            None => Decision::Unknown,
        }
    }

    /// Crowns: G-isomorphism classes of complemented abelian factors and
    /// G-connectedness classes of non-abelian factors.
    pub fn crowns(&self) -> Vec<Crown> {
        let mut crowns: Vec<Crown> = Vec::new();
        for (idx, f) in self.factors.iter().enumerate() {
            if f.abelian && f.complemented != Decision::Yes {
                continue;
            }
            let mut placed = false;
            let mut undecided = false;
            for c in crowns.iter_mut() {
                if c.abelian != f.abelian || c.order != f.order {
                    continue;
                }
                let rep = c.members[0];
                let d = if f.abelian {
                    self.g_isomorphic(rep, idx)
                } else {
                    self.g_connected(rep, idx)
                };
                match d {
                    Decision::Yes => {
                        c.members.push(idx);
                        placed = true;
                        break;
                    }
                    Decision::Unknown => {
                        c.undecided = true;
                        undecided = true;
                    }
                    Decision::No => {}
                }
            }
            if !placed {
                crowns.push(Crown {
                    abelian: f.abelian,
                    order: f.order,
                    members: vec![idx],
                    undecided,
                });
            }
        }
        crowns
    }

    /// Table of the primitive group associated with a factor: `G/C_G(F)`
    /// for non-abelian factors, the affine group `A (G/C_G(A))` for
    /// abelian ones.
    pub fn primitive_table(&self, idx: usize) -> Result<SmallGroup> {
        let f = &self.factors[idx];
        if f.abelian {
            SmallGroup::from_group(&self.associated_primitive(idx)?, self.options.table_limit)
        } else {
            Ok(self.rho(f).0.clone())
        }
    }

    /// The associated primitive group as a permutation group: affine on
    /// `|A|` points, or the regular representation of `G/C_G(F)`.
    pub fn associated_primitive(&self, idx: usize) -> Result<Group> {
        let f = &self.factors[idx];
        if f.abelian {
            let p = f.prime.expect("abelian factor") as usize;
            affine_group(p as u32, f.dim, &f.matrices)
        } else {
            let x = &self.rho(f).0;
            let gens: Vec<Perm> = x.generators().iter().map(|&g| x.regular_perm(g as usize)).collect();
            Group::new(x.order().max(1), gens)
        }
    }

    /// Subgroup lattice of the associated primitive group of a non-abelian
    /// factor (cached per centralizer).
    pub fn primitive_lattice(&self, idx: usize) -> Result<Arc<Lattice>> {
        let f = &self.factors[idx];
        if f.abelian {
            let t = self.primitive_table(idx)?;
            return Ok(Arc::new(Lattice::new(&t, self.options.lattice_limit)?));
        }
        let key = (self.tuple.table_index(f.coord), f.centralizer.set.clone());
        if let Some(l) = self.lattices.borrow().get(&key) {
            return Ok(l.clone());
        }
        let x = &self.rho(f).0;
        let l = Arc::new(Lattice::new(x, self.options.lattice_limit)?);
        self.lattices.borrow_mut().insert(key, l.clone());
        Ok(l)
    }

    /// `(n, count)` of the core-free maximal subgroups of the associated
    /// primitive group.
    pub fn primitive_core_free(&self, idx: usize) -> Result<Vec<(usize, u64)>> {
        Ok(self.primitive_lattice(idx)?.core_free_counts())
    }

    /// `H` and `K` of a factor as permutation groups (analyses built from a
    /// permutation group only).
    pub fn section_groups(&self, idx: usize) -> Result<(Group, Group)> {
        let src = self
            .source
            .as_ref()
            .ok_or_else(|| Error::Unsupported("analysis has no permutation source".into()))?;
        let f = &self.factors[idx];
        let i = f.coord;
        let t = self.tuple.table(i);
        let deeper: Vec<Perm> = self
            .chain
            .generators_from(i + 1)
            .iter()
            .map(|x| self.tuple.perm_of(x).expect("tuple of a member"))
            .collect();
        let lift = |set: &BitSet| -> Vec<Perm> {
            let mut gens = deeper.clone();
            for q in t.subgroup_generators(set) {
                let x = self.chain.lift(i, q).expect("element of P_i");
                gens.push(self.tuple.perm_of(&x).expect("tuple of a member"));
            }
            gens
        };
        let upper = Group::new(src.degree(), lift(&f.upper))?;
        let lower = Group::new(src.degree(), lift(&f.lower))?;
        Ok((upper, lower))
    }

    /// `C_G(H/K)` as a permutation group.
    pub fn centralizer_group(&self, idx: usize) -> Result<Group> {
        let src = self
            .source
            .as_ref()
            .ok_or_else(|| Error::Unsupported("analysis has no permutation source".into()))?;
        let f = &self.factors[idx];
        let t = self.tuple.table(f.coord);
        let perms = t.perms().expect("constituent built from permutations");
        let n = perms[0].degree();
        let target = Group::new(n, t.generators().iter().map(|&g| perms[g as usize].clone()).collect())?;
        let images = self
            .tuple
            .projected_generators(f.coord)
            .into_iter()
            .map(|g| perms[g].clone())
            .collect();
        let hom = Epimorphism::new(src, &target, images)?;
        let z = crate::hom::subgroup_from_set(t, n, &f.centralizer.set);
        hom.preimage(&z)
    }
}

/// Image of a subset under a quotient projection.
fn image_set(q: &SmallGroup, proj: &[u16], set: &BitSet) -> BitSet {
    BitSet::from_indices(q.order(), set.iter().map(|x| proj[x] as usize))
}

/// Is `upper/lower` complemented in `p/lower` (all inside `t`)?
fn complemented_in_subgroup(
    t: &SmallGroup,
    p: &BitSet,
    lower: &BitSet,
    upper: &BitSet,
    budget: u64,
) -> Result<Decision> {
    let (sub, elems) = t.subgroup_table(p);
    let mut pos = vec![usize::MAX; t.order()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    let map = |s: &BitSet| BitSet::from_indices(sub.order(), s.iter().map(|x| pos[x]));
    let (q, proj) = sub.quotient(&map(lower));
    let a = image_set(&q, &proj, &map(upper));
    match q.complements(&a, Some(1), budget) {
        Ok(v) => Ok(Decision::from_bool(!v.is_empty())),
        Err(e) if e.is_limit() => Ok(Decision::Unknown),
        Err(e) => Err(e),
    }
}

/// Is there an isomorphism `alpha: X1 -> X2` with `alpha(g1_t)` in
/// `g2_t M2` for every generator? `None` when the search exceeds `budget`.
fn twisted_isomorphism(
    x1: &SmallGroup,
    g1: &[usize],
    x2: &SmallGroup,
    g2: &[usize],
    m2: &BitSet,
    budget: u64,
) -> Option<bool> {
    let ms: Vec<usize> = m2.iter().collect();
    let candidates: Vec<Vec<usize>> = g1
        .iter()
        .zip(g2)
        .map(|(&a, &b)| {
            ms.iter()
                .map(|&m| x2.mul(b, m))
                .filter(|&z| x2.elem_order(z) == x1.elem_order(a))
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Some(false);
    }
    let space = candidates
        .iter()
        .try_fold(1u128, |acc, v| acc.checked_mul(v.len() as u128))
        .unwrap_or(u128::MAX);
    if space > budget as u128 {
        return None;
    }
    let mut choice = vec![0usize; g1.len()];
    loop {
        let z: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, v)| v[c]).collect();
        if extends_to_isomorphism(x1, g1, x2, &z) {
            return Some(true);
        }
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Some(false);
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Checks that `x_t -> z_t` extends to an isomorphism (edges of the Cayley
/// graph of `X1` consistent, images distinct).
fn extends_to_isomorphism(x1: &SmallGroup, xs: &[usize], x2: &SmallGroup, zs: &[usize]) -> bool {
    if x1.order() != x2.order() {
        return false;
    }
    let n = x1.order();
    let mut map = vec![usize::MAX; n];
    let mut used = BitSet::new(n);
    map[0] = 0;
    used.insert(0);
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        for (&x, &z) in xs.iter().zip(zs) {
            let b = x1.mul(a, x);
            let im = x2.mul(map[a], z);
            if map[b] == usize::MAX {
                if !used.insert(im) {
                    return false;
                }
                map[b] = im;
                queue.push(b);
            } else if map[b] != im {
                return false;
            }
        }
        i += 1;
    }
    queue.len() == n
}

/// Affine group on `GF(p)^dim`: translations and the linear maps `v -> vM`.
pub fn affine_group(p: u32, dim: usize, matrices: &[Matrix]) -> Result<Group> {
    let size = (p as usize).pow(dim as u32);
    let decode = |mut x: usize| -> Vec<u32> {
        let mut v = vec![0u32; dim];
        for c in v.iter_mut() {
            *c = (x % p as usize) as u32;
            x /= p as usize;
        }
        v
    };
    let encode = |v: &[u32]| -> u32 {
        v.iter().rev().fold(0u32, |acc, &c| acc * p + c)
    };
    let mut gens = Vec::new();
    for b in 0..dim {
        let images: Vec<u32> = (0..size)
            .map(|x| {
                let mut v = decode(x);
                v[b] = (v[b] + 1) % p;
                encode(&v)
            })
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    for m in matrices {
        // Row convention: the image of e_r is row r, so v -> v M.
        let mt = m.transpose();
        let images: Vec<u32> = (0..size).map(|x| encode(&mt.apply(&decode(x)))).collect();
        let g = Perm::from_images(images)?;
        if !g.is_identity() {
            gens.push(g);
        }
    }
    Group::new(size.max(1), gens)
}

/// Name of the simple constituent of a non-abelian chief factor, from its
/// order. The only ambiguity in range (order 20160) is settled by elements
/// of order 6 in the factor: `A8` has them, `L3(4)` does not.
fn identify_simple(t: &SmallGroup, lower: &BitSet, upper: &BitSet) -> SimpleId {
    let order = (upper.count() / lower.count()) as u64;
    let table = crate::simple::default_table();
    let decomp = table.power_decompositions(order);
    let Some(&(first, copies)) = decomp.first() else {
        return SimpleId {
            name: alloc::format!("unknown({order})"),
            simple_order: order,
            copies: 1,
            alternatives: Vec::new(),
            resolved_by_test: false,
        };
    };
    if decomp.len() == 1 {
        return SimpleId {
            name: first.name.clone(),
            simple_order: first.order,
            copies,
            alternatives: Vec::new(),
            resolved_by_test: false,
        };
    }
    let names: Vec<String> = decomp.iter().map(|(g, _)| g.name.clone()).collect();
    let has_six = upper.iter().any(|x| {
        let x2 = t.mul(x, x);
        let x3 = t.mul(x2, x);
        let x6 = t.mul(x3, x3);
        lower.contains(x6) && !lower.contains(x2) && !lower.contains(x3)
    });
    let pick = if has_six { "A8" } else { "L3(4)" };
    let chosen = decomp
        .iter()
        .find(|(g, _)| g.name == pick)
        .unwrap_or(&decomp[0]);
    SimpleId {
        name: chosen.0.name.clone(),
        simple_order: chosen.0.order,
        copies: chosen.1,
        alternatives: names,
        resolved_by_test: true,
    }
}

/// Minimal normal subgroups of a group within the table limit.
pub fn minimal_normal_subgroups(g: &Group, table_limit: u64) -> Result<Vec<Group>> {
    let t = SmallGroup::from_group(g, table_limit)?;
    Ok(t.minimal_normal_subgroups()
        .iter()
        .map(|m| crate::hom::subgroup_from_set(&t, g.degree(), m))
        .collect())
}

/// Baer type (1, 2 or 3) of a maximal subgroup `m` of `g`, from the minimal
/// normal subgroups of `G/M_G`.
pub fn classify_maximal(g: &Group, m: &Group, options: &Options) -> Result<u8> {
    let (q, _) = crate::hom::coset_action(g, m, options.degree_limit)?;
    let t = SmallGroup::from_group(&q, options.table_limit)?;
    Ok(baer_type(&t, &t.trivial()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> Group {
        Group::new(n, gens.iter().map(|s| Perm::parse(n, s).unwrap()).collect()).unwrap()
    }

    fn analysis(n: usize, gens: &[&str]) -> Analysis {
        Analysis::new(&group(n, gens), Options::default()).unwrap()
    }

    #[test]
    fn s4_series() {
        let a = analysis(4, &["(1,2)", "(1,2,3,4)"]);
        let orders: Vec<u64> = a.factors().iter().map(|f| f.order).collect();
        assert_eq!(orders, vec![4, 3, 2]);
        assert!(a.factors().iter().all(|f| f.abelian && f.complemented == Decision::Yes));
        assert_eq!(a.crowns().len(), 3);
        let (h, k) = a.section_groups(0).unwrap();
        assert_eq!(h.order(), BigUint::from(4u32));
        assert!(k.is_trivial());
        // C_S4(V4) = V4, so the associated primitive group is S4 again.
        assert_eq!(a.centralizer_group(0).unwrap().order(), BigUint::from(4u32));
        assert_eq!(a.associated_primitive(0).unwrap().order(), BigUint::from(24u32));
    }

    #[test]
    fn a5_single_factor() {
        let a = analysis(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        assert_eq!(a.factors().len(), 1);
        let f = &a.factors()[0];
        assert!(!f.abelian);
        assert_eq!(f.order, 60);
        assert_eq!(f.simple.as_ref().unwrap().name, "A5");
        assert_eq!(f.frattini, Decision::No);
        assert_eq!(a.primitive_core_free(0).unwrap(), vec![(5, 5), (6, 6), (10, 10)]);
    }

    #[test]
    fn frattini_factor_of_c4() {
        let a = analysis(4, &["(1,2,3,4)"]);
        let d: Vec<(u64, Decision)> = a.factors().iter().map(|f| (f.order, f.complemented)).collect();
        assert_eq!(d, vec![(2, Decision::No), (2, Decision::Yes)]);
        assert_eq!(a.crowns().len(), 1);
    }

    #[test]
    fn central_factors_form_one_crown() {
        // C2 x C2 on two orbits.
        let a = analysis(4, &["(1,2)", "(3,4)"]);
        assert_eq!(a.factors().len(), 2);
        let c = a.crowns();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].length(), 2);
    }

    #[test]
    fn a5_squared_is_one_crown_of_length_two() {
        let a = analysis(10, &["(1,2,3)", "(1,2,3,4,5)", "(6,7,8)", "(6,7,8,9,10)"]);
        assert_eq!(a.factors().len(), 2);
        assert_eq!(a.g_isomorphic(0, 1), Decision::No);
        assert_eq!(a.g_connected(0, 1), Decision::Yes);
        let c = a.crowns();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].length(), 2);
    }

    #[test]
    fn a5_times_s3_not_connected() {
        let a = analysis(8, &["(1,2,3)", "(1,2,3,4,5)", "(6,7)", "(6,7,8)"]);
        let c = a.crowns();
        assert_eq!(c.iter().filter(|c| !c.abelian).count(), 1);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn diagonal_factor_crossing_coordinates() {
        // Diagonal S3 on two orbits: the factors at the first coordinate
        // only; the second coordinate adds nothing.
        let a = analysis(6, &["(1,2)(4,5)", "(1,2,3)(4,5,6)"]);
        assert_eq!(a.factors().len(), 2);
        assert_eq!(a.order(), BigUint::from(6u32));
    }

    #[test]
    fn nonsplit_factor_across_coordinates() {
        // <(1,2,3,4)(5,6)>: C4 where the order-2 bottom factor lives in the
        // second coordinate's image of K_0... a cyclic group of order 4 with
        // a Frattini factor.
        let a = analysis(6, &["(1,2,3,4)(5,6)"]);
        let d: Vec<Decision> = a.factors().iter().map(|f| f.complemented).collect();
        assert_eq!(d.iter().filter(|&&x| x == Decision::Yes).count(), 1);
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn classify_maximals() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let s3 = group(4, &["(1,2)", "(1,2,3)"]);
        assert_eq!(classify_maximal(&s4, &s3, &Options::default()).unwrap(), 1);
        let a5 = group(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let a4 = group(5, &["(1,2,3)", "(1,2)(3,4)"]);
        assert_eq!(classify_maximal(&a5, &a4, &Options::default()).unwrap(), 2);
    }

    #[test]
    fn type_three_maximal() {
        let a5 = crate::catalog::alternating(5).unwrap();
        let g = crate::catalog::biregular(&a5, false, 100).unwrap();
        let g = Group::with_base_prefix(60, g.generators().to_vec(), vec![0]).unwrap();
        let stab = Group::new(60, g.chain().level_generators(1)).unwrap();
        assert_eq!(stab.order(), BigUint::from(60u32));
        assert_eq!(classify_maximal(&g, &stab, &Options::default()).unwrap(), 3);
        let a = Analysis::new(&g, Options::default()).unwrap();
        let c = a.crowns();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].length(), 2);
    }

    #[test]
    fn minimal_normals() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let m = minimal_normal_subgroups(&s4, 5000).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), BigUint::from(4u32));
        let a5c2 = group(7, &["(1,2,3)", "(1,2,3,4,5)", "(6,7)"]);
        let m = minimal_normal_subgroups(&a5c2, 5000).unwrap();
        let mut orders: Vec<BigUint> = m.iter().map(Group::order).collect();
        orders.sort();
        assert_eq!(orders, vec![BigUint::from(2u32), BigUint::from(60u32)]);
    }
}
