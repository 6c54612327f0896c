//! Stabilizer chains and the `Group` handle.
//!
//! Chains are built with the deterministic Schreier-Sims algorithm: every
//! Schreier generator of every level is sifted, so a finished chain is a
//! certified base and strong generating set. Schreier trees are extended in
//! place and never re-rooted, which keeps transversal elements stable and
//! lets each (orbit point, generator) pair be tested exactly once.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;
use once_cell::race::OnceBox;
use rand::Rng;

use crate::perm::Perm;
use crate::{Error, Result};

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// Levels whose transversal would need more than this many stored image
/// entries fall back to Schreier-tree tracing.
const EXPLICIT_TRANSVERSAL_BUDGET: usize = 1 << 22;

#[derive(Clone)]
struct Level {
    point: u32,
    /// Indices into `StabChain::strong`.
    gens: Vec<u32>,
    orbit: Vec<u32>,
    /// Per point: strong generator index of the tree edge into it.
    label: Vec<u32>,
    /// Per point: position in `orbit`.
    pos: Vec<u32>,
    /// `u_beta^-1` for each orbit point, while within budget.
    inv_trans: Option<Vec<Perm>>,
    /// Per local generator: orbit prefix whose Schreier generators are known
    /// to lie in the next stabilizer.
    tested: Vec<usize>,
}

/// A base and strong generating set.
#[derive(Clone)]
pub struct StabChain {
    degree: usize,
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Chain of the subgroup generated by `gens`, optionally forcing the
    /// first base points.
    pub fn build(degree: usize, gens: &[Perm], base_prefix: &[u32]) -> StabChain {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for &b in base_prefix {
            chain.push_level(b);
        }
        for g in gens {
            if g.is_identity() || chain.strong.iter().any(|s| s == g) {
                continue;
            }
            let idx = chain.push_strong(g.clone());
            let depth = chain
                .levels
                .iter()
                .position(|l| g.moves(l.point))
                .unwrap_or_else(|| {
                    let p = longest_cycle_point(g);
                    chain.push_level(p);
                    chain.levels.len() - 1
                });
            for l in 0..=depth {
                chain.levels[l].gens.push(idx);
                chain.levels[l].tested.push(0);
            }
        }
        for l in 0..chain.levels.len() {
            chain.extend_orbit(l, 0);
        }
        if !chain.levels.is_empty() {
            chain.schreier_sims(chain.levels.len() - 1);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn base_len(&self) -> usize {
        self.levels.len()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    /// Generators of the pointwise stabilizer of the first `level` base
    /// points.
    pub fn level_generators(&self, level: usize) -> Vec<Perm> {
        match self.levels.get(level) {
            Some(l) => l.gens.iter().map(|&i| self.strong[i as usize].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        let mut o = BigUint::one();
        for l in &self.levels {
            o *= l.orbit.len();
        }
        o
    }

    /// Order of the stabilizer of the first `level` base points.
    pub fn stabilizer_order(&self, level: usize) -> BigUint {
        let mut o = BigUint::one();
        for l in &self.levels[level.min(self.levels.len())..] {
            o *= l.orbit.len();
        }
        o
    }

    fn push_strong(&mut self, g: Perm) -> u32 {
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        (self.strong.len() - 1) as u32
    }

    fn push_level(&mut self, point: u32) {
        let mut label = vec![NONE; self.degree];
        let mut pos = vec![NONE; self.degree];
        label[point as usize] = ROOT;
        pos[point as usize] = 0;
        let inv_trans = if self.degree <= EXPLICIT_TRANSVERSAL_BUDGET {
            Some(vec![Perm::identity(self.degree)])
        } else {
            None
        };
        self.levels.push(Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            label,
            pos,
            inv_trans,
            tested: Vec::new(),
        });
    }

    /// Extends the orbit of level `l` after generators with local index
    /// `>= first_new` were appended.
    fn extend_orbit(&mut self, l: usize, first_new: usize) {
        let degree = self.degree;
        let strong = &self.strong;
        let strong_inv = &self.strong_inv;
        let lev = &mut self.levels[l];
        let old_len = lev.orbit.len();
        let mut i = 0;
        while i < lev.orbit.len() {
            let p = lev.orbit[i];
            let start = if i < old_len { first_new } else { 0 };
            for gi in start..lev.gens.len() {
                let s = lev.gens[gi];
                let q = strong[s as usize].image(p);
                if lev.label[q as usize] == NONE {
                    lev.label[q as usize] = s;
                    lev.pos[q as usize] = lev.orbit.len() as u32;
                    lev.orbit.push(q);
                    if let Some(inv) = lev.inv_trans.as_mut() {
                        if (inv.len() + 1) * degree > EXPLICIT_TRANSVERSAL_BUDGET {
                            lev.inv_trans = None;
                        } else {
                            let t = strong_inv[s as usize].mul(&inv[i]);
                            inv.push(t);
                        }
                    }
                }
            }
            i += 1;
        }
    }

    /// `h <- h * u_beta^-1` for the orbit point `beta` of level `l`.
    fn apply_inverse_transversal(&self, l: usize, beta: u32, h: &mut Perm) {
        let lev = &self.levels[l];
        if let Some(inv) = &lev.inv_trans {
            h.mul_assign(&inv[lev.pos[beta as usize] as usize]);
            return;
        }
        let mut b = beta;
        while lev.label[b as usize] != ROOT {
            let s = lev.label[b as usize] as usize;
            h.mul_assign(&self.strong_inv[s]);
            b = self.strong_inv[s].image(b);
        }
    }

    /// Transversal element mapping the level's base point to `beta`.
    pub fn transversal(&self, l: usize, beta: u32) -> Perm {
        let lev = &self.levels[l];
        if let Some(inv) = &lev.inv_trans {
            return inv[lev.pos[beta as usize] as usize].inverse();
        }
        let mut path = Vec::new();
        let mut b = beta;
        while lev.label[b as usize] != ROOT {
            let s = lev.label[b as usize] as usize;
            path.push(s);
            b = self.strong_inv[s].image(b);
        }
        let mut u = Perm::identity(self.degree);
        for &s in path.iter().rev() {
            u.mul_assign(&self.strong[s]);
        }
        u
    }

    pub fn in_orbit(&self, l: usize, point: u32) -> bool {
        self.levels[l].pos[point as usize] != NONE
    }

    /// Sifts `g` from level `start`; returns the residue and the level where
    /// sifting stopped (`base_len` if it passed every level).
    pub fn strip(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for l in start..self.levels.len() {
            let beta = h.image(self.levels[l].point);
            if self.levels[l].pos[beta as usize] == NONE {
                return (h, l);
            }
            self.apply_inverse_transversal(l, beta, &mut h);
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, _) = self.strip(g, 0);
        r.is_identity()
    }

    fn schreier_generator(&self, l: usize, pi: usize, gi: usize) -> Option<Perm> {
        let lev = &self.levels[l];
        let beta = lev.orbit[pi];
        let s = lev.gens[gi];
        let gamma = self.strong[s as usize].image(beta);
        if lev.label[gamma as usize] == s && self.strong_inv[s as usize].image(gamma) == beta {
            return None;
        }
        let mut h = self.transversal(l, beta);
        h.mul_assign(&self.strong[s as usize]);
        self.apply_inverse_transversal(l, gamma, &mut h);
        Some(h)
    }

    fn find_failing(&mut self, l: usize) -> Option<(Perm, usize)> {
        let ngens = self.levels[l].gens.len();
        for gi in 0..ngens {
            while self.levels[l].tested[gi] < self.levels[l].orbit.len() {
                let pi = self.levels[l].tested[gi];
                self.levels[l].tested[gi] += 1;
                if let Some(h) = self.schreier_generator(l, pi, gi) {
                    let (r, j) = self.strip(&h, l + 1);
                    if !r.is_identity() {
                        return Some((r, j));
                    }
                }
            }
        }
        None
    }

    /// Adds `r` (which fixes the first `j` base points) as a strong
    /// generator to levels `from..=j`.
    fn install(&mut self, r: Perm, from: usize, j: usize) {
        let new_level = j == self.levels.len();
        let p = if new_level { longest_cycle_point(&r) } else { 0 };
        let idx = self.push_strong(r);
        if new_level {
            self.push_level(p);
        }
        for m in from..=j {
            self.levels[m].gens.push(idx);
            self.levels[m].tested.push(0);
            let first = self.levels[m].gens.len() - 1;
            self.extend_orbit(m, first);
        }
    }

    fn schreier_sims(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let l = i as usize;
            match self.find_failing(l) {
                None => i -= 1,
                Some((r, j)) => {
                    self.install(r, l + 1, j);
                    i = j as isize;
                }
            }
        }
    }

    /// Adds `g` to the group; returns false if it was already a member.
    pub fn extend(&mut self, g: &Perm) -> bool {
        let (r, j) = self.strip(g, 0);
        if r.is_identity() {
            return false;
        }
        self.install(r, 0, j);
        self.schreier_sims(j);
        true
    }

    /// Uniformly random element, given a source of uniform indices.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for l in (0..self.levels.len()).rev() {
            let orbit = &self.levels[l].orbit;
            let beta = orbit[rng.random_range(0..orbit.len())];
            g.mul_assign(&self.transversal(l, beta));
        }
        g
    }

    /// Calls `f` on every element, in transversal order.
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm)) {
        // Explicit transversals for every level.
        let trans: Vec<Vec<Perm>> = (0..self.levels.len())
            .map(|l| {
                self.levels[l]
                    .orbit
                    .iter()
                    .map(|&b| self.transversal(l, b))
                    .collect()
            })
            .collect();
        fn rec(trans: &[Vec<Perm>], acc: &Perm, f: &mut dyn FnMut(&Perm)) {
            match trans.split_last() {
                None => f(acc),
                Some((last, rest)) => {
                    for u in last {
                        let next = acc.mul(u);
                        rec(rest, &next, f);
                    }
                }
            }
        }
        // Element = u_{k-1} ... u_0, deepest factor first.
        let id = Perm::identity(self.degree);
        rec(&trans, &id, &mut f);
    }
}

fn longest_cycle_point(g: &Perm) -> u32 {
    let mut best = (0usize, 0u32);
    for c in g.cycles() {
        if c.len() > best.0 {
            best = (c.len(), c[0]);
        }
    }
    best.1
}

struct Inner {
    degree: usize,
    gens: Vec<Perm>,
    base_prefix: Vec<u32>,
    chain: OnceBox<StabChain>,
}

/// A finite permutation group given by generators, with its stabilizer
/// chain. Cheap to clone; immutable.
#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

impl Group {
    /// Builds the group and its certified stabilizer chain.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Group> {
        let g = Group::lazy(degree, gens)?;
        g.chain();
        Ok(g)
    }

    /// Like [`Group::new`] but defers the chain until first needed.
    pub fn lazy(degree: usize, gens: Vec<Perm>) -> Result<Group> {
        if degree == 0 {
            return Err(Error::EmptyDegree);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Group {
            inner: Arc::new(Inner {
                degree,
                gens,
                base_prefix: Vec::new(),
                chain: OnceBox::new(),
            }),
        })
    }

    /// Group whose chain starts with the given base points.
    pub fn with_base_prefix(degree: usize, gens: Vec<Perm>, prefix: Vec<u32>) -> Result<Group> {
        let g = Group::lazy(degree, gens)?;
        let inner = Inner {
            degree,
            gens: g.inner.gens.clone(),
            base_prefix: prefix,
            chain: OnceBox::new(),
        };
        Ok(Group {
            inner: Arc::new(inner),
        })
    }

    pub(crate) fn from_chain(gens: Vec<Perm>, chain: StabChain) -> Group {
        let cell = OnceBox::new();
        let degree = chain.degree();
        let _ = cell.set(alloc::boxed::Box::new(chain));
        Group {
            inner: Arc::new(Inner {
                degree,
                gens,
                base_prefix: Vec::new(),
                chain: cell,
            }),
        }
    }

    pub fn trivial(degree: usize) -> Group {
        Group::new(degree, Vec::new()).expect("positive degree")
    }

    /// Full symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Group {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::from_cycles(degree, &[&[0, 1]]).unwrap());
        }
        if degree >= 3 {
            let cyc: Vec<u32> = (0..degree as u32).collect();
            gens.push(Perm::from_cycles(degree, &[&cyc]).unwrap());
        }
        Group::new(degree.max(1), gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.inner.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.inner.chain.get_or_init(|| {
            alloc::boxed::Box::new(StabChain::build(
                self.inner.degree,
                &self.inner.gens,
                &self.inner.base_prefix,
            ))
        })
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as `u64` if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        let o = self.order();
        u64::try_from(&o).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.chain().base_len() == 0
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    /// True if every generator of `h` lies in `self`.
    pub fn contains_group(&self, h: &Group) -> bool {
        h.degree() == self.degree() && h.generators().iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, h: &Group) -> bool {
        self.contains_group(h) && self.order() == h.order()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// All elements, sorted by image list. Refuses if the order exceeds
    /// `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > BigUint::from(limit) {
            return Err(Error::limit("element enumeration", order, limit));
        }
        let mut out = Vec::with_capacity(u64::try_from(&order).unwrap_or(0) as usize);
        self.chain().for_each_element(|g| out.push(g.clone()));
        out.sort();
        Ok(out)
    }

    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<Group> {
        for g in &gens {
            if g.degree() != self.degree() {
                return Err(Error::DegreeMismatch {
                    expected: self.degree(),
                    found: g.degree(),
                });
            }
            if !self.contains(g) {
                return Err(Error::NotSubgroup);
            }
        }
        Group::new(self.degree(), gens)
    }

    /// Smallest subgroup normalized by `self` containing `s`.
    pub fn normal_closure(&self, s: &[Perm]) -> Group {
        let seeds: Vec<Perm> = s.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut chain = StabChain::build(self.degree(), &seeds, &[]);
        let mut gens = seeds;
        let mut k = 0;
        while k < gens.len() {
            for g in self.generators() {
                let c = gens[k].conjugate(g);
                if chain.extend(&c) {
                    gens.push(c);
                }
            }
            k += 1;
        }
        Group::from_chain(gens, chain)
    }

    /// Normal closure in `self` of the subgroup `h`.
    pub fn normal_closure_of(&self, h: &Group) -> Group {
        self.normal_closure(h.generators())
    }

    pub fn derived_subgroup(&self) -> Group {
        let gens = self.generators();
        let mut comms = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let c = Perm::commutator(&gens[i], &gens[j]);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Subgroup generated by `self` and extra elements.
    pub fn join(&self, extra: &[Perm]) -> Group {
        let mut chain = self.chain().clone();
        let mut gens = self.generators().to_vec();
        for g in extra {
            if chain.extend(g) {
                gens.push(g.clone());
            }
        }
        Group::from_chain(gens, chain)
    }

    /// True if `h` (a subgroup) is normalized by the generators of `self`.
    pub fn normalizes(&self, h: &Group) -> bool {
        self.generators()
            .iter()
            .all(|g| h.generators().iter().all(|x| h.contains(&x.conjugate(g))))
    }

    pub fn is_normal(&self, h: &Group) -> bool {
        self.contains_group(h) && self.normalizes(h)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        self.chain().random_element(rng)
    }

    /// Orbits on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(self.degree(), self.generators())
    }

    /// Serialized form: degree line, then one generator per line.
    pub fn to_text(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        let _ = writeln!(s, "{}", self.degree());
        for g in self.generators() {
            let _ = writeln!(s, "{}", g);
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Group> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let deg_line = lines.next().ok_or(Error::Parse {
            pos: 0,
            msg: "missing degree line".into(),
        })?;
        let degree: usize = deg_line.parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: "bad degree line".into(),
        })?;
        if degree == 0 {
            return Err(Error::EmptyDegree);
        }
        let gens = lines
            .map(|l| Perm::parse(degree, l))
            .collect::<Result<Vec<_>>>()?;
        Group::new(degree, gens)
    }
}

/// Orbits of the group generated by `gens`.
pub fn orbits_of(degree: usize, gens: &[Perm]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orb = vec![start as u32];
        let mut i = 0;
        while i < orb.len() {
            let p = orb[i];
            for g in gens {
                let q = g.image(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orb.push(q);
                }
            }
            i += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(degree {}, order {}, gens [", self.degree(), self.order())?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g)?;
        }
        f.write_str("])")
    }
}
