//! Groups small enough for a full multiplication table.
//!
//! Elements are ranks `0..n`; rank 0 is the identity. For groups built from
//! permutations the ranks follow the sorted order of the image lists, so
//! subgroup keys (sorted rank lists) are canonical.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::gf::Matrix;
use crate::group::Group;
use crate::perm::Perm;
use crate::{Error, HashMap, Result};

/// Default element-table budget.
pub const DEFAULT_TABLE_LIMIT: u64 = 5000;
/// Largest table the `u16` layout can address.
pub const MAX_TABLE: u64 = 65_535;

#[derive(Clone)]
pub struct SmallGroup {
    n: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    gens: Vec<u16>,
    orders: Vec<u32>,
    class_of: Vec<u32>,
    classes: Vec<Vec<u16>>,
    perms: Option<Vec<Perm>>,
    lookup: HashMap<Perm, u16>,
}

impl core::fmt::Debug for SmallGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "SmallGroup(order {}, {} classes)", self.n, self.classes.len())
    }
}

impl SmallGroup {
    /// Element table of a permutation group of order at most `limit`.
    pub fn from_group(g: &Group, limit: u64) -> Result<SmallGroup> {
        let limit = limit.min(MAX_TABLE);
        let elems = g.elements(limit)?;
        let n = elems.len();
        let mut lookup: HashMap<Perm, u16> = HashMap::with_capacity(n);
        for (i, e) in elems.iter().enumerate() {
            lookup.insert(e.clone(), i as u16);
        }
        let gens: Vec<u16> = g.generators().iter().map(|x| lookup[x]).collect();
        // Right-regular images of the generators.
        let right: Vec<Vec<u16>> = gens
            .iter()
            .map(|&s| {
                let sp = &elems[s as usize];
                elems.iter().map(|x| lookup[&x.mul(sp)]).collect()
            })
            .collect();
        let table = regular_table(n, &gens, &right);
        let mut sg = SmallGroup::assemble(n, table, gens);
        sg.perms = Some(elems);
        sg.lookup = lookup;
        Ok(sg)
    }

    /// Builds from a complete table (`table[a*n+b] = a*b`, identity 0).
    pub fn from_table(n: usize, table: Vec<u16>, gens: Vec<u16>) -> SmallGroup {
        SmallGroup::assemble(n, table, gens)
    }

    fn assemble(n: usize, table: Vec<u16>, gens: Vec<u16>) -> SmallGroup {
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row.iter().position(|&x| x == 0).expect("table has no inverse");
            inv[a] = b as u16;
        }
        let mut orders = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            orders[a] = k;
        }
        let mut sg = SmallGroup {
            n,
            table,
            inv,
            gens,
            orders,
            class_of: Vec::new(),
            classes: Vec::new(),
            perms: None,
            lookup: HashMap::new(),
        };
        sg.compute_classes();
        sg
    }

    fn compute_classes(&mut self) {
        let n = self.n;
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<Vec<u16>> = Vec::new();
        for a in 0..n {
            if class_of[a] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut cls = vec![a as u16];
            class_of[a] = id;
            let mut i = 0;
            while i < cls.len() {
                let x = cls[i] as usize;
                for &g in &self.gens {
                    let y = self.conj(x, g as usize);
                    if class_of[y] == u32::MAX {
                        class_of[y] = id;
                        cls.push(y as u16);
                    }
                }
                i += 1;
            }
            cls.sort_unstable();
            classes.push(cls);
        }
        self.class_of = class_of;
        self.classes = classes;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[u16] {
        &self.gens
    }

    pub fn generator_ranks(&self) -> Vec<usize> {
        self.gens.iter().map(|&g| g as usize).collect()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut k = e.unsigned_abs() % self.orders[a] as u64;
        let mut acc = 0;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        acc
    }

    pub fn elem_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn classes(&self) -> &[Vec<u16>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a] as usize
    }

    pub fn class_size(&self, a: usize) -> usize {
        self.classes[self.class_of[a] as usize].len()
    }

    pub fn perm(&self, a: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[a])
    }

    pub fn perms(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    pub fn rank_of(&self, p: &Perm) -> Option<usize> {
        self.lookup.get(p).map(|&r| r as usize)
    }

    pub fn rank_of_images(&self, images: &[u32]) -> Option<usize> {
        let p = Perm::from_images(images.to_vec()).ok()?;
        self.rank_of(&p)
    }

    /// Right-regular permutation of an element on ranks.
    pub fn regular_perm(&self, a: usize) -> Perm {
        let images = (0..self.n).map(|x| self.mul(x, a) as u32).collect();
        Perm::from_images(images).expect("table row is a bijection")
    }

    pub fn all(&self) -> BitSet {
        BitSet::full(self.n)
    }

    pub fn trivial(&self) -> BitSet {
        BitSet::from_indices(self.n, [0])
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> BitSet {
        let mut set = BitSet::new(self.n);
        set.insert(0);
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        if gens.is_empty() {
            return set;
        }
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
            i += 1;
        }
        set
    }

    /// `<h, extra>` for a subgroup `h`.
    pub fn join(&self, h: &BitSet, extra: &[usize]) -> BitSet {
        let mut set = h.clone();
        let extra: Vec<usize> = extra.iter().copied().filter(|&x| !h.contains(x)).collect();
        if extra.is_empty() {
            return set;
        }
        let gens: Vec<usize> = self.subgroup_generators(h).into_iter().chain(extra).collect();
        let mut queue: Vec<usize> = set.iter().collect();
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
            i += 1;
        }
        set
    }

    /// Irredundant generating set of the subgroup `h`, chosen greedily in
    /// rank order (largest-order elements are not preferred; ranks decide).
    pub fn subgroup_generators(&self, h: &BitSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        let target = h.count();
        // Prefer elements of large order to keep the list short.
        let mut cands: Vec<usize> = h.iter().collect();
        cands.sort_by_key(|&x| (core::cmp::Reverse(self.orders[x]), x));
        for x in cands {
            if cur.count() == target {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.closure(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, set: &BitSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let elems: Vec<usize> = set.iter().collect();
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, h: &BitSet) -> bool {
        h.iter()
            .all(|x| self.gens.iter().all(|&g| h.contains(self.conj(x, g as usize))))
    }

    /// Normal closure of a set of elements.
    pub fn normal_closure(&self, seeds: &[usize]) -> BitSet {
        let mut gens: Vec<usize> = Vec::new();
        let mut set = self.trivial();
        let mut pending: VecDeque<usize> = seeds.iter().copied().collect();
        while let Some(x) = pending.pop_front() {
            if set.contains(x) {
                continue;
            }
            gens.push(x);
            set = self.closure(&gens);
            for &g in &self.gens {
                let y = self.conj(x, g as usize);
                if !set.contains(y) {
                    pending.push_back(y);
                }
            }
        }
        // Conjugates of every element must stay inside.
        debug_assert!(self.is_normal(&set));
        set
    }

    /// Normal closure of `h` joined with the normal subgroup `n`.
    pub fn normal_join(&self, n: &BitSet, seeds: &[usize]) -> BitSet {
        let mut all: Vec<usize> = self.subgroup_generators(n);
        all.extend_from_slice(seeds);
        self.normal_closure(&all)
    }

    pub fn derived_subgroup(&self) -> BitSet {
        let mut comms = Vec::new();
        for (i, &a) in self.gens.iter().enumerate() {
            for &b in &self.gens[i + 1..] {
                comms.push(self.comm(a as usize, b as usize));
            }
        }
        self.normal_closure(&comms)
    }

    /// `[h, k]` for normal subgroups `h`, `k`.
    pub fn commutator(&self, h: &BitSet, k: &BitSet) -> BitSet {
        let hg = self.subgroup_generators(h);
        let kg = self.subgroup_generators(k);
        let mut comms = Vec::new();
        for &a in &hg {
            for &b in &kg {
                comms.push(self.comm(a, b));
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_abelian_set(&self, h: &BitSet) -> bool {
        let g = self.subgroup_generators(h);
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| {
            self.gens
                .iter()
                .all(|&b| self.mul(a as usize, b as usize) == self.mul(b as usize, a as usize))
        })
    }

    /// Centralizer of a set of elements.
    pub fn centralizer(&self, of: &[usize]) -> BitSet {
        let mut out = BitSet::new(self.n);
        for g in 0..self.n {
            if of.iter().all(|&x| self.mul(g, x) == self.mul(x, g)) {
                out.insert(g);
            }
        }
        out
    }

    pub fn centralizer_of_subgroup(&self, h: &BitSet) -> BitSet {
        self.centralizer(&self.subgroup_generators(h))
    }

    /// `C_G(H/K)`: elements acting trivially by conjugation on the section.
    pub fn section_centralizer(&self, h: &BitSet, k: &BitSet) -> BitSet {
        let hg = self.subgroup_generators(h);
        let mut out = BitSet::new(self.n);
        for g in 0..self.n {
            if hg.iter().all(|&x| {
                // x^-1 x^g in K
                k.contains(self.mul(self.inv(x), self.conj(x, g)))
            }) {
                out.insert(g);
            }
        }
        out
    }

    pub fn normalizer(&self, h: &BitSet) -> BitSet {
        let hg = self.subgroup_generators(h);
        let mut out = BitSet::new(self.n);
        for g in 0..self.n {
            if hg.iter().all(|&x| h.contains(self.conj(x, g))) {
                out.insert(g);
            }
        }
        out
    }

    /// `h^g` as a set.
    pub fn conjugate_set(&self, h: &BitSet, g: usize) -> BitSet {
        BitSet::from_indices(self.n, h.iter().map(|x| self.conj(x, g)))
    }

    /// Largest normal subgroup inside `h`.
    pub fn core(&self, h: &BitSet) -> BitSet {
        let mut core = h.clone();
        let mut seen: Vec<BitSet> = vec![h.clone()];
        let mut queue = vec![h.clone()];
        while let Some(c) = queue.pop() {
            if self.is_normal(&core) {
                break;
            }
            for &g in &self.gens {
                let d = self.conjugate_set(&c, g as usize);
                if !seen.contains(&d) {
                    core.intersect_with(&d);
                    seen.push(d.clone());
                    queue.push(d);
                }
            }
        }
        core
    }

    /// Smallest normal subgroup properly containing the normal subgroup
    /// `n`, inside the normal subgroup `within`, found as a minimal normal
    /// closure (ties broken by least class representative).
    pub fn minimal_normal_above(&self, n: &BitSet, within: &BitSet) -> Option<BitSet> {
        self.minimal_normal_above_with(n, within, 0)
    }

    /// As `minimal_normal_above`, picking candidate `pick % count` among the
    /// distinct smallest candidates.
    pub fn minimal_normal_above_with(&self, n: &BitSet, within: &BitSet, pick: u64) -> Option<BitSet> {
        let mut best: Vec<BitSet> = Vec::new();
        let ngens = self.subgroup_generators(n);
        for cls in &self.classes {
            let x = cls[0] as usize;
            if !within.contains(x) || n.contains(x) {
                continue;
            }
            let mut seeds = ngens.clone();
            seeds.push(x);
            let m = self.normal_closure(&seeds);
            match best.first().map(BitSet::count) {
                Some(c) if m.count() > c => {}
                Some(c) if m.count() == c => {
                    if pick != 0 && !best.contains(&m) {
                        best.push(m);
                    }
                }
                _ => best = vec![m],
            }
        }
        if best.is_empty() {
            return None;
        }
        let i = (pick % best.len() as u64) as usize;
        Some(best.swap_remove(i))
    }

    /// Chief series `1 = N_0 < ... < N_r = G` refining the given chain of
    /// normal subgroups.
    pub fn chief_series_through(&self, chain: &[BitSet]) -> Vec<BitSet> {
        self.chief_series_through_with(chain, 0)
    }

    /// Chief series with ties between minimal normal candidates broken by
    /// a seeded choice (seed 0: least class representative).
    pub fn chief_series_through_with(&self, chain: &[BitSet], seed: u64) -> Vec<BitSet> {
        let mut out = vec![self.trivial()];
        let mut targets: Vec<BitSet> = chain.to_vec();
        targets.push(self.all());
        let mut state = seed;
        for t in targets {
            while out.last().unwrap().count() < t.count() {
                let cur = out.last().unwrap().clone();
                if !cur.is_subset(&t) {
                    break;
                }
                let pick = if seed == 0 { 0 } else { splitmix(&mut state) | 1 };
                let next = self
                    .minimal_normal_above_with(&cur, &t, pick)
                    .expect("proper normal subgroup has a chief factor above it");
                out.push(next);
            }
        }
        out
    }

    pub fn chief_series(&self) -> Vec<BitSet> {
        self.chief_series_through(&[])
    }

    /// All normal subgroups, sorted by (order, elements).
    pub fn normal_subgroups(&self) -> Vec<BitSet> {
        let mut found: Vec<BitSet> = vec![self.trivial()];
        let mut seen: crate::HashSet<BitSet> = crate::HashSet::new();
        seen.insert(self.trivial());
        let mut class_closures: Vec<BitSet> = Vec::new();
        for cls in &self.classes {
            let c = self.normal_closure(&[cls[0] as usize]);
            if seen.insert(c.clone()) {
                found.push(c.clone());
            }
            class_closures.push(c);
        }
        let mut i = 0;
        while i < found.len() {
            let a = found[i].clone();
            for c in &class_closures {
                if c.is_subset(&a) {
                    continue;
                }
                let j = self.product_of_normals(&a, c);
                if seen.insert(j.clone()) {
                    found.push(j);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
        found
    }

    /// `A B` for normal subgroups.
    pub fn product_of_normals(&self, a: &BitSet, b: &BitSet) -> BitSet {
        let bg: Vec<usize> = self.subgroup_generators(b);
        self.join(a, &bg)
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<BitSet> {
        let normals = self.normal_subgroups();
        let nontrivial: Vec<&BitSet> = normals.iter().filter(|s| s.count() > 1).collect();
        nontrivial
            .iter()
            .filter(|m| {
                !nontrivial
                    .iter()
                    .any(|o| o.count() < m.count() && o.is_subset(m))
            })
            .map(|m| (*m).clone())
            .collect()
    }

    pub fn socle(&self) -> BitSet {
        let mut s = self.trivial();
        for m in self.minimal_normal_subgroups() {
            s = self.product_of_normals(&s, &m);
        }
        s
    }

    /// Quotient table `G/N` and the projection on ranks.
    pub fn quotient(&self, n: &BitSet) -> (SmallGroup, Vec<u16>) {
        let mut coset = vec![u16::MAX; self.n];
        let mut reps: Vec<usize> = Vec::new();
        let nel: Vec<usize> = n.iter().collect();
        for x in 0..self.n {
            if coset[x] != u16::MAX {
                continue;
            }
            let id = reps.len() as u16;
            reps.push(x);
            for &k in &nel {
                coset[self.mul(x, k)] = id;
            }
        }
        let m = reps.len();
        let mut table = vec![0u16; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset[self.mul(a, b)];
            }
        }
        let gens = self.gens.iter().map(|&g| coset[g as usize]).collect();
        (SmallGroup::from_table(m, table, gens), coset)
    }

    /// Subgroup as its own table group, with the rank embedding.
    pub fn subgroup_table(&self, h: &BitSet) -> (SmallGroup, Vec<usize>) {
        let elems: Vec<usize> = h.iter().collect();
        let mut pos = vec![u16::MAX; self.n];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i as u16;
        }
        let m = elems.len();
        let mut table = vec![0u16; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * m + j] = pos[self.mul(a, b)];
            }
        }
        let gens = self
            .subgroup_generators(h)
            .into_iter()
            .map(|g| pos[g])
            .collect();
        (SmallGroup::from_table(m, table, gens), elems)
    }

    /// Does `gens` generate the whole group? Stops as soon as more than
    /// half the group is reached.
    pub fn generates(&self, gens: &[usize]) -> bool {
        let mut set = BitSet::new(self.n);
        set.insert(0);
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        if gens.is_empty() {
            return self.n == 1;
        }
        let mut count = 1;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    count += 1;
                    if 2 * count > self.n {
                        return true;
                    }
                    queue.push(y);
                }
            }
            i += 1;
        }
        count == self.n
    }

    /// Coordinates of an elementary abelian section `H/K`.
    pub fn section(&self, h: &BitSet, k: &BitSet) -> Result<Section> {
        let index = h.count() / k.count();
        let (p, dim) = prime_power(index as u64)
            .ok_or_else(|| Error::Invalid(alloc::format!("section of order {index} is not a prime power")))?;
        let p = p as u32;
        let mut code = vec![u32::MAX; self.n];
        let mut members: Vec<usize> = k.iter().collect();
        for &x in &members {
            code[x] = 0;
        }
        let mut basis = Vec::new();
        let mut weight = 1u32;
        for x in h.iter() {
            if code[x] != u32::MAX {
                continue;
            }
            basis.push(x);
            let mut fresh = Vec::new();
            let mut xc = 0usize;
            for c in 1..p {
                xc = self.mul(xc, x);
                for &s in &members {
                    let y = self.mul(s, xc);
                    if code[y] == u32::MAX {
                        code[y] = code[s] + c * weight;
                        fresh.push(y);
                    } else {
                        return Err(Error::Invalid("section is not elementary abelian".into()));
                    }
                }
            }
            if self.pow(x, p as i64) != 0 && !k.contains(self.pow(x, p as i64)) {
                return Err(Error::Invalid("section is not elementary abelian".into()));
            }
            members.extend(fresh);
            weight *= p;
        }
        if basis.len() != dim {
            return Err(Error::Invariant("section basis has wrong length".into()));
        }
        Ok(Section { p, dim, basis, code })
    }

    /// Matrix of conjugation by `g` on an elementary abelian section.
    pub fn action_matrix(&self, s: &Section, g: usize) -> Matrix {
        let rows: Vec<Vec<u32>> = s
            .basis
            .iter()
            .map(|&h| s.vector(self.conj(h, g)).expect("g normalizes the section"))
            .collect();
        Matrix::from_rows(s.p, &rows)
    }

    /// Enumerates complements of the elementary abelian normal subgroup
    /// `a` (which must be normal in the whole group) by searching
    /// `g_i a_i`. Stops after `stop_after` hits when given; refuses when
    /// `|a|^d` exceeds `budget`.
    pub fn complements(
        &self,
        a: &BitSet,
        stop_after: Option<usize>,
        budget: u64,
    ) -> Result<Vec<BitSet>> {
        let asize = a.count();
        let gens: Vec<usize> = self.generator_ranks();
        let d = gens.len() as u32;
        let space = (asize as u128).checked_pow(d).unwrap_or(u128::MAX);
        if space > budget as u128 {
            return Err(Error::limit("complement search", space, budget));
        }
        let target = self.n / asize;
        let aelems: Vec<usize> = a.iter().collect();
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::with_capacity(gens.len());
        self.complement_rec(&gens, &aelems, a, target, &mut chosen, &mut out, stop_after);
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn complement_rec(
        &self,
        gens: &[usize],
        aelems: &[usize],
        a: &BitSet,
        target: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<BitSet>,
        stop_after: Option<usize>,
    ) -> bool {
        if stop_after.is_some_and(|s| out.len() >= s) {
            return true;
        }
        let partial = self.closure(chosen);
        if partial.intersect(a).count() > 1 || partial.count() > target {
            return false;
        }
        if chosen.len() == gens.len() {
            if partial.count() == target {
                out.push(partial);
            }
            return false;
        }
        let g = gens[chosen.len()];
        for &x in aelems {
            chosen.push(self.mul(g, x));
            let stop = self.complement_rec(gens, aelems, a, target, chosen, out, stop_after);
            chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

/// Linear coordinates on an elementary abelian section.
#[derive(Clone, Debug)]
pub struct Section {
    pub p: u32,
    pub dim: usize,
    /// Elements of `H` whose images form the basis of `H/K`.
    pub basis: Vec<usize>,
    /// Per element rank: packed coordinates (base `p`, digit i = basis i),
    /// or `u32::MAX` outside `H`.
    code: Vec<u32>,
}

impl Section {
    pub fn contains(&self, x: usize) -> bool {
        self.code[x] != u32::MAX
    }

    pub fn packed(&self, x: usize) -> Option<u32> {
        let c = self.code[x];
        (c != u32::MAX).then_some(c)
    }

    pub fn vector(&self, x: usize) -> Option<Vec<u32>> {
        let mut c = self.packed(x)?;
        let mut v = vec![0u32; self.dim];
        for d in v.iter_mut() {
            *d = c % self.p;
            c /= self.p;
        }
        Some(v)
    }
}

fn regular_table(n: usize, gens: &[u16], right: &[Vec<u16>]) -> Vec<u16> {
    // Row y of the table is the right-regular image of y, built along a
    // breadth-first spanning tree of the Cayley graph.
    let mut table = vec![0u16; n * n];
    let mut done = vec![false; n];
    for (x, t) in table[..n].iter_mut().enumerate() {
        *t = x as u16;
    }
    // Column-major fill: col[y][x] = x*y.
    let mut cols: Vec<Vec<u16>> = vec![Vec::new(); n];
    cols[0] = (0..n as u16).collect();
    done[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(y) = queue.pop_front() {
        for (gi, &g) in gens.iter().enumerate() {
            let z = right[gi][y] as usize;
            let _ = g;
            if !done[z] {
                done[z] = true;
                // x * z = (x * y) * g
                let col: Vec<u16> = cols[y].iter().map(|&xy| right[gi][xy as usize]).collect();
                cols[z] = col;
                queue.push_back(z);
            }
        }
    }
    for (y, col) in cols.iter().enumerate() {
        assert_eq!(col.len(), n, "generators do not generate the element list");
        for x in 0..n {
            table[x * n + y] = col[x];
        }
    }
    table
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `(p, k)` with `n = p^k`, `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, usize)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> SmallGroup {
        SmallGroup::from_group(&Group::symmetric(4), 5000).unwrap()
    }

    #[test]
    fn table_is_a_group() {
        let g = s4();
        assert_eq!(g.order(), 24);
        let perms = g.perms().unwrap();
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(perms[g.mul(a, b)], perms[a].mul(&perms[b]));
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
        assert_eq!(g.classes().len(), 5);
    }

    #[test]
    fn normal_structure_of_s4() {
        let g = s4();
        let normals = g.normal_subgroups();
        let orders: Vec<usize> = normals.iter().map(BitSet::count).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let mins = g.minimal_normal_subgroups();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].count(), 4);
        let chief: Vec<usize> = g.chief_series().iter().map(BitSet::count).collect();
        assert_eq!(chief, vec![1, 4, 12, 24]);
        assert_eq!(g.derived_subgroup().count(), 12);
        assert_eq!(g.centralizer_of_subgroup(&mins[0]), mins[0]);
    }

    #[test]
    fn core_of_d8_in_s4() {
        let g = s4();
        let a = g.rank_of(&Perm::parse(4, "(1,2,3,4)").unwrap()).unwrap();
        let b = g.rank_of(&Perm::parse(4, "(1,3)").unwrap()).unwrap();
        let d8 = g.closure(&[a, b]);
        assert_eq!(d8.count(), 8);
        assert_eq!(g.core(&d8).count(), 4);
        assert_eq!(g.normalizer(&d8), d8);
    }

    #[test]
    fn v4_section_and_complements() {
        let g = s4();
        let v4 = g.minimal_normal_subgroups().remove(0);
        let sec = g.section(&v4, &g.trivial()).unwrap();
        assert_eq!((sec.p, sec.dim), (2, 2));
        for &x in g.generators() {
            let m = g.action_matrix(&sec, x as usize);
            assert!(m.inverse().is_some());
        }
        let comps = g.complements(&v4, None, 1 << 20).unwrap();
        // Complements of V4 in S4 are the four point stabilizers S3.
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.count() == 6));
    }

    #[test]
    fn quotient_by_v4_is_s3() {
        let g = s4();
        let v4 = g.minimal_normal_subgroups().remove(0);
        let (q, proj) = g.quotient(&v4);
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        assert_eq!(proj[0], 0);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
