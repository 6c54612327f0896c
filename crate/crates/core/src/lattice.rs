//! Subgroup lattices of table groups: conjugacy classes of subgroups,
//! maximal subgroups, the Frattini subgroup and the Möbius function.
//!
//! Subgroups are enumerated as joins of cyclic subgroups of prime-power
//! order, one class representative at a time; every conjugate is stored so
//! that containment questions are answered by set inclusion.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::small::{prime_power, SmallGroup};
use crate::{Error, HashMap, Result};

/// Default order limit for lattice enumeration.
pub const DEFAULT_LATTICE_LIMIT: usize = 2000;

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Least conjugate under the rank-set order.
    pub rep: BitSet,
    pub order: usize,
    pub class_size: usize,
    pub normal: bool,
    /// Indices into [`Lattice::subgroups`].
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct MaximalClass {
    /// Index into [`Lattice::classes`].
    pub class: usize,
    pub index: usize,
    pub core: BitSet,
    pub baer_type: u8,
}

#[derive(Clone, Debug)]
pub struct Lattice {
    order: usize,
    classes: Vec<SubgroupClass>,
    subgroups: Vec<BitSet>,
    class_of: Vec<usize>,
    maximal: Vec<MaximalClass>,
    moebius: Vec<i64>,
}

impl Lattice {
    /// Enumerates the lattice; refuses above `limit`.
    pub fn new(g: &SmallGroup, limit: usize) -> Result<Lattice> {
        if g.order() > limit {
            return Err(Error::limit("subgroup lattice order", g.order(), limit));
        }
        let n = g.order();
        // Cyclic subgroups of prime-power order, each with a generator.
        let mut cyclic: Vec<(BitSet, usize)> = Vec::new();
        {
            let mut seen: crate::HashSet<BitSet> = crate::HashSet::new();
            for x in 1..n {
                if prime_power(g.elem_order(x) as u64).is_none() {
                    continue;
                }
                let c = g.closure(&[x]);
                if seen.insert(c.clone()) {
                    cyclic.push((c, x));
                }
            }
        }
        let mut index: HashMap<BitSet, usize> = HashMap::new();
        let mut subgroups: Vec<BitSet> = Vec::new();
        let mut class_of: Vec<usize> = Vec::new();
        let mut reps: Vec<(BitSet, Vec<usize>)> = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();

        let add_class = |rep: BitSet,
                             gens: Vec<usize>,
                             index: &mut HashMap<BitSet, usize>,
                             subgroups: &mut Vec<BitSet>,
                             class_of: &mut Vec<usize>,
                             reps: &mut Vec<(BitSet, Vec<usize>)>,
                             members: &mut Vec<Vec<usize>>| {
            let cid = reps.len();
            let mut conj = vec![rep.clone()];
            let mut i = 0;
            index.insert(rep.clone(), subgroups.len());
            subgroups.push(rep.clone());
            class_of.push(cid);
            let mut mem = vec![subgroups.len() - 1];
            while i < conj.len() {
                for &s in g.generators() {
                    let c = g.conjugate_set(&conj[i], s as usize);
                    if !index.contains_key(&c) {
                        index.insert(c.clone(), subgroups.len());
                        subgroups.push(c.clone());
                        class_of.push(cid);
                        mem.push(subgroups.len() - 1);
                        conj.push(c);
                    }
                }
                i += 1;
            }
            reps.push((rep, gens));
            members.push(mem);
        };

        add_class(
            g.trivial(),
            Vec::new(),
            &mut index,
            &mut subgroups,
            &mut class_of,
            &mut reps,
            &mut members,
        );
        let mut q = 0;
        while q < reps.len() {
            let (r, rgens) = reps[q].clone();
            for (c, x) in &cyclic {
                if c.is_subset(&r) {
                    continue;
                }
                let j = join(g, &r, &rgens, *x);
                if index.contains_key(&j) {
                    continue;
                }
                let mut jg = rgens.clone();
                jg.push(*x);
                add_class(
                    j,
                    jg,
                    &mut index,
                    &mut subgroups,
                    &mut class_of,
                    &mut reps,
                    &mut members,
                );
            }
            q += 1;
        }

        // Canonical order: by order, then least conjugate.
        let mut classes: Vec<SubgroupClass> = reps
            .iter()
            .zip(members)
            .map(|((rep, _), mem)| {
                let least = mem.iter().map(|&m| &subgroups[m]).min().unwrap().clone();
                SubgroupClass {
                    order: rep.count(),
                    class_size: mem.len(),
                    normal: mem.len() == 1,
                    rep: least,
                    members: mem,
                }
            })
            .collect();
        classes.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.rep.cmp(&b.rep)));
        for (cid, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = cid;
            }
        }
        let mut lat = Lattice {
            order: n,
            classes,
            subgroups,
            class_of,
            maximal: Vec::new(),
            moebius: Vec::new(),
        };
        lat.maximal = lat.find_maximals(g);
        lat.moebius = lat.compute_moebius();
        Ok(lat)
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    /// Every subgroup.
    pub fn subgroups(&self) -> &[BitSet] {
        &self.subgroups
    }

    pub fn class_of_subgroup(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn subgroup_count(&self) -> usize {
        self.subgroups.len()
    }

    fn find_maximals(&self, g: &SmallGroup) -> Vec<MaximalClass> {
        let n = self.order;
        let mut out = Vec::new();
        for (cid, c) in self.classes.iter().enumerate() {
            if c.order == n {
                continue;
            }
            let between = self.subgroups.iter().any(|k| {
                let o = k.count();
                o > c.order && o < n && o % c.order == 0 && c.rep.is_subset(k)
            });
            if between {
                continue;
            }
            let core = g.core(&c.rep);
            out.push(MaximalClass {
                class: cid,
                index: n / c.order,
                baer_type: baer_type(g, &core),
                core,
            });
        }
        out
    }

    fn compute_moebius(&self) -> Vec<i64> {
        let nc = self.classes.len();
        let mut mu = vec![0i64; nc];
        for cid in (0..nc).rev() {
            let c = &self.classes[cid];
            if c.order == self.order {
                mu[cid] = 1;
                continue;
            }
            let mut s = 0i64;
            for (kid, k) in self.classes.iter().enumerate().skip(cid + 1) {
                if k.order <= c.order || k.order % c.order != 0 || mu[kid] == 0 {
                    continue;
                }
                let containing = k
                    .members
                    .iter()
                    .filter(|&&m| c.rep.is_subset(&self.subgroups[m]))
                    .count() as i64;
                s += mu[kid] * containing;
            }
            mu[cid] = -s;
        }
        mu
    }

    pub fn maximal_classes(&self) -> &[MaximalClass] {
        &self.maximal
    }

    /// Every maximal subgroup with its index, core and type.
    pub fn maximal_subgroups(&self, g: &SmallGroup) -> Vec<(BitSet, usize, BitSet, u8)> {
        let mut out = Vec::new();
        for m in &self.maximal {
            for &s in &self.classes[m.class].members {
                let sub = self.subgroups[s].clone();
                let core = if self.classes[m.class].normal {
                    sub.clone()
                } else {
                    g.core(&sub)
                };
                out.push((sub, m.index, core, m.baer_type));
            }
        }
        out
    }

    /// `m_n` for every index `n` with a maximal subgroup.
    pub fn maximal_counts(&self) -> Vec<(usize, u64)> {
        let mut map: alloc::collections::BTreeMap<usize, u64> = alloc::collections::BTreeMap::new();
        for m in &self.maximal {
            *map.entry(m.index).or_default() += self.classes[m.class].class_size as u64;
        }
        map.into_iter().collect()
    }

    /// Counts of maximal subgroups by (index, type).
    pub fn maximal_counts_by_type(&self) -> Vec<(usize, u8, u64)> {
        let mut map: alloc::collections::BTreeMap<(usize, u8), u64> = alloc::collections::BTreeMap::new();
        for m in &self.maximal {
            *map.entry((m.index, m.baer_type)).or_default() += self.classes[m.class].class_size as u64;
        }
        map.into_iter().map(|((n, t), c)| (n, t, c)).collect()
    }

    /// Core-free maximal subgroups by index.
    pub fn core_free_counts(&self) -> Vec<(usize, u64)> {
        let mut map: alloc::collections::BTreeMap<usize, u64> = alloc::collections::BTreeMap::new();
        for m in &self.maximal {
            if m.core.count() == 1 {
                *map.entry(m.index).or_default() += self.classes[m.class].class_size as u64;
            }
        }
        map.into_iter().collect()
    }

    /// Intersection of all maximal subgroups.
    pub fn frattini(&self) -> BitSet {
        let mut f = BitSet::full(self.order);
        for m in &self.maximal {
            for &s in &self.classes[m.class].members {
                f.intersect_with(&self.subgroups[s]);
            }
        }
        f
    }

    /// `mu(H, G)` per class.
    pub fn moebius(&self) -> &[i64] {
        &self.moebius
    }

    /// Class of a subgroup given as a set.
    pub fn class_of_set(&self, s: &BitSet) -> Option<usize> {
        self.subgroups
            .iter()
            .position(|x| x == s)
            .map(|i| self.class_of[i])
    }
}

fn join(g: &SmallGroup, r: &BitSet, rgens: &[usize], x: usize) -> BitSet {
    let mut set = r.clone();
    let mut gens: Vec<usize> = rgens.to_vec();
    gens.push(x);
    let mut queue: Vec<usize> = r.iter().collect();
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        for &s in &gens {
            let b = g.mul(a, s);
            if set.insert(b) {
                queue.push(b);
            }
        }
        i += 1;
    }
    set
}

/// Baer type of a maximal subgroup with the given core: 1 or 2 when
/// `G/core` has a unique minimal normal subgroup (abelian or not), 3 when it
/// has two.
pub fn baer_type(g: &SmallGroup, core: &BitSet) -> u8 {
    let (q, _) = g.quotient(core);
    let mins = q.minimal_normal_subgroups();
    if mins.len() >= 2 {
        3
    } else if q.is_abelian_set(&mins[0]) {
        1
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::perm::Perm;

    fn table(n: usize, gens: &[&str]) -> SmallGroup {
        let gens = gens.iter().map(|s| Perm::parse(n, s).unwrap()).collect();
        SmallGroup::from_group(&Group::new(n, gens).unwrap(), 5000).unwrap()
    }

    /// All subgroups by brute force: closures of pairs of elements, closed
    /// under joins until stable.
    fn brute_force_subgroups(g: &SmallGroup) -> crate::HashSet<BitSet> {
        let n = g.order();
        let mut all: crate::HashSet<BitSet> = crate::HashSet::new();
        for a in 0..n {
            for b in a..n {
                all.insert(g.closure(&[a, b]));
            }
        }
        loop {
            let list: Vec<BitSet> = all.iter().cloned().collect();
            let mut grew = false;
            for x in &list {
                for y in &list {
                    let gx = g.subgroup_generators(x);
                    let j = g.join(y, &gx);
                    if all.insert(j) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return all;
            }
        }
    }

    #[test]
    fn s4_lattice() {
        let g = table(4, &["(1,2)", "(1,2,3,4)"]);
        let lat = Lattice::new(&g, 2000).unwrap();
        assert_eq!(lat.classes().len(), 11);
        assert_eq!(lat.subgroup_count(), 30);
        assert_eq!(lat.maximal_counts(), vec![(2, 1), (3, 3), (4, 4)]);
        assert_eq!(lat.frattini().count(), 1);
        let types = lat.maximal_counts_by_type();
        assert!(types.contains(&(4, 1, 4)));
        let brute = brute_force_subgroups(&g);
        assert_eq!(brute.len(), 30);
        assert!(lat.subgroups().iter().all(|s| brute.contains(s)));
    }

    #[test]
    fn a5_lattice() {
        let g = table(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let lat = Lattice::new(&g, 2000).unwrap();
        assert_eq!(lat.classes().len(), 9);
        assert_eq!(lat.subgroup_count(), 59);
        assert_eq!(lat.maximal_counts(), vec![(5, 5), (6, 6), (10, 10)]);
        assert!(lat.maximal_classes().iter().all(|m| m.baer_type == 2));
    }

    #[test]
    fn frattini_of_c4_and_sl23() {
        let c4 = table(4, &["(1,2,3,4)"]);
        assert_eq!(Lattice::new(&c4, 2000).unwrap().frattini().count(), 2);
        // SL(2,3) on the 8 nonzero vectors of GF(3)^2.
        let sl = table(8, &["(3,4,5)(6,8,7)", "(1,3,2,6)(4,5,8,7)"]);
        assert_eq!(sl.order(), 24);
        let lat = Lattice::new(&sl, 2000).unwrap();
        assert_eq!(lat.frattini().count(), 2);
    }

    #[test]
    fn moebius_counts_generating_pairs() {
        let g = table(4, &["(1,2)", "(1,2,3,4)"]);
        let lat = Lattice::new(&g, 2000).unwrap();
        let phi2: i64 = lat
            .classes()
            .iter()
            .zip(lat.moebius())
            .map(|(c, &mu)| mu * c.class_size as i64 * (c.order as i64).pow(2))
            .sum();
        let mut brute = 0;
        for a in 0..24 {
            for b in 0..24 {
                if g.generates(&[a, b]) {
                    brute += 1;
                }
            }
        }
        assert_eq!(phi2, brute);
        let c5 = table(5, &["(1,2,3,4,5)"]);
        let lat = Lattice::new(&c5, 2000).unwrap();
        assert_eq!(lat.moebius(), &[-1, 1]);
    }

    #[test]
    fn refuses_above_limit() {
        let g = table(5, &["(1,2)", "(1,2,3,4,5)"]);
        assert!(Lattice::new(&g, 100).unwrap_err().is_limit());
    }
}
