//! Group constructions: the `L_k` towers over a primitive group with
//! abelian socle, automorphism groups of small groups, Aut-orbits of
//! generating tuples, subdirect products and the hat construction.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::bitset::BitSet;
use crate::lattice::Lattice;
use crate::small::SmallGroup;
use crate::subdirect::{Tuple, TupleGroup};
use crate::{Error, Group, HashMap, Perm, Result};

/// Default element-table budget for automorphism searches.
pub const AUT_TABLE_LIMIT: u64 = 5000;

/// Budgets for the constructions.
#[derive(Clone, Debug)]
pub struct Options {
    pub table_limit: u64,
    /// Groups up to this order get maximal-subgroup masks for fast
    /// generation tests.
    pub lattice_limit: usize,
    /// Candidate image tuples examined by the automorphism search.
    pub aut_budget: u64,
    /// Size of the dense tuple space `|G|^d` the orbit sweep may mark.
    pub sweep_budget: u64,
    pub complement_budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            table_limit: AUT_TABLE_LIMIT,
            lattice_limit: crate::lattice::DEFAULT_LATTICE_LIMIT,
            aut_budget: 1 << 26,
            sweep_budget: 1 << 30,
            complement_budget: 1 << 22,
        }
    }
}

/// `L_k` together with the data of the pair `(L, N)`.
#[derive(Clone, Debug)]
pub struct CrownedTower {
    pub base: Group,
    pub socle_part: Group,
    pub k: usize,
    pub tower: Group,
    /// `|End_{L/N}(N)|`.
    pub q: u64,
    /// `|H^1(L/N, N)|`.
    pub h1: u64,
}

/// Ranks of `n` inside the table of `l`, checked to be an abelian minimal
/// normal subgroup.
fn socle_part_set(t: &SmallGroup, n: &Group) -> Result<BitSet> {
    let ranks: Vec<usize> = n
        .generators()
        .iter()
        .map(|x| t.rank_of(x).ok_or(Error::NotSubgroup))
        .collect::<Result<_>>()?;
    let set = t.closure(&ranks);
    if set.count() == 1 {
        return Err(Error::Invalid("N is trivial".into()));
    }
    if !t.is_normal(&set) || !t.is_abelian_set(&set) {
        return Err(Error::Invalid("N is not an abelian normal subgroup".into()));
    }
    for x in set.iter().filter(|&x| x != 0) {
        if t.normal_closure(&[x]) != set {
            return Err(Error::Invalid("N is not minimal normal".into()));
        }
    }
    Ok(set)
}

fn pair_table(l: &Group, n: &Group, opts: &Options) -> Result<(SmallGroup, BitSet)> {
    if l.degree() != n.degree() {
        return Err(Error::DegreeMismatch { expected: l.degree(), found: n.degree() });
    }
    let t = SmallGroup::from_group(l, opts.table_limit)?;
    let set = socle_part_set(&t, n)?;
    Ok((t, set))
}

fn end_size_in(t: &SmallGroup, set: &BitSet) -> Result<u64> {
    let s = t.section(set, &t.trivial())?;
    let mats: Vec<_> = t.generator_ranks().iter().map(|&g| t.action_matrix(&s, g)).collect();
    let e = crate::meataxe::endomorphism_dim(&mats, s.dim);
    Ok((s.p as u64).pow(e as u32))
}

fn h1_in(t: &SmallGroup, set: &BitSet, budget: u64) -> Result<u64> {
    let comps = t.complements(set, None, budget)?;
    if comps.is_empty() {
        return Err(Error::Invalid("N is not complemented".into()));
    }
    let n = set.count();
    if comps.len() % n != 0 {
        return Err(Error::Invariant("complement count not divisible by |N|".into()));
    }
    Ok((comps.len() / n) as u64)
}

/// `q = |End_{L/N}(N)|`.
pub fn end_size(l: &Group, n: &Group) -> Result<u64> {
    let (t, set) = pair_table(l, n, &Options::default())?;
    end_size_in(&t, &set)
}

/// `|H^1(L/N, N)|` as the number of complements divided by `|N|`.
pub fn h1_size(l: &Group, n: &Group) -> Result<u64> {
    let opts = Options::default();
    let (t, set) = pair_table(l, n, &opts)?;
    h1_in(&t, &set, opts.complement_budget)
}

/// `1 + log_q(|N|^{d-1} / h1)` from its three ingredients.
pub fn f_of_d_from(n_order: u64, q: u64, h1: u64, d: u32) -> Result<u32> {
    if d == 0 || q < 2 || h1 == 0 {
        return Err(Error::Invalid("f(d) needs d >= 1, q >= 2, h1 >= 1".into()));
    }
    let top = BigUint::from(n_order).pow(d - 1);
    let h = BigUint::from(h1);
    if !(&top % &h).is_zero() {
        return Err(Error::Invalid("|N|^(d-1) is not divisible by h1".into()));
    }
    let mut ratio = top / h;
    let q = BigUint::from(q);
    let mut f = 1u32;
    while ratio > BigUint::from(1u32) {
        if !(&ratio % &q).is_zero() {
            return Err(Error::Invalid("|N|^(d-1)/h1 is not a power of q".into()));
        }
        ratio /= &q;
        f += 1;
    }
    Ok(f)
}

pub fn f_of_d(l: &Group, n: &Group, d: u32) -> Result<u32> {
    let opts = Options::default();
    let (t, set) = pair_table(l, n, &opts)?;
    let q = end_size_in(&t, &set)?;
    let h1 = h1_in(&t, &set, opts.complement_budget)?;
    f_of_d_from(set.count() as u64, q, h1, d)
}

/// `L_k = {(l_1, .., l_k) in L^k : l_1 = .. = l_k mod N}` on `k * deg L`
/// points: the diagonal copy of `L` times `N` in all but the last block.
pub fn build_lk(l: &Group, n: &Group, k: usize) -> Result<CrownedTower> {
    build_lk_with(l, n, k, &Options::default())
}

pub fn build_lk_with(l: &Group, n: &Group, k: usize, opts: &Options) -> Result<CrownedTower> {
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let (t, set) = pair_table(l, n, opts)?;
    let q = end_size_in(&t, &set)?;
    let h1 = h1_in(&t, &set, opts.complement_budget)?;
    let deg = l.degree();
    let total = deg * k;
    let mut gens: Vec<Perm> = l
        .generators()
        .iter()
        .map(|g| {
            let blocks: Vec<&Perm> = (0..k).map(|_| g).collect();
            Perm::concat(&blocks)
        })
        .collect();
    for i in 0..k - 1 {
        for x in n.generators() {
            gens.push(x.shifted(i * deg, total));
        }
    }
    let tower = Group::new(total, gens)?;
    let expect = BigUint::from(set.count()).pow(k as u32 - 1) * l.order();
    if tower.order() != expect {
        return Err(Error::Invariant("L_k has the wrong order".into()));
    }
    Ok(CrownedTower { base: l.clone(), socle_part: n.clone(), k, tower, q, h1 })
}

/// Bit masks recording which maximal subgroups contain each element;
/// a tuple generates iff the masks of its entries have empty intersection.
pub struct GenerationTest<'a> {
    table: &'a SmallGroup,
    words: usize,
    masks: Option<Vec<u64>>,
}

impl<'a> GenerationTest<'a> {
    pub fn new(table: &'a SmallGroup, lattice: Option<&Lattice>) -> Self {
        let Some(lat) = lattice else {
            return GenerationTest { table, words: 0, masks: None };
        };
        let maxes = lat.maximal_subgroups(table);
        let words = maxes.len().div_ceil(64).max(1);
        let mut masks = vec![0u64; words * table.order()];
        for (i, (m, ..)) in maxes.iter().enumerate() {
            for x in m.iter() {
                masks[x * words + i / 64] |= 1 << (i % 64);
            }
        }
        GenerationTest { table, words, masks: Some(masks) }
    }

    pub fn generates(&self, tuple: &[usize]) -> bool {
        match &self.masks {
            Some(m) => {
                if self.table.order() == 1 {
                    return true;
                }
                (0..self.words).all(|w| {
                    tuple.iter().fold(u64::MAX, |acc, &x| acc & m[x * self.words + w]) == 0
                })
            }
            None => self.table.generates(tuple),
        }
    }
}

fn fingerprint(t: &SmallGroup, x: usize) -> (u32, usize) {
    (t.elem_order(x), t.class_size(x))
}

/// The full automorphism group of a small group, each automorphism stored
/// as its table on element ranks.
#[derive(Clone, Debug)]
pub struct Automorphisms {
    /// Fixed generating tuple (element ranks).
    pub base: Vec<usize>,
    /// Images of `base`, one entry per automorphism; identity first.
    pub images: Vec<Vec<usize>>,
    maps: Vec<Vec<u16>>,
}

impl Automorphisms {
    pub fn order(&self) -> u64 {
        self.images.len() as u64
    }

    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.maps[a][x] as usize
    }

    pub fn map(&self, a: usize) -> &[u16] {
        &self.maps[a]
    }

    /// A small generating set, greedily chosen; indices into `images`.
    pub fn generators(&self) -> Vec<usize> {
        let index: HashMap<&[u16], usize> =
            self.maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut gens: Vec<usize> = Vec::new();
        let mut reached = BitSet::new(self.maps.len());
        reached.insert(0);
        for cand in 0..self.maps.len() {
            if reached.contains(cand) {
                continue;
            }
            gens.push(cand);
            // Re-close under all chosen generators.
            let mut i = 0;
            let mut members: Vec<usize> = reached.iter().collect();
            while i < members.len() {
                let a = members[i];
                for &g in &gens {
                    let comp: Vec<u16> = self.maps[a].iter().map(|&x| self.maps[g][x as usize]).collect();
                    let c = index[comp.as_slice()];
                    if reached.insert(c) {
                        members.push(c);
                    }
                }
                i += 1;
            }
            if members.len() == self.maps.len() {
                break;
            }
        }
        gens
    }
}

/// Smallest generating tuple found over class representatives, choosing
/// the one with the fewest fingerprint-compatible images.
fn choose_base(t: &SmallGroup, test: &GenerationTest<'_>, counts: &HashMap<(u32, usize), u64>) -> Vec<usize> {
    let n = t.order();
    if n == 1 {
        return Vec::new();
    }
    let cost = |x: usize| counts[&fingerprint(t, x)];
    let reps: Vec<usize> = t.classes().iter().map(|c| c[0] as usize).collect();
    let mut best: Option<(u64, usize)> = None;
    for &x in &reps {
        if test.generates(&[x]) && best.is_none_or(|(c, _)| cost(x) < c) {
            best = Some((cost(x), x));
        }
    }
    if let Some((_, x)) = best {
        return vec![x];
    }
    let mut best: Option<(u64, usize, usize)> = None;
    for &x in &reps {
        for y in 1..n {
            let c = cost(x).saturating_mul(cost(y));
            if best.is_some_and(|(b, ..)| c >= b) {
                continue;
            }
            if test.generates(&[x, y]) {
                best = Some((c, x, y));
            }
        }
    }
    if let Some((_, x, y)) = best {
        return vec![x, y];
    }
    // Irredundant subset of the table generators.
    let mut gens = t.generator_ranks();
    gens.retain(|&g| g != 0);
    let mut i = 0;
    while i < gens.len() {
        let mut rest = gens.clone();
        rest.remove(i);
        if test.generates(&rest) {
            gens = rest;
        } else {
            i += 1;
        }
    }
    gens
}

/// Extends `x_i -> z_i` to a homomorphism along the Cayley graph; `None`
/// if some relation fails. A consistent extension onto a generating tuple
/// is an automorphism.
fn extend_map(t: &SmallGroup, base: &[usize], images: &[usize], map: &mut [u16], queue: &mut Vec<usize>) -> bool {
    map.fill(u16::MAX);
    map[0] = 0;
    queue.clear();
    queue.push(0);
    let mut i = 0;
    while i < queue.len() {
        let e = queue[i];
        let fe = map[e] as usize;
        for (&x, &z) in base.iter().zip(images) {
            let tgt = t.mul(e, x);
            let img = t.mul(fe, z) as u16;
            if map[tgt] == u16::MAX {
                map[tgt] = img;
                queue.push(tgt);
            } else if map[tgt] != img {
                return false;
            }
        }
        i += 1;
    }
    queue.len() == t.order()
}

/// Every automorphism, found as the consistent images of a fixed
/// generating tuple among fingerprint-compatible candidates.
pub fn automorphisms(t: &SmallGroup, lattice: Option<&Lattice>, budget: u64) -> Result<Automorphisms> {
    let n = t.order();
    let test = GenerationTest::new(t, lattice);
    let mut counts: HashMap<(u32, usize), u64> = HashMap::new();
    for x in 0..n {
        *counts.entry(fingerprint(t, x)).or_default() += 1;
    }
    let base = choose_base(t, &test, &counts);
    let cands: Vec<Vec<usize>> = base
        .iter()
        .map(|&x| {
            let fp = fingerprint(t, x);
            (0..n).filter(|&y| fingerprint(t, y) == fp).collect()
        })
        .collect();
    let space = cands.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if space > budget as u128 {
        return Err(Error::limit("automorphism search", space, budget));
    }
    let mut images = Vec::new();
    let mut maps = Vec::new();
    let mut map = vec![u16::MAX; n];
    let mut queue = Vec::with_capacity(n);
    let mut idx = vec![0usize; base.len()];
    let mut z = vec![0usize; base.len()];
    'outer: loop {
        for (j, &i) in idx.iter().enumerate() {
            z[j] = cands[j][i];
        }
        if test.generates(&z) && extend_map(t, &base, &z, &mut map, &mut queue) {
            images.push(z.clone());
            maps.push(map.clone());
        }
        for j in (0..idx.len()).rev() {
            idx[j] += 1;
            if idx[j] < cands[j].len() {
                continue 'outer;
            }
            idx[j] = 0;
        }
        break;
    }
    // Identity first.
    if let Some(pos) = images.iter().position(|z| *z == base) {
        images.swap(0, pos);
        maps.swap(0, pos);
    } else {
        return Err(Error::Invariant("identity automorphism not found".into()));
    }
    Ok(Automorphisms { base, images, maps })
}

/// Aut-orbits on generating `d`-tuples.
#[derive(Clone, Debug)]
pub struct OrbitCensus {
    pub group_order: u64,
    pub d: u32,
    pub phi_d: BigUint,
    pub aut_order: u64,
    pub orbit_count: u64,
    /// One tuple (element ranks) per orbit, least in the packed order.
    pub representatives: Vec<Vec<usize>>,
    /// `phi_d` recomputed independently of the sweep, when feasible.
    pub phi_check: Option<BigUint>,
}

/// Sweeps all `d`-tuples in packed order, marking the orbit of each new
/// generating tuple. Aut acts freely, so every orbit has `|Aut|` members
/// and a repeated mark is a hard error.
pub fn tuple_orbits(t: &SmallGroup, d: u32, opts: &Options) -> Result<OrbitCensus> {
    let n = t.order();
    let lattice = if n <= opts.lattice_limit { Some(Lattice::new(t, opts.lattice_limit)?) } else { None };
    let aut = automorphisms(t, lattice.as_ref(), opts.aut_budget)?;
    let space = (n as u128).checked_pow(d).unwrap_or(u128::MAX);
    if space > opts.sweep_budget as u128 {
        return Err(Error::limit("tuple sweep", space, opts.sweep_budget));
    }
    let space = space as usize;
    let d = d as usize;
    let test = GenerationTest::new(t, lattice.as_ref());
    let mut seen = BitSet::new(space);
    let mut reps = Vec::new();
    let mut tuple = vec![0usize; d];
    let pack = |tu: &[usize]| tu.iter().fold(0usize, |acc, &x| acc * n + x);
    for code in 0..space {
        if seen.contains(code) {
            continue;
        }
        let mut c = code;
        for j in (0..d).rev() {
            tuple[j] = c % n;
            c /= n;
        }
        if !test.generates(&tuple) {
            continue;
        }
        let mut img = vec![0usize; d];
        for a in 0..aut.images.len() {
            for j in 0..d {
                img[j] = aut.apply(a, tuple[j]);
            }
            if !seen.insert(pack(&img)) {
                return Err(Error::Invariant("Aut does not act freely on generating tuples".into()));
            }
        }
        reps.push(tuple.clone());
    }
    let r = reps.len() as u64;
    let phi_d = BigUint::from(r) * BigUint::from(aut.order());
    let phi_check = match &lattice {
        Some(l) => crate::probgen::phi_moebius(l, d as u32).to_biguint(),
        None => crate::probgen::phi_direct(t, d as u32, 1 << 24).ok().and_then(|v| v.last().cloned()),
    };
    if let Some(p) = &phi_check {
        if *p != phi_d {
            return Err(Error::Invariant("orbit sweep disagrees with phi_d".into()));
        }
    }
    Ok(OrbitCensus {
        group_order: n as u64,
        d: d as u32,
        phi_d,
        aut_order: aut.order(),
        orbit_count: r,
        representatives: reps,
        phi_check,
    })
}

/// `<a_1, .., a_d>` inside the direct product of the factors, `a_j` made
/// of the `j`-th entries of the tuples. Each tuple must generate its
/// factor, which makes every projection onto.
pub fn subdirect(factors: &[(Group, Vec<Perm>)]) -> Result<Group> {
    let Some(d) = factors.first().map(|f| f.1.len()) else {
        return Err(Error::Invalid("no factors".into()));
    };
    for (g, tuple) in factors {
        if tuple.len() != d {
            return Err(Error::Invalid("tuples of different lengths".into()));
        }
        let h = Group::new(g.degree(), tuple.clone())?;
        if h.order() != g.order() || !g.contains_group(&h) {
            return Err(Error::Invalid("tuple does not generate its factor".into()));
        }
    }
    let gens: Vec<Perm> = (0..d)
        .map(|j| {
            let blocks: Vec<&Perm> = factors.iter().map(|f| &f.1[j]).collect();
            Perm::concat(&blocks)
        })
        .collect();
    let total = factors.iter().map(|f| f.0.degree()).sum();
    Group::lazy(total, gens)
}

/// Result of the hat construction.
#[derive(Clone, Debug)]
pub struct Hat {
    pub census: OrbitCensus,
    /// Permutation group of degree `r * deg G`, when within the limit.
    pub group: Option<Group>,
}

impl Hat {
    pub fn degree(&self, base_degree: usize) -> usize {
        self.census.representatives.len() * base_degree
    }
}

/// Subdirect product over one generating tuple per Aut-orbit.
pub fn hat(g: &Group, d: u32, materialize_limit: usize, opts: &Options) -> Result<Hat> {
    let t = SmallGroup::from_group(g, opts.table_limit)?;
    let census = tuple_orbits(&t, d, opts)?;
    let degree = census.representatives.len() * g.degree();
    let group = if degree <= materialize_limit {
        let gens: Vec<Perm> = (0..d as usize)
            .map(|j| {
                let blocks: Vec<&Perm> =
                    census.representatives.iter().map(|rep| t.perm(rep[j]).expect("table of a permutation group")).collect();
                Perm::concat(&blocks)
            })
            .collect();
        Some(Group::lazy(degree, gens)?)
    } else {
        None
    };
    Ok(Hat { census, group })
}

/// The hat group as a tuple group over a single shared table, avoiding
/// the permutation representation altogether.
pub fn hat_tuple(t: Arc<SmallGroup>, census: &OrbitCensus) -> TupleGroup {
    let r = census.representatives.len();
    let gens: Vec<Tuple> = (0..census.d as usize)
        .map(|j| census.representatives.iter().map(|rep| rep[j] as u16).collect())
        .collect();
    TupleGroup::from_tuples(vec![t], vec![0; r], gens)
}

/// Order of a census group as `u64` (helper for reports).
pub fn census_phi_u64(c: &OrbitCensus) -> Option<u64> {
    c.phi_d.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn v4_in_s4() -> (Group, Group) {
        let s4 = catalog::symmetric(4).unwrap();
        let v4 = Group::new(4, vec![Perm::parse(4, "(1,2)(3,4)").unwrap(), Perm::parse(4, "(1,3)(2,4)").unwrap()]).unwrap();
        (s4, v4)
    }

    #[test]
    fn s4_tower() {
        let (s4, v4) = v4_in_s4();
        let l1 = build_lk(&s4, &v4, 1).unwrap();
        assert!(l1.tower.same_group(&s4));
        let l2 = build_lk(&s4, &v4, 2).unwrap();
        assert_eq!(l2.tower.order(), BigUint::from(96u32));
        assert_eq!((l2.q, l2.h1), (2, 1));
        let l3 = build_lk(&s4, &v4, 3).unwrap();
        assert_eq!(l3.tower.order(), BigUint::from(384u32));
    }

    #[test]
    fn tower_preconditions() {
        let (s4, _) = v4_in_s4();
        let a4 = catalog::alternating(4).unwrap();
        assert!(build_lk(&s4, &a4, 2).is_err());
        // C4 in D8 is normal but not minimal.
        let d8 = catalog::dihedral(4).unwrap();
        let c4 = Group::new(4, vec![Perm::parse(4, "(1,2,3,4)").unwrap()]).unwrap();
        assert!(build_lk(&d8, &c4, 2).is_err());
    }

    #[test]
    fn f_values() {
        let (s4, v4) = v4_in_s4();
        assert_eq!(f_of_d(&s4, &v4, 2).unwrap(), 3);
        assert_eq!(f_of_d(&s4, &v4, 3).unwrap(), 5);
        assert_eq!(f_of_d_from(4, 2, 1, 1).unwrap(), 1);
        assert!(f_of_d_from(4, 2, 3, 2).is_err());
        assert!(f_of_d_from(8, 4, 1, 2).is_err());
    }

    #[test]
    fn klein_pair_data() {
        let v = Group::new(4, vec![Perm::parse(4, "(1,2)").unwrap(), Perm::parse(4, "(3,4)").unwrap()]).unwrap();
        let c = Group::new(4, vec![Perm::parse(4, "(1,2)").unwrap()]).unwrap();
        assert_eq!(end_size(&v, &c).unwrap(), 2);
        assert_eq!(h1_size(&v, &c).unwrap(), 1);
    }

    #[test]
    fn small_automorphism_groups() {
        let v = Group::new(4, vec![Perm::parse(4, "(1,2)").unwrap(), Perm::parse(4, "(3,4)").unwrap()]).unwrap();
        let cases = [(v, 6u64), (catalog::symmetric(4).unwrap(), 24), (catalog::cyclic(7).unwrap(), 6), (catalog::dihedral(4).unwrap(), 8)];
        for (g, expect) in cases {
            let t = SmallGroup::from_group(&g, 100).unwrap();
            let l = Lattice::new(&t, 100).unwrap();
            let a = automorphisms(&t, Some(&l), 1 << 20).unwrap();
            assert_eq!(a.order(), expect);
            let b = automorphisms(&t, None, 1 << 20).unwrap();
            assert_eq!(b.order(), expect);
            // The greedy generators close up to the whole group.
            assert!(!a.generators().is_empty() || expect == 1);
        }
    }

    #[test]
    fn orbit_counts() {
        let v = Group::new(4, vec![Perm::parse(4, "(1,2)").unwrap(), Perm::parse(4, "(3,4)").unwrap()]).unwrap();
        let t = SmallGroup::from_group(&v, 10).unwrap();
        let c = tuple_orbits(&t, 2, &Options::default()).unwrap();
        assert_eq!((c.orbit_count, c.aut_order, c.phi_d.clone()), (1, 6, BigUint::from(6u32)));
        let t = SmallGroup::from_group(&catalog::agl_1_8(), 100).unwrap();
        let c = tuple_orbits(&t, 2, &Options::default()).unwrap();
        assert_eq!(c.orbit_count, 16);
        assert_eq!(c.phi_check, Some(c.phi_d.clone()));
    }

    #[test]
    fn subdirect_products() {
        let s4 = catalog::symmetric(4).unwrap();
        let x = Perm::parse(4, "(1,2)").unwrap();
        let y = Perm::parse(4, "(1,2,3,4)").unwrap();
        let diag = subdirect(&[(s4.clone(), vec![x.clone(), y.clone()]), (s4.clone(), vec![x.clone(), y.clone()])]).unwrap();
        assert_eq!(diag.order(), BigUint::from(24u32));
        let c2 = catalog::cyclic(2).unwrap();
        let z = c2.generators()[0].clone();
        // Both generators odd and both sent to z: the graph of the sign map.
        let graph = subdirect(&[(s4.clone(), vec![x.clone(), y.clone()]), (c2.clone(), vec![z.clone(), z.clone()])]).unwrap();
        assert_eq!(graph.order(), BigUint::from(24u32));
        let full = subdirect(&[(s4.clone(), vec![x, y]), (c2.clone(), vec![z, c2.identity()])]).unwrap();
        assert_eq!(full.order(), BigUint::from(48u32));
        let c5 = catalog::cyclic(5).unwrap();
        let g = c5.generators()[0].clone();
        let diag = subdirect(&[(c5.clone(), vec![g.clone()]), (c5, vec![g])]).unwrap();
        assert_eq!(diag.order(), BigUint::from(5u32));
        let bad = Perm::parse(4, "(1,2)").unwrap();
        assert!(subdirect(&[(s4, vec![bad.clone(), bad])]).is_err());
    }

    #[test]
    fn hat_of_agl18() {
        let g = catalog::agl_1_8();
        let h = hat(&g, 2, 1000, &Options::default()).unwrap();
        let grp = h.group.unwrap();
        assert_eq!(grp.degree(), 128);
        let small = hat(&g, 2, 10, &Options::default()).unwrap();
        assert!(small.group.is_none());
        assert_eq!(small.census.orbit_count, 16);
    }
}
