//! Subdirect products of table groups ("tuple groups").
//!
//! A permutation group whose transitive constituents are small is a
//! subdirect subgroup of the product of its constituents. Elements are
//! stored as tuples of constituent ranks. The chain used here is indexed by
//! coordinates: level `i` records `P_i`, the image in coordinate `i` of the
//! elements that are trivial on all earlier coordinates, with an explicit
//! lift for each element of `P_i`.
//!
//! Each term `K_i` of the resulting series is normal in the whole group, so
//! the chain is certified by Schreier generators of the generators first
//! appearing at each level plus conjugates of those generators by the
//! generators of the group.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::bitset::BitSet;
use crate::group::Group;
use crate::perm::Perm;
use crate::small::SmallGroup;
use crate::{Error, Result};

pub type Tuple = Vec<u16>;

const NONE: u32 = u32::MAX;

/// Tuple group: coordinates, shared constituent tables and generators.
#[derive(Clone)]
pub struct TupleGroup {
    tables: Vec<Arc<SmallGroup>>,
    coord_table: Vec<usize>,
    gens: Vec<Tuple>,
    /// Point sets of the coordinates when built from a permutation group.
    orbits: Option<Vec<Vec<u32>>>,
    degree: usize,
    chain: Option<Arc<TupleChain>>,
}

impl core::fmt::Debug for TupleGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "TupleGroup({} coordinates, {} tables)",
            self.coord_table.len(),
            self.tables.len()
        )
    }
}

impl TupleGroup {
    /// Decomposes `g` into its transitive constituents, each of order at
    /// most `table_limit`.
    pub fn from_group(g: &Group, table_limit: u64) -> Result<TupleGroup> {
        let orbits: Vec<Vec<u32>> = g.orbits().into_iter().filter(|o| o.len() > 1).collect();
        let mut tables: Vec<Arc<SmallGroup>> = Vec::new();
        let mut table_groups: Vec<Group> = Vec::new();
        let mut coord_table = Vec::new();
        let mut coord_gens: Vec<Vec<Perm>> = Vec::new();
        for orb in &orbits {
            let restricted = restrict_gens(g.generators(), orb, g.degree());
            let found = table_groups.iter().position(|t| {
                t.degree() == orb.len() && restricted.iter().all(|x| t.contains(x))
            });
            let cg = Group::new(orb.len(), restricted.clone())?;
            let idx = match found {
                Some(i) if table_groups[i].order() == cg.order() => i,
                _ => {
                    tables.push(Arc::new(SmallGroup::from_group(&cg, table_limit)?));
                    table_groups.push(cg);
                    tables.len() - 1
                }
            };
            coord_table.push(idx);
            coord_gens.push(restricted);
        }
        let gens: Vec<Tuple> = (0..g.generators().len())
            .map(|gi| {
                coord_gens
                    .iter()
                    .zip(&coord_table)
                    .map(|(cg, &t)| tables[t].rank_of(&cg[gi]).expect("constituent element") as u16)
                    .collect()
            })
            .collect();
        Ok(TupleGroup {
            tables,
            coord_table,
            gens,
            orbits: Some(orbits),
            degree: g.degree(),
            chain: None,
        })
    }

    /// The whole group as a single coordinate.
    pub fn single(table: Arc<SmallGroup>) -> TupleGroup {
        let gens = table.generators().iter().map(|&g| vec![g]).collect();
        TupleGroup {
            tables: vec![table],
            coord_table: vec![0],
            gens,
            orbits: None,
            degree: 0,
            chain: None,
        }
    }

    /// Abstract tuple group from tables and generator tuples.
    pub fn from_tuples(
        tables: Vec<Arc<SmallGroup>>,
        coord_table: Vec<usize>,
        gens: Vec<Tuple>,
    ) -> TupleGroup {
        TupleGroup {
            tables,
            coord_table,
            gens,
            orbits: None,
            degree: 0,
            chain: None,
        }
    }

    pub fn coords(&self) -> usize {
        self.coord_table.len()
    }

    pub fn table(&self, coord: usize) -> &Arc<SmallGroup> {
        &self.tables[self.coord_table[coord]]
    }

    pub fn table_index(&self, coord: usize) -> usize {
        self.coord_table[coord]
    }

    pub fn tables(&self) -> &[Arc<SmallGroup>] {
        &self.tables
    }

    pub fn generators(&self) -> &[Tuple] {
        &self.gens
    }

    pub fn orbits(&self) -> Option<&[Vec<u32>]> {
        self.orbits.as_deref()
    }

    /// Coordinate `coord` of each generator.
    pub fn projected_generators(&self, coord: usize) -> Vec<usize> {
        self.gens.iter().map(|t| t[coord] as usize).collect()
    }

    pub fn identity(&self) -> Tuple {
        vec![0; self.coords()]
    }

    pub fn mul(&self, a: &[u16], b: &[u16]) -> Tuple {
        (0..self.coords())
            .map(|i| self.table(i).mul(a[i] as usize, b[i] as usize) as u16)
            .collect()
    }

    pub fn inv(&self, a: &[u16]) -> Tuple {
        (0..self.coords())
            .map(|i| self.table(i).inv(a[i] as usize) as u16)
            .collect()
    }

    /// `g^-1 a g`.
    pub fn conj(&self, a: &[u16], g: &[u16]) -> Tuple {
        (0..self.coords())
            .map(|i| self.table(i).conj(a[i] as usize, g[i] as usize) as u16)
            .collect()
    }

    /// Tuple of a permutation of the original degree.
    pub fn tuple_of(&self, p: &Perm) -> Option<Tuple> {
        let orbits = self.orbits.as_ref()?;
        let mut out = Vec::with_capacity(orbits.len());
        for (i, orb) in orbits.iter().enumerate() {
            let r = restrict_gens(core::slice::from_ref(p), orb, self.degree).remove(0);
            out.push(self.table(i).rank_of(&r)? as u16);
        }
        Some(out)
    }

    /// Permutation of a tuple (for groups built from permutations).
    pub fn perm_of(&self, t: &[u16]) -> Option<Perm> {
        let orbits = self.orbits.as_ref()?;
        let mut images: Vec<u32> = (0..self.degree as u32).collect();
        for (i, orb) in orbits.iter().enumerate() {
            let p = self.table(i).perm(t[i] as usize)?;
            for (j, &pt) in orb.iter().enumerate() {
                images[pt as usize] = orb[p.image(j as u32) as usize];
            }
        }
        Perm::from_images(images).ok()
    }

    /// Builds (once) and returns the chain.
    pub fn chain(&mut self) -> Arc<TupleChain> {
        if self.chain.is_none() {
            self.chain = Some(Arc::new(TupleChain::build(self)));
        }
        self.chain.clone().unwrap()
    }

    pub fn cached_chain(&self) -> Option<&Arc<TupleChain>> {
        self.chain.as_ref()
    }

    pub fn order(&mut self) -> BigUint {
        self.chain().order()
    }

    /// Restriction to the first `upto` coordinates, with coordinate `upto`
    /// replaced by the quotient table given with its projection.
    pub fn truncated_with_quotient(
        &self,
        upto: usize,
        quotient: Arc<SmallGroup>,
        projection: &[u16],
    ) -> TupleGroup {
        let mut tables: Vec<Arc<SmallGroup>> = Vec::new();
        let mut coord_table = Vec::new();
        let mut remap: Vec<Option<usize>> = vec![None; self.tables.len()];
        for i in 0..upto {
            let t = self.coord_table[i];
            let idx = *remap[t].get_or_insert_with(|| {
                tables.push(self.tables[t].clone());
                tables.len() - 1
            });
            coord_table.push(idx);
        }
        tables.push(quotient);
        coord_table.push(tables.len() - 1);
        let gens = self
            .gens
            .iter()
            .map(|t| {
                let mut v: Tuple = t[..upto].to_vec();
                v.push(projection[t[upto] as usize]);
                v
            })
            .collect();
        TupleGroup::from_tuples(tables, coord_table, gens)
    }
}

fn restrict_gens(gens: &[Perm], orb: &[u32], degree: usize) -> Vec<Perm> {
    let mut pos = vec![u32::MAX; degree];
    for (i, &p) in orb.iter().enumerate() {
        pos[p as usize] = i as u32;
    }
    gens.iter()
        .map(|g| {
            let im = orb.iter().map(|&p| pos[g.image(p) as usize]).collect();
            Perm::from_images(im).expect("orbit is invariant")
        })
        .collect()
}

struct Level {
    /// `P_i`, in discovery order.
    orbit: Vec<u16>,
    pos: Vec<u32>,
    /// Per orbit point: suffix (coordinates `i..`) of the lift and of its
    /// inverse.
    lift: Vec<Tuple>,
    lift_inv: Vec<Tuple>,
    /// Per orbit point: (parent index, generator index) or root.
    label: Vec<(u32, u32)>,
    gens: Vec<usize>,
    tested: Vec<usize>,
    normal_tested: Vec<usize>,
}

/// Coordinate chain of a tuple group.
pub struct TupleChain {
    k: usize,
    strong: Vec<Tuple>,
    levels: Vec<Level>,
}

impl TupleChain {
    fn build(g: &TupleGroup) -> TupleChain {
        let k = g.coords();
        let mut chain = TupleChain {
            k,
            strong: Vec::new(),
            levels: (0..k)
                .map(|i| {
                    let n = g.table(i).order();
                    let mut pos = vec![NONE; n];
                    pos[0] = 0;
                    Level {
                        orbit: vec![0],
                        pos,
                        lift: vec![vec![0; k - i]],
                        lift_inv: vec![vec![0; k - i]],
                        label: vec![(u32::MAX, u32::MAX)],
                        gens: Vec::new(),
                        tested: Vec::new(),
                        normal_tested: Vec::new(),
                    }
                })
                .collect(),
        };
        for x in &g.gens {
            if let Some(f) = x.iter().position(|&v| v != 0) {
                chain.install(g, x.clone(), f);
            }
        }
        if k > 0 {
            chain.run(g, k - 1);
        }
        chain
    }

    fn install(&mut self, g: &TupleGroup, r: Tuple, level: usize) {
        let idx = self.strong.len();
        self.strong.push(r);
        let lev = &mut self.levels[level];
        lev.gens.push(idx);
        lev.tested.push(0);
        lev.normal_tested.push(0);
        let gi = lev.gens.len() - 1;
        self.extend_orbit(g, level, gi);
    }

    fn extend_orbit(&mut self, g: &TupleGroup, level: usize, first_new: usize) {
        let k = self.k;
        let lev = &mut self.levels[level];
        let old = lev.orbit.len();
        let mut i = 0;
        while i < lev.orbit.len() {
            let gstart = if i < old { first_new } else { 0 };
            for gi in gstart..lev.gens.len() {
                let s = &self.strong[lev.gens[gi]];
                let t = g.table(level);
                let q = t.mul(lev.orbit[i] as usize, s[level] as usize);
                if lev.pos[q] != NONE {
                    continue;
                }
                let mut lift = Vec::with_capacity(k - level);
                let mut inv = Vec::with_capacity(k - level);
                for (j, &sj) in s.iter().enumerate().take(k).skip(level) {
                    let tj = g.table(j);
                    let a = lev.lift[i][j - level] as usize;
                    let b = sj as usize;
                    let ab = tj.mul(a, b);
                    lift.push(ab as u16);
                    inv.push(tj.inv(ab) as u16);
                }
                lev.pos[q] = lev.orbit.len() as u32;
                lev.orbit.push(q as u16);
                lev.lift.push(lift);
                lev.lift_inv.push(inv);
                lev.label.push((i as u32, gi as u32));
            }
            i += 1;
        }
    }

    /// Sifts `x` (trivial on coordinates before `start`) in place; returns
    /// the level where it stopped (`k` when fully sifted).
    fn sift(&self, g: &TupleGroup, x: &mut [u16], start: usize) -> usize {
        for m in start..self.k {
            let v = x[m] as usize;
            if v == 0 {
                continue;
            }
            let lev = &self.levels[m];
            let idx = lev.pos[v];
            if idx == NONE {
                return m;
            }
            let inv = &lev.lift_inv[idx as usize];
            for j in m..self.k {
                x[j] = g.table(j).mul(x[j] as usize, inv[j - m] as usize) as u16;
            }
        }
        self.k
    }

    fn first_nontrivial(x: &[u16], from: usize) -> Option<usize> {
        x[from..].iter().position(|&v| v != 0).map(|p| p + from)
    }

    fn find_failing(&mut self, g: &TupleGroup, i: usize) -> Option<(Tuple, usize)> {
        let k = self.k;
        let ngens = self.levels[i].gens.len();
        for gi in 0..ngens {
            while self.levels[i].tested[gi] < self.levels[i].orbit.len() {
                let lev = &self.levels[i];
                let pi = lev.tested[gi];
                let s = &self.strong[lev.gens[gi]];
                let q = g.table(i).mul(lev.orbit[pi] as usize, s[i] as usize);
                let qi = lev.pos[q] as usize;
                self.levels[i].tested[gi] += 1;
                let lev = &self.levels[i];
                if lev.label[qi] == (pi as u32, gi as u32) {
                    continue;
                }
                // t_p s t_q^-1, trivial on coordinates <= i.
                let mut h = vec![0u16; k];
                for j in i + 1..k {
                    let tj = g.table(j);
                    let a = tj.mul(lev.lift[pi][j - i] as usize, s[j] as usize);
                    h[j] = tj.mul(a, lev.lift_inv[qi][j - i] as usize) as u16;
                }
                let stop = self.sift(g, &mut h, i + 1);
                if stop < k {
                    return Some((h, stop));
                }
            }
        }
        for gi in 0..ngens {
            while self.levels[i].normal_tested[gi] < g.gens.len() {
                let xi = self.levels[i].normal_tested[gi];
                self.levels[i].normal_tested[gi] += 1;
                let s = &self.strong[self.levels[i].gens[gi]];
                let mut h = g.conj(s, &g.gens[xi]);
                let stop = self.sift(g, &mut h, i);
                if stop < k {
                    return Some((h, stop));
                }
            }
        }
        None
    }

    fn run(&mut self, g: &TupleGroup, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let l = i as usize;
            match self.find_failing(g, l) {
                None => i -= 1,
                Some((r, j)) => {
                    debug_assert_eq!(Self::first_nontrivial(&r, 0), Some(j));
                    self.install(g, r, j);
                    i = j as isize;
                }
            }
        }
    }

    pub fn coords(&self) -> usize {
        self.k
    }

    /// `|P_i|` for each coordinate.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        let mut o = BigUint::one();
        for l in &self.levels {
            o *= BigUint::from(l.orbit.len());
        }
        o
    }

    /// `P_i` as a subset of constituent `i`.
    pub fn projection_set(&self, i: usize) -> BitSet {
        let lev = &self.levels[i];
        BitSet::from_indices(lev.pos.len(), lev.orbit.iter().map(|&x| x as usize))
    }

    /// Lift of `p` in `P_i` (full tuple, trivial before `i`).
    pub fn lift(&self, i: usize, p: usize) -> Option<Tuple> {
        let lev = &self.levels[i];
        let idx = lev.pos[p];
        if idx == NONE {
            return None;
        }
        let mut t = vec![0u16; self.k];
        t[i..].copy_from_slice(&lev.lift[idx as usize]);
        Some(t)
    }

    /// Strong generators installed at levels `>= l`; they generate the
    /// elements trivial on coordinates `< l`.
    pub fn generators_from(&self, l: usize) -> Vec<Tuple> {
        self.levels[l.min(self.k)..]
            .iter()
            .flat_map(|lev| lev.gens.iter().map(|&i| self.strong[i].clone()))
            .collect()
    }

    pub fn contains(&self, g: &TupleGroup, x: &[u16]) -> bool {
        let mut y = x.to_vec();
        self.sift(g, &mut y, 0) == self.k
    }

    /// Total number of stored lift entries.
    pub fn storage(&self) -> usize {
        self.levels
            .iter()
            .enumerate()
            .map(|(i, l)| l.orbit.len() * (self.k - i))
            .sum()
    }
}

/// Subgroup of a tuple group given as the preimage of a subgroup of one
/// coordinate under the projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    pub coord: usize,
    pub set: BitSet,
}

/// Checks that all constituents fit the table budget before building.
pub fn check_constituents(g: &Group, table_limit: u64) -> Result<()> {
    for orb in g.orbits() {
        if orb.len() < 2 {
            continue;
        }
        let cg = Group::new(orb.len(), restrict_gens(g.generators(), &orb, g.degree()))?;
        if cg.order() > BigUint::from(table_limit) {
            return Err(Error::limit("constituent element table", cg.order(), table_limit));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::DirectProduct;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn order_of_products_and_diagonals() {
        let s4 = Group::new(4, vec![p(4, "(1,2)"), p(4, "(1,2,3,4)")]).unwrap();
        let dp = DirectProduct::new(&[s4.clone(), s4.clone(), s4.clone()]).unwrap();
        let mut t = TupleGroup::from_group(&dp.group, 5000).unwrap();
        assert_eq!(t.coords(), 3);
        assert_eq!(t.tables().len(), 1);
        assert_eq!(t.order(), dp.group.order());
        // Diagonal copy of S4 on two blocks.
        let diag: Vec<Perm> = s4.generators().iter().map(|g| Perm::concat(&[g, g])).collect();
        let d = Group::new(8, diag).unwrap();
        let mut t = TupleGroup::from_group(&d, 5000).unwrap();
        assert_eq!(t.order(), BigUint::from(24u32));
    }

    #[test]
    fn agrees_with_stabilizer_chain_on_subdirect_products() {
        // Pairs of generators of S4 twisted by a sign character on a third
        // block of size 2.
        let g1 = Perm::concat(&[&p(4, "(1,2)"), &p(4, "(1,2,3)"), &p(2, "(1,2)")]);
        let g2 = Perm::concat(&[&p(4, "(1,2,3,4)"), &p(4, "(1,2)"), &p(2, "()")]);
        let g = Group::new(10, vec![g1, g2]).unwrap();
        let mut t = TupleGroup::from_group(&g, 5000).unwrap();
        assert_eq!(t.order(), g.order());
        let chain = t.chain();
        let mut rng_pick = g.elements(100_000).unwrap();
        rng_pick.truncate(50);
        for x in &rng_pick {
            let tx = t.tuple_of(x).unwrap();
            assert!(chain.contains(&t, &tx));
            assert_eq!(&t.perm_of(&tx).unwrap(), x);
        }
        // Something outside: a transposition on the last block alone.
        let out = Perm::concat(&[&p(4, "()"), &p(4, "()"), &p(2, "(1,2)")]);
        assert!(!g.contains(&out));
        let to = t.tuple_of(&out).unwrap();
        assert_eq!(chain.contains(&t, &to), g.contains(&out));
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        fn block_elements(n: usize) -> Vec<Perm> {
            Group::symmetric(n).elements(1000).unwrap()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]
            #[test]
            fn tuple_order_matches_stabilizer_chain(
                picks in proptest::collection::vec((0usize..24, 0usize..24, 0usize..6, 0usize..2), 1..4)
            ) {
                let (e4, e3, e2) = (block_elements(4), block_elements(3), block_elements(2));
                let gens: Vec<Perm> = picks
                    .iter()
                    .map(|&(a, b, c, d)| Perm::concat(&[&e4[a], &e4[b], &e3[c], &e2[d]]))
                    .collect();
                let g = Group::new(13, gens).unwrap();
                let mut t = TupleGroup::from_group(&g, 5000).unwrap();
                prop_assert_eq!(t.order(), g.order());
            }
        }
    }
}
