//! Homomorphisms between permutation groups, coset actions and direct
//! products.
//!
//! An epimorphism is stored through its graph `{(g, phi(g))}` acting on the
//! disjoint union of both point sets. Images come from sifting through a
//! chain whose base lies in the source points; the kernel is the pointwise
//! stabilizer of a base of the target.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use once_cell::race::OnceBox;

use crate::group::Group;
use crate::perm::Perm;
use crate::small::SmallGroup;
use crate::{Error, HashMap, Result};

/// Default limit on the number of cosets materialized by [`coset_action`].
pub const DEFAULT_DEGREE_LIMIT: usize = 20_000;

pub struct Epimorphism {
    source: Group,
    target: Group,
    images: Vec<Perm>,
    graph: OnceBox<Group>,
}

impl Clone for Epimorphism {
    fn clone(&self) -> Self {
        Epimorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.clone(),
            graph: OnceBox::new(),
        }
    }
}

impl core::fmt::Debug for Epimorphism {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "Epimorphism(degree {} -> degree {})",
            self.source.degree(),
            self.target.degree()
        )
    }
}

impl Epimorphism {
    /// Map sending the generators of `source` to `images`. Checks that the
    /// assignment extends to a homomorphism onto `target`.
    pub fn new(source: &Group, target: &Group, images: Vec<Perm>) -> Result<Epimorphism> {
        if images.len() != source.generators().len() {
            return Err(Error::Invalid("one image per source generator required".into()));
        }
        for im in &images {
            if !target.contains(im) {
                return Err(Error::Invalid("image outside the target group".into()));
            }
        }
        let hom = Epimorphism::unchecked(source, target, images);
        let img = Group::new(target.degree(), hom.images.clone())?;
        if img.order() != target.order() {
            return Err(Error::Invalid("images do not generate the target".into()));
        }
        // A generator assignment is a homomorphism iff the graph has the
        // order of the source.
        if hom.graph().order() != source.order() {
            return Err(Error::Invalid("generator images do not define a homomorphism".into()));
        }
        Ok(hom)
    }

    pub(crate) fn unchecked(source: &Group, target: &Group, images: Vec<Perm>) -> Epimorphism {
        Epimorphism {
            source: source.clone(),
            target: target.clone(),
            images,
            graph: OnceBox::new(),
        }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    /// Images of the source generators.
    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    fn graph_gens(&self) -> Vec<Perm> {
        self.source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, h)| Perm::concat(&[g, h]))
            .collect()
    }

    fn graph(&self) -> &Group {
        self.graph.get_or_init(|| {
            let degree = self.source.degree() + self.target.degree();
            let prefix = self.source.chain().base();
            let g = Group::with_base_prefix(degree, self.graph_gens(), prefix)
                .expect("graph generators share a degree");
            alloc::boxed::Box::new(g)
        })
    }

    /// `phi(g)` for `g` in the source.
    pub fn image(&self, g: &Perm) -> Result<Perm> {
        if !self.source.contains(g) {
            return Err(Error::NotSubgroup);
        }
        let n = self.source.degree();
        let m = self.target.degree();
        let lifted = Perm::concat(&[g, &Perm::identity(m)]);
        let chain = self.graph().chain();
        let (res, _) = chain.strip(&lifted, 0);
        // The residue is (1, phi(g)^-1).
        let t = res
            .restrict(n, m)
            .ok_or_else(|| Error::Invariant("graph residue does not split".into()))?;
        Ok(t.inverse())
    }

    /// Kernel, as a subgroup of the source.
    pub fn kernel(&self) -> Group {
        let n = self.source.degree();
        let m = self.target.degree();
        let tbase: Vec<u32> = self.target.chain().base().iter().map(|&b| b + n as u32).collect();
        let depth = tbase.len();
        let g = Group::with_base_prefix(n + m, self.graph_gens(), tbase).expect("same degree");
        let gens: Vec<Perm> = g
            .chain()
            .level_generators(depth)
            .iter()
            .map(|p| p.restrict(0, n).expect("block stabilized"))
            .filter(|p| !p.is_identity())
            .collect();
        Group::new(n, gens).expect("positive degree")
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, h: &Group) -> Result<Group> {
        let n = self.source.degree();
        let m = self.target.degree();
        // Lift generators of h through the graph: sift (?, y) on target
        // points first.
        let tbase: Vec<u32> = self.target.chain().base().iter().map(|&b| b + n as u32).collect();
        let g = Group::with_base_prefix(n + m, self.graph_gens(), tbase)?;
        let mut gens: Vec<Perm> = self.kernel().generators().to_vec();
        for y in h.generators() {
            let lifted = Perm::concat(&[&Perm::identity(n), y]);
            let (res, _) = g.chain().strip(&lifted, 0);
            // res = (x^-1, 1) where (x, y) is in the graph.
            let x = res
                .restrict(0, n)
                .ok_or_else(|| Error::Invariant("graph residue does not split".into()))?
                .inverse();
            gens.push(x);
        }
        Group::new(n, gens)
    }
}

/// Canonical element of the right coset `H x`: the one whose images of the
/// base of `H` are lexicographically least, found level by level.
pub fn coset_key(h: &Group, x: &Perm) -> Vec<u32> {
    let chain = h.chain();
    let base = chain.base();
    let mut y = x.clone();
    for (l, &b) in base.iter().enumerate() {
        let orbit = chain.orbit(l);
        let gamma = *orbit
            .iter()
            .min_by_key(|&&g| y.image(g))
            .expect("orbit contains the base point");
        if gamma != b {
            let u = chain.transversal(l, gamma);
            y = u.mul(&y);
        }
    }
    y.images().to_vec()
}

/// Action of `g` on the right cosets of `h`. Coset 0 is `h` itself.
pub fn coset_action(g: &Group, h: &Group, degree_limit: usize) -> Result<(Group, Epimorphism)> {
    if !g.contains_group(h) {
        return Err(Error::NotSubgroup);
    }
    let index = g.order() / h.order();
    let idx = index.to_usize().unwrap_or(usize::MAX);
    if idx > degree_limit {
        return Err(Error::limit("coset action degree", index, degree_limit));
    }
    let gens = g.generators();
    let mut keys: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut reps: Vec<Perm> = vec![g.identity()];
    keys.insert(coset_key(h, &g.identity()), 0);
    let mut action: Vec<Vec<u32>> = vec![Vec::with_capacity(idx); gens.len()];
    let mut i = 0;
    while i < reps.len() {
        for (gi, s) in gens.iter().enumerate() {
            let y = reps[i].mul(s);
            let k = coset_key(h, &y);
            let next = keys.len() as u32;
            let j = *keys.entry(k).or_insert_with(|| {
                reps.push(y);
                next
            });
            action[gi].push(j);
        }
        i += 1;
    }
    if reps.len() != idx {
        return Err(Error::Invariant("coset enumeration missed cosets".into()));
    }
    let images: Vec<Perm> = action
        .into_iter()
        .map(Perm::from_images)
        .collect::<Result<_>>()?;
    let q = Group::new(idx, images.clone())?;
    let hom = Epimorphism::unchecked(g, &q, images);
    Ok((q, hom))
}

/// Largest normal subgroup of `g` inside `h`: the kernel of the coset
/// action.
pub fn core(g: &Group, h: &Group, degree_limit: usize) -> Result<Group> {
    let (_, hom) = coset_action(g, h, degree_limit)?;
    Ok(hom.kernel())
}

/// `C_G(H)` for `H <= G`, through the element table of `G`.
pub fn centralizer(g: &Group, h: &Group, table_limit: u64) -> Result<Group> {
    if !g.contains_group(h) {
        return Err(Error::NotSubgroup);
    }
    let t = SmallGroup::from_group(g, table_limit)?;
    let hs: Vec<usize> = h
        .generators()
        .iter()
        .map(|x| t.rank_of(x).expect("member"))
        .collect();
    let c = t.centralizer(&hs);
    Ok(subgroup_from_set(&t, g.degree(), &c))
}

/// Permutation group of a subgroup of a table group realized by
/// permutations.
pub fn subgroup_from_set(t: &SmallGroup, degree: usize, set: &crate::bitset::BitSet) -> Group {
    let perms = t.perms().expect("table built from permutations");
    let gens: Vec<Perm> = t
        .subgroup_generators(set)
        .into_iter()
        .map(|r| perms[r].clone())
        .collect();
    Group::new(degree, gens).expect("positive degree")
}

/// `G_1 x ... x G_k` on the disjoint union of the point sets.
pub struct DirectProduct {
    pub group: Group,
    /// Point offset of each factor.
    pub offsets: Vec<usize>,
    pub factors: Vec<Group>,
}

impl DirectProduct {
    pub fn new(factors: &[Group]) -> Result<DirectProduct> {
        if factors.is_empty() {
            return Err(Error::Invalid("direct product of an empty list".into()));
        }
        let total: usize = factors.iter().map(Group::degree).sum();
        let mut offsets = Vec::new();
        let mut gens = Vec::new();
        let mut off = 0;
        for f in factors {
            offsets.push(off);
            gens.extend(f.generators().iter().map(|g| g.shifted(off, total)));
            off += f.degree();
        }
        Ok(DirectProduct {
            group: Group::new(total, gens)?,
            offsets,
            factors: factors.to_vec(),
        })
    }

    /// Embedding of factor `i`.
    pub fn embed(&self, i: usize, g: &Perm) -> Perm {
        g.shifted(self.offsets[i], self.group.degree())
    }

    /// Component of `g` in factor `i`.
    pub fn component(&self, i: usize, g: &Perm) -> Perm {
        g.restrict(self.offsets[i], self.factors[i].degree())
            .expect("direct product element stabilizes blocks")
    }

    pub fn projection(&self, i: usize) -> Epimorphism {
        let images = self
            .group
            .generators()
            .iter()
            .map(|g| self.component(i, g))
            .collect();
        Epimorphism::unchecked(&self.group, &self.factors[i], images)
    }
}

/// Restriction of the action of `g` to a union of orbits, relabelled
/// in increasing point order.
pub fn restrict_to_points(g: &Group, points: &[u32]) -> Result<(Group, Epimorphism)> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let mut pos = vec![u32::MAX; g.degree()];
    for (i, &p) in sorted.iter().enumerate() {
        pos[p as usize] = i as u32;
    }
    let images: Vec<Perm> = g
        .generators()
        .iter()
        .map(|s| {
            let im: Vec<u32> = sorted.iter().map(|&p| pos[s.image(p) as usize]).collect();
            if im.contains(&u32::MAX) {
                return Err(Error::Invalid("point set is not invariant".into()));
            }
            Perm::from_images(im)
        })
        .collect::<Result<_>>()?;
    let q = Group::new(sorted.len().max(1), images.clone())?;
    let hom = Epimorphism::unchecked(g, &q, images);
    Ok((q, hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    fn s4() -> Group {
        Group::new(4, vec![p(4, "(1,2)"), p(4, "(1,2,3,4)")]).unwrap()
    }

    #[test]
    fn coset_action_of_s4_on_d8() {
        let g = s4();
        let d8 = g.subgroup(vec![p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
        let (q, hom) = coset_action(&g, &d8, 100).unwrap();
        assert_eq!(q.degree(), 3);
        assert_eq!(q.order(), BigUint::from(6u32));
        assert_eq!(hom.kernel().order(), BigUint::from(4u32));
        let x = p(4, "(1,2,3)");
        let y = p(4, "(2,4)");
        assert_eq!(hom.image(&x.mul(&y)).unwrap(), hom.image(&x).unwrap().mul(&hom.image(&y).unwrap()));
    }

    #[test]
    fn coset_action_on_whole_group_is_trivial() {
        let g = s4();
        let (q, hom) = coset_action(&g, &g, 100).unwrap();
        assert_eq!(q.order(), BigUint::from(1u32));
        assert_eq!(hom.kernel().order(), BigUint::from(24u32));
    }

    #[test]
    fn a4_is_core_free_in_a5() {
        let a5 = Group::new(5, vec![p(5, "(1,2,3)"), p(5, "(1,2,3,4,5)")]).unwrap();
        let a4 = a5.subgroup(vec![p(5, "(1,2,3)"), p(5, "(1,2)(3,4)")]).unwrap();
        let (q, hom) = coset_action(&a5, &a4, 100).unwrap();
        assert_eq!((q.degree(), q.order()), (5, BigUint::from(60u32)));
        assert!(hom.kernel().is_trivial());
        assert!(core(&a5, &a4, 100).unwrap().is_trivial());
    }

    #[test]
    fn index_limit_refuses() {
        let g = Group::symmetric(7);
        let t = Group::trivial(7);
        assert!(coset_action(&g, &t, 100).unwrap_err().is_limit());
    }

    #[test]
    fn direct_products_and_projections() {
        let c2 = Group::new(2, vec![p(2, "(1,2)")]).unwrap();
        let c3 = Group::new(3, vec![p(3, "(1,2,3)")]).unwrap();
        let dp = DirectProduct::new(&[c2.clone(), c3]).unwrap();
        assert_eq!((dp.group.degree(), dp.group.order()), (5, BigUint::from(6u32)));
        let a5 = Group::new(5, vec![p(5, "(1,2,3)"), p(5, "(1,2,3,4,5)")]).unwrap();
        let dp = DirectProduct::new(&[a5, c2]).unwrap();
        assert_eq!(dp.projection(0).kernel().order(), BigUint::from(2u32));
        let dp = DirectProduct::new(&[s4(), s4()]).unwrap();
        assert_eq!(dp.group.order(), BigUint::from(576u32));
    }

    #[test]
    fn centralizer_and_core_in_s4() {
        let g = s4();
        let v4 = g.subgroup(vec![p(4, "(1,2)(3,4)"), p(4, "(1,3)(2,4)")]).unwrap();
        let c = centralizer(&g, &v4, 5000).unwrap();
        assert!(c.same_group(&v4));
        let d8 = g.subgroup(vec![p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
        assert!(core(&g, &d8, 100).unwrap().same_group(&v4));
    }

    #[test]
    fn checked_epimorphism_rejects_non_homomorphisms() {
        let g = s4();
        let c2 = Group::new(2, vec![p(2, "(1,2)")]).unwrap();
        // Sign map.
        let sign = Epimorphism::new(&g, &c2, vec![p(2, "(1,2)"), p(2, "(1,2)")]).unwrap();
        assert_eq!(sign.kernel().order(), BigUint::from(12u32));
        let pre = sign.preimage(&Group::trivial(2)).unwrap();
        assert_eq!(pre.order(), BigUint::from(12u32));
        assert!(Epimorphism::new(&g, &c2, vec![p(2, "(1,2)"), p(2, "()")]).is_err());
    }
}
