//! Properties over random small permutation groups.

use std::collections::HashSet;

use maxind_core::bounds::{bound_table, check_b2, nu_report};
use maxind_core::invariants::{Options, Profile};
use maxind_core::lattice::Lattice;
use maxind_core::probgen::{phi_brute, phi_direct, phi_moebius, PhiOracle};
use maxind_core::small::SmallGroup;
use maxind_core::structure::{Analysis, Decision};
use maxind_core::{Group, Perm};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn perm_strategy(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

/// One to three random generators on 4 to 6 points.
fn group_strategy() -> impl Strategy<Value = Group> {
    (4usize..=6).prop_flat_map(|n| {
        prop::collection::vec(perm_strategy(n), 1..=3).prop_map(move |gens| Group::new(n, gens).unwrap())
    })
}

fn naive_order(g: &Group) -> usize {
    let mut seen = HashSet::new();
    let mut queue = vec![g.identity()];
    seen.insert(g.identity());
    let mut i = 0;
    while i < queue.len() {
        for s in g.generators() {
            let y = queue[i].mul(s);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
        i += 1;
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_order_matches_closure(g in group_strategy()) {
        prop_assert_eq!(g.order(), BigUint::from(naive_order(&g)));
        for s in g.generators() {
            prop_assert!(g.contains(s));
        }
    }

    #[test]
    fn perm_group_axioms(a in perm_strategy(7), b in perm_strategy(7), c in perm_strategy(7)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(a.mul(&b).inverse(), b.inverse().mul(&a.inverse()));
        let x = 3u32;
        // Left to right: a first, then b.
        prop_assert_eq!(a.mul(&b).image(x), b.image(a.image(x)));
    }

    #[test]
    fn phi_three_ways(g in group_strategy()) {
        let t = SmallGroup::from_group(&g, 1000).unwrap();
        let l = Lattice::new(&t, 1000).unwrap();
        let direct = phi_direct(&t, 2, 1 << 20).unwrap();
        for d in 1..=2u32 {
            let b = phi_brute(&t, d);
            prop_assert_eq!(phi_moebius(&l, d), BigInt::from(b.clone()));
            prop_assert_eq!(&direct[d as usize - 1], &b);
        }
    }

    #[test]
    fn bounds_hold(g in group_strategy()) {
        let (p, _) = Profile::compute(&g, &Options::default()).unwrap();
        for b in bound_table(&p) {
            prop_assert!(b.violations().is_empty(), "{:?}", b.violations());
        }
        let mut o = PhiOracle::new(&g, 2000, 5000, 1 << 22).unwrap();
        let nu = o.nu().unwrap();
        let r = nu_report(&p, Some(nu));
        prop_assert!(r.violations().is_empty(), "{:?}", r.violations());
        let t = SmallGroup::from_group(&g, 1000).unwrap();
        let l = Lattice::new(&t, 1000).unwrap();
        prop_assert!(check_b2(&t, &l).iter().all(|c| c.3));
    }

    #[test]
    fn chief_series_is_consistent(g in group_strategy()) {
        let a = Analysis::new(&g, Default::default()).unwrap();
        let product: BigUint = a.factors().iter().map(|f| BigUint::from(f.order)).product();
        prop_assert_eq!(product, g.order());
        // Factors below the Frattini subgroup are Frattini factors, so its
        // order divides theirs. Equality fails for AGL(1,5).
        let t = SmallGroup::from_group(&g, 1000).unwrap();
        let l = Lattice::new(&t, 1000).unwrap();
        let frattini = l.frattini().count() as u64;
        let in_frattini: u64 = a
            .factors()
            .iter()
            .filter(|f| f.frattini == Decision::Yes)
            .map(|f| f.order)
            .product();
        prop_assert_eq!(in_frattini % frattini, 0);
    }

    #[test]
    fn crowns_partition_factors(g in group_strategy()) {
        let a = Analysis::new(&g, Default::default()).unwrap();
        let mut seen = vec![false; a.factors().len()];
        for c in a.crowns() {
            for &m in &c.members {
                prop_assert!(!seen[m]);
                seen[m] = true;
                prop_assert_eq!(a.factors()[m].order, c.order);
            }
            if !c.abelian {
                for w in c.members.windows(2) {
                    prop_assert!(a.g_connected(w[0], w[1]) != Decision::No);
                }
            }
        }
        // Non-complemented abelian factors sit in no crown.
        for (i, f) in a.factors().iter().enumerate() {
            prop_assert_eq!(seen[i], !f.abelian || f.complemented == Decision::Yes);
        }
    }
}
