//! Towers, orbit censuses and hat groups against independent checks.

use maxind_core::catalog;
use maxind_core::constructions::{build_lk, f_of_d, hat, tuple_orbits, Options};
use maxind_core::invariants::{self, min_generators};
use maxind_core::small::SmallGroup;
use maxind_core::{Group, Perm};
use num_bigint::BigUint;

fn v4_in_s4() -> (Group, Group) {
    let s4 = catalog::symmetric(4).unwrap();
    let v4 = Group::new(4, vec![Perm::parse(4, "(1,2)(3,4)").unwrap(), Perm::parse(4, "(1,3)(2,4)").unwrap()]).unwrap();
    (s4, v4)
}

/// The points `block*width .. (block+1)*width`, as a permutation of width.
fn restrict(p: &Perm, block: usize, width: usize) -> Perm {
    let off = (block * width) as u32;
    let images = (0..width as u32).map(|i| p.image(off + i) - off).collect();
    Perm::from_images(images).unwrap()
}

#[test]
fn tower_generator_counts() {
    let (s4, v4) = v4_in_s4();
    let opts = invariants::Options::default();
    let f = f_of_d(&s4, &v4, 2).unwrap();
    let mut last = 0;
    for k in 1..=f as usize + 1 {
        let t = build_lk(&s4, &v4, k).unwrap();
        assert_eq!(t.tower.order(), BigUint::from(4u32.pow(k as u32) * 6));
        let d = min_generators(&t.tower, &opts, None);
        assert!(d.exact().is_some(), "L_{k}: {d:?}");
        assert!(d.upper >= last);
        last = d.upper;
        // f(d) is the first k where d generators no longer suffice.
        assert_eq!(d.upper <= 2, k < f as usize, "L_{k}");
    }
}

#[test]
fn tower_projects_onto_base() {
    let (s4, v4) = v4_in_s4();
    let t = build_lk(&s4, &v4, 3).unwrap();
    for block in 0..3 {
        let gens: Vec<Perm> = t.tower.generators().iter().map(|g| restrict(g, block, 4)).collect();
        let image = Group::new(4, gens).unwrap();
        assert!(image.same_group(&s4));
    }
    // The kernel of any projection is a normal 2-group of order 4^(k-1).
    let order = t.tower.order();
    assert_eq!(order / BigUint::from(24u32), BigUint::from(16u32));
}

#[test]
fn aut_acts_freely_on_generating_pairs() {
    let groups = [
        catalog::symmetric(4).unwrap(),
        catalog::dihedral(6).unwrap(),
        catalog::sl_2_3(),
        catalog::alternating(5).unwrap(),
        catalog::agl_1_8(),
        catalog::psl_2_7(),
    ];
    for g in groups {
        let t = SmallGroup::from_group(&g, 1000).unwrap();
        let c = tuple_orbits(&t, 2, &Options::default()).unwrap();
        assert_eq!(c.phi_check.as_ref(), Some(&c.phi_d));
        assert_eq!(BigUint::from(c.orbit_count * c.aut_order), c.phi_d);
    }
}

/// Every hat coordinate is onto, and no two coordinates share a kernel:
/// the pair of coordinates generates more than a diagonal copy of G.
fn check_hat(g: &Group, d: u32) -> usize {
    let h = hat(g, d, 0, &Options::default()).unwrap();
    let t = SmallGroup::from_group(g, 1000).unwrap();
    let reps = &h.census.representatives;
    let tuple = |r: &Vec<usize>| -> Vec<Perm> { r.iter().map(|&x| t.perm(x).unwrap().clone()).collect() };
    for r in reps {
        assert_eq!(Group::new(g.degree(), tuple(r)).unwrap().order(), g.order());
    }
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let (a, b) = (tuple(&reps[i]), tuple(&reps[j]));
            let gens = a.iter().zip(&b).map(|(x, y)| Perm::concat(&[x, y])).collect();
            let pair = Group::new(2 * g.degree(), gens).unwrap();
            assert!(pair.order() > g.order(), "coordinates {i} and {j} share a kernel");
        }
    }
    reps.len()
}

#[test]
fn hat_coordinates_are_independent() {
    assert_eq!(check_hat(&catalog::symmetric(3).unwrap(), 2), 3);
    assert_eq!(check_hat(&catalog::agl_1_8(), 2), 16);
}
