//! Uniform sampling, product replacement and Monte-Carlo generation
//! probabilities against exact counts.

use std::collections::HashMap;

use maxind_core::catalog;
use maxind_core::probgen::{gen_prob_mc, PhiOracle, Sampler};
use maxind_core::random::{ProductReplacement, UniformSampler};
use maxind_core::small::SmallGroup;
use maxind_core::Perm;
use num_traits::ToPrimitive;

#[test]
fn uniform_sampler_is_flat() {
    let g = catalog::symmetric(4).unwrap();
    let per = 500usize;
    let n = 24 * per;
    let mut counts: HashMap<Perm, usize> = HashMap::new();
    for x in UniformSampler::new(&g, 7).take(n) {
        assert!(g.contains(&x));
        *counts.entry(x).or_default() += 1;
    }
    assert_eq!(counts.len(), 24);
    let p = 1.0 / 24.0;
    let sigma = (n as f64 * p * (1.0 - p)).sqrt();
    for (x, c) in &counts {
        let z = (*c as f64 - per as f64).abs() / sigma;
        assert!(z < 5.0, "{x} drawn {c} times, z = {z:.2}");
    }
}

#[test]
fn samples_repeat_per_seed() {
    let g = catalog::agl_3_2();
    let a: Vec<Perm> = UniformSampler::new(&g, 11).take(200).collect();
    let b: Vec<Perm> = UniformSampler::new(&g, 11).take(200).collect();
    assert_eq!(a, b);
    let c: Vec<Perm> = UniformSampler::new(&g, 12).take(200).collect();
    assert_ne!(a, c);

    let mut x = ProductReplacement::new(&g, 3);
    let mut y = ProductReplacement::new(&g, 3);
    for _ in 0..100 {
        let (p, q) = (x.next().unwrap(), y.next().unwrap());
        assert!(g.contains(&p));
        assert_eq!(p, q);
    }
}

#[test]
fn product_replacement_reaches_everything() {
    let g = catalog::alternating(5).unwrap();
    let mut seen = std::collections::HashSet::new();
    for p in ProductReplacement::new(&g, 5).take(3000) {
        seen.insert(p);
    }
    assert_eq!(seen.len(), 60);
}

#[test]
fn monte_carlo_covers_exact() {
    for g in [catalog::alternating(5).unwrap(), catalog::symmetric(4).unwrap(), catalog::agl_1_8()] {
        let t = SmallGroup::from_group(&g, 1000).unwrap();
        let mut o = PhiOracle::new(&g, 2000, 1000, 1 << 22).unwrap();
        for k in 2..=3 {
            let exact = o.gen_prob(k).unwrap().to_f64().unwrap();
            let table = gen_prob_mc(&Sampler::Table(&t), k, 10_000, 100 + k as u64);
            let chain = gen_prob_mc(&Sampler::Chain(&g), k, 2_000, 200 + k as u64);
            // 99% intervals, widened a little against the rare miss.
            assert!((table.estimate.unwrap() - exact).abs() <= 1.3 * table.ci_halfwidth + 1e-9);
            assert!((chain.estimate.unwrap() - exact).abs() <= 1.3 * chain.ci_halfwidth + 1e-9);
        }
    }
}
