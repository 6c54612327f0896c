//! Seeded random elements: exact uniform sampling through the stabilizer
//! chain, and the product replacement walk.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Group, Perm};

/// Seeded generator used everywhere randomness is needed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform element of `g`: one uniform transversal pick per chain level.
pub fn uniform_random(g: &Group, seed: u64) -> Perm {
    g.random_element(&mut rng(seed))
}

/// Infinite stream of uniform elements.
pub struct UniformSampler<'a> {
    group: &'a Group,
    rng: ChaCha8Rng,
}

impl<'a> UniformSampler<'a> {
    pub fn new(group: &'a Group, seed: u64) -> Self {
        UniformSampler { group, rng: rng(seed) }
    }
}

impl Iterator for UniformSampler<'_> {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        Some(self.group.random_element(&mut self.rng))
    }
}

/// Product replacement with an accumulator ("rattle"): slots start as the
/// generators padded to `slots`, each step replaces a slot by its product
/// with another and multiplies the accumulator by the result.
pub struct ProductReplacement {
    state: Vec<Perm>,
    acc: Perm,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    pub const DEFAULT_SLOTS: usize = 10;
    pub const DEFAULT_SCRAMBLE: usize = 50;

    pub fn new(g: &Group, seed: u64) -> Self {
        Self::with_params(g, seed, Self::DEFAULT_SLOTS, Self::DEFAULT_SCRAMBLE)
    }

    pub fn with_params(g: &Group, seed: u64, slots: usize, scramble: usize) -> Self {
        let id = g.identity();
        let gens = g.generators();
        let slots = slots.max(gens.len()).max(2);
        let state = (0..slots)
            .map(|i| if gens.is_empty() { id.clone() } else { gens[i % gens.len()].clone() })
            .collect();
        let mut pr = ProductReplacement { state, acc: id, rng: rng(seed) };
        for _ in 0..scramble {
            pr.step();
        }
        pr
    }

    fn step(&mut self) -> Perm {
        let n = self.state.len();
        let i = self.rng.random_range(0..n);
        let mut j = self.rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.random::<bool>() {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        self.state[i] = if self.rng.random::<bool>() {
            self.state[i].mul(&other)
        } else {
            other.mul(&self.state[i])
        };
        self.acc = self.acc.mul(&self.state[i]);
        self.acc.clone()
    }
}

impl Iterator for ProductReplacement {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        Some(self.step())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_group() {
        let g = Group::trivial(3);
        assert!(uniform_random(&g, 7).is_identity());
        assert!(ProductReplacement::new(&g, 1).take(5).all(|p| p.is_identity()));
    }

    #[test]
    fn deterministic() {
        let g = catalog::symmetric(6).unwrap();
        assert_eq!(uniform_random(&g, 42), uniform_random(&g, 42));
        let a: Vec<Perm> = ProductReplacement::new(&g, 3).take(10).collect();
        let b: Vec<Perm> = ProductReplacement::new(&g, 3).take(10).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn c2_identity_frequency() {
        let g = catalog::cyclic(2).unwrap();
        let n = 100_000;
        let ids = UniformSampler::new(&g, 11).take(n).filter(|p| p.is_identity()).count();
        // 3 sigma for a fair coin.
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((ids as f64 - n as f64 / 2.0).abs() <= 3.0 * sigma);
    }

    #[test]
    fn s3_chi_square() {
        let g = catalog::symmetric(3).unwrap();
        let elems = g.elements(10).unwrap();
        let n = 60_000;
        let mut counts = [0u32; 6];
        for p in UniformSampler::new(&g, 5).take(n) {
            counts[elems.iter().position(|e| *e == p).unwrap()] += 1;
        }
        let exp = n as f64 / 6.0;
        let chi: f64 = counts.iter().map(|&c| (c as f64 - exp).powi(2) / exp).sum();
        // 5 degrees of freedom, alpha = 0.001.
        assert!(chi < 20.515, "chi^2 = {chi}");
    }

    #[test]
    fn product_replacement_stays_in_group_and_spreads() {
        let g = catalog::alternating(5).unwrap();
        let mut seen = crate::HashSet::new();
        for p in ProductReplacement::new(&g, 9).take(3000) {
            assert!(g.contains(&p));
            seen.insert(p);
        }
        assert_eq!(seen.len(), 60);
    }
}
