//! Generation probabilities: Eulerian counts `phi_d`, exact and Monte-Carlo
//! `P_G(k)`, and `nu(G)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::bitset::BitSet;
use crate::group::StabChain;
use crate::lattice::Lattice;
use crate::small::SmallGroup;
use crate::{Error, Group, HashMap, Result};

/// 50 digits of `1/e`; the true value lies in `[E_INV_DIGITS, E_INV_DIGITS + 1] * 10^-50`.
const E_INV_DIGITS: &str = "36787944117144232159552377016146086744581113103176";

/// Rational enclosure `(lo, hi)` of `1/e` with `hi - lo = 10^-50`.
pub fn e_inv_enclosure() -> (BigRational, BigRational) {
    let num: BigInt = E_INV_DIGITS.parse().expect("digits");
    let den = BigInt::from(10u32).pow(50);
    let lo = BigRational::new(num.clone(), den.clone());
    let hi = BigRational::new(num + 1, den);
    (lo, hi)
}

/// `P >= 1/e`, or `None` when `P` falls inside the enclosure.
pub fn at_least_e_inv(p: &BigRational) -> Option<bool> {
    let (lo, hi) = e_inv_enclosure();
    if *p >= hi {
        Some(true)
    } else if *p < lo {
        Some(false)
    } else {
        None
    }
}

/// `phi_d(G) = sum_H mu(H, G) |H|^d` over all subgroups.
pub fn phi_moebius(l: &Lattice, d: u32) -> BigInt {
    let mu = l.moebius();
    let mut s = BigInt::zero();
    for (c, &m) in l.classes().iter().zip(mu) {
        if m != 0 {
            s += BigInt::from(m) * BigInt::from(c.class_size) * BigInt::from(c.order).pow(d);
        }
    }
    s
}

/// Direct count of generating tuples: distributes tuples over the
/// subgroups they generate, one element at a time. `<H, x>` depends only on
/// the coset `Hx`, so each subgroup reached costs `|G : H|` closures.
/// Returns `phi_1, .., phi_dmax`. Refuses when more than `budget` closures
/// would be needed.
pub fn phi_direct(g: &SmallGroup, dmax: u32, budget: u64) -> Result<Vec<BigUint>> {
    let n = g.order();
    let mut steps: HashMap<BitSet, Vec<(BitSet, u64)>> = HashMap::new();
    let mut dist: HashMap<BitSet, BigUint> = HashMap::new();
    dist.insert(g.trivial(), BigUint::one());
    let mut spent = 0u64;
    let mut out = Vec::new();
    for _ in 0..dmax {
        let mut next: HashMap<BitSet, BigUint> = HashMap::new();
        let mut keys: Vec<&BitSet> = dist.keys().collect();
        keys.sort_by_key(|h| h.iter().collect::<Vec<_>>());
        let mut pending = Vec::new();
        for h in keys {
            if !steps.contains_key(h) {
                pending.push(h.clone());
            }
        }
        for h in pending {
            let idx = (n / h.count()) as u64;
            spent += idx;
            if spent > budget {
                return Err(Error::limit(
                    "generating-tuple count",
                    alloc::format!("{spent} closures"),
                    alloc::format!("{budget}"),
                ));
            }
            steps.insert(h.clone(), extensions(g, &h));
        }
        for (h, c) in &dist {
            for (k, mult) in &steps[h] {
                *next.entry(k.clone()).or_insert_with(BigUint::zero) += c * BigUint::from(*mult);
            }
        }
        let full = g.all();
        out.push(next.get(&full).cloned().unwrap_or_default());
        dist = next;
    }
    Ok(out)
}

/// `(<H, x>, number of x giving it)` over all `x` in `G`.
fn extensions(g: &SmallGroup, h: &BitSet) -> Vec<(BitSet, u64)> {
    let n = g.order();
    let hs = h.count() as u64;
    let mut covered = BitSet::new(n);
    let mut acc: HashMap<BitSet, u64> = HashMap::new();
    let helems: Vec<usize> = h.iter().collect();
    for x in 0..n {
        if covered.contains(x) {
            continue;
        }
        for &y in &helems {
            covered.insert(g.mul(y, x));
        }
        let k = g.join(h, &[x]);
        *acc.entry(k).or_insert(0) += hs;
    }
    let mut v: Vec<(BitSet, u64)> = acc.into_iter().collect();
    v.sort_by_key(|(k, _)| k.iter().collect::<Vec<_>>());
    v
}

/// Plain enumeration of all `d`-tuples (test oracle scale only).
pub fn phi_brute(g: &SmallGroup, d: u32) -> BigUint {
    let n = g.order();
    let mut tuple = vec![0usize; d as usize];
    let mut count = BigUint::zero();
    if d == 0 {
        return if n == 1 { BigUint::one() } else { BigUint::zero() };
    }
    loop {
        if g.generates(&tuple) {
            count += 1u32;
        }
        let mut pos = 0;
        loop {
            if pos == tuple.len() {
                return count;
            }
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// Route used for exact counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiRoute {
    Moebius,
    Direct,
}

/// Source of exact `phi_d` values for one group.
pub struct PhiOracle {
    order: BigUint,
    route: PhiRoute,
    lattice: Option<Lattice>,
    table: Option<SmallGroup>,
    direct: Vec<BigUint>,
    budget: u64,
}

impl PhiOracle {
    /// Prefers the Möbius route when the lattice fits, else the direct
    /// count on the element table.
    pub fn new(g: &Group, lattice_limit: usize, table_limit: u64, budget: u64) -> Result<PhiOracle> {
        let order = g.order();
        let table = SmallGroup::from_group(g, table_limit)?;
        Ok(Self::from_table(order, table, lattice_limit, budget))
    }

    pub fn from_table(order: BigUint, table: SmallGroup, lattice_limit: usize, budget: u64) -> PhiOracle {
        match Lattice::new(&table, lattice_limit) {
            Ok(l) => PhiOracle {
                order,
                route: PhiRoute::Moebius,
                lattice: Some(l),
                table: Some(table),
                direct: Vec::new(),
                budget,
            },
            Err(_) => PhiOracle {
                order,
                route: PhiRoute::Direct,
                lattice: None,
                table: Some(table),
                direct: Vec::new(),
                budget,
            },
        }
    }

    pub fn with_lattice(table: SmallGroup, lattice: Lattice) -> PhiOracle {
        PhiOracle {
            order: BigUint::from(table.order()),
            route: PhiRoute::Moebius,
            lattice: Some(lattice),
            table: Some(table),
            direct: Vec::new(),
            budget: 0,
        }
    }

    pub fn route(&self) -> PhiRoute {
        self.route
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        self.lattice.as_ref()
    }

    pub fn phi(&mut self, d: u32) -> Result<BigUint> {
        if d == 0 {
            return Ok(if self.order.is_one() { BigUint::one() } else { BigUint::zero() });
        }
        if let Some(l) = &self.lattice {
            return phi_moebius(l, d)
                .to_biguint()
                .ok_or_else(|| Error::Invariant("negative Möbius sum".into()));
        }
        if self.direct.len() < d as usize {
            let t = self.table.as_ref().expect("table");
            self.direct = phi_direct(t, d.max(4), self.budget)?;
        }
        Ok(self.direct[d as usize - 1].clone())
    }

    /// `phi_k / |G|^k`.
    pub fn gen_prob(&mut self, k: u32) -> Result<BigRational> {
        let phi = self.phi(k)?;
        Ok(BigRational::new(phi.into(), BigInt::from(self.order.clone()).pow(k)))
    }

    /// Least positive `k` with `P_G(k) >= 1/e`.
    pub fn nu(&mut self) -> Result<u32> {
        for k in 1..=64 {
            let p = self.gen_prob(k)?;
            match at_least_e_inv(&p) {
                Some(true) => return Ok(k),
                Some(false) => {}
                None => {
                    return Err(Error::Invariant(alloc::format!(
                        "P_G({k}) lies inside the 1/e enclosure"
                    )))
                }
            }
        }
        Err(Error::Invariant("nu(G) above 64".into()))
    }
}

/// Exact or estimated generation probability.
#[derive(Clone, Debug)]
pub struct GenProbResult {
    pub k: u32,
    pub exact: Option<BigRational>,
    pub estimate: Option<f64>,
    pub trials: u64,
    pub successes: u64,
    pub ci_halfwidth: f64,
}

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.5758293035489004;

impl GenProbResult {
    pub fn exact(k: u32, p: BigRational) -> Self {
        GenProbResult {
            k,
            estimate: p.to_f64(),
            exact: Some(p),
            trials: 0,
            successes: 0,
            ci_halfwidth: 0.0,
        }
    }

    pub fn from_counts(k: u32, successes: u64, trials: u64) -> Self {
        let p = successes as f64 / trials.max(1) as f64;
        let hw = Z99 * libm::sqrt(p * (1.0 - p) / trials.max(1) as f64);
        GenProbResult {
            k,
            exact: None,
            estimate: Some(p),
            trials,
            successes,
            ci_halfwidth: hw,
        }
    }

    pub fn covers(&self, x: f64) -> bool {
        match self.estimate {
            Some(p) => (p - x).abs() <= self.ci_halfwidth,
            None => false,
        }
    }
}

/// Exact `P_G(k)` through a [`PhiOracle`].
pub fn gen_prob(oracle: &mut PhiOracle, k: u32) -> Result<GenProbResult> {
    Ok(GenProbResult::exact(k, oracle.gen_prob(k)?))
}

/// Generation tester for Monte-Carlo runs.
pub enum Sampler<'a> {
    /// Element table: uniform ranks, closure in the table.
    Table(&'a SmallGroup),
    /// Stabilizer chain: uniform transversal picks, Schreier–Sims on the
    /// sampled elements.
    Chain(&'a Group),
}

impl Sampler<'_> {
    fn trial<R: Rng>(&self, k: u32, rng: &mut R, scratch: &mut Vec<usize>) -> bool {
        match self {
            Sampler::Table(t) => {
                scratch.clear();
                scratch.extend((0..k).map(|_| rng.random_range(0..t.order())));
                t.generates(scratch)
            }
            Sampler::Chain(g) => {
                let gens: Vec<_> = (0..k).map(|_| g.random_element(rng)).collect();
                let target = g.order();
                StabChain::build(g.degree(), &gens, &[]).order() == target
            }
        }
    }
}

/// Monte-Carlo `P_G(k)` from `trials` independent uniform `k`-tuples.
pub fn gen_prob_mc(sampler: &Sampler<'_>, k: u32, trials: u64, seed: u64) -> GenProbResult {
    let mut rng = crate::random::rng(seed);
    let mut scratch = Vec::new();
    let successes = (0..trials).filter(|_| sampler.trial(k, &mut rng, &mut scratch)).count() as u64;
    GenProbResult::from_counts(k, successes, trials)
}

/// Monte-Carlo `nu`: `low == high` when every interval was decisive,
/// otherwise the two candidates around an interval containing `1/e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuEstimate {
    pub low: u32,
    pub high: u32,
}

impl NuEstimate {
    pub fn is_decided(&self) -> bool {
        self.low == self.high
    }
}

pub fn nu_mc(sampler: &Sampler<'_>, trials: u64, seed: u64, max_k: u32) -> Result<NuEstimate> {
    let e_inv = libm::exp(-1.0);
    let mut low: Option<u32> = None;
    for k in 1..=max_k {
        let r = gen_prob_mc(sampler, k, trials, seed.wrapping_add(k as u64));
        let p = r.estimate.unwrap_or(0.0);
        let (lo, hi) = (p - r.ci_halfwidth, p + r.ci_halfwidth);
        if hi >= e_inv && low.is_none() {
            low = Some(k);
        }
        if lo >= e_inv || (r.successes == trials && trials > 0) {
            return Ok(NuEstimate { low: low.unwrap_or(k), high: k });
        }
    }
    Err(Error::limit("nu estimate", alloc::format!("k > {max_k}"), alloc::format!("{max_k}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn table(g: &Group) -> SmallGroup {
        SmallGroup::from_group(g, 5000).unwrap()
    }

    #[test]
    fn enclosure_brackets_float() {
        let (lo, hi) = e_inv_enclosure();
        let x = libm::exp(-1.0);
        assert!(lo.to_f64().unwrap() <= x + 1e-16 && x - 1e-16 <= hi.to_f64().unwrap());
    }

    #[test]
    fn a5_pairs() {
        let g = catalog::alternating(5).unwrap();
        let t = table(&g);
        assert_eq!(phi_brute(&t, 2), BigUint::from(2280u32));
        let l = Lattice::new(&t, 2000).unwrap();
        assert_eq!(phi_moebius(&l, 2), BigInt::from(2280));
        assert_eq!(phi_direct(&t, 2, 1 << 20).unwrap()[1], BigUint::from(2280u32));
        let mut o = PhiOracle::new(&g, 2000, 5000, 1 << 20).unwrap();
        assert_eq!(o.gen_prob(2).unwrap(), BigRational::new(19.into(), 30.into()));
        assert_eq!(o.gen_prob(0).unwrap(), BigRational::zero());
        assert_eq!(o.nu().unwrap(), 2);
    }

    #[test]
    fn small_cases() {
        let c2 = catalog::cyclic(2).unwrap();
        let mut o = PhiOracle::new(&c2, 2000, 5000, 1 << 20).unwrap();
        assert_eq!(o.phi(1).unwrap(), BigUint::one());
        assert_eq!(o.nu().unwrap(), 1);
        let g1 = catalog::agl_1_8();
        assert_eq!(phi_brute(&table(&g1), 2), BigUint::from(2688u32));
        let mut o = PhiOracle::new(&Group::trivial(1), 2000, 5000, 1).unwrap();
        assert_eq!(o.nu().unwrap(), 1);
    }

    #[test]
    fn routes_agree() {
        for g in [catalog::symmetric(4).unwrap(), catalog::sl_2_3(), catalog::dihedral(6).unwrap()] {
            let t = table(&g);
            let l = Lattice::new(&t, 2000).unwrap();
            let direct = phi_direct(&t, 3, 1 << 20).unwrap();
            for d in 1..=3u32 {
                let m = phi_moebius(&l, d).to_biguint().unwrap();
                assert_eq!(m, direct[d as usize - 1]);
                if d <= 2 {
                    assert_eq!(m, phi_brute(&t, d));
                }
            }
        }
    }

    #[test]
    fn direct_route_refuses_over_budget() {
        let t = table(&catalog::symmetric(5).unwrap());
        let e = phi_direct(&t, 2, 10).unwrap_err();
        assert!(e.is_limit());
    }

    #[test]
    fn monte_carlo_a5() {
        let g = catalog::alternating(5).unwrap();
        let t = table(&g);
        let r = gen_prob_mc(&Sampler::Table(&t), 2, 20_000, 1);
        assert!(r.covers(19.0 / 30.0));
        let r = gen_prob_mc(&Sampler::Chain(&g), 2, 3_000, 2);
        assert!(r.covers(19.0 / 30.0));
        let nu = nu_mc(&Sampler::Table(&t), 10_000, 3, 8).unwrap();
        assert_eq!(nu, NuEstimate { low: 2, high: 2 });
    }
}
