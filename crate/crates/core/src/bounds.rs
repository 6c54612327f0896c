//! Upper bounds for `m_n(G)` and `nu(G)` evaluated on a profile.
//!
//! Integer bounds are exact big integers. Real bounds use `f64`; compare
//! them with [`SLACK`].

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::invariants::{log_base, Profile};
use crate::lattice::Lattice;
use crate::simple::{default_table, SimpleTable};
use crate::small::{prime_power, SmallGroup};
use crate::{Error, Result};

/// Comparison slack for real-valued bounds.
pub const SLACK: f64 = 1e-9;

/// Membership of an index in `T` (prime powers > 1) and `S` (powers of
/// orders of non-abelian simple groups); `in_s` is `None` past the table cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexClass {
    pub n: u64,
    pub in_t: bool,
    pub in_s: Option<bool>,
}

pub fn classify_index(n: u64) -> IndexClass {
    classify_index_with(default_table(), n)
}

pub fn classify_index_with(table: &SimpleTable, n: u64) -> IndexClass {
    IndexClass {
        n,
        in_t: n >= 2 && prime_power(n).is_some(),
        in_s: table.in_s(n),
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pow(n: u64, e: u32) -> BigUint {
    big(n).pow(e)
}

/// Which case of the general bound was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundCase {
    PrimePower,
    SimplePower,
    Other,
    /// `in_s` unknown: maximum over the applicable cases.
    Conservative,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: u64,
    pub class: IndexClass,
    pub case: BoundCase,
    pub m_exact: Option<u64>,
    /// The general bound, with the sharper type-3 form when `n` is in `S`.
    pub bound_mn: BigUint,
    /// The plain `n in S` form `n^2 rks + n^2 rkm rko / 2`.
    pub bound_mn_plain: Option<BigUint>,
    /// `r n^(d+2)`, non-cyclic groups only.
    pub bound_lub_a: Option<BigUint>,
    /// `((r_b + 1) r_b / 2 + r_a n^d) n^2`.
    pub bound_lubotzky: BigUint,
    /// Per-type caps: `(n^d - 1) cr_n`, `n^2 rks_n`, `n^2 sum t_j (t_j - 1) / 2`.
    pub type_caps: [BigUint; 3],
    /// Exact per-type counts from the lattice.
    pub m_by_type: Option<[u64; 3]>,
    /// Invariant values that fed the bounds.
    pub witnesses: Vec<(String, u64)>,
}

impl BoundReport {
    /// Every present exact count is within every bound.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if let Some(m) = self.m_exact {
            let m = big(m);
            if m > self.bound_mn {
                v.push(alloc::format!("m_{} = {} > general bound {}", self.n, m, self.bound_mn));
            }
            if let Some(b) = &self.bound_lub_a {
                if m > *b {
                    v.push(alloc::format!("m_{} = {} > r n^(d+2) = {}", self.n, m, b));
                }
            }
            if m > self.bound_lubotzky {
                v.push(alloc::format!("m_{} = {} > Lubotzky {}", self.n, m, self.bound_lubotzky));
            }
        }
        if let Some(t) = self.m_by_type {
            for (i, (&c, cap)) in t.iter().zip(&self.type_caps).enumerate() {
                if big(c) > *cap {
                    v.push(alloc::format!("type {} count {} at n = {} exceeds {}", i + 1, c, self.n, cap));
                }
            }
        }
        v
    }
}

/// Generator count used in the bounds: the certified upper bound (all the
/// bounds grow with `d`).
pub fn bound_d(p: &Profile) -> u32 {
    p.d.upper
}

/// All bounds for index `n`.
pub fn bound_mn(p: &Profile, n: u64) -> BoundReport {
    let class = classify_index(n);
    let d = bound_d(p);
    let n2 = pow(n, 2);
    let nd = pow(n, d);
    let cr = Profile::get(&p.cr_ab, n);
    let rks = Profile::get(&p.rks, n);
    let rko = Profile::get(&p.rko, n);
    let rkm = Profile::get(&p.rkm, n);
    let s = Profile::get(&p.s, n);

    let t_case = (&nd - 1u32) * big(cr) + &n2 * big(rks);
    let s_plain = &n2 * big(rks) + &n2 * big(rkm * rko) / 2u32;
    let s_sharp = &n2 * big(rks) + &n2 * big(rkm * rko.saturating_sub(s)) / 2u32;
    let o_case = &n2 * big(rks);
    let (case, bound, plain) = match (class.in_t, class.in_s) {
        (true, Some(false)) => (BoundCase::PrimePower, t_case, None),
        (false, Some(true)) => (BoundCase::SimplePower, s_sharp, Some(s_plain)),
        (false, Some(false)) => (BoundCase::Other, o_case, None),
        // T and S are disjoint, so these only arise past the table cap.
        (true, _) => (BoundCase::Conservative, t_case.max(s_sharp), Some(s_plain)),
        (false, None) => (BoundCase::Conservative, s_sharp.max(o_case), Some(s_plain)),
    };

    let r = p.chief_length;
    let lub_a = (d >= 2).then(|| big(r) * pow(n, d + 2));
    let ra = p.abelian_factors_of_order(n);
    let rb = p.nonabelian_factors_for_index(n);
    let lubotzky = (big((rb + 1) * rb / 2) + big(ra) * &nd) * &n2;

    let type3: u64 = p
        .crowns
        .iter()
        .filter(|c| !c.abelian && c.order == n)
        .map(|c| c.length * (c.length.saturating_sub(1)) / 2)
        .sum();
    let type_caps = [(&nd - 1u32) * big(cr), &n2 * big(rks), &n2 * big(type3)];
    let m_by_type = p.m_by_type.as_ref().map(|m| {
        let get = |t: u8| m.get(&(n, t)).copied().unwrap_or(0);
        [get(1), get(2), get(3)]
    });
    let witnesses = alloc::vec![
        ("d".into(), d as u64),
        ("cr_ab".into(), cr),
        ("rks".into(), rks),
        ("rko".into(), rko),
        ("rkm".into(), rkm),
        ("s".into(), s),
        ("r".into(), r),
        ("r_a".into(), ra),
        ("r_b".into(), rb),
    ];
    BoundReport {
        n,
        class,
        case,
        m_exact: p.m(n),
        bound_mn: bound,
        bound_mn_plain: plain,
        bound_lub_a: lub_a,
        bound_lubotzky: lubotzky,
        type_caps,
        m_by_type,
        witnesses,
    }
}

/// Bounds for every index the profile makes relevant.
pub fn bound_table(p: &Profile) -> Vec<BoundReport> {
    p.relevant_indices().into_iter().map(|n| bound_mn(p, n)).collect()
}

/// Real-valued bounds for `nu(G)`.
#[derive(Clone, Debug)]
pub struct NuReport {
    pub eta: Option<f64>,
    pub kappa: Option<f64>,
    /// Why `eta`/`kappa` were not evaluated.
    pub eta_omitted: Option<String>,
    /// The three terms of `eta` (`-inf` when a maximum is empty).
    pub eta_terms: [f64; 3],
    pub kappa_terms: [f64; 3],
    /// `M(G) + 2.02` and `M(G) - 3.5`.
    pub script_m_plus: Option<f64>,
    pub script_m_minus: Option<f64>,
    /// `2.02 + max_n log_n` of the Lubotzky bound for `m_n`.
    pub lubotzky_m_route: Option<f64>,
    /// `2.02 + max_n log_n` of the general bound for `m_n`.
    pub general_m_route: Option<f64>,
    /// `(1 + log log|G|)/log P(G) + max(d, log log|G| / log P(G)) + 2.02`.
    pub lubotzky_nu: Option<f64>,
    /// `floor(d + 5.02 log lambda)`, or `floor(d + 5.02)` when `lambda <= 1`.
    pub dl_bound: Option<u64>,
    pub nu_exact: Option<u32>,
}

fn log2(x: f64) -> f64 {
    libm::log2(x)
}

fn max_f(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// Is the `log_n 2` term kept (both summands of the `A + B <= 2 max`
/// step nonzero)?
fn keeps_log2(class: &IndexClass, cr: u64, rks: u64, rko: u64) -> bool {
    let in_s = class.in_s != Some(false);
    (class.in_t && cr * rks != 0) || (in_s && rks * rko != 0)
}

/// `eta` and `kappa` terms: `[d + 2.02 + .., 4.02 + .., 4.02 + ..]`.
fn eta_kappa_terms(p: &Profile, d: f64) -> ([f64; 3], [f64; 3]) {
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    let mut t3 = Vec::new();
    let mut k3 = Vec::new();
    for n in p.relevant_indices() {
        let class = classify_index(n);
        let nf = n as f64;
        let cr = Profile::get(&p.cr_ab, n);
        let rks = Profile::get(&p.rks, n);
        let rko = Profile::get(&p.rko, n);
        let rkm = Profile::get(&p.rkm, n);
        let l2 = if keeps_log2(&class, cr, rks, rko) { log_base(2.0, nf) } else { 0.0 };
        if class.in_t && cr > 0 {
            t1.push(l2 + log_base(cr as f64, nf));
        }
        if rks > 0 {
            t2.push(l2 + log_base(rks as f64, nf));
        }
        if class.in_s != Some(false) && rko > 0 {
            t3.push(log_base(rkm as f64, nf) + log_base(rko as f64, nf));
            k3.push(log_base(rko as f64, nf));
        }
    }
    let a = d + 2.02 + max_f(t1);
    let b = 4.02 + max_f(t2);
    ([a, b, 4.02 + max_f(t3)], [a, b, 4.02 + d + max_f(k3)])
}

pub fn nu_report(p: &Profile, nu_exact: Option<u32>) -> NuReport {
    let d = bound_d(p);
    let df = d as f64;
    let (eta_terms, kappa_terms) = eta_kappa_terms(p, df);
    let (eta, kappa, omitted) = if d >= 2 {
        (Some(max_f(eta_terms)), Some(max_f(kappa_terms)), None)
    } else {
        (None, None, Some(alloc::format!("d(G) = {d}; eta and kappa assume a non-cyclic group")))
    };
    // The trivial group has M = -inf and nothing to sandwich.
    let script_m = p.script_m.map(|m| m.value()).filter(|m| m.is_finite());
    let table = crate::bounds::bound_table(p);
    let route = |f: &dyn Fn(&BoundReport) -> &BigUint| -> Option<f64> {
        let v = max_f(table.iter().filter_map(|r| {
            let b = f(r);
            (!b.is_zero()).then(|| log_base(b.to_f64().unwrap_or(f64::INFINITY), r.n as f64))
        }));
        (v > f64::NEG_INFINITY).then_some(2.02 + v)
    };
    let lubotzky_m_route = route(&|r| &r.bound_lubotzky);
    let general_m_route = route(&|r| &r.bound_mn);
    let order = p.order.to_f64().unwrap_or(f64::INFINITY);
    let lubotzky_nu = match p.min_index {
        Some(pm) if order >= 2.0 && pm >= 2 => {
            let ll = log2(log2(order));
            let lp = log2(pm as f64);
            Some((1.0 + ll) / lp + df.max(ll / lp) + 2.02)
        }
        _ => None,
    };
    let dl_bound = if p.undecided_complements > 0 {
        None
    } else if p.lambda > 1 {
        Some(libm::floor(df + 5.02 * log2(p.lambda as f64)) as u64)
    } else {
        Some(libm::floor(df + 5.02) as u64)
    };
    NuReport {
        eta,
        kappa,
        eta_omitted: omitted,
        eta_terms,
        kappa_terms,
        script_m_plus: script_m.map(|m| m + 2.02),
        script_m_minus: script_m.map(|m| m - 3.5),
        lubotzky_m_route,
        general_m_route,
        lubotzky_nu,
        dl_bound,
        nu_exact,
    }
}

impl NuReport {
    /// Failed inequalities among those that must hold.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if let (Some(e), Some(k)) = (self.eta, self.kappa) {
            if e > k + SLACK {
                v.push(alloc::format!("eta {e} > kappa {k}"));
            }
        }
        let Some(nu) = self.nu_exact else { return v };
        let nu = nu as f64;
        let mut check = |name: &str, ok: bool, val: f64| {
            if !ok {
                v.push(alloc::format!("nu = {nu} violates {name} ({val})"));
            }
        };
        if let Some(x) = self.eta {
            check("nu <= eta", nu <= x + SLACK, x);
        }
        if let Some(x) = self.script_m_plus {
            check("nu <= M + 2.02", nu <= x + SLACK, x);
        }
        if let Some(x) = self.script_m_minus {
            check("M - 3.5 <= nu", x <= nu + SLACK, x);
        }
        if let Some(x) = self.lubotzky_nu {
            check("Lubotzky nu bound", nu <= x + SLACK, x);
        }
        if let Some(x) = self.dl_bound {
            check("floor(d + 5.02 log lambda)", nu <= x as f64, x as f64);
        }
        v
    }
}

/// Core-free maximal subgroup counts of each primitive quotient, against
/// `n^2`: `(|core|, n, count, pass)`.
pub fn check_b2(g: &SmallGroup, lattice: &Lattice) -> Vec<(usize, u64, u64, bool)> {
    let mut by_core: alloc::collections::BTreeMap<(Vec<usize>, u64), u64> = Default::default();
    for (_, index, core, _) in lattice.maximal_subgroups(g) {
        *by_core.entry((core.iter().collect(), index as u64)).or_insert(0) += 1;
    }
    by_core
        .into_iter()
        .map(|((core, n), c)| (core.len(), n, c, c <= n * n))
        .collect()
}

/// Cap on maximal subgroups whose primitive quotient lies in one abelian
/// crown of order `n`: `(n^d - n h1)/(q - 1)` when the module is
/// non-trivial, `(n^d - 1)/(n - 1)` when `G` acts trivially.
pub fn abelian_crown_bound(n: u64, d: u32, q: u64, h1: u64, trivial_action: bool) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::Invalid(alloc::format!("q = {q}: an endomorphism field has at least 2 elements")));
    }
    let nd = pow(n, d);
    if trivial_action {
        return Ok((nd - 1u32) / big(n - 1));
    }
    let sub = big(n) * big(h1);
    if sub > nd {
        return Ok(BigUint::zero());
    }
    Ok((nd - sub) / big(q - 1))
}
