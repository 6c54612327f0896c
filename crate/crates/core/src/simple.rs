//! Orders of the non-abelian finite simple groups below a cap.
//!
//! Built from the order formulas of the alternating, classical and
//! exceptional families plus the sporadic groups. Isomorphic groups from
//! different families are merged; the only non-isomorphic simple groups of
//! equal order below `10^7` are `A8 = L4(2)` and `L3(4)` (both 20160).

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::format;

pub const DEFAULT_SIMPLE_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGroup {
    pub name: String,
    pub order: u64,
}

/// Sorted table of simple group orders (with names) at most `cap`.
#[derive(Clone, Debug)]
pub struct SimpleTable {
    cap: u64,
    groups: Vec<SimpleGroup>,
}

const SPORADIC: &[(&str, u64)] = &[
    ("M11", 7920),
    ("M12", 95040),
    ("J1", 175560),
    ("M22", 443520),
    ("J2", 604800),
    ("M23", 10200960),
    ("HS", 44352000),
    ("J3", 50232960),
    ("M24", 244823040),
    ("McL", 898128000),
];

/// Names that denote the same group; the first spelling is kept.
const SAME_GROUP: &[(&str, &str)] = &[
    ("A5", "L2(4)"),
    ("A5", "L2(5)"),
    ("A6", "L2(9)"),
    ("L2(7)", "L3(2)"),
    ("A8", "L4(2)"),
    ("U4(2)", "S4(3)"),
];

fn mul_cap(a: u128, b: u128, cap: u128) -> Option<u128> {
    let r = a.checked_mul(b)?;
    (r <= cap.saturating_mul(64)).then_some(r)
}

fn pow_u128(q: u128, e: u32) -> Option<u128> {
    q.checked_pow(e)
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime powers `q <= max` with their characteristic.
fn prime_powers(max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in 2..=max {
        if !is_prime(p) {
            continue;
        }
        let mut q = p;
        while q <= max {
            out.push((q, p));
            q *= p;
        }
    }
    out.sort();
    out
}

/// `prod_{i=from}^{to} (q^i - sign^i)`, `sign` in {1, -1}.
fn cyclotomic_product(q: u128, from: u32, to: u32, step: u32, sign: i32, cap: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    let mut i = from;
    while i <= to {
        let qi = pow_u128(q, i)?;
        let term = if sign < 0 && i % 2 == 1 { qi + 1 } else { qi - 1 };
        acc = mul_cap(acc, term, cap)?;
        i += step;
    }
    Some(acc)
}

impl SimpleTable {
    pub fn new(cap: u64) -> SimpleTable {
        let c = cap as u128;
        let mut raw: Vec<(String, u128)> = Vec::new();
        let mut push = |name: String, order: Option<u128>| {
            if let Some(o) = order {
                if o <= c {
                    raw.push((name, o));
                }
            }
        };
        // Alternating groups.
        let mut f: u128 = 60;
        for n in 5u32.. {
            if f > c {
                break;
            }
            push(format!("A{n}"), Some(f));
            f *= (n + 1) as u128;
        }
        let qs = prime_powers(4096);
        for &(q, p) in &qs {
            let qq = q as u128;
            // L_n(q).
            for n in 2u32..=12 {
                if n == 2 && q <= 3 {
                    continue;
                }
                let o = pow_u128(qq, n * (n - 1) / 2)
                    .and_then(|a| cyclotomic_product(qq, 2, n, 1, 1, c).and_then(|b| mul_cap(a, b, c)))
                    .map(|o| o / gcd(n as u128, qq - 1));
                if o.is_none_or(|o| o > c) && n > 2 {
                    break;
                }
                push(format!("L{n}({q})"), o);
            }
            // U_n(q), n >= 3.
            for n in 3u32..=12 {
                if n == 3 && q == 2 {
                    continue;
                }
                let o = pow_u128(qq, n * (n - 1) / 2)
                    .and_then(|a| cyclotomic_product(qq, 2, n, 1, -1, c).and_then(|b| mul_cap(a, b, c)))
                    .map(|o| o / gcd(n as u128, qq + 1));
                if o.is_none_or(|o| o > c) {
                    break;
                }
                push(format!("U{n}({q})"), o);
            }
            // S_{2m}(q), m >= 2; O_{2m+1}(q) for odd q, m >= 3.
            for m in 2u32..=8 {
                if m == 2 && q == 2 {
                    continue;
                }
                let o = pow_u128(qq, m * m)
                    .and_then(|a| cyclotomic_product(qq, 2, 2 * m, 2, 1, c).and_then(|b| mul_cap(a, b, c)))
                    .map(|o| o / gcd(2, qq - 1));
                if o.is_none_or(|o| o > c) {
                    break;
                }
                push(format!("S{}({q})", 2 * m), o);
                if m >= 3 && p != 2 {
                    push(format!("O{}({q})", 2 * m + 1), o);
                }
            }
            // O+_{2m}(q), O-_{2m}(q), m >= 4.
            for m in 4u32..=8 {
                let base = pow_u128(qq, m * (m - 1))
                    .and_then(|a| cyclotomic_product(qq, 2, 2 * m - 2, 2, 1, c).and_then(|b| mul_cap(a, b, c)));
                let plus = base
                    .and_then(|b| pow_u128(qq, m).and_then(|qm| mul_cap(b, qm - 1, c)))
                    .map(|o| o / gcd(4, pow_u128(qq, m).unwrap() - 1));
                let minus = base
                    .and_then(|b| pow_u128(qq, m).and_then(|qm| mul_cap(b, qm + 1, c)))
                    .map(|o| o / gcd(4, pow_u128(qq, m).unwrap() + 1));
                if plus.is_none_or(|o| o > c) && minus.is_none_or(|o| o > c) {
                    break;
                }
                push(format!("O{}+({q})", 2 * m), plus);
                push(format!("O{}-({q})", 2 * m), minus);
            }
            // G2(q), q >= 3.
            if q >= 3 {
                let o = pow_u128(qq, 6).and_then(|a| {
                    mul_cap(a, pow_u128(qq, 6)? - 1, c).and_then(|b| mul_cap(b, qq * qq - 1, c))
                });
                push(format!("G2({q})"), o);
            }
            // Suzuki and Ree groups.
            if p == 2 && q >= 8 && q.trailing_zeros() % 2 == 1 {
                let o = mul_cap(qq * qq, qq * qq + 1, c).and_then(|a| mul_cap(a, qq - 1, c));
                push(format!("Sz({q})"), o);
            }
            if p == 3 && q >= 27 && q.ilog(3) % 2 == 1 {
                let o = pow_u128(qq, 3)
                    .and_then(|a| mul_cap(a, pow_u128(qq, 3)? + 1, c))
                    .and_then(|a| mul_cap(a, qq - 1, c));
                push(format!("R({q})"), o);
            }
            // 3D4(q), F4(q), 2F4(2)', E6... exceed any desk cap for q >= 2
            // except 2F4(2)', added below.
        }
        push("2F4(2)'".to_string(), Some(17971200));
        push("3D4(2)".to_string(), Some(211341312));
        for &(name, o) in SPORADIC {
            push(name.to_string(), Some(o as u128));
        }
        raw.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        let mut groups: Vec<SimpleGroup> = Vec::new();
        for (name, order) in raw {
            let order = order as u64;
            let dup = groups.iter().rev().take_while(|g| g.order == order).any(|g| {
                g.name == name
                    || SAME_GROUP
                        .iter()
                        .any(|&(a, b)| (a == g.name && b == name) || (b == g.name && a == name))
            });
            if !dup {
                groups.push(SimpleGroup { name, order });
            }
        }
        // Keep the preferred spelling of merged names.
        for g in groups.iter_mut() {
            if let Some(&(a, _)) = SAME_GROUP.iter().find(|&&(_, b)| b == g.name) {
                g.name = a.to_string();
            }
        }
        SimpleTable { cap, groups }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn groups(&self) -> &[SimpleGroup] {
        &self.groups
    }

    /// Simple groups of exactly this order.
    pub fn of_order(&self, n: u64) -> Vec<&SimpleGroup> {
        let start = self.groups.partition_point(|g| g.order < n);
        self.groups[start..].iter().take_while(|g| g.order == n).collect()
    }

    /// All ways of writing `n = |S|^c` with `S` in the table.
    pub fn power_decompositions(&self, n: u64) -> Vec<(&SimpleGroup, u32)> {
        let mut out = Vec::new();
        for g in &self.groups {
            if g.order > n {
                break;
            }
            let mut c = 1u32;
            let mut x = g.order;
            while x < n {
                match x.checked_mul(g.order) {
                    Some(y) => x = y,
                    None => break,
                }
                c += 1;
            }
            if x == n {
                out.push((g, c));
            }
        }
        out
    }

    /// Is `n` a power of the order of a non-abelian simple group? `None`
    /// when the answer depends on orders beyond the cap.
    pub fn in_s(&self, n: u64) -> Option<bool> {
        if !self.power_decompositions(n).is_empty() {
            return Some(true);
        }
        if n <= self.cap {
            Some(false)
        } else {
            None
        }
    }
}

/// Default table, built once.
pub fn default_table() -> &'static SimpleTable {
    static TABLE: once_cell::race::OnceBox<SimpleTable> = once_cell::race::OnceBox::new();
    TABLE.get_or_init(|| alloc::boxed::Box::new(SimpleTable::new(DEFAULT_SIMPLE_CAP)))
}

/// Order collisions between non-isomorphic entries.
pub fn collisions(t: &SimpleTable) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let g = t.groups();
    let mut i = 0;
    while i < g.len() {
        let mut j = i + 1;
        while j < g.len() && g[j].order == g[i].order {
            j += 1;
        }
        if j - i > 1 {
            out.push(g[i..j].iter().map(|x| x.name.clone()).collect());
        }
        i = j;
    }
    out
}

/// Name list used in diagnostics.
pub fn names_of_order(t: &SimpleTable, n: u64) -> Vec<String> {
    t.of_order(n).iter().map(|g| g.name.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_orders() {
        let t = default_table();
        let first: Vec<u64> = t.groups().iter().take(8).map(|g| g.order).collect();
        assert_eq!(first, vec![60, 168, 360, 504, 660, 1092, 2448, 2520]);
        assert_eq!(names_of_order(t, 60), vec!["A5".to_string()]);
        assert_eq!(names_of_order(t, 168), vec!["L2(7)".to_string()]);
        assert_eq!(names_of_order(t, 6048), vec!["U3(3)".to_string()]);
        assert_eq!(names_of_order(t, 25920), vec!["U4(2)".to_string()]);
    }

    #[test]
    fn only_collision_is_20160() {
        let t = default_table();
        let c = collisions(t);
        assert_eq!(c.len(), 1);
        let mut names = c[0].clone();
        names.sort();
        assert_eq!(names, vec!["A8".to_string(), "L3(4)".to_string()]);
    }

    #[test]
    fn counts_below_small_caps() {
        // 56 non-abelian simple groups below 10^6, 31 below 10^5 (ATLAS order lists).
        assert_eq!(SimpleTable::new(999_999).groups().len(), 56);
        assert_eq!(SimpleTable::new(99_999).groups().len(), 31);
    }

    #[test]
    fn powers() {
        let t = default_table();
        assert_eq!(t.in_s(60), Some(true));
        assert_eq!(t.in_s(3600), Some(true));
        assert_eq!(t.in_s(8), Some(false));
        assert_eq!(t.in_s(61), Some(false));
        assert_eq!(t.power_decompositions(28224)[0].1, 2);
        for g in t.groups() {
            assert!(crate::small::prime_power(g.order).is_none());
        }
    }
}
