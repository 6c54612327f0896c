//! Builtin groups with fixed generators.
//!
//! | name          | degree | order |
//! |---------------|--------|-------|
//! | `sym:n`       | n      | n!    |
//! | `alt:n`       | n      | n!/2  |
//! | `cyc:n`       | n      | n     |
//! | `dih:n`       | n      | 2n    |
//! | `sl:2,3`      | 8      | 24    |
//! | `psl:2,7`     | 7      | 168   |
//! | `agl:1,8`     | 8      | 56    |
//! | `agammal:1,8` | 8      | 168   |
//! | `agl:3,2`     | 8      | 1344  |
//!
//! `GF(8)` is `GF(2)[x]/(x^3+x+1)`, elements coded by their bit patterns;
//! the affine groups act on these 8 codes. `sl:2,3` acts on the nonzero
//! vectors of `GF(3)^2`, `psl:2,7` as `GL(3,2)` on the nonzero vectors of
//! `GF(2)^3`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Group, Perm, Result};

/// Names accepted by [`builtin`], with their argument shapes.
pub const BUILTINS: &[&str] = &[
    "sym:n", "alt:n", "cyc:n", "dih:n", "sl:2,3", "psl:2,7", "agl:1,8", "agammal:1,8", "agl:3,2",
];

fn perm(images: Vec<u32>) -> Perm {
    Perm::from_images(images).expect("catalog permutation")
}

fn cycle(n: usize, points: impl IntoIterator<Item = u32>) -> Perm {
    let pts: Vec<u32> = points.into_iter().collect();
    Perm::from_cycles(n, &[&pts]).expect("catalog cycle")
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::EmptyDegree);
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, [0, 1]));
    }
    if n >= 3 {
        gens.push(cycle(n, 0..n as u32));
    }
    Group::new(n, gens)
}

pub fn alternating(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::EmptyDegree);
    }
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle(n, [0, 1, 2]));
    }
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle(n, 0..n as u32));
        } else {
            gens.push(cycle(n, 1..n as u32));
        }
    }
    Group::new(n, gens)
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::EmptyDegree);
    }
    let gens = if n >= 2 { alloc::vec![cycle(n, 0..n as u32)] } else { Vec::new() };
    Group::new(n, gens)
}

/// Dihedral group of order `2n`: on `n` points for `n >= 3`, `V4` on 4
/// points for `n = 2`, `C2` on 2 points for `n = 1`.
pub fn dihedral(n: usize) -> Result<Group> {
    match n {
        0 => Err(Error::EmptyDegree),
        1 => cyclic(2),
        2 => Group::new(4, alloc::vec![cycle(4, [0, 1]), cycle(4, [2, 3])]),
        _ => {
            let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
            Group::new(n, alloc::vec![cycle(n, 0..n as u32), perm(refl)])
        }
    }
}

/// Multiplication in `GF(8) = GF(2)[x]/(x^3+x+1)` on bit codes.
pub fn gf8_mul(a: u32, b: u32) -> u32 {
    let mut r = 0u32;
    for i in 0..3 {
        if (b >> i) & 1 == 1 {
            r ^= a << i;
        }
    }
    for i in (3..5).rev() {
        if (r >> i) & 1 == 1 {
            r ^= 0b1011 << (i - 3);
        }
    }
    r
}

/// Linear map of `GF(2)^3` sending basis vector `e_i` (bit `i`) to `cols[i]`.
fn gf2_linear(cols: [u32; 3]) -> impl Fn(u32) -> u32 {
    move |v| (0..3).filter(|i| (v >> i) & 1 == 1).fold(0, |acc, i| acc ^ cols[i])
}

fn on_codes(n: u32, f: impl Fn(u32) -> u32) -> Perm {
    perm((0..n).map(f).collect())
}

/// `AGL(1,8)`: `x -> x + 1`, `x -> a x` with `a` a primitive element.
pub fn agl_1_8() -> Group {
    Group::new(8, alloc::vec![on_codes(8, |x| x ^ 1), on_codes(8, |x| gf8_mul(x, 2))]).expect("AGL(1,8)")
}

/// `AGammaL(1,8)`: `AGL(1,8)` and the Frobenius `x -> x^2`.
pub fn agammal_1_8() -> Group {
    Group::new(
        8,
        alloc::vec![
            on_codes(8, |x| x ^ 1),
            on_codes(8, |x| gf8_mul(x, 2)),
            on_codes(8, |x| gf8_mul(x, x)),
        ],
    )
    .expect("AGammaL(1,8)")
}

const GL32_A: [u32; 3] = [2, 4, 3];
const GL32_B: [u32; 3] = [1, 3, 4];

/// `AGL(3,2)` on the 8 vectors of `GF(2)^3`.
pub fn agl_3_2() -> Group {
    Group::new(
        8,
        alloc::vec![
            on_codes(8, |x| x ^ 1),
            on_codes(8, gf2_linear(GL32_A)),
            on_codes(8, gf2_linear(GL32_B)),
        ],
    )
    .expect("AGL(3,2)")
}

/// `PSL(2,7) = GL(3,2)` on the 7 nonzero vectors of `GF(2)^3`.
pub fn psl_2_7() -> Group {
    let lift = |cols: [u32; 3]| {
        let f = gf2_linear(cols);
        perm((1..8).map(|v| f(v) - 1).collect())
    };
    Group::new(7, alloc::vec![lift(GL32_A), lift(GL32_B)]).expect("PSL(2,7)")
}

/// `SL(2,3)` on the 8 nonzero vectors `(a, b)` of `GF(3)^2`, coded
/// `a + 3b - 1`.
pub fn sl_2_3() -> Group {
    let act = |m: [[u32; 2]; 2]| {
        perm(
            (1..9u32)
                .map(|c| {
                    let (a, b) = (c % 3, c / 3);
                    let x = (a * m[0][0] + b * m[1][0]) % 3;
                    let y = (a * m[0][1] + b * m[1][1]) % 3;
                    x + 3 * y - 1
                })
                .collect(),
        )
    };
    Group::new(8, alloc::vec![act([[1, 1], [0, 1]]), act([[0, 2], [1, 0]])]).expect("SL(2,3)")
}

/// `G x G` acting on the elements of `G` by `x -> a^-1 x b`; with `swap`
/// also `x -> x^-1`. For non-abelian simple `G` both are primitive with two
/// minimal normal subgroups.
pub fn biregular(g: &Group, swap: bool, limit: u64) -> Result<Group> {
    let elems = g.elements(limit)?;
    let mut index: crate::HashMap<Perm, u32> = crate::HashMap::new();
    for (i, e) in elems.iter().enumerate() {
        index.insert(e.clone(), i as u32);
    }
    let n = elems.len();
    let mut gens = Vec::new();
    for s in g.generators() {
        let si = s.inverse();
        gens.push(perm(elems.iter().map(|x| index[&si.mul(x)]).collect()));
        gens.push(perm(elems.iter().map(|x| index[&x.mul(s)]).collect()));
    }
    if swap {
        gens.push(perm(elems.iter().map(|x| index[&x.inverse()]).collect()));
    }
    Group::new(n, gens)
}

/// Resolves a builtin name such as `sym:4` or `agl:3,2`.
pub fn builtin(name: &str) -> Result<Group> {
    let (head, args) = name.split_once(':').unwrap_or((name, ""));
    let nums: Vec<usize> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<core::result::Result<_, _>>()
            .map_err(|_| Error::Invalid(format!("bad builtin arguments in {name:?}")))?
    };
    let one = |f: fn(usize) -> Result<Group>| match nums.as_slice() {
        [n] => f(*n),
        _ => Err(Error::Invalid(format!("{head} takes one argument"))),
    };
    match (head, nums.as_slice()) {
        ("sym", _) => one(symmetric),
        ("alt", _) => one(alternating),
        ("cyc", _) => one(cyclic),
        ("dih", _) => one(dihedral),
        ("sl", [2, 3]) => Ok(sl_2_3()),
        ("psl", [2, 7]) => Ok(psl_2_7()),
        ("agl", [1, 8]) => Ok(agl_1_8()),
        ("agammal", [1, 8]) => Ok(agammal_1_8()),
        ("agl", [3, 2]) => Ok(agl_3_2()),
        _ => Err(Error::Invalid(unknown(name))),
    }
}

fn unknown(name: &str) -> String {
    format!("unknown builtin {name:?}; known: {}", BUILTINS.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn order(name: &str) -> BigUint {
        builtin(name).unwrap().order()
    }

    #[test]
    fn orders() {
        let expect = [
            ("sym:4", 24u32),
            ("sym:1", 1),
            ("alt:5", 60),
            ("alt:6", 360),
            ("cyc:6", 6),
            ("dih:4", 8),
            ("dih:2", 4),
            ("sl:2,3", 24),
            ("psl:2,7", 168),
            ("agl:1,8", 56),
            ("agammal:1,8", 168),
            ("agl:3,2", 1344),
        ];
        for (name, n) in expect {
            assert_eq!(order(name), BigUint::from(n), "{name}");
        }
    }

    #[test]
    fn gf8_is_a_field() {
        for a in 1..8 {
            assert!((1..8).any(|b| gf8_mul(a, b) == 1));
        }
        // 2 is primitive: its powers cover the 7 nonzero elements.
        let mut x = 1;
        let mut seen = 0u32;
        for _ in 0..7 {
            seen |= 1 << x;
            x = gf8_mul(x, 2);
        }
        assert_eq!(seen, 0b1111_1110);
    }

    #[test]
    fn sl23_is_not_s4() {
        let g = sl_2_3();
        // SL(2,3) has a unique involution (-1).
        let inv = g.elements(100).unwrap().into_iter().filter(|x| x.order() == Some(2)).count();
        assert_eq!(inv, 1);
    }

    #[test]
    fn unknown_names() {
        assert!(builtin("foo:3").is_err());
        assert!(builtin("agl:2,2").is_err());
        assert!(builtin("sym:x").is_err());
    }

    #[test]
    fn biregular_a5() {
        let g = biregular(&alternating(5).unwrap(), false, 100).unwrap();
        assert_eq!(g.degree(), 60);
        assert_eq!(g.order(), BigUint::from(3600u32));
        let h = biregular(&alternating(5).unwrap(), true, 100).unwrap();
        assert_eq!(h.order(), BigUint::from(7200u32));
    }
}
