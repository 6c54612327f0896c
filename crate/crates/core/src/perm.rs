//! Permutations on `{0, .., n-1}`.
//!
//! Composition is left to right: `a.mul(&b)` first applies `a`, then `b`,
//! so `x^(ab) = (x^a)^b`. Text form is disjoint cycles on 1-based points,
//! e.g. `(1,2)(3,4)`; the identity prints as `()`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(alloc::format!(
                    "image list {:?} is not a bijection",
                    images
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::InvalidPermutation(alloc::format!(
                        "point {} outside degree {}",
                        a.max(b) + 1,
                        degree
                    )));
                }
                if touched[a as usize] {
                    return Err(Error::InvalidPermutation(alloc::format!(
                        "point {} repeated in cycles",
                        a + 1
                    )));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Ok(Perm { images })
    }

    /// Parses disjoint-cycle notation on 1-based points.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'\t' => i += 1,
                b'(' => {
                    i += 1;
                    let mut cycle = Vec::new();
                    loop {
                        while i < bytes.len() && bytes[i] == b' ' {
                            i += 1;
                        }
                        if i >= bytes.len() {
                            return Err(err(i, "unterminated cycle"));
                        }
                        if bytes[i] == b')' {
                            i += 1;
                            break;
                        }
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if start == i {
                            return Err(err(i, "expected a point number"));
                        }
                        let v: usize = text[start..i]
                            .parse()
                            .map_err(|_| err(start, "point number out of range"))?;
                        if v == 0 || v > degree {
                            return Err(err(start, "point outside 1..=degree"));
                        }
                        cycle.push((v - 1) as u32);
                        while i < bytes.len() && bytes[i] == b' ' {
                            i += 1;
                        }
                        if i < bytes.len() && bytes[i] == b',' {
                            i += 1;
                        }
                    }
                    if !cycle.is_empty() {
                        cycles.push(cycle);
                    }
                }
                _ => return Err(err(i, "expected '('")),
            }
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(degree, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    /// In-place `self <- self * other`.
    pub fn mul_assign(&mut self, other: &Perm) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Perm { images: out }
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Element order as a big integer (lcm of cycle lengths).
    pub fn order_big(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for c in self.cycles() {
            acc = acc.lcm(&BigUint::from(c.len()));
        }
        acc
    }

    /// Element order, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for c in self.cycles() {
            acc = acc.checked_mul(c.len() as u64 / acc.gcd(&(c.len() as u64)))?;
        }
        Some(acc)
    }

    pub fn moves(&self, point: u32) -> bool {
        self.images[point as usize] != point
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Copy acting on `offset..offset+degree` inside a permutation of
    /// `total` points, fixing everything else.
    pub fn shifted(&self, offset: usize, total: usize) -> Perm {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Perm { images }
    }

    /// Concatenation of block permutations acting on consecutive blocks.
    pub fn concat(blocks: &[&Perm]) -> Perm {
        let mut images = Vec::with_capacity(blocks.iter().map(|b| b.degree()).sum());
        let mut offset = 0u32;
        for b in blocks {
            images.extend(b.images.iter().map(|&x| x + offset));
            offset += b.degree() as u32;
        }
        Perm { images }
    }

    /// Restriction to a block `offset..offset+len` that the permutation
    /// must stabilize setwise.
    pub fn restrict(&self, offset: usize, len: usize) -> Option<Perm> {
        let mut images = Vec::with_capacity(len);
        for i in offset..offset + len {
            let x = self.images[i] as usize;
            if x < offset || x >= offset + len {
                return None;
            }
            images.push((x - offset) as u32);
        }
        Some(Perm { images })
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

impl core::str::FromStr for Perm {
    type Err = Error;

    /// `"<degree>:<cycles>"`, e.g. `"4:(1,2,3)"`.
    fn from_str(s: &str) -> Result<Self> {
        let (deg, rest) = s.split_once(':').ok_or(Error::Parse {
            pos: 0,
            msg: String::from("expected '<degree>:<cycles>'"),
        })?;
        let degree: usize = deg.trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: String::from("bad degree"),
        })?;
        if degree == 0 {
            return Err(Error::EmptyDegree);
        }
        Perm::parse(degree, rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use proptest::prelude::*;

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    #[test]
    fn parse_and_print() {
        let p = Perm::parse(4, "(1,2)(3,4)").unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert_eq!(format!("{}", p), "(1,2)(3,4)");
        assert_eq!(format!("{}", Perm::identity(3)), "()");
        assert!(Perm::parse(3, "()").unwrap().is_identity());
        assert!(Perm::parse(3, "(1,4)").is_err());
        assert!(Perm::parse(3, "(1,2)(2,3)").is_err());
        assert!(Perm::parse(3, "(1,2").is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse(3, "(1,2)").unwrap();
        let b = Perm::parse(3, "(2,3)").unwrap();
        // 1 -> 2 -> 3
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!(format!("{}", a.mul(&b)), "(1,3,2)");
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn orders() {
        let p = Perm::parse(5, "(1,2)(3,4,5)").unwrap();
        assert_eq!(p.order(), Some(6));
        assert_eq!(p.pow(6), Perm::identity(5));
        assert_eq!(p.pow(-1), p.inverse());
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_perm(9), b in arb_perm(9), c in arb_perm(9)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_identity());
            prop_assert_eq!(a.conjugate(&b), b.inverse().mul(&a).mul(&b));
        }

        #[test]
        fn text_round_trip(a in arb_perm(12)) {
            let s = format!("{}", a);
            prop_assert_eq!(Perm::parse(12, &s).unwrap(), a);
        }
    }
}
