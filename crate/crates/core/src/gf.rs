//! Linear algebra and polynomials over prime fields GF(p).
//!
//! Vectors are rows; a matrix acts on the right (`v * M`), matching the
//! right action of permutations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[inline]
fn add(p: u32, a: u32, b: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
fn sub(p: u32, a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
fn mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn inv_mod(p: u32, a: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    // Fermat: a^(p-2)
    pow_mod(p, a, p - 2)
}

pub fn pow_mod(p: u32, a: u32, mut e: u32) -> u32 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(p, acc, base);
        }
        base = mul(p, base, base);
        e >>= 1;
    }
    acc
}

/// Dense matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Matrix {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Matrix {
        let mut m = Matrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().map(|&x| x % p));
        }
        Matrix {
            p,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p;
        let mut out = Matrix::zero(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = add(p, out.data[idx], mul(p, a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let p = self.p;
        Matrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| add(p, a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let p = self.p;
        Matrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| mul(p, a, c % p)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// `v * self`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = self.row(i);
            for j in 0..self.cols {
                out[j] = add(p, out[j], mul(p, a, row[j]));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        echelon(self.clone()).pivots.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let p = self.p;
        let mut aug = Matrix::zero(p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % p;
        }
        let e = echelon(aug);
        if e.pivots.len() < n || e.pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = Matrix::zero(p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = e.m.get(i, n + j);
            }
        }
        Some(out)
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Basis of `{v : v * self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<u32>> {
        self.transpose().right_nullspace()
    }

    /// Basis of `{x : self * x^T = 0}` (solutions of the row system).
    pub fn right_nullspace(&self) -> Vec<Vec<u32>> {
        let e = echelon(self.clone());
        let n = self.cols;
        let p = self.p;
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; n];
            for (r, &c) in e.pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![0u32; n];
            x[free] = 1 % p;
            for (r, &c) in e.pivots.iter().enumerate() {
                x[c] = sub(p, 0, e.m.get(r, free));
            }
            basis.push(x);
        }
        basis
    }

    /// Evaluates the polynomial `f` (coefficients low to high) at `self`.
    pub fn eval_poly(&self, f: &Poly) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zero(self.p, n, n);
        for &c in f.coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = add(self.p, acc.data[idx], c);
            }
        }
        acc
    }

    /// Characteristic polynomial `det(xI - A)`, via Hessenberg reduction.
    pub fn charpoly(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let p = self.p;
        let mut h = self.clone();
        // Reduce to upper Hessenberg form by similarity transforms.
        for m in 1..n.saturating_sub(1) {
            let piv = (m..n).find(|&i| h.get(i, m - 1) != 0);
            let Some(i) = piv else { continue };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for j in 0..n {
                    h.data.swap(j * n + i, j * n + m);
                }
            }
            let inv = inv_mod(p, h.get(m, m - 1));
            for i in m + 1..n {
                let u = mul(p, h.get(i, m - 1), inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = sub(p, h.get(i, j), mul(p, u, h.get(m, j)));
                    h.data[i * n + j] = v;
                }
                for j in 0..n {
                    let v = add(p, h.get(j, m), mul(p, u, h.get(j, i)));
                    h.data[j * n + m] = v;
                }
            }
        }
        // Recurrence on leading principal submatrices.
        let mut polys: Vec<Poly> = vec![Poly::one(p)];
        for m in 1..=n {
            let x_minus = Poly::from_coeffs(p, vec![sub(p, 0, h.get(m - 1, m - 1)), 1]);
            let mut pm = x_minus.mul(&polys[m - 1]);
            let mut t = 1u32;
            for i in 1..m {
                t = mul(p, t, h.get(m - i, m - i - 1));
                let c = mul(p, t, h.get(m - i - 1, m - 1));
                pm = pm.sub(&polys[m - i - 1].scale(c));
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix over GF({}) {}x{}", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

struct Echelon {
    m: Matrix,
    pivots: Vec<usize>,
}

/// Reduced row echelon form.
fn echelon(mut m: Matrix) -> Echelon {
    let p = m.p;
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(p, m.get(r, c));
        for j in 0..cols {
            m.data[r * cols + j] = mul(p, m.data[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c);
            if f == 0 {
                continue;
            }
            for j in 0..cols {
                let v = sub(p, m.data[i * cols + j], mul(p, f, m.data[r * cols + j]));
                m.data[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { m, pivots }
}

/// Incrementally maintained row space in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: u32, dim: usize) -> Subspace {
        Subspace {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Pivot columns of the echelon basis, ascending.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f == 0 {
                continue;
            }
            for j in 0..self.dim {
                v[j] = sub(p, v[j], mul(p, f, row[j]));
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns true if the rank grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        let mut w: Vec<u32> = v.iter().map(|&x| x % p).collect();
        self.reduce(&mut w);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(p, w[c]);
        for x in w.iter_mut() {
            *x = mul(p, *x, inv);
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                for j in 0..self.dim {
                    row[j] = sub(p, row[j], mul(p, f, w[j]));
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, w);
        true
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the space.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c] % self.p).collect();
        let mut w = v.to_vec();
        self.reduce(&mut w);
        if w.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }
}

/// Smallest subspace containing `seeds` and invariant under `gens`.
pub fn spin(p: u32, dim: usize, seeds: &[Vec<u32>], gens: &[Matrix]) -> Subspace {
    let mut space = Subspace::new(p, dim);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for s in seeds {
        if space.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = g.apply(&v);
            if space.insert(&w) {
                queue.push(w);
            }
            if space.rank() == dim {
                return space;
            }
        }
    }
    space
}

/// Basis of the space of matrices `X` (a x b) with `A_i X = X B_i` for all i.
pub fn intertwiners(a: &[Matrix], b: &[Matrix]) -> Vec<Matrix> {
    assert_eq!(a.len(), b.len());
    let p = a.first().or(b.first()).map_or(2, |m| m.p);
    let da = a.first().map_or(0, |m| m.rows);
    let db = b.first().map_or(0, |m| m.rows);
    if a.is_empty() {
        // No constraints: every matrix intertwines.
        return Vec::new();
    }
    let unknowns = da * db;
    let mut system = Matrix::zero(p, a.len() * unknowns, unknowns);
    let mut row = 0;
    for (ai, bi) in a.iter().zip(b) {
        // (A X - X B)[i][j] = sum_k A[i][k] X[k][j] - sum_k X[i][k] B[k][j]
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    let c = ai.get(i, k);
                    if c != 0 {
                        let u = k * db + j;
                        let idx = row * unknowns + u;
                        system.data[idx] = add(p, system.data[idx], c);
                    }
                }
                for k in 0..db {
                    let c = bi.get(k, j);
                    if c != 0 {
                        let u = i * db + k;
                        let idx = row * unknowns + u;
                        system.data[idx] = sub(p, system.data[idx], c);
                    }
                }
                row += 1;
            }
        }
    }
    system
        .right_nullspace()
        .into_iter()
        .map(|x| {
            let mut m = Matrix::zero(p, da, db);
            m.data = x;
            m
        })
        .collect()
}

/// Polynomial over GF(p), coefficients from degree 0 upward, normalized so
/// the leading coefficient is nonzero (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn from_coeffs(p: u32, mut coeffs: Vec<u32>) -> Poly {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn zero(p: u32) -> Poly {
        Poly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Poly {
        Poly::from_coeffs(p, vec![1])
    }

    pub fn x(p: u32) -> Poly {
        Poly::from_coeffs(p, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> u32 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.p, self.lead()))
    }

    pub fn scale(&self, c: u32) -> Poly {
        Poly::from_coeffs(self.p, self.coeffs.iter().map(|&a| mul(self.p, a, c)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                add(
                    self.p,
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                )
            })
            .collect();
        Poly::from_coeffs(self.p, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                sub(
                    self.p,
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                )
            })
            .collect();
        Poly::from_coeffs(self.p, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.p);
        }
        let mut c = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = add(self.p, c[i + j], mul(self.p, a, b));
            }
        }
        Poly::from_coeffs(self.p, c)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        if r.len() < dl {
            return (Poly::zero(p), self.clone());
        }
        let inv = inv_mod(p, d.lead());
        let mut q = vec![0u32; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let c = mul(p, r[i + dl - 1], inv);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for j in 0..dl {
                r[i + j] = sub(p, r[i + j], mul(p, c, d.coeffs[j]));
            }
        }
        (Poly::from_coeffs(p, q), Poly::from_coeffs(p, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul(self.p, a, (i as u64 % self.p as u64) as u32))
            .collect();
        Poly::from_coeffs(self.p, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Monic irreducible factors with multiplicity, sorted by
    /// (degree, coefficients). Deterministic given the seed stream.
    pub fn factor(&self, rng: &mut impl rand::Rng) -> Vec<(Poly, usize)> {
        let mut out: Vec<(Poly, usize)> = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        for (sqf, mult) in self.monic().square_free() {
            for (deg, g) in sqf.distinct_degree() {
                for f in g.equal_degree(deg, rng) {
                    out.push((f, mult));
                }
            }
        }
        out.sort_by(|a, b| {
            (a.0.degree(), &a.0.coeffs, a.1).cmp(&(b.0.degree(), &b.0.coeffs, b.1))
        });
        // Merge equal factors found in different square-free parts.
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (f, m) in out {
            match merged.last_mut() {
                Some((g, k)) if *g == f => *k += m,
                _ => merged.push((f, m)),
            }
        }
        merged
    }

    /// Square-free decomposition of a monic polynomial.
    fn square_free(&self) -> Vec<(Poly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let d = self.derivative();
        if d.is_zero() {
            // self = g(x^p) = g(x)^p over GF(p).
            let c: Vec<u32> = self.coeffs.iter().step_by(p as usize).copied().collect();
            for (f, m) in Poly::from_coeffs(p, c).square_free() {
                out.push((f, m * p as usize));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_rem(&c).0;
        let mut i = 1;
        while w.degree() > 0 {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.degree() > 0 {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if c.degree() > 0 {
            let cc: Vec<u32> = c.coeffs.iter().step_by(p as usize).copied().collect();
            for (f, m) in Poly::from_coeffs(p, cc).square_free() {
                out.push((f, m * p as usize));
            }
        }
        out
    }

    fn distinct_degree(&self) -> Vec<(usize, Poly)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = Poly::x(p);
        let mut h = x.clone();
        let mut d = 0;
        while f.degree() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(p as u128, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree() > 0 {
                out.push((d, g.clone()));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
        }
        if f.degree() > 0 {
            out.push((f.degree(), f.monic()));
        }
        out
    }

    fn equal_degree(&self, d: usize, rng: &mut impl rand::Rng) -> Vec<Poly> {
        let n = self.degree();
        if n == d {
            return vec![self.monic()];
        }
        let p = self.p;
        loop {
            let a = Poly::from_coeffs(p, (0..n).map(|_| rng.random_range(0..p)).collect());
            if a.degree() == 0 {
                continue;
            }
            let g = if p == 2 {
                // Trace map a + a^2 + ... + a^(2^(d-1)).
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                self.gcd(&acc)
            } else {
                let e = ((p as u128).pow(d as u32) - 1) / 2;
                let b = a.pow_mod(e, self).sub(&Poly::one(p));
                self.gcd(&b)
            };
            if g.degree() > 0 && g.degree() < n {
                let h = self.div_rem(&g).0;
                let mut out = g.equal_degree(d, rng);
                out.extend(h.monic().equal_degree(d, rng));
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn m(p: u32, rows: &[&[u32]]) -> Matrix {
        Matrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn inverse_and_rank() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(5, 2));
        assert_eq!(m(2, &[&[1, 1], &[1, 1]]).rank(), 1);
        assert!(m(2, &[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn nullspace() {
        let a = m(3, &[&[1, 2, 0], &[0, 0, 1]]);
        let ns = a.right_nullspace();
        assert_eq!(ns.len(), 1);
        let x = &ns[0];
        for i in 0..2 {
            let s: u32 = (0..3).map(|j| a.get(i, j) * x[j]).sum::<u32>() % 3;
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn charpoly_companion() {
        // Companion matrix of x^3 + x + 1 over GF(2).
        let c = m(2, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]);
        assert_eq!(c.charpoly().coeffs(), &[1, 1, 0, 1]);
        assert!(c.eval_poly(&c.charpoly()).is_zero());
    }

    #[test]
    fn factor_small() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // x^7 - x over GF(7) splits into linear factors.
        let mut c = vec![0u32; 8];
        c[7] = 1;
        c[1] = 6;
        let f = Poly::from_coeffs(7, c).factor(&mut rng);
        assert_eq!(f.len(), 7);
        assert!(f.iter().all(|(g, k)| g.degree() == 1 && *k == 1));
        // (x^2 + x + 1)^2 over GF(2).
        let g = Poly::from_coeffs(2, vec![1, 1, 1]);
        let f = g.mul(&g).factor(&mut rng);
        assert_eq!(f, vec![(g, 2)]);
    }

    #[test]
    fn intertwiner_dimension() {
        // Companion of x^2 + x + 1 over GF(2): End is GF(4).
        let c = m(2, &[&[0, 1], &[1, 1]]);
        assert_eq!(intertwiners(core::slice::from_ref(&c), core::slice::from_ref(&c)).len(), 2);
    }

    proptest! {
        #[test]
        fn charpoly_annihilates(entries in proptest::collection::vec(0u32..5, 16)) {
            let a = Matrix::from_rows(5, &entries.chunks(4).map(|c| c.to_vec()).collect::<Vec<_>>());
            let cp = a.charpoly();
            prop_assert_eq!(cp.degree(), 4);
            prop_assert!(a.eval_poly(&cp).is_zero());
        }

        #[test]
        fn factor_product_round_trip(c in proptest::collection::vec(0u32..3, 2..9)) {
            let f = Poly::from_coeffs(3, c);
            prop_assume!(f.degree() >= 1);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            let mut prod = Poly::one(3);
            for (g, k) in f.factor(&mut rng) {
                for _ in 0..k { prod = prod.mul(&g); }
            }
            prop_assert_eq!(prod, f.monic());
        }
    }
}
