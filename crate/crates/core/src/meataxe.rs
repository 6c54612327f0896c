//! Irreducibility testing and submodule splitting for modules over GF(p)
//! given by generator matrices (Holt-Rees variant of the MeatAxe).

use alloc::vec::Vec;

use rand::Rng;

use crate::gf::{spin, Matrix, Poly, Subspace};
use crate::{Error, Result};

/// Outcome of an irreducibility test.
#[derive(Clone, Debug)]
pub enum Splitting {
    Irreducible,
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
}

/// Maximum number of random algebra elements tried before giving up.
const MAX_TRIES: usize = 200;

fn random_algebra_element(gens: &[Matrix], p: u32, dim: usize, rng: &mut impl Rng) -> Matrix {
    let mut a = Matrix::zero(p, dim, dim);
    let terms = 2 + rng.random_range(0..3);
    for _ in 0..terms {
        let len = 1 + rng.random_range(0..3);
        let mut w = gens[rng.random_range(0..gens.len())].clone();
        for _ in 1..len {
            w = w.mul(&gens[rng.random_range(0..gens.len())]);
        }
        let c = 1 + rng.random_range(0..p - 1);
        a = a.add(&w.scale(c));
    }
    a
}

/// Decides irreducibility of the module given by `gens` (dimension `dim`).
pub fn split(p: u32, dim: usize, gens: &[Matrix], rng: &mut impl Rng) -> Result<Splitting> {
    if dim <= 1 {
        return Ok(Splitting::Irreducible);
    }
    if gens.is_empty() {
        let mut w = Subspace::new(p, dim);
        let mut e = alloc::vec![0u32; dim];
        e[0] = 1;
        w.insert(&e);
        return Ok(Splitting::Reducible(w));
    }
    let transposed: Vec<Matrix> = gens.iter().map(Matrix::transpose).collect();
    for _ in 0..MAX_TRIES {
        let a = random_algebra_element(gens, p, dim, rng);
        let factors = a.charpoly().factor(rng);
        for (f, _) in factors {
            let fa = a.eval_poly(&f);
            let null = fa.left_nullspace();
            let Some(v) = null.first() else { continue };
            let s = spin(p, dim, core::slice::from_ref(v), gens);
            if s.rank() < dim {
                return Ok(Splitting::Reducible(s));
            }
            let null_t = fa.transpose().left_nullspace();
            let Some(w) = null_t.first() else { continue };
            let st = spin(p, dim, core::slice::from_ref(w), &transposed);
            if st.rank() < dim {
                return Ok(Splitting::Reducible(annihilator(p, dim, &st)));
            }
            if null.len() == f.degree() {
                return Ok(Splitting::Irreducible);
            }
        }
    }
    Err(Error::Invariant(alloc::format!(
        "meataxe: no decisive algebra element in {MAX_TRIES} tries"
    )))
}

/// `{v : <v, s> = 0 for all s in S}`.
fn annihilator(p: u32, dim: usize, s: &Subspace) -> Subspace {
    let rows: Vec<Vec<u32>> = s.basis().to_vec();
    let b = Matrix::from_rows(p, &rows);
    let mut out = Subspace::new(p, dim);
    for v in b.right_nullspace() {
        out.insert(&v);
    }
    out
}

/// Action of `gens` on the invariant subspace `w`, in the coordinates of
/// its echelon basis.
pub fn restrict(gens: &[Matrix], w: &Subspace) -> Vec<Matrix> {
    let p = w.prime();
    gens.iter()
        .map(|g| {
            let rows: Vec<Vec<u32>> = w
                .basis()
                .iter()
                .map(|b| {
                    w.coordinates(&g.apply(b))
                        .expect("subspace is not invariant")
                })
                .collect();
            Matrix::from_rows(p, &rows)
        })
        .collect()
}

/// Action on `V / w`, with the complement basis used for coordinates
/// (standard vectors at the non-pivot positions).
pub fn quotient(gens: &[Matrix], dim: usize, w: &Subspace) -> (Vec<Matrix>, Vec<Vec<u32>>) {
    let p = w.prime();
    let positions: Vec<usize> = (0..dim).filter(|i| !w.pivots().contains(i)).collect();
    let comp: Vec<Vec<u32>> = positions
        .iter()
        .map(|&i| {
            let mut e = alloc::vec![0u32; dim];
            e[i] = 1;
            e
        })
        .collect();
    let k = comp.len();
    let mats = gens
        .iter()
        .map(|g| {
            let rows: Vec<Vec<u32>> = comp
                .iter()
                .map(|c| {
                    // Express g(c) modulo w in the complement basis.
                    let mut v = g.apply(c);
                    w.reduce(&mut v);
                    let mut coords = alloc::vec![0u32; k];
                    for (j, &pos) in positions.iter().enumerate() {
                        coords[j] = v[pos];
                    }
                    coords
                })
                .collect();
            Matrix::from_rows(p, &rows)
        })
        .collect();
    (mats, comp)
}

/// Composition series `0 = W_0 < W_1 < ... < W_r = V`, each term given by a
/// basis in ambient coordinates.
pub fn composition_series(
    p: u32,
    dim: usize,
    gens: &[Matrix],
    rng: &mut impl Rng,
) -> Result<Vec<Subspace>> {
    let mut out = alloc::vec![Subspace::new(p, dim)];
    extend_series(p, dim, gens, &Subspace::new(p, dim), &identity_lift(p, dim), &mut out, rng)?;
    Ok(out)
}

fn identity_lift(p: u32, dim: usize) -> Vec<Vec<u32>> {
    (0..dim)
        .map(|i| {
            let mut e = alloc::vec![0u32; dim];
            e[i] = 1 % p;
            e
        })
        .collect()
}

/// Appends the composition series of the module `gens` (a section of the
/// ambient space whose basis vectors lift to `lift`, sitting above `below`).
fn extend_series(
    p: u32,
    dim: usize,
    gens: &[Matrix],
    below: &Subspace,
    lift: &[Vec<u32>],
    out: &mut Vec<Subspace>,
    rng: &mut impl Rng,
) -> Result<()> {
    let ambient = below.ambient_dim();
    let to_ambient = |v: &[u32]| -> Vec<u32> {
        let mut acc = alloc::vec![0u32; ambient];
        for (c, b) in v.iter().zip(lift) {
            if *c == 0 {
                continue;
            }
            for j in 0..ambient {
                acc[j] = ((acc[j] as u64 + *c as u64 * b[j] as u64) % p as u64) as u32;
            }
        }
        acc
    };
    match split(p, dim, gens, rng)? {
        Splitting::Irreducible => {
            let mut top = below.clone();
            for b in lift {
                top.insert(b);
            }
            out.push(top);
        }
        Splitting::Reducible(w) => {
            let sub_gens = restrict(gens, &w);
            let sub_lift: Vec<Vec<u32>> = w.basis().iter().map(|b| to_ambient(b)).collect();
            extend_series(p, w.rank(), &sub_gens, below, &sub_lift, out, rng)?;
            let (q_gens, comp) = quotient(gens, dim, &w);
            let q_lift: Vec<Vec<u32>> = comp.iter().map(|b| to_ambient(b)).collect();
            let new_below = out.last().unwrap().clone();
            extend_series(p, comp.len(), &q_gens, &new_below, &q_lift, out, rng)?;
        }
    }
    Ok(())
}

/// `|End_G(V)| = p^e`; returns `e`.
pub fn endomorphism_dim(gens: &[Matrix], dim: usize) -> usize {
    if gens.is_empty() {
        return dim * dim;
    }
    crate::gf::intertwiners(gens, gens).len()
}

/// True if some nonzero module map exists between two irreducible modules of
/// equal dimension (which then is an isomorphism).
pub fn isomorphic_irreducibles(a: &[Matrix], b: &[Matrix]) -> bool {
    let da = a.first().map(Matrix::rows);
    let db = b.first().map(Matrix::rows);
    if da != db {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    !crate::gf::intertwiners(a, b).is_empty()
}

/// Irreducible factor polynomial helper exposed for diagnostics.
pub fn charpoly_factors(m: &Matrix, rng: &mut impl Rng) -> Vec<(Poly, usize)> {
    m.charpoly().factor(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use alloc::vec;
    use rand_chacha::ChaCha8Rng;

    fn perm_matrix(p: u32, images: &[usize]) -> Matrix {
        let n = images.len();
        let mut m = Matrix::zero(p, n, n);
        for (i, &j) in images.iter().enumerate() {
            m.set(i, j, 1);
        }
        m
    }

    #[test]
    fn permutation_module_of_s3_over_gf3_is_uniserial() {
        // GF(3)^3 under S3: 0 < <(1,1,1)> < sum-zero < V.
        let gens = [perm_matrix(3, &[1, 0, 2]), perm_matrix(3, &[1, 2, 0])];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let series = composition_series(3, 3, &gens, &mut rng).unwrap();
        let dims: Vec<usize> = series.iter().map(Subspace::rank).collect();
        assert_eq!(dims, vec![0, 1, 2, 3]);
    }

    #[test]
    fn natural_gl32_module_is_irreducible() {
        let a = Matrix::from_rows(2, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]);
        let b = Matrix::from_rows(2, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(split(2, 3, &[a.clone(), b.clone()], &mut rng).unwrap(), Splitting::Irreducible));
        assert_eq!(endomorphism_dim(&[a, b], 3), 1);
    }

    #[test]
    fn reducible_found_for_direct_sum() {
        let a = Matrix::from_rows(2, &[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 1]]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        match split(2, 3, core::slice::from_ref(&a), &mut rng).unwrap() {
            Splitting::Reducible(w) => {
                assert!(w.rank() > 0 && w.rank() < 3);
                for b in w.basis() {
                    assert!(w.contains(&a.apply(b)));
                }
            }
            Splitting::Irreducible => panic!("direct sum reported irreducible"),
        }
    }
}
