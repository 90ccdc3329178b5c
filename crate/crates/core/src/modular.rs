//! Smith form over `Z/p^ℓ` and the solver for homocyclic p-groups.
//!
//! Over `Z/p^ℓ` every entry is a unit times a power of `p`, so an entry of
//! minimal valuation divides everything else in the active block. Scaling its
//! row by the inverse unit turns the pivot into `p^v`, and the rest of its row
//! and column is cleared exactly. The pivot valuations never decrease, so the
//! diagonal comes out already ordered by divisibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{is_prime, mod_inverse, modulo, pow};
use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, SolutionSet};
use crate::matrix::Matrix;

pub use crate::arith::p_valuation;

/// A particular vector and kernel generators.
pub type AffineVectors = (Vec<BigInt>, Vec<Vec<BigInt>>);

/// `L·A·R ≡ D (mod p^ℓ)` with `L`, `R` invertible modulo `p^ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularSmithDecomposition {
    pub p: u64,
    pub ell: u32,
    pub left: Matrix,
    pub right: Matrix,
    /// Valuations `v_1 ≤ … ≤ v_k < ℓ` of the nonzero diagonal entries `p^{v_i}`.
    pub valuations: Vec<u32>,
    rows: usize,
    cols: usize,
}

impl ModularSmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.valuations.iter().map(|&v| pow(self.p, v)).collect()
    }

    pub fn d_matrix(&self) -> Matrix {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, v) in self.diagonal().into_iter().enumerate() {
            d[(i, i)] = v;
        }
        d
    }
}

struct Reduction {
    left: Option<Matrix>,
    right: Matrix,
    valuations: Vec<u32>,
}

fn check_prime(p: u64, ell: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if ell == 0 {
        return Err(Error::WrongShape("exponent ℓ ≥ 1".into()));
    }
    Ok(())
}

/// Core elimination. Row operations are mirrored onto `rhs` when given and
/// accumulated into `L` only when `track_left` is set.
fn reduce(a: &Matrix, p: u64, ell: u32, mut rhs: Option<&mut Vec<BigInt>>, track_left: bool) -> Reduction {
    let q = pow(p, ell);
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    d.reduce_all(&q);
    let mut left = track_left.then(|| Matrix::identity(m));
    let mut right = Matrix::identity(n);
    if let Some(r) = rhs.as_deref_mut() {
        for v in r.iter_mut() {
            *v = modulo(v, &q);
        }
    }
    let mut valuations = Vec::new();

    for t in 0..m.min(n) {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let v = p_valuation(&d[(i, j)], p, ell);
                if v < ell && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);
        if let Some(l) = left.as_mut() {
            l.swap_rows(t, pi);
        }
        if let Some(r) = rhs.as_deref_mut() {
            r.swap(t, pi);
        }

        let pv = pow(p, v);
        let unit = &d[(t, t)] / &pv;
        let alpha = mod_inverse(&unit, &q).expect("unit part is invertible");
        d.scale_row(t, &alpha);
        for j in 0..n {
            let x = modulo(&d[(t, j)], &q);
            d[(t, j)] = x;
        }
        if let Some(l) = left.as_mut() {
            l.scale_row(t, &alpha);
            for j in 0..m {
                let x = modulo(&l[(t, j)], &q);
                l[(t, j)] = x;
            }
        }
        if let Some(r) = rhs.as_deref_mut() {
            r[t] = modulo(&(&r[t] * &alpha), &q);
        }
        debug_assert_eq!(d[(t, t)], pv);

        for i in t + 1..m {
            if d[(i, t)].is_zero() {
                continue;
            }
            let f = -(&d[(i, t)] / &pv);
            d.add_row_multiple(i, t, &f);
            for j in 0..n {
                let x = modulo(&d[(i, j)], &q);
                d[(i, j)] = x;
            }
            if let Some(l) = left.as_mut() {
                l.add_row_multiple(i, t, &f);
                for j in 0..m {
                    let x = modulo(&l[(i, j)], &q);
                    l[(i, j)] = x;
                }
            }
            if let Some(r) = rhs.as_deref_mut() {
                let x = modulo(&(&r[i] + &f * &r[t]), &q);
                r[i] = x;
            }
        }
        for j in t + 1..n {
            if d[(t, j)].is_zero() {
                continue;
            }
            let f = -(&d[(t, j)] / &pv);
            d.add_col_multiple(j, t, &f);
            right.add_col_multiple(j, t, &f);
            for i in 0..n {
                let x = modulo(&right[(i, j)], &q);
                right[(i, j)] = x;
            }
            for i in 0..m {
                let x = modulo(&d[(i, j)], &q);
                d[(i, j)] = x;
            }
        }
        valuations.push(v);
    }
    debug_assert!(valuations.windows(2).all(|w| w[0] <= w[1]));
    Reduction { left, right, valuations }
}

/// Modular Smith form of `A` over `Z/p^ℓ`.
pub fn modular_snf(a: &Matrix, p: u64, ell: u32) -> Result<ModularSmithDecomposition> {
    check_prime(p, ell)?;
    let r = reduce(a, p, ell, None, true);
    Ok(ModularSmithDecomposition {
        p,
        ell,
        left: r.left.expect("tracked"),
        right: r.right,
        valuations: r.valuations,
        rows: a.rows(),
        cols: a.cols(),
    })
}

/// Solutions of `A x ≡ b (mod p^ℓ)` as a particular vector and kernel
/// generators, all reduced mod `p^ℓ`; `None` if inconsistent.
///
/// With `materialize_left` the transformation `L` is built and applied to `b`
/// afterwards; otherwise the row operations act on `b` directly.
pub fn homocyclic_vectors(
    a: &Matrix,
    b: &[BigInt],
    p: u64,
    ell: u32,
    materialize_left: bool,
) -> Result<Option<AffineVectors>> {
    check_prime(p, ell)?;
    if a.rows() != b.len() {
        return Err(Error::Dimension(format!("{} rows but {} right-hand sides", a.rows(), b.len())));
    }
    let q = pow(p, ell);
    let (red, c) = if materialize_left {
        let red = reduce(a, p, ell, None, true);
        let c: Vec<BigInt> = red.left.as_ref().unwrap().mul_vec(b).iter().map(|x| modulo(x, &q)).collect();
        (red, c)
    } else {
        let mut c = b.to_vec();
        let red = reduce(a, p, ell, Some(&mut c), false);
        (red, c)
    };
    let n = a.cols();
    let k = red.valuations.len();
    let mut y = vec![BigInt::zero(); n];
    let mut kernel_y = Vec::new();
    for (i, ci) in c.iter().enumerate() {
        if i < k {
            let v = red.valuations[i];
            let pv = pow(p, v);
            let (quot, rem) = ci.div_rem(&pv);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = quot;
            if v > 0 {
                let mut g = vec![BigInt::zero(); n];
                g[i] = pow(p, ell - v);
                kernel_y.push(g);
            }
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    for j in k..n {
        let mut g = vec![BigInt::zero(); n];
        g[j] = BigInt::from(1);
        kernel_y.push(g);
    }
    let reduce_vec = |v: Vec<BigInt>| -> Vec<BigInt> { v.iter().map(|x| modulo(x, &q)).collect() };
    let x = reduce_vec(red.right.mul_vec(&y));
    let kernel = kernel_y.into_iter().map(|g| reduce_vec(red.right.mul_vec(&g))).collect();
    Ok(Some((x, kernel)))
}

/// Solves `A x ≡ b (mod p^ℓ)` with `x ∈ (Z_{p^ℓ})^n`.
pub fn solve_homocyclic(a: &Matrix, b: &[BigInt], p: u64, ell: u32) -> Result<SolutionSet> {
    let source = FgAbelianGroup::homocyclic(p, ell, a.cols());
    Ok(match homocyclic_vectors(a, b, p, ell, false)? {
        None => SolutionSet::Inconsistent,
        Some((x, k)) => SolutionSet::from_vectors(&source, &x, &k),
    })
}

/// Solves `Σ_k y_k·col_k = rhs` in the p-group `⊕ Z_{p^{e_i}}` by scaling row
/// `i` by `p^{E - e_i}` into the homocyclic group of exponent `E = max e_i`.
/// Coefficients `y` are returned modulo `p^E`.
pub fn solve_in_p_group(
    p: u64,
    exponents: &[u32],
    columns: &[Vec<BigInt>],
    rhs: &[BigInt],
) -> Result<Option<AffineVectors>> {
    let top = exponents.iter().copied().max().unwrap_or(0);
    if top == 0 {
        // trivial group: everything is a solution
        let s = columns.len();
        let kernel = (0..s).map(|k| (0..s).map(|j| BigInt::from((j == k) as u8)).collect()).collect();
        return Ok(Some((vec![BigInt::zero(); s], kernel)));
    }
    let m = exponents.len();
    let mut a = Matrix::from_columns(m, columns);
    let mut b = rhs.to_vec();
    for (i, &e) in exponents.iter().enumerate() {
        let scale = pow(p, top - e);
        a.scale_row(i, &scale);
        b[i] *= &scale;
    }
    homocyclic_vectors(&a, &b, p, top, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::bigvec;
    use num_traits::One;

    fn check(a: &Matrix, s: &ModularSmithDecomposition) {
        let q = pow(s.p, s.ell);
        let mut lar = s.left.mul(a).mul(&s.right);
        lar.reduce_all(&q);
        assert_eq!(lar, s.d_matrix());
        let pb = BigInt::from(s.p);
        assert!(s.left.determinant().gcd(&pb).is_one());
        assert!(s.right.determinant().gcd(&pb).is_one());
    }

    #[test]
    fn snf_mod_9() {
        let a = Matrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        let s = modular_snf(&a, 3, 2).unwrap();
        check(&a, &s);
        assert_eq!(s.diagonal(), bigvec(&[1, 3]));
    }

    #[test]
    fn snf_trivial_cases() {
        let one = Matrix::from_rows(&[vec![1]]);
        let s = modular_snf(&one, 5, 1).unwrap();
        assert_eq!(s.d_matrix(), one);
        let z = Matrix::zeros(2, 3);
        let s = modular_snf(&z, 2, 3).unwrap();
        assert!(s.valuations.is_empty());
        assert!(s.d_matrix().is_zero());
        assert_eq!(modular_snf(&z, 4, 1), Err(Error::NotPrime(4)));
    }

    #[test]
    fn homocyclic_example() {
        let a = Matrix::from_rows(&[vec![3, 0], vec![0, 1]]);
        let sol = solve_homocyclic(&a, &bigvec(&[3, 5]), 3, 2).unwrap();
        let SolutionSet::Solvable { particular, kernel } = sol else { panic!() };
        assert_eq!(particular.exponents(), bigvec(&[1, 5]).as_slice());
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0].exponents(), bigvec(&[3, 0]).as_slice());
    }

    #[test]
    fn homocyclic_inconsistent_and_identity() {
        let a = Matrix::from_rows(&[vec![3]]);
        assert_eq!(solve_homocyclic(&a, &bigvec(&[1]), 3, 2).unwrap(), SolutionSet::Inconsistent);
        let id = Matrix::identity(3);
        let b = bigvec(&[1, 6, 7]);
        let sol = solve_homocyclic(&id, &b, 2, 3).unwrap();
        assert_eq!(sol.particular().unwrap().exponents(), b.as_slice());
        assert!(sol.kernel().is_empty());
    }

    #[test]
    fn left_materialization_agrees() {
        let a = Matrix::from_rows(&[vec![2, 4, 6], vec![4, 0, 2]]);
        let b = bigvec(&[2, 6]);
        let direct = homocyclic_vectors(&a, &b, 2, 3, false).unwrap();
        let via_left = homocyclic_vectors(&a, &b, 2, 3, true).unwrap();
        assert_eq!(direct, via_left);
        assert!(direct.is_some());
    }

    #[test]
    fn p_group_membership() {
        // <(1,2)> in Z_2 x Z_8 is {(0,0), (1,2), (0,4), (1,6)}
        let cols = vec![bigvec(&[1, 2])];
        assert!(solve_in_p_group(2, &[1, 3], &cols, &bigvec(&[1, 6])).unwrap().is_some());
        assert!(solve_in_p_group(2, &[1, 3], &cols, &bigvec(&[1, 4])).unwrap().is_none());
    }
}
