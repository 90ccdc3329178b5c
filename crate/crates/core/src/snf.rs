//! Integer Smith normal form and the reduction of `φ(x) = b` over a finitely
//! generated abelian group to a system of linear Diophantine equations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::decompose::FreeReduction;
use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupElement, Homomorphism, SolutionSet};
use crate::matrix::Matrix;

/// `L·A·R = D` with `L`, `R` unimodular and `D = diag(d_1, …, d_r, 0, …)`,
/// `d_i > 0`, `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: Matrix,
    pub right: Matrix,
    /// The nonzero invariant factors `d_1, …, d_r`.
    pub diagonal: Vec<BigInt>,
    rows: usize,
    cols: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The full `m × n` diagonal matrix `D`.
    pub fn d_matrix(&self) -> Matrix {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

fn min_abs_entry(d: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = &d[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form with transformation matrices. The pivot is always an
/// entry of minimal absolute value in the active block (ties: lowest row,
/// then lowest column).
pub fn smith_normal_form(a: &Matrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = Matrix::identity(m);
    let mut right = Matrix::identity(n);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        let pivot = d[(t, t)].clone();
        let mut residue = false;
        for i in t + 1..m {
            if d[(i, t)].is_zero() {
                continue;
            }
            let q = -(&d[(i, t)] / &pivot);
            d.add_row_multiple(i, t, &q);
            left.add_row_multiple(i, t, &q);
            residue |= !d[(i, t)].is_zero();
        }
        for j in t + 1..n {
            if d[(t, j)].is_zero() {
                continue;
            }
            let q = -(&d[(t, j)] / &pivot);
            d.add_col_multiple(j, t, &q);
            right.add_col_multiple(j, t, &q);
            residue |= !d[(t, j)].is_zero();
        }
        if residue {
            // a smaller remainder is now present; pick a new pivot
            continue;
        }
        let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
        if let Some(i) = offender {
            let one = BigInt::one();
            d.add_row_multiple(t, i, &one);
            left.add_row_multiple(t, i, &one);
            continue;
        }
        if pivot.is_negative() {
            let minus = -BigInt::one();
            d.scale_row(t, &minus);
            left.scale_row(t, &minus);
        }
        diagonal.push(d[(t, t)].clone());
        t += 1;
    }
    SmithDecomposition { left, right, diagonal, rows: m, cols: n }
}

/// Integer solutions of `A x = b`: a particular solution and a basis of the
/// integer kernel lattice, or `None` when there is no integer solution.
pub fn diophantine_vectors(a: &Matrix, b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let c = snf.left.mul_vec(b);
    let r = snf.rank();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < r {
            let (q, rem) = ci.div_rem(&snf.diagonal[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    let particular = snf.right.mul_vec(&y);
    let kernel = (r..a.cols()).map(|j| snf.right.column(j)).collect();
    Some((particular, kernel))
}

/// Solves `A x = b` over `Z^n`. Kernel generators are the last `n - r` columns of `R`.
pub fn solve_diophantine(a: &Matrix, b: &[BigInt]) -> Result<SolutionSet> {
    if a.rows() != b.len() {
        return Err(Error::Dimension(format!("{} equations but {} right-hand sides", a.rows(), b.len())));
    }
    let free = FgAbelianGroup::free(a.cols());
    Ok(match diophantine_vectors(a, b) {
        None => SolutionSet::Inconsistent,
        Some((x, k)) => SolutionSet::from_vectors(&free, &x, &k),
    })
}

/// `[A | D]` where `D` carries one column per finite target row with that
/// row's modulus; solutions projected to the first `source_columns` entries are
/// exactly the solutions of the modular system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiophantineSystem {
    pub matrix: Matrix,
    pub rhs: Vec<BigInt>,
    pub source_columns: usize,
    /// Target row of each appended modulus column.
    pub modulus_rows: Vec<usize>,
}

pub fn embed_torsion_system(hom: &Homomorphism, b: &GroupElement) -> Result<DiophantineSystem> {
    if b.group() != hom.target() {
        return Err(Error::GroupMismatch);
    }
    let a = hom.matrix();
    let modulus_rows: Vec<usize> = (0..a.rows()).filter(|&i| !hom.target().orders()[i].is_zero()).collect();
    let n = a.cols();
    let mut matrix = Matrix::zeros(a.rows(), n + modulus_rows.len());
    for i in 0..a.rows() {
        for j in 0..n {
            matrix[(i, j)] = a[(i, j)].clone();
        }
    }
    for (k, &i) in modulus_rows.iter().enumerate() {
        matrix[(i, n + k)] = hom.target().orders()[i].clone();
    }
    Ok(DiophantineSystem { matrix, rhs: b.exponents().to_vec(), source_columns: n, modulus_rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnfStrategy {
    /// One Diophantine system for the whole problem.
    Direct,
    /// Free block first, then the torsion rows with shifted right-hand sides.
    Hybrid,
}

pub fn solve_fg_via_snf(hom: &Homomorphism, b: &GroupElement, strategy: SnfStrategy) -> Result<SolutionSet> {
    hom.validate()?;
    if b.group() != hom.target() {
        return Err(Error::GroupMismatch);
    }
    match strategy {
        SnfStrategy::Direct => {
            let sys = embed_torsion_system(hom, b)?;
            let n = sys.source_columns;
            Ok(match diophantine_vectors(&sys.matrix, &sys.rhs) {
                None => SolutionSet::Inconsistent,
                Some((x, kernel)) => {
                    let kernel: Vec<Vec<BigInt>> = kernel.into_iter().map(|k| k[..n].to_vec()).collect();
                    SolutionSet::from_vectors(hom.source(), &x[..n], &kernel)
                }
            })
        }
        SnfStrategy::Hybrid => {
            let reduction = FreeReduction::new(hom, b)?;
            let torsion = match reduction.torsion_problem() {
                None => return Ok(SolutionSet::Inconsistent),
                Some((t_hom, t_rhs)) => solve_fg_via_snf(t_hom, t_rhs, SnfStrategy::Direct)?,
            };
            reduction.recombine(&torsion)
        }
    }
}

/// Whether `g` lies in the subgroup generated by `gens`.
pub fn subgroup_contains(group: &FgAbelianGroup, gens: &[GroupElement], g: &GroupElement) -> Result<bool> {
    if g.group() != group || gens.iter().any(|x| x.group() != group) {
        return Err(Error::GroupMismatch);
    }
    let columns: Vec<Vec<BigInt>> = gens.iter().map(|x| x.exponents().to_vec()).collect();
    let matrix = Matrix::from_columns(group.rank(), &columns);
    let hom = Homomorphism::from_matrix(FgAbelianGroup::free(gens.len()), group.clone(), matrix)?;
    Ok(solve_fg_via_snf(&hom, g, SnfStrategy::Direct)?.is_solvable())
}

/// Whether two generating sets generate the same subgroup.
pub fn same_subgroup(group: &FgAbelianGroup, a: &[GroupElement], b: &[GroupElement]) -> Result<bool> {
    for x in a {
        if !subgroup_contains(group, b, x)? {
            return Ok(false);
        }
    }
    for x in b {
        if !subgroup_contains(group, a, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}
