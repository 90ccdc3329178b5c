//! Hensel lifting of the whole affine solution space of an endomorphic
//! system `A x ≡ b (mod [p^{e_1}, …, p^{e_m}])`.
//!
//! Solutions are kept in the form `ξ₀ + t₁ξ₁ + … + t_rξ_r` with digits
//! `t_i ∈ {0, …, p-1}`, each choice giving a distinct solution modulo the
//! current per-coordinate ladder. The basis is ordered so that `p·ξ_i` lies
//! in the span of the later `ξ_j`; restricting by a lifting condition
//! eliminates the last basis vector that the condition sees, and new free
//! digit directions are appended at the end, which keeps that order intact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{is_prime, mod_inverse, modulo, p_valuation, pow};
use crate::block::{p_exponents, p_group_pair};
use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupElement, Homomorphism, SolutionSet};
use crate::matrix::Matrix;

/// `A x ≡ b (mod [p^{e_1}, …, p^{e_m}])` with `1 ≤ e_1 ≤ … ≤ e_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoSystem {
    p: u64,
    exponents: Vec<u32>,
    a: Matrix,
    b: Vec<BigInt>,
}

impl EndoSystem {
    pub fn new(p: u64, exponents: Vec<u32>, a: Matrix, b: Vec<BigInt>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = exponents.len();
        if a.rows() != m || a.cols() != m || b.len() != m {
            return Err(Error::Dimension(format!(
                "{m} exponents, {}x{} matrix, {} right-hand sides",
                a.rows(),
                a.cols(),
                b.len()
            )));
        }
        if exponents.contains(&0) || exponents.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::WrongShape("ascending exponents ≥ 1".into()));
        }
        Ok(EndoSystem { p, exponents, a, b })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn rhs(&self) -> &[BigInt] {
        &self.b
    }

    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::new(self.exponents.iter().map(|&e| pow(self.p, e))).expect("positive orders")
    }

    fn dim(&self) -> usize {
        self.exponents.len()
    }
}

/// First entry (row-major) with `p^{e_i - min(e_i, e_j)} ∤ a_ij`.
pub fn check_divisibility(system: &EndoSystem) -> Result<()> {
    let e = &system.exponents;
    for i in 0..system.dim() {
        for j in 0..system.dim() {
            let d = e[i] - e[i].min(e[j]);
            if d > 0 && !system.a[(i, j)].is_multiple_of(&pow(system.p, d)) {
                return Err(Error::Divisibility { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Smallest `i` with `p^i·ξ ≡ 0` modulo `[p^{ladder_1}, …]`.
pub fn weight(xi: &[BigInt], p: u64, ladder: &[u32]) -> u32 {
    xi.iter().zip(ladder).map(|(x, &l)| l - p_valuation(&modulo(x, &pow(p, l)), p, l)).max().unwrap_or(0)
}

/// `ξ₀ + Σ t_i ξ_i` over digit tuples, read modulo `p^{ladder_j}` in coordinate `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSpace {
    pub p: u64,
    pub xi0: Vec<BigInt>,
    pub basis: Vec<Vec<BigInt>>,
    pub ladder: Vec<u32>,
}

impl AffineSolutionSpace {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Number of solutions, `p^r`.
    pub fn count(&self) -> BigInt {
        pow(self.p, self.rank() as u32)
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter().zip(&self.ladder).map(|(x, &l)| modulo(x, &pow(self.p, l))).collect()
    }

    pub fn instantiate(&self, t: &[u64]) -> Vec<BigInt> {
        assert_eq!(t.len(), self.rank(), "one digit per basis vector");
        let mut x = self.xi0.clone();
        for (ti, xi) in t.iter().zip(&self.basis) {
            for (a, b) in x.iter_mut().zip(xi) {
                *a += b * ti;
            }
        }
        self.reduce(&x)
    }

    /// All `p^r` instantiations, digits in lexicographic order.
    pub fn instances(&self) -> Vec<Vec<BigInt>> {
        let r = self.rank();
        let total = self.count().to_usize().expect("small space");
        let mut out = Vec::with_capacity(total);
        let mut t = vec![0u64; r];
        for _ in 0..total {
            out.push(self.instantiate(&t));
            for d in (0..r).rev() {
                t[d] += 1;
                if t[d] < self.p {
                    break;
                }
                t[d] = 0;
            }
        }
        out
    }

    pub fn weight(&self, xi: &[BigInt]) -> u32 {
        weight(xi, self.p, &self.ladder)
    }
}

/// Row-reduces `A x ≡ b (mod p)`. The particular vector has the free
/// variables at 0; basis vector `i` sets the `i`-th free variable to 1.
pub fn solve_mod_p(a: &Matrix, b: &[BigInt], p: u64) -> Result<Option<AffineSolutionSpace>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a.rows() != b.len() {
        return Err(Error::Dimension(format!("{} rows but {} right-hand sides", a.rows(), b.len())));
    }
    let pb = BigInt::from(p);
    let (m, n) = (a.rows(), a.cols());
    let mut rows: Vec<Vec<BigInt>> =
        (0..m).map(|i| a.row(i).iter().chain(std::iter::once(&b[i])).map(|x| modulo(x, &pb)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = mod_inverse(&rows[r][c], &pb).expect("nonzero in a field");
        for x in rows[r].iter_mut() {
            *x = modulo(&(&*x * &inv), &pb);
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=n {
                    let v = modulo(&(&rows[i][j] - &f * &rows[r][j]), &pb);
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let mut xi0 = vec![BigInt::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        xi0[c] = rows[i][n].clone();
    }
    let basis = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigInt::zero(); n];
            v[free] = BigInt::from(1);
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = modulo(&-&rows[i][free], &pb);
            }
            v
        })
        .collect();
    Ok(Some(AffineSolutionSpace { p, xi0, basis, ladder: vec![1; n] }))
}

/// The active rows at one level, echelonized over `F_p` on the active
/// columns, with a row assigned to every active column.
#[derive(Clone, Debug)]
pub struct LevelContext {
    ell: u32,
    p: u64,
    first_active: usize,
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    corner: Vec<usize>,
}

impl LevelContext {
    /// Prepares lifting from `p^ℓ` to `p^{ℓ+1}` in every coordinate with `e_i > ℓ`.
    pub fn new(system: &EndoSystem, ell: u32) -> Self {
        let p = system.p;
        let pb = BigInt::from(p);
        let q = pow(p, ell + 1);
        let m = system.dim();
        let k = system.exponents.iter().position(|&e| e > ell).unwrap_or(m);
        let mut rows: Vec<Vec<BigInt>> =
            (k..m).map(|i| system.a.row(i).iter().map(|x| modulo(x, &q)).collect()).collect();
        let mut rhs: Vec<BigInt> = (k..m).map(|i| modulo(&system.b[i], &q)).collect();
        let size = m - k;
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in k..m {
            let Some(pr) = (r..size).find(|&i| !rows[i][c].is_multiple_of(&pb)) else { continue };
            rows.swap(r, pr);
            rhs.swap(r, pr);
            let inv = mod_inverse(&modulo(&rows[r][c], &pb), &pb).expect("unit mod p");
            for x in rows[r].iter_mut() {
                *x = modulo(&(&*x * &inv), &q);
            }
            rhs[r] = modulo(&(&rhs[r] * &inv), &q);
            for i in r + 1..size {
                let f = modulo(&rows[i][c], &pb);
                if f.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let v = modulo(&(&rows[i][j] - &f * &rows[r][j]), &q);
                    rows[i][j] = v;
                }
                rhs[i] = modulo(&(&rhs[i] - &f * &rhs[r]), &q);
            }
            pivot_cols.push(c);
            r += 1;
        }
        let mut corner = vec![usize::MAX; size];
        for (i, &c) in pivot_cols.iter().enumerate() {
            corner[c - k] = i;
        }
        let mut spare = r..size;
        for slot in corner.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = spare.next().expect("square active block");
        }
        LevelContext { ell, p, first_active: k, rows, rhs, corner }
    }

    pub fn level(&self) -> u32 {
        self.ell
    }

    /// `k(ℓ)`, the first coordinate still being lifted.
    pub fn first_active(&self) -> usize {
        self.first_active
    }

    /// Echelonized row and right-hand side whose corner sits at column `n`.
    pub fn row_for(&self, n: usize) -> (&[BigInt], &BigInt) {
        let i = self.corner[n - self.first_active];
        (&self.rows[i], &self.rhs[i])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// The corner entry is a unit and fixes the new digit.
    Unique,
    /// The lifting condition holds for every digit choice.
    Free,
    /// The condition eliminated basis vector `s` (zero-based).
    Restricted { s: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Lifted { space: AffineSolutionSpace, kind: StepKind },
    Inconsistent,
}

/// Lifts coordinate `n` from `p^ℓ` to `p^{ℓ+1}`.
pub fn hensel_step(space: &AffineSolutionSpace, ctx: &LevelContext, n: usize) -> Result<StepOutcome> {
    let p = ctx.p;
    let pb = BigInt::from(p);
    let pl = pow(p, ctx.ell);
    let q = pow(p, ctx.ell + 1);
    let (row, rhs) = ctx.row_for(n);
    let gamma = |v: &[BigInt], b: &BigInt| -> Result<BigInt> {
        let f: BigInt = row.iter().zip(v).map(|(a, x)| a * x).sum::<BigInt>() - b;
        let (g, rem) = modulo(&f, &q).div_rem(&pl);
        if !rem.is_zero() {
            return Err(Error::Invariant(format!("f(ξ) not divisible by p^{} at coordinate {}", ctx.ell, n + 1)));
        }
        Ok(g)
    };
    let zero = BigInt::zero();
    let g0 = gamma(&space.xi0, rhs)?;
    let gs: Vec<BigInt> = space.basis.iter().map(|xi| gamma(xi, &zero)).collect::<Result<_>>()?;

    let mut next = space.clone();
    next.ladder[n] = ctx.ell + 1;
    let alpha = modulo(&row[n], &pb);
    let kind = if !alpha.is_zero() {
        let inv = mod_inverse(&alpha, &pb).expect("unit");
        let shift = |v: &mut Vec<BigInt>, g: &BigInt| {
            let t = modulo(&-(&inv * g), &pb);
            v[n] += &t * &pl;
        };
        shift(&mut next.xi0, &g0);
        for (v, g) in next.basis.iter_mut().zip(&gs) {
            shift(v, g);
        }
        StepKind::Unique
    } else {
        let kind = match gs.iter().rposition(|g| !g.is_zero()) {
            None if !g0.is_zero() => return Ok(StepOutcome::Inconsistent),
            None => StepKind::Free,
            Some(s) => {
                let inv = mod_inverse(&gs[s], &pb).expect("unit");
                let xs = next.basis.remove(s);
                let fold = |v: &mut Vec<BigInt>, g: &BigInt| {
                    let t = modulo(&-(&inv * g), &pb);
                    for (a, b) in v.iter_mut().zip(&xs) {
                        *a += &t * b;
                    }
                };
                fold(&mut next.xi0, &g0);
                for (v, g) in next.basis.iter_mut().zip(&gs).take(s) {
                    fold(v, g);
                }
                StepKind::Restricted { s }
            }
        };
        let mut dir = vec![BigInt::zero(); space.xi0.len()];
        dir[n] = pl.clone();
        next.basis.push(dir);
        kind
    };
    next.xi0 = next.reduce(&next.xi0);
    next.basis = next.basis.iter().map(|v| next.reduce(v)).collect();
    Ok(StepOutcome::Lifted { space: next, kind })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub level: u32,
    pub coordinate: usize,
    pub kind: StepKind,
    pub rank_before: usize,
    pub rank_after: usize,
}

/// Snapshots after the `F_p` stage and after each level, plus every step.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HenselTrace {
    pub snapshots: Vec<AffineSolutionSpace>,
    pub steps: Vec<StepRecord>,
}

pub fn solve_endomorphic(system: &EndoSystem) -> Result<SolutionSet> {
    solve_endomorphic_traced(system).map(|(s, _)| s)
}

pub fn solve_endomorphic_traced(system: &EndoSystem) -> Result<(SolutionSet, HenselTrace)> {
    check_divisibility(system)?;
    let mut trace = HenselTrace::default();
    let Some(mut space) = solve_mod_p(&system.a, &system.b, system.p)? else {
        return Ok((SolutionSet::Inconsistent, trace));
    };
    trace.snapshots.push(space.clone());
    let top = system.exponents.last().copied().unwrap_or(0);
    for ell in 1..top {
        let ctx = LevelContext::new(system, ell);
        for n in (ctx.first_active()..system.dim()).rev() {
            let rank_before = space.rank();
            match hensel_step(&space, &ctx, n)? {
                StepOutcome::Inconsistent => return Ok((SolutionSet::Inconsistent, trace)),
                StepOutcome::Lifted { space: next, kind } => {
                    trace.steps.push(StepRecord {
                        level: ell,
                        coordinate: n,
                        kind,
                        rank_before,
                        rank_after: next.rank(),
                    });
                    space = next;
                }
            }
        }
        trace.snapshots.push(space.clone());
    }
    Ok((SolutionSet::from_vectors(&system.group(), &space.xi0, &space.basis), trace))
}

/// The endomorphic system behind an endomorphism of a p-group: nontrivial
/// factors sorted by exponent, paired with their original positions. `None`
/// for the trivial group.
pub fn endomorphism_system(hom: &Homomorphism, b: &GroupElement) -> Result<Option<(EndoSystem, Vec<usize>)>> {
    if !hom.is_endomorphism() {
        return Err(Error::WrongShape("endomorphism".into()));
    }
    if b.group() != hom.target() {
        return Err(Error::GroupMismatch);
    }
    hom.validate()?;
    let (p, exps) = match p_exponents(hom.source())? {
        (Some(p), e) => (p, e),
        (None, _) => return Ok(None),
    };
    let mut order: Vec<usize> = (0..exps.len()).filter(|&i| exps[i] > 0).collect();
    order.sort_by_key(|&i| exps[i]);
    let a = hom.matrix().submatrix(&order, &order);
    let rhs = order.iter().map(|&i| b.exponents()[i].clone()).collect();
    let system = EndoSystem::new(p, order.iter().map(|&i| exps[i]).collect(), a, rhs)?;
    Ok(Some((system, order)))
}

/// Solves `φ(x) = b` for an endomorphism of a p-group given in any factor
/// order; trivial factors are allowed.
pub fn solve_endomorphism(hom: &Homomorphism, b: &GroupElement) -> Result<SolutionSet> {
    let group = hom.source();
    let Some((system, order)) = endomorphism_system(hom, b)? else {
        return Ok(SolutionSet::from_vectors(group, &vec![BigInt::zero(); group.rank()], &[]));
    };
    let unpermute = |v: &[BigInt]| {
        let mut out = vec![BigInt::zero(); group.rank()];
        for (&i, x) in order.iter().zip(v) {
            out[i] = x.clone();
        }
        out
    };
    Ok(match solve_endomorphic(&system)? {
        SolutionSet::Inconsistent => SolutionSet::Inconsistent,
        SolutionSet::Solvable { particular, kernel } => {
            let ks: Vec<Vec<BigInt>> = kernel.iter().map(|k| unpermute(k.exponents())).collect();
            SolutionSet::from_vectors(group, &unpermute(particular.exponents()), &ks)
        }
    })
}

/// Embeds p-groups `G`, `H` into the homocyclic group `(Z_{p^E})^N` with `E`
/// the largest exponent and `N = max(rank G, rank H)`; row `i` is scaled by
/// `p^{E - f_i}`. A solution's first `rank G` coordinates solve `φ(x) = b`.
/// `None` when both groups are trivial.
pub fn frame_system(hom: &Homomorphism, b: &GroupElement) -> Result<Option<EndoSystem>> {
    hom.validate()?;
    if b.group() != hom.target() {
        return Err(Error::GroupMismatch);
    }
    let (p, src, tgt) = p_group_pair(hom)?;
    let n = src.len();
    let top = src.iter().chain(&tgt).copied().max().unwrap_or(0);
    if top == 0 {
        return Ok(None);
    }
    let size = n.max(tgt.len());
    let mut a = Matrix::zeros(size, size);
    let mut rhs = vec![BigInt::zero(); size];
    for (i, &f) in tgt.iter().enumerate() {
        let scale = pow(p, top - f);
        for j in 0..n {
            a[(i, j)] = &hom.matrix()[(i, j)] * &scale;
        }
        rhs[i] = &b.exponents()[i] * &scale;
    }
    EndoSystem::new(p, vec![top; size], a, rhs).map(Some)
}

/// Solves `φ(x) = b` for p-groups through [`frame_system`].
pub fn solve_p_group_hom_hensel(hom: &Homomorphism, b: &GroupElement) -> Result<SolutionSet> {
    let source = hom.source();
    let n = source.rank();
    let Some(system) = frame_system(hom, b)? else {
        return Ok(SolutionSet::from_vectors(source, &vec![BigInt::zero(); n], &[]));
    };
    Ok(match solve_endomorphic(&system)? {
        SolutionSet::Inconsistent => SolutionSet::Inconsistent,
        SolutionSet::Solvable { particular, kernel } => {
            let ks: Vec<Vec<BigInt>> = kernel.iter().map(|k| k.exponents()[..n].to_vec()).collect();
            SolutionSet::from_vectors(source, &particular.exponents()[..n], &ks)
        }
    })
}

/// Coefficients `x` with `Σ x_j g_j = b`, or `None` if `b ∉ ⟨g_1, …⟩`.
pub fn solve_membership(
    group: &FgAbelianGroup,
    generators: &[GroupElement],
    b: &GroupElement,
) -> Result<Option<Vec<BigInt>>> {
    if generators.iter().chain(std::iter::once(b)).any(|g| g.group() != group) {
        return Err(Error::GroupMismatch);
    }
    let (prime, exps) = p_exponents(group)?;
    let top = exps.iter().copied().max().unwrap_or(0);
    let Some(p) = prime else {
        return Ok(Some(vec![BigInt::zero(); generators.len()]));
    };
    let columns: Vec<Vec<BigInt>> = generators.iter().map(|g| g.exponents().to_vec()).collect();
    let source = FgAbelianGroup::homocyclic(p, top, generators.len());
    let hom = Homomorphism::new(source, group.clone(), Matrix::from_columns(group.rank(), &columns))?;
    Ok(solve_p_group_hom_hensel(&hom, b)?.particular().map(|x| x.exponents().to_vec()))
}

/// Inverse of an automorphism of a p-group, column by column.
pub fn invert_automorphism(hom: &Homomorphism) -> Result<Homomorphism> {
    if !hom.is_endomorphism() {
        return Err(Error::NotAutomorphism);
    }
    let group = hom.source();
    let mut columns = Vec::with_capacity(group.rank());
    for j in 0..group.rank() {
        match solve_endomorphism(hom, &group.generator(j))? {
            SolutionSet::Solvable { particular, kernel } if kernel.is_empty() => {
                columns.push(particular.into_exponents())
            }
            _ => return Err(Error::NotAutomorphism),
        }
    }
    Homomorphism::new(group.clone(), group.clone(), Matrix::from_columns(group.rank(), &columns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::bigvec;
    use crate::snf::same_subgroup;

    fn grp(o: &[i64]) -> FgAbelianGroup {
        FgAbelianGroup::new(o.iter().copied()).unwrap()
    }

    fn sys(p: u64, e: &[u32], a: &[Vec<i64>], b: &[i64]) -> EndoSystem {
        EndoSystem::new(p, e.to_vec(), Matrix::from_rows(a), bigvec(b)).unwrap()
    }

    #[test]
    fn divisibility_condition() {
        assert!(check_divisibility(&sys(2, &[1, 2], &[vec![1, 1], vec![2, 0]], &[0, 0])).is_ok());
        assert_eq!(
            check_divisibility(&sys(2, &[1, 2], &[vec![1, 1], vec![1, 0]], &[0, 0])),
            Err(Error::Divisibility { row: 1, col: 0 })
        );
        assert!(check_divisibility(&sys(3, &[2, 2], &[vec![1, 5], vec![7, 2]], &[0, 0])).is_ok());
    }

    #[test]
    fn mod_p_stage() {
        let a = Matrix::from_rows(&[vec![1, 1], vec![0, 0]]);
        let s = solve_mod_p(&a, &bigvec(&[1, 0]), 2).unwrap().unwrap();
        assert_eq!(s.xi0, bigvec(&[1, 0]));
        assert_eq!(s.basis, vec![bigvec(&[1, 1])]);
        let inv = solve_mod_p(&Matrix::from_rows(&[vec![2, 1], vec![1, 1]]), &bigvec(&[1, 2]), 3).unwrap().unwrap();
        assert_eq!(inv.rank(), 0);
        assert!(solve_mod_p(&Matrix::zeros(1, 1), &bigvec(&[1]), 5).unwrap().is_none());
    }

    #[test]
    fn restricted_step() {
        let s = sys(2, &[2], &[vec![2]], &[2]);
        let (sol, trace) = solve_endomorphic_traced(&s).unwrap();
        assert_eq!(trace.snapshots[0].xi0, bigvec(&[0]));
        assert_eq!(trace.snapshots[0].basis, vec![bigvec(&[1])]);
        assert_eq!(trace.steps[0].kind, StepKind::Restricted { s: 0 });
        assert_eq!(trace.snapshots[1].xi0, bigvec(&[1]));
        assert_eq!(trace.snapshots[1].basis, vec![bigvec(&[2])]);
        assert_eq!(trace.snapshots[1].instances(), vec![bigvec(&[1]), bigvec(&[3])]);
        assert!(sol.is_solvable());
    }

    #[test]
    fn unique_step_and_early_failure() {
        let (sol, trace) = solve_endomorphic_traced(&sys(2, &[2], &[vec![1]], &[3])).unwrap();
        assert_eq!(trace.snapshots[0].xi0, bigvec(&[1]));
        assert_eq!(trace.steps[0].kind, StepKind::Unique);
        assert_eq!(sol.particular().unwrap().exponents(), bigvec(&[3]).as_slice());
        let (sol, trace) = solve_endomorphic_traced(&sys(2, &[2], &[vec![2]], &[1])).unwrap();
        assert_eq!(sol, SolutionSet::Inconsistent);
        assert!(trace.snapshots.is_empty());
    }

    #[test]
    fn mixed_exponent_example() {
        let s = sys(2, &[1, 2], &[vec![1, 0], vec![2, 2]], &[1, 2]);
        let sol = solve_endomorphic(&s).unwrap();
        assert_eq!(sol.particular().unwrap().exponents(), bigvec(&[1, 0]).as_slice());
        let k: Vec<Vec<BigInt>> = sol.kernel().iter().map(|g| g.exponents().to_vec()).collect();
        assert_eq!(k, vec![bigvec(&[0, 2])]);
    }

    #[test]
    fn identity_and_zero_maps() {
        let s = sys(3, &[1, 2, 2], &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[2, 4, 8]);
        let sol = solve_endomorphic(&s).unwrap();
        assert_eq!(sol.particular().unwrap().exponents(), bigvec(&[2, 4, 8]).as_slice());
        assert!(sol.kernel().is_empty());
        let z = sys(2, &[1, 3], &[vec![0, 0], vec![0, 0]], &[0, 0]);
        let sol = solve_endomorphic(&z).unwrap();
        let g = z.group();
        assert!(same_subgroup(&g, sol.kernel(), &[g.generator(0), g.generator(1)]).unwrap());
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&bigvec(&[0, 2]), 2, &[1, 2]), 1);
        assert_eq!(weight(&bigvec(&[0, 0]), 2, &[1, 2]), 0);
        assert_eq!(weight(&bigvec(&[1, 1]), 2, &[1, 2]), 2);
    }

    #[test]
    fn membership() {
        let g = grp(&[8]);
        let e = |v: i64| g.element(&[v]).unwrap();
        assert_eq!(solve_membership(&g, &[e(6)], &e(4)).unwrap(), Some(bigvec(&[2])));
        assert_eq!(solve_membership(&g, &[e(2)], &e(1)).unwrap(), None);
        assert_eq!(solve_membership(&g, &[e(2), e(4)], &e(0)).unwrap(), Some(bigvec(&[0, 0])));
    }

    #[test]
    fn automorphism_inverse() {
        let z4 = grp(&[4]);
        let h = Homomorphism::new(z4.clone(), z4.clone(), Matrix::from_rows(&[vec![3]])).unwrap();
        assert_eq!(invert_automorphism(&h).unwrap().matrix(), &Matrix::from_rows(&[vec![3]]));
        let v = grp(&[2, 2]);
        let swap = Homomorphism::new(v.clone(), v.clone(), Matrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap();
        assert_eq!(invert_automorphism(&swap).unwrap(), swap);
        let id = Homomorphism::identity(&grp(&[2, 4, 8]));
        assert_eq!(invert_automorphism(&id).unwrap(), id);
        let double = Homomorphism::new(z4.clone(), z4, Matrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(invert_automorphism(&double), Err(Error::NotAutomorphism));
    }

    #[test]
    fn frame_solver() {
        let g = grp(&[2, 4]);
        let hom = Homomorphism::new(g.clone(), g.clone(), Matrix::from_rows(&[vec![0, 1], vec![2, 0]])).unwrap();
        let sol = solve_p_group_hom_hensel(&hom, &g.element(&[1, 2]).unwrap()).unwrap();
        assert!(sol.verifies(&hom, &g.element(&[1, 2]).unwrap()));
        assert!(same_subgroup(&g, sol.kernel(), &[g.element(&[0, 2]).unwrap()]).unwrap());

        let hom = Homomorphism::new(grp(&[4]), grp(&[2]), Matrix::from_rows(&[vec![1]])).unwrap();
        let sol = solve_p_group_hom_hensel(&hom, &grp(&[2]).element(&[1]).unwrap()).unwrap();
        assert_eq!(sol.particular().unwrap().exponents(), bigvec(&[1]).as_slice());
        assert_eq!(sol.kernel()[0].exponents(), bigvec(&[2]).as_slice());
    }

    #[test]
    fn unsorted_endomorphism() {
        let g = grp(&[4, 2]);
        let hom = Homomorphism::new(g.clone(), g.clone(), Matrix::from_rows(&[vec![2, 2], vec![0, 1]])).unwrap();
        let b = g.element(&[2, 1]).unwrap();
        let sol = solve_endomorphism(&hom, &b).unwrap();
        assert!(sol.verifies(&hom, &b));
        assert_eq!(sol.particular().unwrap().exponents(), bigvec(&[0, 1]).as_slice());
        assert!(same_subgroup(&g, sol.kernel(), &[g.element(&[2, 0]).unwrap()]).unwrap());
    }
}
