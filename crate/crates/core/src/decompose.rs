//! Splitting a problem into its torsion-free block and independent per-prime
//! subproblems, and assembling the partial answers again.
//!
//! The free block `A_s y = b_free` (free source factors into free target
//! factors) is solved over the integers first. Its general solution
//! `y = y_0 + N t` is substituted into the torsion rows; the parameters `t`
//! only matter modulo the exponent of the target's torsion subgroup and become
//! extra cyclic source factors of that order. The remaining problem is finite
//! and splits prime by prime.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::lcm_all;
use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupElement, Homomorphism, SolutionSet};
use crate::matrix::Matrix;
use crate::primary::{canonical_primary_form, translate_hom, PrimaryForm};
use crate::snf::diophantine_vectors;

/// The free block solved and substituted into the torsion rows.
#[derive(Clone, Debug)]
pub struct FreeReduction {
    source: FgAbelianGroup,
    free_source: Vec<usize>,
    torsion_source: Vec<usize>,
    /// `y_0`, or `None` when the free block has no integer solution.
    base: Option<Vec<BigInt>>,
    /// Basis of the integer kernel of `A_s`, one vector per parameter.
    null: Vec<Vec<BigInt>>,
    exponent: BigInt,
    torsion: Option<(Homomorphism, GroupElement)>,
}

impl FreeReduction {
    pub fn new(hom: &Homomorphism, b: &GroupElement) -> Result<Self> {
        if b.group() != hom.target() {
            return Err(Error::GroupMismatch);
        }
        let src = hom.source().orders();
        let tgt = hom.target().orders();
        let a = hom.matrix();
        let free_source: Vec<usize> = (0..src.len()).filter(|&j| src[j].is_zero()).collect();
        let torsion_source: Vec<usize> = (0..src.len()).filter(|&j| !src[j].is_zero()).collect();
        let free_target: Vec<usize> = (0..tgt.len()).filter(|&i| tgt[i].is_zero()).collect();
        let torsion_target: Vec<usize> = (0..tgt.len()).filter(|&i| !tgt[i].is_zero()).collect();

        let block = a.submatrix(&free_target, &free_source);
        let rhs: Vec<BigInt> = free_target.iter().map(|&i| b.exponents()[i].clone()).collect();
        let exponent = lcm_all(torsion_target.iter().map(|&i| &tgt[i]));

        let Some((base, null)) = diophantine_vectors(&block, &rhs) else {
            return Ok(FreeReduction {
                source: hom.source().clone(),
                free_source,
                torsion_source,
                base: None,
                null: Vec::new(),
                exponent,
                torsion: None,
            });
        };

        // torsion rows: [A_t | B·N], rhs b_t - B·y_0
        let mixed = a.submatrix(&torsion_target, &free_source);
        let mut columns: Vec<Vec<BigInt>> =
            torsion_source.iter().map(|&j| torsion_target.iter().map(|&i| a[(i, j)].clone()).collect()).collect();
        columns.extend(null.iter().map(|v| mixed.mul_vec(v)));
        let shift = mixed.mul_vec(&base);
        let t_rhs: Vec<BigInt> = torsion_target.iter().zip(&shift).map(|(&i, s)| &b.exponents()[i] - s).collect();

        let mut t_src: Vec<BigInt> = torsion_source.iter().map(|&j| src[j].clone()).collect();
        t_src.extend(std::iter::repeat_n(exponent.clone(), null.len()));
        let t_tgt: Vec<BigInt> = torsion_target.iter().map(|&i| tgt[i].clone()).collect();
        let t_source = FgAbelianGroup::new(t_src)?;
        let t_target = FgAbelianGroup::new(t_tgt)?;
        let t_hom =
            Homomorphism::new(t_source, t_target.clone(), Matrix::from_columns(torsion_target.len(), &columns))?;
        let t_b = t_target.element(&t_rhs)?;

        Ok(FreeReduction {
            source: hom.source().clone(),
            free_source,
            torsion_source,
            base: Some(base),
            null,
            exponent,
            torsion: Some((t_hom, t_b)),
        })
    }

    /// The finite problem left after substitution; `None` if the free block is inconsistent.
    pub fn torsion_problem(&self) -> Option<(&Homomorphism, &GroupElement)> {
        self.torsion.as_ref().map(|(h, b)| (h, b))
    }

    /// Number of free parameters appended to the torsion source.
    pub fn parameters(&self) -> usize {
        self.null.len()
    }

    /// Exponent of the target torsion subgroup (the parameter modulus).
    pub fn exponent(&self) -> &BigInt {
        &self.exponent
    }

    /// Maps a torsion-problem source vector back to the original source.
    fn lift(&self, v: &[BigInt], with_base: bool) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.source.rank()];
        let nt = self.torsion_source.len();
        for (k, &j) in self.torsion_source.iter().enumerate() {
            out[j] = v[k].clone();
        }
        let mut free = match (&self.base, with_base) {
            (Some(b), true) => b.clone(),
            _ => vec![BigInt::zero(); self.free_source.len()],
        };
        for (t, basis) in v[nt..].iter().zip(&self.null) {
            for (f, x) in free.iter_mut().zip(basis) {
                *f += t * x;
            }
        }
        for (k, &j) in self.free_source.iter().enumerate() {
            out[j] = free[k].clone();
        }
        out
    }

    /// Combines a solution of the torsion problem with the free block.
    pub fn recombine(&self, torsion: &SolutionSet) -> Result<SolutionSet> {
        let SolutionSet::Solvable { particular, kernel } = torsion else {
            return Ok(SolutionSet::Inconsistent);
        };
        let (t_hom, _) =
            self.torsion.as_ref().ok_or_else(|| Error::PartMismatch("free block is inconsistent".into()))?;
        if particular.group() != t_hom.source() {
            return Err(Error::GroupMismatch);
        }
        let x = self.lift(particular.exponents(), true);
        let mut gens: Vec<Vec<BigInt>> = kernel.iter().map(|k| self.lift(k.exponents(), false)).collect();
        // t ≡ 0 modulo the exponent: the parameters' own free directions
        for v in &self.null {
            let mut k = vec![BigInt::zero(); self.source.rank()];
            for (idx, &j) in self.free_source.iter().enumerate() {
                k[j] = &v[idx] * &self.exponent;
            }
            gens.push(k);
        }
        Ok(SolutionSet::from_vectors(&self.source, &x, &gens))
    }
}

/// One per-prime subproblem over p-groups.
#[derive(Clone, Debug)]
pub struct PrimePart {
    pub prime: u64,
    pub hom: Homomorphism,
    pub rhs: GroupElement,
    /// Positions of this part's factors in the primary torsion source / target.
    pub source_factors: Vec<usize>,
    pub target_factors: Vec<usize>,
    /// Source factors that stand for free-block parameters.
    pub free_flags: Vec<bool>,
}

/// Output of [`sylow_split`].
#[derive(Clone, Debug)]
pub struct SylowSplit {
    reduction: FreeReduction,
    forms: Option<(PrimaryForm, PrimaryForm)>,
    pub parts: Vec<PrimePart>,
}

impl SylowSplit {
    /// `false` when the free block alone is already inconsistent.
    pub fn free_block_consistent(&self) -> bool {
        self.reduction.torsion.is_some()
    }

    pub fn reduction(&self) -> &FreeReduction {
        &self.reduction
    }
}

/// Routes `φ(x) = b` to a torsion-free block and one subproblem per prime
/// dividing a source or target order. Accepts any presentation; composite
/// factors are split internally.
pub fn sylow_split(hom: &Homomorphism, b: &GroupElement) -> Result<SylowSplit> {
    hom.validate()?;
    let reduction = FreeReduction::new(hom, b)?;
    let Some((t_hom, t_b)) = reduction.torsion_problem() else {
        return Ok(SylowSplit { reduction, forms: None, parts: Vec::new() });
    };
    let sf = canonical_primary_form(t_hom.source())?;
    let tf = canonical_primary_form(t_hom.target())?;
    let p_hom = translate_hom(t_hom, &sf, &tf);
    let p_b = tf.to_primary(t_b.exponents());
    let params_from = reduction.torsion_source.len();

    let mut primes = sf.primes();
    primes.extend(tf.primes());
    primes.sort_unstable();
    primes.dedup();

    let mut parts = Vec::with_capacity(primes.len());
    for p in primes {
        let src_idx = sf.indices_of(p);
        let tgt_idx = tf.indices_of(p);
        let source = FgAbelianGroup::new(src_idx.iter().map(|&i| sf.group().orders()[i].clone()))?;
        let target = FgAbelianGroup::new(tgt_idx.iter().map(|&i| tf.group().orders()[i].clone()))?;
        let matrix = p_hom.matrix().submatrix(&tgt_idx, &src_idx);
        let part_hom = Homomorphism::new(source, target.clone(), matrix)?;
        let rhs = target.element(&tgt_idx.iter().map(|&i| p_b[i].clone()).collect::<Vec<_>>())?;
        let free_flags = src_idx.iter().map(|&i| sf.factors()[i].origin >= params_from).collect();
        parts.push(PrimePart {
            prime: p,
            hom: part_hom,
            rhs,
            source_factors: src_idx,
            target_factors: tgt_idx,
            free_flags,
        });
    }
    Ok(SylowSplit { reduction, forms: Some((sf, tf)), parts })
}

/// Assembles per-prime solutions (in the order of `split.parts`) into a
/// solution of the original problem.
pub fn crt_recombine(split: &SylowSplit, parts: &[SolutionSet]) -> Result<SolutionSet> {
    if parts.len() != split.parts.len() {
        return Err(Error::PartMismatch(format!("expected {} parts, got {}", split.parts.len(), parts.len())));
    }
    let Some((sf, _)) = &split.forms else {
        return Ok(SolutionSet::Inconsistent);
    };
    let rank = sf.group().rank();
    let mut particular = vec![BigInt::zero(); rank];
    let mut kernel = Vec::new();
    for (part, sol) in split.parts.iter().zip(parts) {
        let SolutionSet::Solvable { particular: x, kernel: ks } = sol else {
            return Ok(SolutionSet::Inconsistent);
        };
        if x.group() != part.hom.source() {
            return Err(Error::PartMismatch(format!("solution for p = {} lives in the wrong group", part.prime)));
        }
        for (pos, v) in part.source_factors.iter().zip(x.exponents()) {
            particular[*pos] = v.clone();
        }
        for k in ks {
            let mut full = vec![BigInt::zero(); rank];
            for (pos, v) in part.source_factors.iter().zip(k.exponents()) {
                full[*pos] = v.clone();
            }
            kernel.push(sf.from_primary(&full));
        }
    }
    let (t_hom, _) = split.reduction.torsion.as_ref().expect("forms imply a torsion problem");
    let torsion = SolutionSet::from_vectors(t_hom.source(), &sf.from_primary(&particular), &kernel);
    split.reduction.recombine(&torsion)
}

/// Solves every part with `solve`, optionally in parallel, and recombines.
pub fn solve_by_parts<F>(hom: &Homomorphism, b: &GroupElement, parallel: bool, solve: F) -> Result<SolutionSet>
where
    F: Fn(&PrimePart) -> Result<SolutionSet> + Sync,
{
    use rayon::prelude::*;
    let split = sylow_split(hom, b)?;
    let solutions: Vec<SolutionSet> = if parallel {
        split.parts.par_iter().map(&solve).collect::<Result<_>>()?
    } else {
        split.parts.iter().map(&solve).collect::<Result<_>>()?
    };
    crt_recombine(&split, &solutions)
}
