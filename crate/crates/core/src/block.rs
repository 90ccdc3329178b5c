//! Solving over arbitrary p-groups by climbing the filtration
//! `G ≥ p^{e_1}G ≥ … ≥ p^{e_ℓ}G = 0`.
//!
//! Layer `i` is the problem with every factor order capped at `p^{e_i}`. The
//! base layer is homocyclic and solved directly; each further layer lifts the
//! particular solution by a correction from the current kernel preimage and
//! refines that preimage, both through one homocyclic system in the kernel
//! generator coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{modulo, pow, prime_power};
use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupElement, Homomorphism, SolutionSet};
use crate::matrix::Matrix;
use crate::modular::{homocyclic_vectors, solve_in_p_group, AffineVectors};

/// Prime and exponents of a finite p-group presentation; trivial factors get
/// exponent 0. `None` for a trivial group.
pub(crate) fn p_exponents(group: &FgAbelianGroup) -> Result<(Option<u64>, Vec<u32>)> {
    let mut prime = None;
    let mut exps = Vec::with_capacity(group.rank());
    for o in group.orders() {
        if o.is_zero() {
            return Err(Error::WrongShape("finite p-group, found a free factor".into()));
        }
        if *o == BigInt::from(1) {
            exps.push(0);
            continue;
        }
        let (p, e) = prime_power(o).ok_or_else(|| Error::WrongShape(format!("prime-power order, got {o}")))?;
        if *prime.get_or_insert(p) != p {
            return Err(Error::WrongShape("p-groups for a single prime".into()));
        }
        exps.push(e);
    }
    Ok((prime, exps))
}

/// Prime and exponents of source and target of a p-group homomorphism.
pub(crate) fn p_group_pair(hom: &Homomorphism) -> Result<(u64, Vec<u32>, Vec<u32>)> {
    let (ps, src) = p_exponents(hom.source())?;
    let (pt, tgt) = p_exponents(hom.target())?;
    let p = match (ps, pt) {
        (Some(a), Some(b)) if a != b => return Err(Error::WrongShape("p-groups for a single prime".into())),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => 2,
    };
    Ok((p, src, tgt))
}

/// The merged exponent chain of a p-group homomorphism and the capping maps
/// onto each layer quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerChain {
    p: u64,
    exponents: Vec<u32>,
    source: Vec<u32>,
    target: Vec<u32>,
}

impl LayerChain {
    pub fn new(hom: &Homomorphism) -> Result<Self> {
        let (p, source, target) = p_group_pair(hom)?;
        let mut exponents: Vec<u32> = source.iter().chain(&target).copied().filter(|&e| e > 0).collect();
        exponents.sort_unstable();
        exponents.dedup();
        Ok(LayerChain { p, exponents, source, target })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `e_1 < … < e_ℓ`.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn source_exponents(&self) -> &[u32] {
        &self.source
    }

    pub fn target_exponents(&self) -> &[u32] {
        &self.target
    }

    fn capped(&self, exps: &[u32], i: usize) -> Vec<BigInt> {
        exps.iter().map(|&a| pow(self.p, a.min(self.exponents[i]))).collect()
    }

    /// `G / p^{e_i} G`.
    pub fn source_quotient(&self, i: usize) -> FgAbelianGroup {
        FgAbelianGroup::new(self.capped(&self.source, i)).expect("positive orders")
    }

    /// `H / p^{e_i} H`.
    pub fn target_quotient(&self, i: usize) -> FgAbelianGroup {
        FgAbelianGroup::new(self.capped(&self.target, i)).expect("positive orders")
    }

    pub fn cap_source(&self, x: &[BigInt], i: usize) -> Vec<BigInt> {
        self.source_quotient(i).reduce(x)
    }

    pub fn cap_target(&self, y: &[BigInt], i: usize) -> Vec<BigInt> {
        self.target_quotient(i).reduce(y)
    }

    /// The map `G / p^{e_i} G → H / p^{e_i} H` induced by `hom`.
    pub fn induced(&self, hom: &Homomorphism, i: usize) -> Homomorphism {
        Homomorphism::new(self.source_quotient(i), self.target_quotient(i), hom.matrix().clone())
            .expect("capping preserves validity")
    }
}

/// State for lifting from layer `layer` to `layer + 1`.
#[derive(Clone, Copy, Debug)]
pub struct LayerContext<'a> {
    pub chain: &'a LayerChain,
    pub hom: &'a Homomorphism,
    pub rhs: &'a [BigInt],
    pub layer: usize,
}

impl LayerContext<'_> {
    fn bounds(&self) -> (u32, u32) {
        (self.chain.exponents[self.layer], self.chain.exponents[self.layer + 1])
    }

    /// Rows still open at the next layer, read in `p^{e_i}H / p^{e_{i+1}}H`.
    fn open_rows(&self) -> Vec<usize> {
        let (lo, _) = self.bounds();
        (0..self.chain.target.len()).filter(|&r| self.chain.target[r] > lo).collect()
    }

    fn layer_coords(&self, v: &[BigInt], rows: &[usize]) -> Result<Vec<BigInt>> {
        let (lo, hi) = self.bounds();
        let (plo, phi) = (pow(self.chain.p, lo), pow(self.chain.p, hi));
        rows.iter()
            .map(|&r| {
                let (q, rem) = modulo(&v[r], &phi).div_rem(&plo);
                if rem.is_zero() {
                    Ok(q)
                } else {
                    Err(Error::Invariant(format!("row {} not divisible by p^{lo} at layer {}", r + 1, self.layer + 1)))
                }
            })
            .collect()
    }

    /// Solves `λ^φ ≡ x^φ - b` on the layer for `λ ∈ ⟨K⟩`, returning the
    /// coefficient solution and the annihilated coefficient combinations.
    fn solve(&self, x: &[BigInt], gens: &[Vec<BigInt>]) -> Result<Option<AffineVectors>> {
        let (lo, hi) = self.bounds();
        let rows = self.open_rows();
        let ax = self.hom.matrix().mul_vec(x);
        let defect: Vec<BigInt> = ax.iter().zip(self.rhs).map(|(a, b)| a - b).collect();
        let d = self.layer_coords(&defect, &rows)?;
        let cols =
            gens.iter().map(|k| self.layer_coords(&self.hom.matrix().mul_vec(k), &rows)).collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(rows.len(), &cols);
        homocyclic_vectors(&m, &d, self.chain.p, hi - lo, false)
    }
}

fn combine(gens: &[Vec<BigInt>], coeffs: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (k, c) in gens.iter().zip(coeffs) {
        for (o, v) in out.iter_mut().zip(k) {
            *o += c * v;
        }
    }
    out
}

/// `x_{i+1} = x_i - λ`, or `None` when `x_i` does not lift.
pub fn lift_particular(x: &[BigInt], kernel: &[Vec<BigInt>], ctx: &LayerContext) -> Result<Option<Vec<BigInt>>> {
    let source = ctx.hom.source();
    Ok(ctx.solve(x, kernel)?.map(|(y, _)| {
        let lambda = combine(kernel, &y, source.rank());
        let diff: Vec<BigInt> = x.iter().zip(&lambda).map(|(a, b)| a - b).collect();
        source.reduce(&diff)
    }))
}

/// Generators of the next kernel preimage: combinations of `kernel` killed on
/// the next layer plus `p^{e_{i+1} - e_i}` times each old generator, pruned.
pub fn lift_kernel(kernel: &[Vec<BigInt>], ctx: &LayerContext) -> Result<Vec<Vec<BigInt>>> {
    let source = ctx.hom.source();
    let n = source.rank();
    let zero = vec![BigInt::zero(); n];
    let (lo, hi) = ctx.bounds();
    let zero_rhs = vec![BigInt::zero(); ctx.rhs.len()];
    let homogeneous = LayerContext { rhs: &zero_rhs, ..*ctx };
    let (_, annihilated) = homogeneous.solve(&zero, kernel)?.expect("homogeneous system is consistent");
    let step = pow(ctx.chain.p, hi - lo);
    let mut out: Vec<Vec<BigInt>> = annihilated.iter().map(|c| source.reduce(&combine(kernel, c, n))).collect();
    out.extend(kernel.iter().map(|k| source.reduce(&k.iter().map(|v| v * &step).collect::<Vec<_>>())));
    Ok(prune_generators(ctx.chain, source, out))
}

/// Greedily drops generators lying in the span of the remaining ones.
pub fn prune_generators(chain: &LayerChain, source: &FgAbelianGroup, gens: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut gens: Vec<Vec<BigInt>> =
        gens.into_iter().map(|g| source.reduce(&g)).filter(|g| g.iter().any(|v| !v.is_zero())).collect();
    let mut seen = Vec::with_capacity(gens.len());
    gens.retain(|g| {
        if seen.contains(g) {
            false
        } else {
            seen.push(g.clone());
            true
        }
    });
    let mut i = gens.len();
    while i > 0 {
        i -= 1;
        let others: Vec<Vec<BigInt>> =
            gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let member = solve_in_p_group(chain.p, &chain.source, &others, &gens[i]).expect("prime checked").is_some();
        if member {
            gens.remove(i);
        }
    }
    gens
}

/// Particular solution and kernel generators after one layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerRecord {
    pub exponent: u32,
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

/// Solves `φ(x) = b` for a homomorphism of p-groups.
pub fn solve_p_group_blockwise(hom: &Homomorphism, b: &GroupElement) -> Result<SolutionSet> {
    solve_p_group_blockwise_traced(hom, b).map(|(s, _)| s)
}

/// As [`solve_p_group_blockwise`], also returning the state after every
/// layer that was reached.
pub fn solve_p_group_blockwise_traced(hom: &Homomorphism, b: &GroupElement) -> Result<(SolutionSet, Vec<LayerRecord>)> {
    hom.validate()?;
    if b.group() != hom.target() {
        return Err(Error::GroupMismatch);
    }
    let chain = LayerChain::new(hom)?;
    let source = hom.source();
    let n = source.rank();
    let rhs = b.exponents();
    if chain.is_empty() {
        return Ok((SolutionSet::from_vectors(source, &vec![BigInt::zero(); n], &[]), Vec::new()));
    }

    let e0 = chain.exponents[0];
    let capped: Vec<u32> = chain.target.iter().map(|&c| c.min(e0)).collect();
    let columns: Vec<Vec<BigInt>> = (0..n).map(|j| hom.matrix().column(j)).collect();
    let mut trace = Vec::with_capacity(chain.len());
    let Some((x0, k0)) = solve_in_p_group(chain.p, &capped, &columns, rhs)? else {
        return Ok((SolutionSet::Inconsistent, trace));
    };
    let mut x = source.reduce(&x0);
    let mut kernel: Vec<Vec<BigInt>> = k0.iter().map(|k| source.reduce(k)).collect();
    for (j, &a) in chain.source.iter().enumerate() {
        if a > e0 {
            let mut g = vec![BigInt::zero(); n];
            g[j] = pow(chain.p, e0);
            kernel.push(g);
        }
    }
    trace.push(LayerRecord { exponent: e0, particular: x.clone(), kernel: kernel.clone() });

    for layer in 0..chain.len() - 1 {
        let ctx = LayerContext { chain: &chain, hom, rhs, layer };
        let Some(next) = lift_particular(&x, &kernel, &ctx)? else {
            return Ok((SolutionSet::Inconsistent, trace));
        };
        x = next;
        kernel = lift_kernel(&kernel, &ctx)?;
        trace.push(LayerRecord { exponent: chain.exponents[layer + 1], particular: x.clone(), kernel: kernel.clone() });
    }
    Ok((SolutionSet::from_vectors(source, &x, &kernel), trace))
}
