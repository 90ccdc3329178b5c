//! Primary (prime-power) form of a presentation: every finite cyclic factor
//! `Z_k` is split into its prime-power parts by the Chinese remainder theorem.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{crt, factor, modulo, pow};
use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupElement, Homomorphism};
use crate::matrix::Matrix;

/// One factor of a primary presentation. `prime` is `None` for `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryFactor {
    pub prime: Option<u64>,
    pub exponent: u32,
    /// Index of the factor of the original presentation this one came from.
    pub origin: usize,
}

/// A primary presentation together with the coordinate translation to and
/// from the presentation it was derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryForm {
    original: FgAbelianGroup,
    group: FgAbelianGroup,
    factors: Vec<PrimaryFactor>,
}

/// Splits composite factor orders into prime powers, drops trivial factors and
/// sorts by (prime, exponent) with infinite factors last.
pub fn canonical_primary_form(group: &FgAbelianGroup) -> Result<PrimaryForm> {
    let mut factors = Vec::new();
    for (j, o) in group.orders().iter().enumerate() {
        if o.is_zero() {
            factors.push(PrimaryFactor { prime: None, exponent: 0, origin: j });
            continue;
        }
        let parts = factor(o).ok_or_else(|| Error::WrongShape(format!("factorable order, got {o}")))?;
        for (p, e) in parts {
            factors.push(PrimaryFactor { prime: Some(p), exponent: e, origin: j });
        }
    }
    factors.sort_by_key(|f| (f.prime.is_none(), f.prime, f.exponent, f.origin));
    let orders: Vec<BigInt> =
        factors.iter().map(|f| f.prime.map_or_else(BigInt::zero, |p| pow(p, f.exponent))).collect();
    Ok(PrimaryForm { original: group.clone(), group: FgAbelianGroup::new(orders)?, factors })
}

impl PrimaryForm {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn original(&self) -> &FgAbelianGroup {
        &self.original
    }

    pub fn factors(&self) -> &[PrimaryFactor] {
        &self.factors
    }

    /// Distinct primes, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().filter_map(|f| f.prime).collect();
        ps.dedup();
        ps
    }

    pub fn indices_of(&self, p: u64) -> Vec<usize> {
        (0..self.factors.len()).filter(|&i| self.factors[i].prime == Some(p)).collect()
    }

    /// Original coordinates → primary coordinates.
    pub fn to_primary(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.original.rank());
        self.factors.iter().zip(self.group.orders()).map(|(f, q)| modulo(&x[f.origin], q)).collect()
    }

    /// Primary coordinates → original coordinates (reduced).
    pub fn from_primary(&self, y: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(y.len(), self.group.rank());
        let mut out = vec![BigInt::zero(); self.original.rank()];
        for (j, o) in self.original.orders().iter().enumerate() {
            let residues: Vec<(BigInt, BigInt)> = self
                .factors
                .iter()
                .enumerate()
                .filter(|(_, f)| f.origin == j)
                .map(|(i, _)| (y[i].clone(), self.group.orders()[i].clone()))
                .collect();
            out[j] = if o.is_zero() {
                residues[0].0.clone()
            } else if o.is_one() {
                BigInt::zero()
            } else {
                crt(&residues)
            };
        }
        out
    }

    pub fn to_primary_element(&self, g: &GroupElement) -> Result<GroupElement> {
        if g.group() != &self.original {
            return Err(Error::GroupMismatch);
        }
        self.group.element(&self.to_primary(g.exponents()))
    }

    pub fn from_primary_element(&self, g: &GroupElement) -> Result<GroupElement> {
        if g.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        self.original.element(&self.from_primary(g.exponents()))
    }
}

/// Rewrites `hom` in the primary coordinates of its source and target.
pub fn translate_hom(hom: &Homomorphism, src: &PrimaryForm, tgt: &PrimaryForm) -> Homomorphism {
    assert_eq!(hom.source(), src.original());
    assert_eq!(hom.target(), tgt.original());
    let n = src.group().rank();
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        let mut unit = vec![BigInt::zero(); n];
        unit[i] = BigInt::one();
        let image = hom.apply_vec(&src.from_primary(&unit));
        columns.push(tgt.to_primary(&image));
    }
    let matrix = Matrix::from_columns(tgt.group().rank(), &columns);
    Homomorphism::from_matrix(src.group().clone(), tgt.group().clone(), matrix).expect("dimensions agree")
}
