//! Ground truth by enumeration of the whole source group.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupElement, Homomorphism, SolutionSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_group_order: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_group_order: 4096 }
    }
}

impl EnumerationBudget {
    pub fn check(&self, group: &FgAbelianGroup) -> Result<()> {
        let order = group.order().ok_or_else(|| Error::WrongShape("finite group".into()))?;
        if order > BigInt::from(self.max_group_order) {
            return Err(Error::BudgetExceeded { order, budget: self.max_group_order });
        }
        Ok(())
    }

    pub fn admits(&self, group: &FgAbelianGroup) -> bool {
        self.check(group).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSolution {
    /// Lexicographically smallest preimage as particular, greedy kernel generators.
    pub solution: SolutionSet,
    /// Every kernel element, in lexicographic order.
    pub kernel_elements: Vec<Vec<BigInt>>,
    pub image_size: usize,
}

/// All elements of `⟨gens⟩` in a finite group.
pub fn subgroup_elements(group: &FgAbelianGroup, gens: &[Vec<BigInt>]) -> BTreeSet<Vec<BigInt>> {
    assert!(group.is_finite(), "subgroup enumeration needs a finite group");
    let mut set = BTreeSet::new();
    set.insert(vec![BigInt::zero(); group.rank()]);
    for g in gens {
        extend_by(group, &mut set, g);
    }
    set
}

/// `S ← S + ⟨g⟩` for a subgroup `S`: cosets `S + kg` are disjoint until `kg ∈ S`.
fn extend_by(group: &FgAbelianGroup, set: &mut BTreeSet<Vec<BigInt>>, g: &[BigInt]) {
    let base: Vec<Vec<BigInt>> = set.iter().cloned().collect();
    let mut shift = group.reduce(g);
    while !set.contains(&shift) {
        for s in &base {
            let v: Vec<BigInt> = s.iter().zip(&shift).map(|(a, b)| a + b).collect();
            set.insert(group.reduce(&v));
        }
        let next: Vec<BigInt> = shift.iter().zip(g).map(|(a, b)| a + b).collect();
        shift = group.reduce(&next);
    }
}

pub fn brute_force_solve(hom: &Homomorphism, b: &GroupElement, budget: EnumerationBudget) -> Result<OracleSolution> {
    hom.validate()?;
    if b.group() != hom.target() {
        return Err(Error::GroupMismatch);
    }
    if !hom.target().is_finite() {
        return Err(Error::WrongShape("finite target".into()));
    }
    let source = hom.source();
    budget.check(source)?;

    let mut particular = None;
    let mut kernel_elements = Vec::new();
    let mut image = BTreeSet::new();
    for x in source.elements() {
        let y = hom.apply_vec(&x);
        if y.iter().all(Zero::is_zero) {
            kernel_elements.push(x.clone());
        }
        if particular.is_none() && y == b.exponents() {
            particular = Some(x);
        }
        image.insert(y);
    }
    let order = source.order().and_then(|o| o.to_usize()).expect("within budget");
    if kernel_elements.len() * image.len() != order {
        return Err(Error::Invariant(format!(
            "|ker| = {} and |im| = {} do not multiply to |G| = {order}",
            kernel_elements.len(),
            image.len()
        )));
    }

    let mut generated = subgroup_elements(source, &[]);
    let mut gens = Vec::new();
    for k in &kernel_elements {
        if !generated.contains(k) {
            extend_by(source, &mut generated, k);
            gens.push(k.clone());
        }
    }
    debug_assert_eq!(generated.len(), kernel_elements.len());

    let solution = match particular {
        None => SolutionSet::Inconsistent,
        Some(x) => SolutionSet::from_vectors(source, &x, &gens),
    };
    Ok(OracleSolution { solution, kernel_elements, image_size: image.len() })
}
