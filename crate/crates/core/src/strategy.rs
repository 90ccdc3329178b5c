//! Named solving strategies and cross-checking between them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::block::solve_p_group_blockwise;
use crate::decompose::{solve_by_parts, PrimePart};
use crate::error::{Error, Result};
use crate::group::{GroupElement, Homomorphism, SolutionSet};
use crate::hensel::{solve_endomorphism, solve_p_group_hom_hensel};
use crate::modular::homocyclic_vectors;
use crate::oracle::{brute_force_solve, EnumerationBudget};
use crate::primary::{canonical_primary_form, translate_hom, PrimaryForm};
use crate::snf::{same_subgroup, solve_fg_via_snf, SnfStrategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    /// Free block by SNF, then Hensel lifting per prime, primes in parallel.
    Auto,
    Snf,
    SnfHybrid,
    Modular,
    Block,
    Hensel,
    Oracle,
}

impl Strategy {
    pub const ALL: [Strategy; 7] = [
        Strategy::Auto,
        Strategy::Snf,
        Strategy::SnfHybrid,
        Strategy::Modular,
        Strategy::Block,
        Strategy::Hensel,
        Strategy::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Snf => "snf",
            Strategy::SnfHybrid => "snf-hybrid",
            Strategy::Modular => "modular",
            Strategy::Block => "block",
            Strategy::Hensel => "hensel",
            Strategy::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Strategy::ALL.into_iter().find(|st| st.name() == s).ok_or_else(|| format!("unknown strategy `{s}`"))
    }
}

/// `(p, ℓ)` if every nontrivial factor is `Z_{p^ℓ}`; `Some(None)` for the
/// trivial group; `None` otherwise.
fn homocyclic_shape(form: &PrimaryForm) -> Option<Option<(u64, u32)>> {
    let mut shape = None;
    for f in form.factors() {
        let this = (f.prime?, f.exponent);
        if *shape.get_or_insert(this) != this {
            return None;
        }
    }
    Some(shape)
}

fn solve_modular(hom: &Homomorphism, b: &GroupElement) -> Result<SolutionSet> {
    let inapplicable = || Error::Inapplicable("modular needs homocyclic source and target of the same exponent".into());
    let sf = canonical_primary_form(hom.source())?;
    let tf = canonical_primary_form(hom.target())?;
    let (s, t) = (homocyclic_shape(&sf).ok_or_else(inapplicable)?, homocyclic_shape(&tf).ok_or_else(inapplicable)?);
    let (p, ell) = match (s, t) {
        (Some(a), Some(b)) if a != b => return Err(inapplicable()),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => (2, 1),
    };
    let p_hom = translate_hom(hom, &sf, &tf);
    let rhs = tf.to_primary(b.exponents());
    Ok(match homocyclic_vectors(p_hom.matrix(), &rhs, p, ell, false)? {
        None => SolutionSet::Inconsistent,
        Some((x, kernel)) => {
            let kernel: Vec<Vec<BigInt>> = kernel.iter().map(|k| sf.from_primary(k)).collect();
            SolutionSet::from_vectors(hom.source(), &sf.from_primary(&x), &kernel)
        }
    })
}

fn hensel_part(part: &PrimePart) -> Result<SolutionSet> {
    if part.hom.is_endomorphism() {
        solve_endomorphism(&part.hom, &part.rhs)
    } else {
        solve_p_group_hom_hensel(&part.hom, &part.rhs)
    }
}

/// Solves `φ(x) = b` with the chosen strategy. Strategies that cannot handle
/// the input report [`Error::Inapplicable`].
pub fn solve(hom: &Homomorphism, b: &GroupElement, strategy: Strategy) -> Result<SolutionSet> {
    hom.validate()?;
    if b.group() != hom.target() {
        return Err(Error::GroupMismatch);
    }
    match strategy {
        Strategy::Auto => solve_by_parts(hom, b, true, hensel_part),
        Strategy::Snf => solve_fg_via_snf(hom, b, SnfStrategy::Direct),
        Strategy::SnfHybrid => solve_fg_via_snf(hom, b, SnfStrategy::Hybrid),
        Strategy::Modular => solve_modular(hom, b),
        Strategy::Block => solve_by_parts(hom, b, false, |part| solve_p_group_blockwise(&part.hom, &part.rhs)),
        Strategy::Hensel => solve_by_parts(hom, b, false, hensel_part),
        Strategy::Oracle => match brute_force_solve(hom, b, EnumerationBudget::default()) {
            Ok(o) => Ok(o.solution),
            Err(e @ (Error::WrongShape(_) | Error::BudgetExceeded { .. })) => Err(Error::Inapplicable(e.to_string())),
            Err(e) => Err(e),
        },
    }
}

/// Same verdict, both particulars verify, and the kernels generate the same subgroup.
pub fn solutions_agree(hom: &Homomorphism, b: &GroupElement, x: &SolutionSet, y: &SolutionSet) -> Result<bool> {
    match (x, y) {
        (SolutionSet::Inconsistent, SolutionSet::Inconsistent) => Ok(true),
        (SolutionSet::Solvable { kernel: kx, .. }, SolutionSet::Solvable { kernel: ky, .. }) => {
            Ok(x.verifies(hom, b) && y.verifies(hom, b) && same_subgroup(hom.source(), kx, ky)?)
        }
        _ => Ok(false),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Solved(SolutionSet),
    Inapplicable(String),
}

#[derive(Clone, Debug)]
pub struct Verification {
    pub outcomes: Vec<(Strategy, Outcome)>,
    pub agree: bool,
}

/// Runs every strategy and compares the applicable ones against `snf`.
pub fn verify_all(hom: &Homomorphism, b: &GroupElement) -> Result<Verification> {
    let reference = solve(hom, b, Strategy::Snf)?;
    let mut agree = reference.verifies(hom, b);
    let mut outcomes = Vec::with_capacity(Strategy::ALL.len());
    for st in Strategy::ALL {
        match solve(hom, b, st) {
            Ok(sol) => {
                agree &= solutions_agree(hom, b, &reference, &sol)?;
                outcomes.push((st, Outcome::Solved(sol)));
            }
            Err(Error::Inapplicable(why)) => outcomes.push((st, Outcome::Inapplicable(why))),
            Err(e) => return Err(e),
        }
    }
    Ok(Verification { outcomes, agree })
}
