//! Finitely generated abelian groups given as direct products of cyclic
//! factors, their elements, homomorphisms between them and solution sets of
//! `φ(x) = b`. Everything is written additively.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{modulo, prime_power};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// `Z_{k_1} × ⋯ × Z_{k_r}` where an order of 0 stands for an infinite cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    orders: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new<T: Into<BigInt>>(orders: impl IntoIterator<Item = T>) -> Result<Self> {
        let orders: Vec<BigInt> = orders.into_iter().map(Into::into).collect();
        if let Some(o) = orders.iter().find(|o| o.is_negative()) {
            return Err(Error::NegativeOrder(o.clone()));
        }
        Ok(FgAbelianGroup { orders })
    }

    /// `Z^rank`
    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { orders: vec![BigInt::zero(); rank] }
    }

    /// `(Z_{p^e})^rank`
    pub fn homocyclic(p: u64, e: u32, rank: usize) -> Self {
        FgAbelianGroup { orders: vec![crate::arith::pow(p, e); rank] }
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Number of cyclic factors in the presentation.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|o| o.is_zero()).count()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Group order, `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        if self.is_finite() {
            Some(self.orders.iter().product())
        } else {
            None
        }
    }

    /// If every factor has order a power of a single prime `p`, returns `p` and
    /// the factor exponents. The trivial presentation yields `None`.
    pub fn p_group_exponents(&self) -> Option<(u64, Vec<u32>)> {
        let mut prime = None;
        let mut exps = Vec::with_capacity(self.orders.len());
        for o in &self.orders {
            let (p, e) = prime_power(o)?;
            if *prime.get_or_insert(p) != p {
                return None;
            }
            exps.push(e);
        }
        prime.map(|p| (p, exps))
    }

    pub fn reduce(&self, exponents: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(exponents.len(), self.orders.len(), "exponent vector length mismatch");
        exponents.iter().zip(&self.orders).map(|(x, o)| modulo(x, o)).collect()
    }

    pub fn element<T: Into<BigInt> + Clone>(&self, exponents: &[T]) -> Result<GroupElement> {
        if exponents.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "element has {} exponents, group has {} factors",
                exponents.len(),
                self.rank()
            )));
        }
        let v: Vec<BigInt> = exponents.iter().cloned().map(Into::into).collect();
        Ok(GroupElement { exponents: self.reduce(&v), group: self.clone() })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { group: self.clone(), exponents: vec![BigInt::zero(); self.rank()] }
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = vec![BigInt::zero(); self.rank()];
        e[i] = BigInt::one();
        GroupElement { exponents: self.reduce(&e), group: self.clone() }
    }

    pub fn is_reduced(&self, exponents: &[BigInt]) -> bool {
        exponents.len() == self.rank()
            && exponents.iter().zip(&self.orders).all(|(x, o)| o.is_zero() || (!x.is_negative() && x < o))
    }

    /// Drops trivial factors.
    pub fn without_trivial_factors(&self) -> Self {
        FgAbelianGroup { orders: self.orders.iter().filter(|o| !o.is_one()).cloned().collect() }
    }

    /// All elements in lexicographic order (first coordinate most significant).
    /// Panics on infinite groups.
    pub fn elements(&self) -> ElementIter<'_> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let empty = self.orders.iter().any(Zero::is_zero);
        ElementIter { group: self, next: if empty { None } else { Some(vec![BigInt::zero(); self.rank()]) } }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.orders.iter().map(|o| if o.is_zero() { "Z".to_string() } else { format!("Z_{o}") }).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

pub struct ElementIter<'a> {
    group: &'a FgAbelianGroup,
    next: Option<Vec<BigInt>>,
}

impl Iterator for ElementIter<'_> {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        let mut done = true;
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.group.orders[i] {
                done = false;
                break;
            }
            succ[i] = BigInt::zero();
        }
        if !done {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// An element of a finitely generated abelian group as a reduced exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: FgAbelianGroup,
    exponents: Vec<BigInt>,
}

impl GroupElement {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn into_exponents(self) -> Vec<BigInt> {
        self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        let v: Vec<BigInt> = self.exponents.iter().map(|x| x * k).collect();
        GroupElement { exponents: self.group.reduce(&v), group: self.group.clone() }
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;

    fn add(self, rhs: &GroupElement) -> GroupElement {
        assert_eq!(self.group, rhs.group, "adding elements of different groups");
        let v: Vec<BigInt> = self.exponents.iter().zip(&rhs.exponents).map(|(a, b)| a + b).collect();
        GroupElement { exponents: self.group.reduce(&v), group: self.group.clone() }
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;

    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;

    fn neg(self) -> GroupElement {
        let v: Vec<BigInt> = self.exponents.iter().map(|x| -x).collect();
        GroupElement { exponents: self.group.reduce(&v), group: self.group.clone() }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A homomorphism `source → target`; column `j` of the matrix is the exponent
/// vector of the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: Matrix,
}

impl Homomorphism {
    /// Builds and validates a homomorphism. Entries are reduced modulo the
    /// order of their target row.
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: Matrix) -> Result<Self> {
        let hom = Self::from_matrix(source, target, matrix)?;
        hom.validate()?;
        Ok(hom)
    }

    /// Checks dimensions and reduces entries, without the well-definedness check.
    pub fn from_matrix(source: FgAbelianGroup, target: FgAbelianGroup, mut matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        matrix.reduce_rows(target.orders());
        Ok(Homomorphism { source, target, matrix })
    }

    pub fn identity(group: &FgAbelianGroup) -> Self {
        Self::from_matrix(group.clone(), group.clone(), Matrix::identity(group.rank())).expect("square")
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// Order compatibility: the image of each generator must have order dividing
    /// the generator's order. Reports the first offending entry in column-major order.
    pub fn validate(&self) -> Result<()> {
        for (j, o) in self.source.orders().iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            for (i, q) in self.target.orders().iter().enumerate() {
                let a = &self.matrix[(i, j)];
                let ok = if q.is_zero() { a.is_zero() } else { (o * a).is_multiple_of(q) };
                if !ok {
                    return Err(Error::InvalidHomomorphism { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Image of an exponent vector, reduced in the target.
    pub fn apply_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        if g.group() != &self.source {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupElement { exponents: self.apply_vec(g.exponents()), group: self.target.clone() })
    }
}

/// Result of solving `φ(x) = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    Inconsistent,
    Solvable { particular: GroupElement, kernel: Vec<GroupElement> },
}

impl SolutionSet {
    /// Wraps raw exponent vectors: reduces them in `source`, drops identity
    /// kernel generators and duplicates.
    pub fn from_vectors(source: &FgAbelianGroup, particular: &[BigInt], kernel: &[Vec<BigInt>]) -> Self {
        let mut seen = BTreeSet::new();
        let mut gens = Vec::new();
        for k in kernel {
            let r = source.reduce(k);
            if r.iter().all(Zero::is_zero) || !seen.insert(r.clone()) {
                continue;
            }
            gens.push(GroupElement { group: source.clone(), exponents: r });
        }
        SolutionSet::Solvable {
            particular: GroupElement { group: source.clone(), exponents: source.reduce(particular) },
            kernel: gens,
        }
    }

    pub fn is_solvable(&self) -> bool {
        matches!(self, SolutionSet::Solvable { .. })
    }

    pub fn particular(&self) -> Option<&GroupElement> {
        match self {
            SolutionSet::Solvable { particular, .. } => Some(particular),
            SolutionSet::Inconsistent => None,
        }
    }

    pub fn kernel(&self) -> &[GroupElement] {
        match self {
            SolutionSet::Solvable { kernel, .. } => kernel,
            SolutionSet::Inconsistent => &[],
        }
    }

    /// Checks that the particular solution maps to `b` and every kernel
    /// generator maps to the identity. Inconsistent sets verify vacuously.
    pub fn verifies(&self, hom: &Homomorphism, b: &GroupElement) -> bool {
        match self {
            SolutionSet::Inconsistent => true,
            SolutionSet::Solvable { particular, kernel } => {
                hom.apply(particular).is_ok_and(|y| &y == b)
                    && kernel.iter().all(|k| hom.apply(k).is_ok_and(|y| y.is_identity()))
            }
        }
    }
}

impl fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionSet::Inconsistent => write!(f, "INCONSISTENT"),
            SolutionSet::Solvable { particular, kernel } => {
                writeln!(f, "SOLVABLE")?;
                writeln!(f, "particular: {particular}")?;
                write!(f, "kernel:")?;
                for k in kernel {
                    write!(f, " {k}")?;
                }
                Ok(())
            }
        }
    }
}

pub fn apply_hom(hom: &Homomorphism, g: &GroupElement) -> Result<GroupElement> {
    hom.apply(g)
}

pub fn validate_hom(hom: &Homomorphism) -> Result<()> {
    hom.validate()
}
