//! Exact solving of `φ(x) = b` for homomorphisms of finitely generated
//! abelian groups, with several independent strategies that cross-check each
//! other: integer Smith normal form, a modular Smith form for homocyclic
//! p-groups, layer-by-layer lifting over the p-power filtration, Hensel
//! lifting of the affine solution space, and brute-force enumeration.

pub mod arith;
pub mod bench;
pub mod block;
pub mod decompose;
pub mod error;
pub mod group;
pub mod hensel;
pub mod matrix;
pub mod modular;
pub mod oracle;
pub mod primary;
pub mod problem;
pub mod random;
pub mod snf;
pub mod strategy;

pub use error::{Error, Result};
pub use group::{apply_hom, validate_hom, FgAbelianGroup, GroupElement, Homomorphism, SolutionSet};
pub use matrix::Matrix;
