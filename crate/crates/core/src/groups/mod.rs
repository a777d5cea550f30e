//! Finite abelian groups, finite groups and their exact character theory.

pub mod abelian;
pub mod chartable;
pub mod classfn;
pub mod cyclotomic;
pub mod finite;
pub mod intmat;
pub mod library;
mod modp;

use thiserror::Error;

pub use abelian::{AbCharacter, AbHom, AbelianPresentation, FinAbGroup, Quotient, Rotation, Subgroup as AbSubgroup};
pub use chartable::{CharacterTable, DEFAULT_ORDER_BOUND};
pub use classfn::{induce_class_function, restrict_class_function, ClassFunction};
pub use cyclotomic::Cyclotomic;
pub use finite::{FinGroup, Subgroup};
pub use intmat::{smith_normal_form, IntMatrix, Smith};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid invariant factors: {0}")]
    InvalidFactors(String),
    #[error("ill-defined homomorphism: {0}")]
    IllDefinedHom(String),
    #[error("group axiom violated: {0}")]
    Axiom(String),
    #[error("group of order {order} exceeds the bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error("element set is not closed under multiplication")]
    NotClosed,
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("expected {expected} class values, found {found}")]
    ClassCount { expected: usize, found: usize },
    #[error("class function is not a character")]
    NotACharacter,
    #[error("character table computation failed: {0}")]
    CharacterTable(String),
}

/// Pontryagin dual of a finite abelian group.
pub fn dual_group(a: &FinAbGroup) -> FinAbGroup {
    a.dual()
}

/// Kernel and image of a homomorphism, each with its embedding.
pub fn hom_kernel_image(f: &AbHom) -> (AbSubgroup, AbSubgroup) {
    f.kernel_image()
}
