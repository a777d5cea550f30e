//! Exact finite-group combinatorics behind lifting L-packets of classical groups
//! to their similitude groups.
//!
//! * [`groups`]: finite abelian groups (Smith normal form, duality), finite groups,
//!   exact cyclotomic character tables.
//! * [`clifford`]: restriction and induction over a normal subgroup with abelian quotient.
//! * [`params`]: component groups of symplectic and even orthogonal parameters.
//! * [`lifting`]: the twist map, coarse and refined packets, pairings.
//! * [`cli`]: parameter files and reports.

pub mod cli;
pub mod clifford;
pub mod groups;
pub mod lifting;
pub mod params;

/// Exact rationals used throughout.
pub type Rational = num_rational::Ratio<i64>;
