//! Summand-level classical parameters and their component groups.
//!
//! Sign vectors live in `F_2^k`, one coordinate per orthogonal summand (in input
//! order); bit `i` set means the element acts by a reflection on summand `i`.

pub mod f2;
pub mod oracle;
pub mod realizations;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{FinAbGroup, GroupError};

pub use oracle::{commutant_oracle, BlockReport, OracleReport, RatMatrix, Realization};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("parameter {id}: dual dimension {found}, expected {expected}")]
    DimensionMismatch { id: String, expected: u32, found: u32 },
    #[error("parameter {id}: discrete flag inconsistent: {reason}")]
    DiscreteInconsistent { id: String, reason: String },
    #[error("parameter {id}: duplicate summand id {summand}")]
    DuplicateId { id: String, summand: String },
    #[error("parameter {id}: summand {summand}: {reason}")]
    Unsupported { id: String, summand: String, reason: String },
    #[error("element is not in A_phi")]
    NotInA,
    #[error("theta_0 is trivial for symplectic kinds")]
    SymplecticKind,
    #[error("realization generator {0} is not orthogonal")]
    NotOrthogonal(usize),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    #[serde(rename = "Sp")]
    Sp,
    #[serde(rename = "SO_split")]
    SoSplit,
    #[serde(rename = "SO_quasisplit")]
    SoQuasisplit,
}

impl GroupKind {
    pub fn is_orthogonal(self) -> bool {
        self != GroupKind::Sp
    }

    /// Dimension of the standard representation of the dual group.
    pub fn dual_dimension(self, n: u32) -> u32 {
        match self {
            GroupKind::Sp => 2 * n + 1,
            _ => 2 * n,
        }
    }

    pub fn name(self, n: u32) -> String {
        match self {
            GroupKind::Sp => format!("Sp({})", 2 * n),
            GroupKind::SoSplit => format!("SO({})", 2 * n),
            GroupKind::SoQuasisplit => format!("SO({})*", 2 * n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SdType {
    Orthogonal,
    Symplectic,
    #[serde(alias = "pair")]
    NonSelfDualPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandSpec {
    pub id: String,
    pub dim: u32,
    #[serde(rename = "type")]
    pub sd_type: SdType,
    #[serde(default = "one")]
    pub multiplicity: u32,
    /// Exponents of the twist character in `X`.
    #[serde(default, alias = "twist_char", skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<i64>>,
}

fn one() -> u32 {
    1
}

impl SummandSpec {
    pub fn new(id: &str, dim: u32, sd_type: SdType) -> Self {
        SummandSpec { id: id.into(), dim, sd_type, multiplicity: 1, twist: None }
    }

    pub fn orthogonal(id: &str, dim: u32) -> Self {
        Self::new(id, dim, SdType::Orthogonal)
    }

    pub fn with_multiplicity(mut self, l: u32) -> Self {
        self.multiplicity = l;
        self
    }

    pub fn with_twist(mut self, t: Vec<i64>) -> Self {
        self.twist = Some(t);
        self
    }

    /// Contribution to the dual dimension.
    pub fn contribution(&self) -> u32 {
        let base = self.dim * self.multiplicity;
        match self.sd_type {
            SdType::NonSelfDualPair => 2 * base,
            _ => base,
        }
    }
}

/// Image of the Galois-fixed center of the dual group in `A_phi`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterImage {
    /// `{±1}` for even orthogonal duals, trivial for odd ones.
    #[default]
    Full,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalParameter {
    pub kind: GroupKind,
    pub n: u32,
    pub summands: Vec<SummandSpec>,
    #[serde(default)]
    pub discrete: bool,
    #[serde(default, skip_serializing_if = "is_default")]
    pub center_image: CenterImage,
}

fn is_default(c: &CenterImage) -> bool {
    *c == CenterImage::Full
}

impl ClassicalParameter {
    pub fn new(kind: GroupKind, n: u32, summands: Vec<SummandSpec>) -> Self {
        let discrete = summands.iter().all(|s| s.multiplicity == 1 && s.sd_type == SdType::Orthogonal);
        ClassicalParameter { kind, n, summands, discrete, center_image: CenterImage::Full }
    }

    pub fn dual_dimension(&self) -> u32 {
        self.kind.dual_dimension(self.n)
    }

    pub fn name(&self) -> String {
        self.kind.name(self.n)
    }

    /// Orthogonal summands, which carry the sign coordinates.
    pub fn orthogonal_summands(&self) -> Vec<&SummandSpec> {
        self.summands.iter().filter(|s| s.sd_type == SdType::Orthogonal).collect()
    }

    pub fn validate(&self, id: &str) -> Result<(), ParamError> {
        let err_id = || id.to_string();
        let mut seen = HashSet::new();
        for s in &self.summands {
            if !seen.insert(s.id.as_str()) {
                return Err(ParamError::DuplicateId { id: err_id(), summand: s.id.clone() });
            }
            let unsupported = |reason: &str| ParamError::Unsupported {
                id: err_id(),
                summand: s.id.clone(),
                reason: reason.into(),
            };
            if s.dim == 0 {
                return Err(unsupported("dimension must be at least 1"));
            }
            if !(1..=2).contains(&s.multiplicity) {
                return Err(unsupported("only multiplicities 1 and 2 are supported"));
            }
            if s.sd_type == SdType::Symplectic && (s.dim % 2 != 0 || s.multiplicity != 2) {
                return Err(unsupported("a symplectic summand needs even dimension and multiplicity 2"));
            }
        }
        let found: u32 = self.summands.iter().map(|s| s.contribution()).sum();
        if found != self.dual_dimension() {
            return Err(ParamError::DimensionMismatch { id: err_id(), expected: self.dual_dimension(), found });
        }
        if self.discrete {
            if let Some(s) = self.summands.iter().find(|s| s.multiplicity != 1 || s.sd_type != SdType::Orthogonal) {
                return Err(ParamError::DiscreteInconsistent {
                    id: err_id(),
                    reason: format!("summand {} is not orthogonal of multiplicity 1", s.id),
                });
            }
        }
        Ok(())
    }
}

/// `A_phi`, `S̄_phi`, `S̄_phi^{Σ0}` as subquotients of the sign space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentGroupData {
    pub kind: GroupKind,
    /// Ids of the sign coordinates.
    pub coordinates: Vec<String>,
    /// Reduced basis of `A_phi`.
    pub a_phi: Vec<u64>,
    /// Image of the center in `A_phi`.
    pub center: u64,
    /// Reduced basis of the complement of the center used to represent `S̄_phi`.
    pub s_bar: Vec<u64>,
    /// Extra generator of `S̄_phi^{Σ0}`, present iff the `θ0`-coset is nonempty.
    pub theta_generator: Option<u64>,
    pub theta0_coset_nonempty: bool,
    pub theta_witness: Option<String>,
    /// Pivot summand id of each generator of `A_phi`.
    pub basis_labels: Vec<String>,
}

impl ComponentGroupData {
    /// Builds the data from `A_phi` inside the sign space and the center image.
    pub fn assemble(kind: GroupKind, coordinates: Vec<String>, a_phi: &[u64], center: u64) -> Self {
        let k = coordinates.len();
        let a_phi = f2::rref(a_phi);
        let reduce = |v: u64| if center != 0 && v & (1 << f2::pivot(center)) != 0 { v ^ center } else { v };
        let s_bar = f2::rref(&a_phi.iter().map(|&v| reduce(v)).collect::<Vec<_>>());
        let (theta_generator, theta_witness) = if kind.is_orthogonal() && a_phi.len() < k {
            let i = (0..k).find(|&i| !f2::contains(&a_phi, 1 << i)).unwrap();
            (Some(reduce(1 << i)), Some(coordinates[i].clone()))
        } else {
            (None, None)
        };
        let basis_labels = a_phi.iter().map(|&b| coordinates[f2::pivot(b)].clone()).collect();
        ComponentGroupData {
            kind,
            coordinates,
            a_phi,
            center,
            s_bar,
            theta0_coset_nonempty: theta_generator.is_some(),
            theta_generator,
            theta_witness,
            basis_labels,
        }
    }

    pub fn sign_rank(&self) -> usize {
        self.coordinates.len()
    }

    pub fn a_group(&self) -> FinAbGroup {
        FinAbGroup::elementary_two(self.a_phi.len())
    }

    pub fn s_bar_group(&self) -> FinAbGroup {
        FinAbGroup::elementary_two(self.s_bar.len())
    }

    pub fn s_bar_sigma0_group(&self) -> FinAbGroup {
        FinAbGroup::elementary_two(self.sigma0_basis().len())
    }

    /// Basis of `S̄_phi^{Σ0}`: the `S̄_phi` basis, then the theta generator.
    pub fn sigma0_basis(&self) -> Vec<u64> {
        let mut b = self.s_bar.clone();
        b.extend(self.theta_generator);
        b
    }

    fn reduce(&self, v: u64) -> u64 {
        if self.center != 0 && v & (1 << f2::pivot(self.center)) != 0 {
            v ^ self.center
        } else {
            v
        }
    }

    pub fn in_a(&self, v: u64) -> bool {
        f2::contains(&self.a_phi, v)
    }

    /// Coordinates in `S̄_phi` of a sign vector in `A_phi`.
    pub fn s_bar_coords(&self, v: u64) -> Option<Vec<i64>> {
        if !self.in_a(v) {
            return None;
        }
        f2::coords(&self.s_bar, self.reduce(v))
    }

    /// Coordinates in `S̄_phi^{Σ0}` of any sign vector (for orthogonal kinds).
    pub fn sigma0_coords(&self, v: u64) -> Option<Vec<i64>> {
        let v = self.reduce(v);
        if let Some(mut c) = f2::coords(&self.s_bar, v) {
            if self.theta_generator.is_some() {
                c.push(0);
            }
            return Some(c);
        }
        let t = self.theta_generator?;
        let mut c = f2::coords(&self.s_bar, self.reduce(v ^ t))?;
        c.push(1);
        Some(c)
    }

    /// Sign vector representing `S̄_phi^{Σ0}` coordinates.
    pub fn sigma0_vector(&self, c: &[i64]) -> u64 {
        f2::combine(&self.sigma0_basis(), c)
    }

    /// Summand ids flipped by `v`, joined with `+`.
    pub fn label(&self, v: u64) -> String {
        let ids: Vec<&str> =
            (0..self.sign_rank()).filter(|&i| v >> i & 1 == 1).map(|i| self.coordinates[i].as_str()).collect();
        if ids.is_empty() {
            "1".into()
        } else {
            ids.join("+")
        }
    }
}

/// Component groups via the sign-vector recipe.
pub fn component_group(phi: &ClassicalParameter) -> Result<ComponentGroupData, ParamError> {
    phi.validate("")?;
    let orth = phi.orthogonal_summands();
    let k = orth.len();
    // det of a reflection on summand i is (-1)^{dim_i}.
    let det: u64 = orth.iter().enumerate().filter(|(_, s)| s.dim % 2 == 1).fold(0, |acc, (i, _)| acc | 1 << i);
    let a_phi = f2::annihilator(k, det);
    let center = if phi.dual_dimension() % 2 == 0 && phi.center_image == CenterImage::Full {
        orth.iter().enumerate().filter(|(_, s)| s.multiplicity % 2 == 1).fold(0, |acc, (i, _)| acc | 1 << i)
    } else {
        0
    };
    let coords = orth.iter().map(|s| s.id.clone()).collect();
    Ok(ComponentGroupData::assemble(phi.kind, coords, &a_phi, center))
}

/// Shape of one factor of an endoscopic group, from its dual dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorShape {
    pub dual_dimension: u32,
    pub kind: Option<GroupKind>,
    pub n: u32,
}

impl FactorShape {
    fn from_dual(d: u32) -> Self {
        match d {
            0 => FactorShape { dual_dimension: 0, kind: None, n: 0 },
            d if d % 2 == 1 => FactorShape { dual_dimension: d, kind: Some(GroupKind::Sp), n: (d - 1) / 2 },
            d => FactorShape { dual_dimension: d, kind: Some(GroupKind::SoSplit), n: d / 2 },
        }
    }
}

impl fmt::Display for FactorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            None => write!(f, "1"),
            Some(GroupKind::Sp) => write!(f, "Sp({})", 2 * self.n),
            Some(_) => write!(f, "SO({})", 2 * self.n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoscopicSplit {
    pub s: u64,
    pub phi_1: Vec<SummandSpec>,
    pub phi_2: Vec<SummandSpec>,
    pub factor_1: FactorShape,
    pub factor_2: FactorShape,
    /// Non-self-dual summands, giving general linear factors `GL(dim)`.
    pub gl_factors: Vec<(String, u32)>,
}

fn dual_dim(s: &[SummandSpec]) -> u32 {
    s.iter().map(|x| x.contribution()).sum()
}

/// Splits `phi` along the `±1` eigenspaces of a representative of `s`.
///
/// A reflection on a multiplicity-2 block has one eigenvalue of each sign, so that
/// block contributes one copy to each side.
pub fn endoscopic_split(phi: &ClassicalParameter, s: u64) -> Result<EndoscopicSplit, ParamError> {
    let data = component_group(phi)?;
    if !data.in_a(s) {
        return Err(ParamError::NotInA);
    }
    let mut phi_1 = Vec::new();
    let mut phi_2 = Vec::new();
    let mut gl_factors = Vec::new();
    let mut coord = 0;
    for sm in &phi.summands {
        let flipped = if sm.sd_type == SdType::Orthogonal {
            coord += 1;
            s >> (coord - 1) & 1 == 1
        } else {
            false
        };
        if sm.sd_type == SdType::NonSelfDualPair {
            gl_factors.push((sm.id.clone(), sm.dim));
        }
        match (flipped, sm.multiplicity) {
            (false, _) => phi_1.push(sm.clone()),
            (true, 1) => phi_2.push(sm.clone()),
            (true, _) => {
                phi_1.push(sm.clone().with_multiplicity(sm.multiplicity - 1));
                phi_2.push(sm.clone().with_multiplicity(1));
            }
        }
    }
    let (d1, d2) = (dual_dim(&phi_1), dual_dim(&phi_2));
    Ok(EndoscopicSplit {
        s,
        factor_1: FactorShape::from_dual(d1),
        factor_2: FactorShape::from_dual(d2),
        phi_1,
        phi_2,
        gl_factors,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theta0Report {
    pub nonempty: bool,
    pub witness: Option<String>,
    pub index: u32,
}

/// Whether the `θ0`-coset of the extended component group is nonempty.
pub fn theta0_equivalence_check(phi: &ClassicalParameter) -> Result<Theta0Report, ParamError> {
    if !phi.kind.is_orthogonal() {
        return Err(ParamError::SymplecticKind);
    }
    let data = component_group(phi)?;
    Ok(Theta0Report {
        nonempty: data.theta0_coset_nonempty,
        witness: data.theta_witness.clone(),
        index: if data.theta0_coset_nonempty { 2 } else { 1 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn orth(dims: &[u32]) -> Vec<SummandSpec> {
        dims.iter().enumerate().map(|(i, &d)| SummandSpec::orthogonal(&format!("s{}", i + 1), d)).collect()
    }

    fn sp(dims: &[u32]) -> ClassicalParameter {
        let n = (dims.iter().sum::<u32>() - 1) / 2;
        ClassicalParameter::new(GroupKind::Sp, n, orth(dims))
    }

    fn so(dims: &[u32]) -> ClassicalParameter {
        ClassicalParameter::new(GroupKind::SoSplit, dims.iter().sum::<u32>() / 2, orth(dims))
    }

    #[test]
    fn sp2_single_summand() {
        let d = component_group(&sp(&[3])).unwrap();
        assert!(d.a_phi.is_empty());
        assert!(d.s_bar.is_empty());
        assert!(!d.theta0_coset_nonempty);
    }

    #[test]
    fn sp4_three_summands() {
        let d = component_group(&sp(&[1, 1, 3])).unwrap();
        assert_eq!(d.a_group(), FinAbGroup::elementary_two(2));
        assert_eq!(d.s_bar_group(), FinAbGroup::elementary_two(2));
        assert_eq!(d.center, 0);
        assert_eq!(d.basis_labels, vec!["s1", "s2"]);
    }

    #[test]
    fn so4_two_planes() {
        let d = component_group(&so(&[2, 2])).unwrap();
        assert_eq!(d.a_group(), FinAbGroup::elementary_two(2));
        assert_eq!(d.s_bar_group(), FinAbGroup::cyclic(2));
        assert_eq!(d.center, 0b11);
        assert!(!d.theta0_coset_nonempty);
        assert_eq!(d.s_bar_sigma0_group(), d.s_bar_group());
    }

    #[test]
    fn theta_checks() {
        assert!(!theta0_equivalence_check(&so(&[2, 2])).unwrap().nonempty);
        let r = theta0_equivalence_check(&so(&[1, 1, 2, 2])).unwrap();
        assert!(r.nonempty);
        assert_eq!(r.witness.as_deref(), Some("s1"));
        assert_eq!(r.index, 2);
        assert!(!theta0_equivalence_check(&so(&[2])).unwrap().nonempty);
        assert_eq!(theta0_equivalence_check(&sp(&[3])).unwrap_err(), ParamError::SymplecticKind);
    }

    #[test]
    fn validation() {
        let mut p = sp(&[1, 1, 3]);
        p.n = 3;
        assert!(matches!(component_group(&p), Err(ParamError::DimensionMismatch { expected: 7, found: 5, .. })));
        let mut p = sp(&[1, 1, 3]);
        p.summands[1].id = "s1".into();
        assert!(matches!(component_group(&p), Err(ParamError::DuplicateId { .. })));
        let mut p = sp(&[1, 2]);
        p.summands[1] = SummandSpec::orthogonal("s2", 1).with_multiplicity(2);
        assert!(matches!(component_group(&p), Err(ParamError::DiscreteInconsistent { .. })));
        p.discrete = false;
        assert!(component_group(&p).is_ok());
        let mut p = sp(&[1, 2]);
        p.summands[1] = SummandSpec::new("s2", 2, SdType::Symplectic);
        p.discrete = false;
        assert!(matches!(component_group(&p), Err(ParamError::Unsupported { .. })));
        let p = ClassicalParameter::new(GroupKind::Sp, 0, vec![SummandSpec::orthogonal("a", 1).with_multiplicity(3)]);
        assert!(matches!(component_group(&p), Err(ParamError::Unsupported { .. })));
    }

    #[test]
    fn multiplicity_two_and_pairs() {
        // 1 + 2*2 = 5: the doubled plane keeps its sign bit, whose reflection has det +1.
        let p = ClassicalParameter::new(
            GroupKind::Sp,
            2,
            vec![SummandSpec::orthogonal("a", 1), SummandSpec::orthogonal("b", 2).with_multiplicity(2)],
        );
        let d = component_group(&p).unwrap();
        assert_eq!(d.a_phi, vec![0b10]);
        // Pairs and symplectic blocks add no sign coordinates.
        let p = ClassicalParameter::new(
            GroupKind::SoSplit,
            4,
            vec![
                SummandSpec::new("q", 2, SdType::Symplectic).with_multiplicity(2),
                SummandSpec::new("z", 1, SdType::NonSelfDualPair),
                SummandSpec::orthogonal("a", 1),
                SummandSpec::orthogonal("b", 1),
            ],
        );
        let d = component_group(&p).unwrap();
        assert_eq!(d.coordinates, vec!["a", "b"]);
        assert_eq!(d.a_phi, vec![0b11]);
        assert_eq!(d.center, 0b11);
        assert!(d.s_bar.is_empty());
        assert!(d.theta0_coset_nonempty);
        assert_eq!(d.s_bar_sigma0_group().order(), 2);
    }

    #[test]
    fn center_override() {
        let mut p = so(&[2, 2]);
        p.kind = GroupKind::SoQuasisplit;
        p.center_image = CenterImage::Trivial;
        let d = component_group(&p).unwrap();
        assert_eq!(d.center, 0);
        assert_eq!(d.s_bar_group().order(), 4);
    }

    #[test]
    fn splits() {
        let p = sp(&[1, 1, 3]);
        let e = endoscopic_split(&p, 0).unwrap();
        assert_eq!(e.phi_1, p.summands);
        assert!(e.phi_2.is_empty());
        assert_eq!(e.factor_1.to_string(), "Sp(4)");
        assert_eq!(e.factor_2.to_string(), "1");

        let e = endoscopic_split(&p, 0b011).unwrap();
        assert_eq!(e.phi_2.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(e.factor_2.to_string(), "SO(2)");
        assert_eq!(e.factor_1.to_string(), "Sp(2)");
        assert_eq!(endoscopic_split(&p, 0b001).unwrap_err(), ParamError::NotInA);

        let e = endoscopic_split(&so(&[2, 2]), 0b10).unwrap();
        assert_eq!(e.factor_1.to_string(), "SO(2)");
        assert_eq!(e.factor_2.to_string(), "SO(2)");
    }

    #[test]
    fn label_and_coords() {
        let d = component_group(&so(&[1, 1, 2, 2])).unwrap();
        assert_eq!(d.label(0b0101), "s1+s3");
        assert_eq!(d.label(0), "1");
        // Every sign vector has Σ0 coordinates; the θ coordinate is its determinant.
        for v in 0..16u64 {
            let c = d.sigma0_coords(v).unwrap();
            assert_eq!(*c.last().unwrap() == 1, !d.in_a(v));
            let back = d.sigma0_vector(&c);
            assert!(back == v || back == v ^ d.center);
        }
    }

    proptest! {
        #[test]
        fn discrete_sp_counts(dims in proptest::collection::vec(1u32..5, 1..7)) {
            let total: u32 = dims.iter().sum();
            prop_assume!(total % 2 == 1);
            let d = component_group(&sp(&dims)).unwrap();
            prop_assert_eq!(d.s_bar.len(), dims.len() - 1);
            prop_assert_eq!(d.basis_labels.len(), d.a_phi.len());
        }

        #[test]
        fn discrete_so_counts(dims in proptest::collection::vec(1u32..5, 1..7)) {
            let total: u32 = dims.iter().sum();
            prop_assume!(total % 2 == 0);
            let d = component_group(&so(&dims)).unwrap();
            let all_even = dims.iter().all(|x| x % 2 == 0);
            prop_assert_eq!(d.theta0_coset_nonempty, !all_even);
            if all_even {
                prop_assert_eq!(d.s_bar.len(), dims.len() - 1);
            }
            prop_assert_eq!(d.s_bar_sigma0_group().order(), 1u64 << (dims.len() - 1));
        }

        #[test]
        fn split_at_negative_swaps(dims in proptest::collection::vec(1u32..4, 1..6), s in 0u64..32) {
            let total: u32 = dims.iter().sum();
            prop_assume!(total % 2 == 0);
            let p = so(&dims);
            let d = component_group(&p).unwrap();
            let s = s & ((1 << dims.len()) - 1);
            prop_assume!(d.in_a(s));
            let a = endoscopic_split(&p, s).unwrap();
            let b = endoscopic_split(&p, s ^ d.center).unwrap();
            prop_assert_eq!(&a.phi_1, &b.phi_2);
            prop_assert_eq!(&a.phi_2, &b.phi_1);
            prop_assert_eq!(a.factor_1.dual_dimension + a.factor_2.dual_dimension, total);
        }
    }
}
