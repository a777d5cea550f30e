//! Passage from the classical group to its similitude group.
//!
//! The component-group side is `S̄^{Σ0}` (with `S̄` as its first coordinates), the
//! twist side is a finite abelian group `X` of characters, and `𝔞` connects them.
//! Packets are finite label sets with an `X`-action, an optional `θ`-action and
//! restriction data into the characters of `S̄`.

mod bridge;
mod pairing;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::CliffordError;
use crate::groups::{AbHom, AbSubgroup, FinAbGroup, GroupError};
use crate::params::{ClassicalParameter, ComponentGroupData, ParamError};

pub use bridge::{classical_bridge, multiplicity_bridge, BridgeReport, BridgeRow, DeclaredMultiplicity};
pub use pairing::{
    construct_pairing, exhaustive_assignments, EdgeKind, FreeChoice, Obstruction, PairingAssignment, PairingOutcome,
    ThetaRecord, WalkStep,
};

#[derive(Debug, Error)]
pub enum LiftingError {
    #[error("summand {summand}: twist character {twist:?} does not fit X = {x}")]
    TwistRange { summand: String, twist: Vec<i64>, x: String },
    #[error("alpha is not well defined: {0}")]
    IllDefined(String),
    #[error("alpha({element}) = {image:?} lies outside X")]
    EscapesX { element: String, image: Vec<i64> },
    #[error("packet: {0}")]
    Packet(String),
    #[error("partition failure: label {0} lies in two parts")]
    Partition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// One named pass/fail verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Locality {
    #[default]
    Nonarchimedean,
    Archimedean,
}

/// The twist group `X`, optionally sitting inside a larger character group in
/// which twist characters are written.
#[derive(Clone, Debug)]
pub struct TwistGroup {
    x: FinAbGroup,
    ambient: Option<AbHom>,
}

impl TwistGroup {
    pub fn new(x: FinAbGroup) -> Self {
        TwistGroup { x, ambient: None }
    }

    /// `X` embedded in `ambient` by the images of its generators.
    pub fn with_ambient(x: FinAbGroup, ambient: FinAbGroup, images: &[Vec<i64>]) -> Result<Self, LiftingError> {
        let emb = AbHom::from_images(x.clone(), ambient, images)?;
        if emb.kernel().order() != 1 {
            return Err(LiftingError::IllDefined("X does not embed in the ambient group".into()));
        }
        Ok(TwistGroup { x, ambient: Some(emb) })
    }

    pub fn x(&self) -> &FinAbGroup {
        &self.x
    }

    /// Group in which twist characters are written.
    pub fn target(&self) -> &FinAbGroup {
        self.ambient.as_ref().map_or(&self.x, |e| e.target())
    }

    pub fn ambient_embedding(&self) -> Option<&AbHom> {
        self.ambient.as_ref()
    }

    pub fn embed(&self, v: &[i64]) -> Vec<i64> {
        match &self.ambient {
            Some(e) => e.apply(v),
            None => self.x.reduce(v),
        }
    }

    /// `X`-coordinates of a target element, if it lies in `X`.
    pub fn pull(&self, v: &[i64]) -> Option<Vec<i64>> {
        match &self.ambient {
            None => Some(self.x.reduce(v)),
            Some(e) => {
                let v = e.target().reduce(v);
                self.x.elements().into_iter().find(|w| e.apply(w) == v)
            }
        }
    }
}

/// Component-group input for [`build_lifting`].
#[derive(Clone, Debug)]
pub struct LiftingSource {
    pub s_bar: FinAbGroup,
    /// `S̄^{Σ0}`; its first `s_bar.rank()` coordinates carry `S̄`.
    pub sigma0: FinAbGroup,
    pub theta_element: Option<Vec<i64>>,
    pub labels: Vec<String>,
}

impl LiftingSource {
    /// A raw abelian `S̄` with trivial `Σ0`.
    pub fn abelian(s_bar: FinAbGroup) -> Self {
        let labels = (1..=s_bar.rank()).map(|i| format!("s{i}")).collect();
        LiftingSource { sigma0: s_bar.clone(), s_bar, theta_element: None, labels }
    }

    pub fn classical(data: &ComponentGroupData) -> Self {
        let s_bar = data.s_bar_group();
        let sigma0 = data.s_bar_sigma0_group();
        let theta_element = data.theta_generator.map(|_| {
            let mut e = vec![0; sigma0.rank()];
            e[s_bar.rank()] = 1;
            e
        });
        let labels = data.sigma0_basis().iter().map(|&v| data.label(v)).collect();
        LiftingSource { s_bar, sigma0, theta_element, labels }
    }
}

#[derive(Clone, Debug)]
pub struct LiftingDatum {
    pub twist: TwistGroup,
    pub s_bar: FinAbGroup,
    pub sigma0: FinAbGroup,
    /// `𝔞` on `S̄^{Σ0}`, valued in the target of the twist group.
    pub alpha: AbHom,
    /// `𝔞` on `S̄`, valued in `X`.
    pub alpha_bar: AbHom,
    /// `ker(𝔞|S̄)` with its embedding into `S̄`.
    pub s_tilde: AbSubgroup,
    /// `𝔞(S̄)` inside `X`.
    pub alpha_image: AbSubgroup,
    /// `𝔞(S̄^{Σ0}) ∩ X` inside `X`.
    pub alpha_sigma0_image: AbSubgroup,
    pub theta_element: Option<Vec<i64>>,
    /// Names of the generators of `S̄^{Σ0}`.
    pub labels: Vec<String>,
}

/// Builds the lifting datum from the images of the generators of `S̄^{Σ0}`.
pub fn build_lifting(source: &LiftingSource, alpha_images: &[Vec<i64>], twist: TwistGroup) -> Result<LiftingDatum, LiftingError> {
    let r = source.s_bar.rank();
    if source.sigma0.rank() < r || source.sigma0.invariant_factors()[..r] != *source.s_bar.invariant_factors() {
        return Err(LiftingError::IllDefined("S̄ is not the leading part of S̄^{Σ0}".into()));
    }
    let alpha = AbHom::from_images(source.sigma0.clone(), twist.target().clone(), alpha_images)
        .map_err(|e| LiftingError::IllDefined(e.to_string()))?;
    let mut pulled = Vec::with_capacity(r);
    for j in 0..r {
        let img = alpha.apply(&source.sigma0.generator(j));
        match twist.pull(&img) {
            Some(p) => pulled.push(p),
            None => {
                let element = source.labels.get(j).cloned().unwrap_or_else(|| format!("s{}", j + 1));
                return Err(LiftingError::EscapesX { element, image: img });
            }
        }
    }
    let alpha_bar = AbHom::from_images(source.s_bar.clone(), twist.x().clone(), &pulled)?;
    let (s_tilde, alpha_image) = alpha_bar.kernel_image();
    let sigma_gens: Vec<Vec<i64>> =
        source.sigma0.elements().iter().filter_map(|s| twist.pull(&alpha.apply(s))).collect();
    let alpha_sigma0_image = twist.x().subgroup(&sigma_gens);
    let theta_element = source.theta_element.as_ref().map(|t| source.sigma0.reduce(t));
    Ok(LiftingDatum {
        twist,
        s_bar: source.s_bar.clone(),
        sigma0: source.sigma0.clone(),
        alpha,
        alpha_bar,
        s_tilde,
        alpha_image,
        alpha_sigma0_image,
        theta_element,
        labels: source.labels.clone(),
    })
}

/// `𝔞` from the twist characters of the orthogonal summands: a sign vector maps to
/// the sum of the twist characters of the summands it flips.
pub fn classical_lifting(
    phi: &ClassicalParameter,
    data: &ComponentGroupData,
    twist: TwistGroup,
) -> Result<LiftingDatum, LiftingError> {
    let target = twist.target().clone();
    let orth = phi.orthogonal_summands();
    let mut chars = Vec::with_capacity(orth.len());
    for s in &orth {
        let t = s.twist.clone().unwrap_or_else(|| target.zero());
        let fits = t.len() == target.rank()
            && t.iter().zip(target.invariant_factors()).all(|(&e, &d)| (0..d as i64).contains(&e));
        if !fits {
            return Err(LiftingError::TwistRange { summand: s.id.clone(), twist: t, x: target.to_string() });
        }
        chars.push(t);
    }
    let on_vector = |v: u64| {
        (0..chars.len()).filter(|&i| v >> i & 1 == 1).fold(target.zero(), |acc, i| target.add(&acc, &chars[i]))
    };
    if data.center != 0 && on_vector(data.center) != target.zero() {
        return Err(LiftingError::IllDefined(format!(
            "the twist characters do not cancel on the center {}",
            data.label(data.center)
        )));
    }
    let images: Vec<Vec<i64>> = data.sigma0_basis().iter().map(|&v| on_vector(v)).collect();
    build_lifting(&LiftingSource::classical(data), &images, twist)
}

impl LiftingDatum {
    /// `|X / 𝔞(S̄^{Σ0})|`.
    pub fn fibre(&self) -> u64 {
        self.twist.x().order() / self.alpha_sigma0_image.order()
    }

    /// `ω_{x0} = 𝔞(x0)` in `X`, if there is a `θ`-element and its image lies in `X`.
    pub fn theta_twist(&self) -> Option<Vec<i64>> {
        self.theta_element.as_ref().and_then(|t| self.twist.pull(&self.alpha.apply(t)))
    }

    /// Restriction of a character of `S̄` to `S̃`.
    pub fn restrict(&self, rho: &[i64]) -> Vec<i64> {
        self.s_bar.character(rho).pullback(self.s_tilde.embedding()).exponents().to_vec()
    }

    pub fn s_tilde_dual(&self) -> FinAbGroup {
        self.s_tilde.group().dual()
    }

    /// Coset representatives of `X / 𝔞(S̄^{Σ0})`: the first element of each coset.
    pub fn coset_representatives(&self) -> Vec<Vec<i64>> {
        let x = self.twist.x();
        let q = x.quotient(&self.alpha_sigma0_image.ambient_generators());
        let mut reps: Vec<Option<Vec<i64>>> = vec![None; q.order() as usize];
        for w in x.elements() {
            let i = q.group().index_of(&q.projection().apply(&w));
            if reps[i].is_none() {
                reps[i] = Some(w);
            }
        }
        reps.into_iter().map(|r| r.expect("projection is onto")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoarseCounts {
    pub locality: Locality,
    pub s_bar: u64,
    pub s_tilde: u64,
    pub image: u64,
    pub sigma0_image: u64,
    pub x: u64,
    /// `|X / 𝔞(S̄^{Σ0})|`.
    pub fibre: u64,
    pub orbit_size: u64,
    pub orbit_count: u64,
    /// False in archimedean mode, where `orbit_count` is only bounded by `|S̃|`.
    pub orbit_count_exact: bool,
    pub coarse_total: u64,
    pub checks: Vec<Check>,
}

pub fn coarse_structure(l: &LiftingDatum, locality: Locality, deficit: u64) -> CoarseCounts {
    let s_bar = l.s_bar.order();
    let s_tilde = l.s_tilde.order();
    let image = l.alpha_image.order();
    let fibre = l.fibre();
    let orbit_size = s_bar / s_tilde;
    let (orbit_count, exact) = match locality {
        Locality::Nonarchimedean => (s_tilde, true),
        Locality::Archimedean => (s_tilde.saturating_sub(deficit).max(1), false),
    };
    let coarse_total = orbit_count * fibre;
    let mut checks = vec![
        Check::new("exactness", s_tilde * image == s_bar, format!("|S̃|·|𝔞(S̄)| = {s_tilde}·{image}, |S̄| = {s_bar}")),
        Check::new(
            "orbit-accounting",
            orbit_size * s_tilde == s_bar && orbit_size == image,
            format!("orbit_size·|S̃| = {orbit_size}·{s_tilde}"),
        ),
        Check::new(
            "fibration",
            coarse_total == orbit_count * fibre && l.twist.x().order() % l.alpha_sigma0_image.order() == 0,
            format!("coarse_total = {orbit_count}·{fibre}"),
        ),
        Check::new(
            "image-in-x",
            l.alpha_image.ambient_elements().iter().all(|w| l.alpha_sigma0_image.contains(w)),
            "𝔞(S̄) ⊆ 𝔞(S̄^{Σ0}) ∩ X",
        ),
    ];
    if locality == Locality::Archimedean {
        checks.push(Check::new("orbit-bound", orbit_count <= s_tilde, format!("orbit_count ≤ {s_tilde}")));
    }
    CoarseCounts {
        locality,
        s_bar,
        s_tilde,
        image,
        sigma0_image: l.alpha_sigma0_image.order(),
        x: l.twist.x().order(),
        fibre,
        orbit_size,
        orbit_count,
        orbit_count_exact: exact,
        coarse_total,
        checks,
    }
}

fn default_multiplicity() -> i64 {
    1
}

fn is_one(m: &i64) -> bool {
    *m == 1
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// One member of a coarse packet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketLabel {
    pub id: String,
    /// Characters of `S̄` occurring in the restriction, as exponent vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<Vec<Vec<i64>>>,
    /// Image under each generator of `X`.
    pub twist: Vec<String>,
    /// Image under `θ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub generic: bool,
    /// `m(π̃, π)`.
    #[serde(default = "default_multiplicity", skip_serializing_if = "is_one")]
    pub multiplicity: i64,
}

/// Central character label with its `θ`-twist rule `χ̃^θ = χ̃ · ω_{x0}|_Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralCharacter {
    pub label: String,
    /// Declared shift, in the coordinates of the twist target.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_shift: Option<Vec<i64>>,
}

impl Default for CentralCharacter {
    fn default() -> Self {
        CentralCharacter { label: "chi".into(), theta_shift: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoarsePacket {
    pub labels: Vec<PacketLabel>,
    #[serde(default)]
    pub central_character: CentralCharacter,
}

fn digits(v: &[i64]) -> String {
    if v.is_empty() {
        "0".into()
    } else {
        v.iter().map(|d| d.to_string()).collect()
    }
}

impl CoarsePacket {
    /// The packet determined by the datum: one label per pair (character `τ` of `S̃`,
    /// coset of `𝔞(S̄^{Σ0})` in `X`). Labels stand for `Σ0`-classes, so `θ` fixes them.
    /// In archimedean mode the last `deficit` nontrivial characters are dropped.
    pub fn canonical(l: &LiftingDatum, locality: Locality, deficit: u64) -> CoarsePacket {
        let x = l.twist.x();
        let q = x.quotient(&l.alpha_sigma0_image.ambient_generators());
        let dual = l.s_tilde_dual();
        let mut taus = dual.elements();
        if locality == Locality::Archimedean {
            let keep = taus.len().saturating_sub(deficit as usize).max(1);
            taus.truncate(keep);
        }
        let cosets = q.group().elements();
        let name = |t: &[i64], c: &[i64]| format!("t{}-w{}", digits(t), digits(c));
        let s_bar_chars = l.s_bar.dual().elements();
        let theta = l.theta_twist().is_some();
        let mut labels = Vec::new();
        for t in &taus {
            let restriction: Vec<Vec<i64>> = s_bar_chars.iter().filter(|r| l.restrict(r) == *t).cloned().collect();
            for c in &cosets {
                let twist = (0..x.rank())
                    .map(|j| name(t, &q.group().add(c, &q.projection().apply(&x.generator(j)))))
                    .collect();
                let generic = t.iter().all(|&e| e == 0) && c.iter().all(|&e| e == 0);
                labels.push(PacketLabel {
                    id: name(t, c),
                    restriction: Some(restriction.clone()),
                    twist,
                    theta: theta.then(|| name(t, c)),
                    generic,
                    multiplicity: 1,
                });
            }
        }
        CoarsePacket { labels, central_character: CentralCharacter::default() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn index(&self) -> HashMap<&str, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.id.as_str(), i)).collect()
    }

    pub fn generic(&self) -> Option<usize> {
        self.labels.iter().position(|l| l.generic)
    }

    pub fn has_theta(&self) -> bool {
        self.labels.iter().any(|l| l.theta.is_some())
    }

    /// Schema checks against the datum.
    pub fn validate(&self, l: &LiftingDatum) -> Result<(), LiftingError> {
        let idx = self.index();
        if idx.len() != self.labels.len() {
            return Err(LiftingError::Packet("duplicate label ids".into()));
        }
        let rank = l.twist.x().rank();
        let s_bar_rank = l.s_bar.rank();
        for lab in &self.labels {
            if lab.twist.len() != rank {
                return Err(LiftingError::Packet(format!("label {}: {} twist images for rank {rank}", lab.id, lab.twist.len())));
            }
            for t in lab.twist.iter().chain(&lab.theta) {
                if !idx.contains_key(t.as_str()) {
                    return Err(LiftingError::Packet(format!("label {}: unknown label {t}", lab.id)));
                }
            }
            if let Some(rs) = &lab.restriction {
                if rs.is_empty() || rs.iter().any(|r| r.len() != s_bar_rank) {
                    return Err(LiftingError::Packet(format!("label {}: restriction characters must have {s_bar_rank} exponents", lab.id)));
                }
            }
            if lab.multiplicity < 1 {
                return Err(LiftingError::Packet(format!("label {}: multiplicity must be positive", lab.id)));
            }
        }
        if self.labels.iter().filter(|x| x.generic).count() > 1 {
            return Err(LiftingError::Packet("more than one generic label".into()));
        }
        if let Some(g) = self.generic() {
            if self.labels[g].multiplicity != 1 {
                return Err(LiftingError::Packet(format!("generic label {} must have multiplicity one", self.labels[g].id)));
            }
        }
        let with_theta = self.labels.iter().filter(|x| x.theta.is_some()).count();
        if with_theta != 0 && with_theta != self.labels.len() {
            return Err(LiftingError::Packet("theta must be declared on every label or none".into()));
        }
        for j in 0..rank {
            let img: BTreeSet<usize> = (0..self.len()).map(|i| self.twist_generator(j, i)).collect();
            if img.len() != self.len() {
                return Err(LiftingError::Packet(format!("twist by generator {} is not a permutation", j + 1)));
            }
        }
        if self.has_theta() {
            let img: BTreeSet<usize> = (0..self.len()).filter_map(|i| self.theta_image(i)).collect();
            if img.len() != self.len() {
                return Err(LiftingError::Packet("theta is not a permutation".into()));
            }
        }
        Ok(())
    }

    pub fn twist_generator(&self, j: usize, i: usize) -> usize {
        self.index()[self.labels[i].twist[j].as_str()]
    }

    pub fn theta_image(&self, i: usize) -> Option<usize> {
        let t = self.labels[i].theta.as_ref()?;
        Some(self.index()[t.as_str()])
    }

    /// `label ⊗ ω` for `ω ∈ X`, applying generator `j` `ω_j` times.
    pub fn twist_by(&self, x: &FinAbGroup, omega: &[i64], i: usize) -> usize {
        let omega = x.reduce(omega);
        let mut cur = i;
        for (j, &e) in omega.iter().enumerate() {
            for _ in 0..e {
                cur = self.twist_generator(j, cur);
            }
        }
        cur
    }

    /// Elements of `X` fixing the label.
    pub fn stabilizer(&self, x: &FinAbGroup, i: usize) -> Vec<Vec<i64>> {
        x.elements().into_iter().filter(|w| self.twist_by(x, w, i) == i).collect()
    }

    /// Checks that the generator permutations define an action of `X`.
    pub fn action_check(&self, x: &FinAbGroup) -> Check {
        let n = self.len();
        let f = x.invariant_factors();
        let mut bad = Vec::new();
        for j in 0..x.rank() {
            // twist_by reduces exponents, so apply the generator d_j times by hand.
            for i in 0..n {
                let mut cur = i;
                for _ in 0..f[j] {
                    cur = self.twist_generator(j, cur);
                }
                if cur != i {
                    bad.push(format!("generator {} has order not dividing {}", j + 1, f[j]));
                    break;
                }
            }
            for k in j + 1..x.rank() {
                if (0..n).any(|i| self.twist_generator(j, self.twist_generator(k, i)) != self.twist_generator(k, self.twist_generator(j, i))) {
                    bad.push(format!("generators {} and {} do not commute", j + 1, k + 1));
                }
            }
        }
        Check::new("twist-action", bad.is_empty(), if bad.is_empty() { format!("action of X = {x}") } else { bad.join("; ") })
    }

    /// Structural checks of the packet against the datum.
    pub fn checks(&self, l: &LiftingDatum, counts: &CoarseCounts) -> Vec<Check> {
        let x = l.twist.x();
        let mut out = vec![self.action_check(x)];
        let expected: BTreeSet<Vec<i64>> = l.alpha_sigma0_image.ambient_elements().into_iter().collect();
        let wrong: Vec<&str> = (0..self.len())
            .filter(|&i| self.stabilizer(x, i).into_iter().collect::<BTreeSet<_>>() != expected)
            .map(|i| self.labels[i].id.as_str())
            .collect();
        out.push(Check::new(
            "twist-stabilizer",
            wrong.is_empty(),
            if wrong.is_empty() { format!("every stabilizer is 𝔞(S̄^Σ0) of order {}", expected.len()) } else { format!("wrong stabilizer at {}", wrong.join(", ")) },
        ));
        out.push(Check::new(
            "packet-size",
            self.len() as u64 == counts.coarse_total,
            format!("{} labels, coarse_total {}", self.len(), counts.coarse_total),
        ));
        if self.labels.iter().all(|x| x.restriction.is_some()) && !self.is_empty() {
            let orbit_size = counts.orbit_size as usize;
            let mut bad = Vec::new();
            let mut covered: HashMap<Vec<i64>, u64> = HashMap::new();
            for lab in &self.labels {
                let rs = lab.restriction.as_ref().unwrap();
                let set: BTreeSet<Vec<i64>> = rs.iter().map(|r| l.s_bar.reduce(r)).collect();
                let taus: BTreeSet<Vec<i64>> = set.iter().map(|r| l.restrict(r)).collect();
                if taus.len() != 1 || set.len() != orbit_size {
                    bad.push(lab.id.clone());
                }
                for r in set {
                    *covered.entry(r).or_default() += 1;
                }
            }
            out.push(Check::new(
                "restriction-orbit",
                bad.is_empty(),
                if bad.is_empty() { format!("each restriction is one orbit of size {orbit_size}") } else { format!("not a single orbit: {}", bad.join(", ")) },
            ));
            let fibre_ok = covered.values().all(|&c| c == counts.fibre);
            let orbits: BTreeSet<Vec<i64>> = covered.keys().map(|r| l.restrict(r)).collect();
            let count_ok = match counts.locality {
                Locality::Nonarchimedean => covered.len() as u64 == l.s_bar.order() && orbits.len() as u64 == counts.orbit_count,
                Locality::Archimedean => orbits.len() as u64 <= l.s_tilde.order(),
            };
            out.push(Check::new(
                "restriction-fibres",
                fibre_ok && count_ok,
                format!("{} base characters in {} orbits, each under {} labels", covered.len(), orbits.len(), counts.fibre),
            ));
        }
        if let Some(t) = &l.theta_element {
            let omega = l.alpha.apply(t);
            // Characters trivial on the center are exactly X; compare modulo X.
            let declared = self.central_character.theta_shift.clone();
            let ok = match &declared {
                None => true,
                Some(d) => {
                    let diff = l.twist.target().add(d, &l.twist.target().neg(&omega));
                    l.twist.pull(&diff).is_some()
                }
            };
            out.push(Check::new(
                "central-character-theta",
                ok,
                format!("{}^θ = {}·ω_x0|Z with ω_x0 = {:?}", self.central_character.label, self.central_character.label, omega),
            ));
        }
        out
    }

    /// Orbits of the `X`-action, each sorted, ordered by first member.
    pub fn twist_orbits(&self, x: &FinAbGroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let mut orbit: Vec<usize> = x.elements().iter().map(|w| self.twist_by(x, w, i)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &o in &orbit {
                seen[o] = true;
            }
            out.push(orbit);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinedPart {
    /// Coset representative `ω` in `X`.
    pub omega: Vec<i64>,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinedPacket {
    /// Shift applied to the generic section.
    pub seed: Vec<i64>,
    /// Labels of `Π_φ̃`.
    pub subset: Vec<String>,
    pub parts: Vec<RefinedPart>,
    pub checks: Vec<Check>,
}

impl RefinedPacket {
    /// Set of parts, each as a sorted label set.
    pub fn partition(&self) -> BTreeSet<BTreeSet<String>> {
        self.parts.iter().map(|p| p.labels.iter().cloned().collect()).collect()
    }
}

/// Partition of the coarse packet into the twists of one section by the cosets of
/// `𝔞(S̄^{Σ0})` in `X`. The section takes the generic label in its orbit and the
/// lexicographically smallest label in every other orbit, then is twisted by `seed`.
pub fn refined_decomposition(
    l: &LiftingDatum,
    packet: &CoarsePacket,
    seed: &[i64],
) -> Result<RefinedPacket, LiftingError> {
    let x = l.twist.x();
    let seed = x.reduce(seed);
    let generic = packet.generic();
    let mut section = Vec::new();
    for orbit in packet.twist_orbits(x) {
        let base = match generic {
            Some(g) if orbit.contains(&g) => g,
            _ => *orbit.iter().min_by_key(|&&i| &packet.labels[i].id).unwrap(),
        };
        section.push(packet.twist_by(x, &seed, base));
    }
    let reps = l.coset_representatives();
    let mut owner: Vec<Option<usize>> = vec![None; packet.len()];
    let mut parts = Vec::new();
    for (k, w) in reps.iter().enumerate() {
        let mut members: Vec<usize> = section.iter().map(|&s| packet.twist_by(x, w, s)).collect();
        members.sort_by_key(|&i| &packet.labels[i].id);
        members.dedup();
        for &m in &members {
            if owner[m].replace(k).is_some() {
                return Err(LiftingError::Partition(packet.labels[m].id.clone()));
            }
        }
        parts.push(RefinedPart { omega: w.clone(), labels: members.iter().map(|&i| packet.labels[i].id.clone()).collect() });
    }
    let covered = owner.iter().all(|o| o.is_some());
    let sizes: BTreeSet<usize> = parts.iter().map(|p| p.labels.len()).collect();
    let mut subset: Vec<String> = section.iter().map(|&i| packet.labels[i].id.clone()).collect();
    subset.sort();
    let checks = vec![
        Check::new("refined-cover", covered, format!("{} parts cover {} labels", parts.len(), packet.len())),
        Check::new(
            "refined-part-count",
            parts.len() as u64 == l.fibre(),
            format!("{} parts, |X/𝔞(S̄^Σ0)| = {}", parts.len(), l.fibre()),
        ),
        Check::new("refined-equal-sizes", sizes.len() <= 1, format!("part sizes {sizes:?}")),
    ];
    Ok(RefinedPacket { seed, subset, parts, checks })
}

/// An `ω ∈ X` with `b.subset = a.subset ⊗ ω`, when the two partitions coincide.
pub fn related_by_twist(l: &LiftingDatum, packet: &CoarsePacket, a: &RefinedPacket, b: &RefinedPacket) -> Option<Vec<i64>> {
    if a.partition() != b.partition() {
        return None;
    }
    let x = l.twist.x();
    let idx = packet.index();
    let target: BTreeSet<&str> = b.subset.iter().map(|s| s.as_str()).collect();
    x.elements().into_iter().find(|w| {
        let moved: BTreeSet<&str> =
            a.subset.iter().map(|s| packet.labels[packet.twist_by(x, w, idx[s.as_str()])].id.as_str()).collect();
        moved == target
    })
}

/// Full lifting analysis of one datum and packet.
#[derive(Clone, Debug, Serialize)]
pub struct LiftingReport {
    pub counts: CoarseCounts,
    pub s_tilde: FinAbGroup,
    pub alpha_image: FinAbGroup,
    pub packet_checks: Vec<Check>,
    pub pairing: PairingOutcome,
    /// Number of assignments satisfying every action constraint, for small packets.
    pub exhaustive: Option<u64>,
    pub refined: Option<RefinedPacket>,
    pub bridge: BridgeReport,
}

impl LiftingReport {
    pub fn checks(&self) -> Vec<&Check> {
        let mut out: Vec<&Check> = self.counts.checks.iter().chain(&self.packet_checks).collect();
        match &self.pairing {
            PairingOutcome::Assignment(a) => out.extend(&a.checks),
            PairingOutcome::Obstruction(o) => out.extend(&o.checks),
        }
        if let Some(r) = &self.refined {
            out.extend(&r.checks);
        }
        out.extend(&self.bridge.checks);
        out
    }

    pub fn all_passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }
}

pub fn analyze(
    l: &LiftingDatum,
    packet: &CoarsePacket,
    locality: Locality,
    deficit: u64,
) -> Result<LiftingReport, LiftingError> {
    packet.validate(l)?;
    let counts = coarse_structure(l, locality, deficit);
    let packet_checks = packet.checks(l, &counts);
    let pairing = construct_pairing(l, packet, locality);
    let exhaustive = exhaustive_assignments(l, packet, 16);
    let refined = match &pairing {
        PairingOutcome::Assignment(_) => Some(refined_decomposition(l, packet, &l.twist.x().zero())?),
        PairingOutcome::Obstruction(_) => None,
    };
    let bridge = classical_bridge(l, packet)?;
    Ok(LiftingReport {
        counts,
        s_tilde: l.s_tilde.group().clone(),
        alpha_image: l.alpha_image.group().clone(),
        packet_checks,
        pairing,
        exhaustive,
        refined,
        bridge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{component_group, realizations, GroupKind, SummandSpec};

    fn e2(r: usize) -> FinAbGroup {
        FinAbGroup::elementary_two(r)
    }

    fn raw(s: usize, x: usize, images: &[Vec<i64>]) -> LiftingDatum {
        build_lifting(&LiftingSource::abelian(e2(s)), images, TwistGroup::new(e2(x))).unwrap()
    }

    fn kernel_by_enumeration(l: &LiftingDatum) -> usize {
        l.s_bar.elements().iter().filter(|s| l.alpha_bar.apply(s).iter().all(|&c| c == 0)).count()
    }

    #[test]
    fn zero_alpha() {
        let l = raw(2, 2, &[vec![0, 0], vec![0, 0]]);
        assert_eq!(l.s_tilde.order(), 4);
        assert_eq!(l.alpha_image.order(), 1);
        let c = coarse_structure(&l, Locality::Nonarchimedean, 0);
        assert_eq!((c.orbit_size, c.orbit_count, c.coarse_total), (1, 4, 16));
    }

    #[test]
    fn equal_images() {
        let l = raw(2, 2, &[vec![1, 0], vec![1, 0]]);
        assert_eq!(kernel_by_enumeration(&l), 2);
        let elems = l.s_tilde.ambient_elements();
        assert_eq!(elems.len(), 2);
        assert!(elems.contains(&vec![1, 1]));
        assert_eq!(l.alpha_image.order(), 2);
        let c = coarse_structure(&l, Locality::Nonarchimedean, 0);
        assert_eq!((c.orbit_size, c.orbit_count, c.coarse_total), (2, 2, 4));
        let p = CoarsePacket::canonical(&l, Locality::Nonarchimedean, 0);
        let r = refined_decomposition(&l, &p, &[0, 0]).unwrap();
        assert_eq!(r.parts.len(), 2);
        assert!(r.parts.iter().all(|p| p.labels.len() == 2));
        assert!(r.checks.iter().all(|c| c.passed));
    }

    #[test]
    fn injective_alpha() {
        let l = raw(2, 2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(kernel_by_enumeration(&l), 1);
        assert_eq!(l.s_tilde.order(), 1);
        let c = coarse_structure(&l, Locality::Nonarchimedean, 0);
        assert_eq!((c.orbit_size, c.orbit_count, c.coarse_total), (4, 1, 1));
    }

    #[test]
    fn trivial_component_group() {
        let l = raw(0, 2, &[]);
        let c = coarse_structure(&l, Locality::Nonarchimedean, 0);
        assert_eq!((c.orbit_size, c.orbit_count, c.coarse_total), (1, 1, 4));
        let p = CoarsePacket::canonical(&l, Locality::Nonarchimedean, 0);
        let r = refined_decomposition(&l, &p, &[0, 0]).unwrap();
        assert_eq!(r.parts.len(), 4);
        assert!(r.parts.iter().all(|p| p.labels.len() == 1));
    }

    #[test]
    fn single_part_when_alpha_onto() {
        let l = raw(2, 1, &[vec![1], vec![0]]);
        let p = CoarsePacket::canonical(&l, Locality::Nonarchimedean, 0);
        let r = refined_decomposition(&l, &p, &[0]).unwrap();
        assert_eq!(r.parts.len(), 1);
        assert_eq!(r.parts[0].labels.len(), p.len());
    }

    #[test]
    fn escape_from_x_is_rejected() {
        let t = TwistGroup::with_ambient(e2(1), e2(2), &[vec![1, 0]]).unwrap();
        let err = build_lifting(&LiftingSource::abelian(e2(1)), &[vec![0, 1]], t).unwrap_err();
        assert!(matches!(err, LiftingError::EscapesX { .. }));
        let t = TwistGroup::with_ambient(e2(1), e2(2), &[vec![1, 0]]).unwrap();
        let l = build_lifting(&LiftingSource::abelian(e2(1)), &[vec![1, 0]], t).unwrap();
        assert_eq!(l.alpha_image.order(), 2);
    }

    #[test]
    fn ill_defined_alpha_is_rejected() {
        let src = LiftingSource::abelian(FinAbGroup::cyclic(2));
        let err = build_lifting(&src, &[vec![1]], TwistGroup::new(FinAbGroup::cyclic(3))).unwrap_err();
        assert!(matches!(err, LiftingError::IllDefined(_)));
    }

    #[test]
    fn classical_twists() {
        let (mut phi, _) = realizations::so4_two_planes();
        phi.summands[0] = phi.summands[0].clone().with_twist(vec![1]);
        phi.summands[1] = phi.summands[1].clone().with_twist(vec![1]);
        let data = component_group(&phi).unwrap();
        let l = classical_lifting(&phi, &data, TwistGroup::new(e2(1))).unwrap();
        assert_eq!(l.s_bar.order(), 2);
        assert_eq!(l.s_tilde.order(), 1);
        assert_eq!(coarse_structure(&l, Locality::Nonarchimedean, 0).coarse_total, 1);

        let (phi, _) = realizations::so4_two_planes();
        let l = classical_lifting(&phi, &data, TwistGroup::new(e2(1))).unwrap();
        assert_eq!(l.s_tilde.order(), 2);
        let p = CoarsePacket::canonical(&l, Locality::Nonarchimedean, 0);
        let rep = analyze(&l, &p, Locality::Nonarchimedean, 0).unwrap();
        assert!(rep.all_passed(), "{:#?}", rep.checks());
        assert_eq!(rep.counts.coarse_total, 4);
        assert_eq!(rep.exhaustive, Some(1));
        let r = rep.refined.unwrap();
        assert!(r.parts.iter().all(|p| p.labels.len() == 2));
    }

    #[test]
    fn twists_must_cancel_on_center() {
        let summands = vec![SummandSpec::orthogonal("a", 2).with_twist(vec![1]), SummandSpec::orthogonal("b", 2)];
        let phi = ClassicalParameter::new(GroupKind::SoSplit, 2, summands);
        let data = component_group(&phi).unwrap();
        let err = classical_lifting(&phi, &data, TwistGroup::new(e2(1))).unwrap_err();
        assert!(matches!(err, LiftingError::IllDefined(_)));
        let summands = vec![SummandSpec::orthogonal("a", 2).with_twist(vec![2]), SummandSpec::orthogonal("b", 2)];
        let phi = ClassicalParameter::new(GroupKind::SoSplit, 2, summands);
        let err = classical_lifting(&phi, &data, TwistGroup::new(e2(1))).unwrap_err();
        assert!(matches!(err, LiftingError::TwistRange { ref summand, .. } if summand == "a"));
    }

    #[test]
    fn archimedean_bounds() {
        let l = raw(2, 1, &[vec![0], vec![0]]);
        let c = coarse_structure(&l, Locality::Archimedean, 1);
        assert!(!c.orbit_count_exact);
        assert_eq!(c.orbit_count, 3);
        let p = CoarsePacket::canonical(&l, Locality::Archimedean, 1);
        let rep = analyze(&l, &p, Locality::Archimedean, 1).unwrap();
        assert!(rep.all_passed(), "{:#?}", rep.checks());
    }

    #[test]
    fn seeds_give_twisted_partitions() {
        let l = raw(2, 2, &[vec![1, 0], vec![1, 0]]);
        let p = CoarsePacket::canonical(&l, Locality::Nonarchimedean, 0);
        let a = refined_decomposition(&l, &p, &[0, 0]).unwrap();
        let b = refined_decomposition(&l, &p, &[0, 1]).unwrap();
        assert_ne!(a.subset, b.subset);
        assert_eq!(related_by_twist(&l, &p, &a, &b).map(|w| l.twist.x().reduce(&w)), Some(vec![0, 1]));
    }

    #[test]
    fn packet_validation() {
        let l = raw(1, 1, &[vec![1]]);
        let mut p = CoarsePacket::canonical(&l, Locality::Nonarchimedean, 0);
        p.validate(&l).unwrap();
        p.labels[0].twist[0] = "nope".into();
        assert!(p.validate(&l).is_err());
        let mut p = CoarsePacket::canonical(&l, Locality::Nonarchimedean, 0);
        p.labels[0].multiplicity = 2;
        assert!(p.validate(&l).is_err());
    }
}
