//! The analysis pipeline and its report.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::file::{OracleEntry, ParameterEntry, ParameterFile, SyntheticEntry, FILE_VERSION};
use crate::clifford::{verify_clifford_suite, CliffordContext, SuiteReport};
use crate::groups::FinAbGroup;
use crate::lifting::{
    analyze, build_lifting, classical_lifting, multiplicity_bridge, BridgeReport, Check, CoarsePacket, LiftingDatum, LiftingReport,
    LiftingSource, Locality, TwistGroup,
};
use crate::params::{commutant_oracle, component_group, BlockReport, ClassicalParameter, ComponentGroupData, GroupKind, ParamError, Realization};

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub locality: Locality,
    /// Every parameter must come with a realization.
    pub require_oracle: bool,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("parameter {id}: {message}")]
    Parameter { id: String, message: String },
    #[error("synthetic {id}: {message}")]
    Synthetic { id: String, message: String },
    #[error("twist_group: {0}")]
    Twist(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    pub coordinates: Vec<String>,
    pub a_phi: FinAbGroup,
    pub a_basis: Vec<String>,
    pub center: String,
    pub s_bar: FinAbGroup,
    pub s_bar_basis: Vec<String>,
    pub s_bar_sigma0: FinAbGroup,
    pub theta0_coset_nonempty: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub gamma_order: usize,
    pub commutant_dimension: usize,
    pub blocks: Vec<BlockReport>,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParameterReport {
    pub id: String,
    pub group: String,
    pub dual_dimension: u32,
    pub component_group: ComponentSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    pub lifting: LiftingReport,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SyntheticReport {
    pub id: String,
    pub group_order: usize,
    pub subgroup_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge: Option<BridgeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lifting: Option<LiftingReport>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub parameters: Vec<ParameterReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub synthetic: Vec<SyntheticReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.parameters.iter().all(|p| p.passed) && self.synthetic.iter().all(|s| s.passed)
    }

    /// Failed checks as `(item, check)`.
    pub fn failures(&self) -> Vec<(String, Check)> {
        let mut out = Vec::new();
        for p in &self.parameters {
            for c in p.checks.iter().filter(|c| !c.passed) {
                out.push((p.id.clone(), c.clone()));
            }
        }
        for s in &self.synthetic {
            for c in s.checks.iter().filter(|c| !c.passed) {
                out.push((s.id.clone(), c.clone()));
            }
        }
        out
    }
}

fn perr(id: &str) -> impl Fn(String) -> RunError + '_ {
    move |message| RunError::Parameter { id: id.to_string(), message }
}

impl ParameterEntry {
    /// The parameter, its component-group data and its lifting datum.
    pub fn lifting_datum(&self, twist: &TwistGroup) -> Result<(ClassicalParameter, ComponentGroupData, LiftingDatum), String> {
        let mut phi = ClassicalParameter::new(self.kind, self.n, self.summands.clone());
        if let Some(d) = self.discrete {
            phi.discrete = d;
        }
        phi.center_image = self.center_image;
        phi.validate(&self.id).map_err(|e| e.to_string())?;
        let data = component_group(&phi).map_err(|e| e.to_string())?;
        let mut datum = classical_lifting(&phi, &data, twist.clone()).map_err(|e| e.to_string())?;
        if let Some(t) = &self.theta_element {
            let i = data.coordinates.iter().position(|c| c == t).ok_or_else(|| format!("theta_element {t} is not an orthogonal summand"))?;
            match data.sigma0_coords(1 << i) {
                Some(c) if data.theta_generator.is_some() && c.last() == Some(&1) => datum.theta_element = Some(c),
                _ => return Err(format!("theta_element {t} does not lie in the θ0-coset")),
            }
        }
        Ok((phi, data, datum))
    }
}

fn run_parameter(
    entry: &ParameterEntry,
    twist: &TwistGroup,
    oracle: Option<&OracleEntry>,
    opts: &RunOptions,
) -> Result<ParameterReport, RunError> {
    let err = perr(&entry.id);
    let (phi, data, datum) = entry.lifting_datum(twist).map_err(&err)?;
    let deficit = entry.archimedean_deficit;
    let packet = entry.packet.clone().unwrap_or_else(|| CoarsePacket::canonical(&datum, opts.locality, deficit));
    let lifting = analyze(&datum, &packet, opts.locality, deficit).map_err(|e| err(e.to_string()))?;

    let mut checks = Vec::new();
    let (a, s, s0) = (data.a_group().order(), data.s_bar_group().order(), data.s_bar_sigma0_group().order());
    let center_ok = if data.center != 0 { a == 2 * s } else { a == s };
    checks.push(Check::new(
        "component-group-orders",
        center_ok && (s0 == s || s0 == 2 * s) && (s0 == 2 * s) == data.theta0_coset_nonempty,
        format!("|A_φ| = {a}, |S̄_φ| = {s}, |S̄_φ^Σ0| = {s0}"),
    ));
    if phi.kind == GroupKind::Sp && phi.discrete {
        let k = phi.summands.len() as u32;
        checks.push(Check::new("discrete-symplectic-order", s == 1 << (k - 1), format!("k = {k}, |S̄_φ| = {s}")));
    }
    let oracle = match oracle {
        Some(o) => {
            let generators = o.matrices().map_err(&err)?;
            match commutant_oracle(&Realization { generators }, &phi) {
                Ok(r) => {
                    let agrees = r.data == data;
                    checks.push(Check::new(
                        "oracle-agreement",
                        agrees,
                        format!("Γ of order {}, commutant dimension {}", r.gamma_order, r.commutant_dimension),
                    ));
                    Some(OracleSummary { gamma_order: r.gamma_order, commutant_dimension: r.commutant_dimension, blocks: r.blocks, agrees })
                }
                Err(ParamError::OracleMismatch(m)) => {
                    checks.push(Check::new("oracle-agreement", false, m));
                    None
                }
                Err(e) => return Err(err(format!("oracle: {e}"))),
            }
        }
        None => {
            if opts.require_oracle {
                checks.push(Check::new("oracle-coverage", false, "no realization given"));
            }
            None
        }
    };
    checks.extend(lifting.checks().into_iter().cloned());
    let passed = checks.iter().all(|c| c.passed);
    let component_group = ComponentSummary {
        coordinates: data.coordinates.clone(),
        a_phi: data.a_group(),
        a_basis: data.a_phi.iter().map(|&v| data.label(v)).collect(),
        center: data.label(data.center),
        s_bar: data.s_bar_group(),
        s_bar_basis: data.s_bar.iter().map(|&v| data.label(v)).collect(),
        s_bar_sigma0: data.s_bar_sigma0_group(),
        theta0_coset_nonempty: data.theta0_coset_nonempty,
        theta_witness: data.theta_witness.clone(),
    };
    Ok(ParameterReport {
        id: entry.id.clone(),
        group: phi.name(),
        dual_dimension: phi.dual_dimension(),
        component_group,
        oracle,
        lifting,
        checks,
        passed,
    })
}

fn run_synthetic(entry: &SyntheticEntry, twist: &TwistGroup, opts: &RunOptions) -> Result<SyntheticReport, RunError> {
    let err = |message: String| RunError::Synthetic { id: entry.id.clone(), message };
    if let (Some(gs), Some(hs)) = (&entry.group, &entry.subgroup) {
        let g = Arc::new(gs.build().map_err(&err)?);
        let h = hs.elements(&g).map_err(&err)?;
        let ctx = CliffordContext::build(g.clone(), &h).map_err(|e| err(e.to_string()))?;
        let suite = verify_clifford_suite(&ctx).map_err(|e| err(e.to_string()))?;
        let bridge = multiplicity_bridge(g.clone(), &h, &entry.multiplicities).map_err(|e| err(e.to_string()))?;
        let mut checks: Vec<Check> = suite.checks.iter().map(|c| Check::new(c.name, c.passed, c.detail.clone())).collect();
        checks.extend(bridge.checks.iter().cloned());
        let passed = checks.iter().all(|c| c.passed);
        return Ok(SyntheticReport {
            id: entry.id.clone(),
            group_order: g.order(),
            subgroup_order: h.len(),
            suite: Some(suite),
            bridge: Some(bridge),
            lifting: None,
            checks,
            passed,
        });
    }
    let factors = entry.abelian.clone().unwrap_or_default();
    let s_bar = FinAbGroup::new(factors).map_err(|e| err(e.to_string()))?;
    let twist = match &entry.twist_group {
        Some(t) => t.build().map_err(|e| err(e.to_string()))?,
        None => twist.clone(),
    };
    let alpha = entry.alpha.clone().unwrap_or_default();
    let datum = build_lifting(&LiftingSource::abelian(s_bar.clone()), &alpha, twist).map_err(|e| err(e.to_string()))?;
    let packet = entry.packet.clone().unwrap_or_else(|| CoarsePacket::canonical(&datum, opts.locality, 0));
    let lifting = analyze(&datum, &packet, opts.locality, 0).map_err(|e| err(e.to_string()))?;
    let checks: Vec<Check> = lifting.checks().into_iter().cloned().collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok(SyntheticReport {
        id: entry.id.clone(),
        group_order: s_bar.order() as usize,
        subgroup_order: datum.s_tilde.order() as usize,
        suite: None,
        bridge: None,
        lifting: Some(lifting),
        checks,
        passed,
    })
}

/// Runs every parameter and synthetic block; items are processed in parallel and
/// reported in input order.
pub fn run(file: &ParameterFile, opts: &RunOptions) -> Result<Report, RunError> {
    let twist = file.twist_group.build().map_err(|e| RunError::Twist(e.to_string()))?;
    let parameters = file
        .parameters
        .par_iter()
        .map(|p| run_parameter(p, &twist, file.oracles.iter().find(|o| o.parameter == p.id), opts))
        .collect::<Result<Vec<_>, _>>()?;
    let synthetic = file.synthetic.par_iter().map(|s| run_synthetic(s, &twist, opts)).collect::<Result<Vec<_>, _>>()?;
    Ok(Report { version: FILE_VERSION, parameters, synthetic })
}
