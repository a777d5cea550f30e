//! Restriction multiplicities between `S_φ` and a normal subgroup `S̃` with abelian
//! quotient, compared with declared packet multiplicities.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Check, CoarsePacket, LiftingDatum, LiftingError};
use crate::clifford::CliffordContext;
use crate::groups::{ClassFunction, Cyclotomic, FinGroup};

/// A declared `m(π̃, π)` for the incidence of `rho ∈ Irr(S_φ)` over `tau ∈ Irr(S̃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredMultiplicity {
    pub rho: usize,
    pub tau: usize,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeRow {
    pub rho: usize,
    pub tau: usize,
    pub m: i64,
    pub declared: Option<i64>,
    /// `|X(ρ)|`.
    pub x_rho: usize,
    /// `|S_φ : S_φ(τ)|`.
    pub stabilizer_index: usize,
    /// `|Ker X(ρ)|`.
    pub kernel: usize,
    /// `|𝔞(Ker X(ρ))| = |Ker X(ρ) / S̃|`.
    pub kernel_image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub rows: Vec<BridgeRow>,
    pub checks: Vec<Check>,
}

impl BridgeReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_multiplicity(&self) -> i64 {
        self.rows.iter().map(|r| r.m).max().unwrap_or(0)
    }
}

fn tally(name: &str, failures: Vec<String>, total: usize) -> Check {
    if failures.is_empty() {
        Check::new(name, true, format!("{total} incidences"))
    } else {
        Check::new(name, false, failures.join("; "))
    }
}

/// Runs the bridge for `S_φ = g` and `S̃ = h`; `declared` lists multiplicities to compare.
pub fn multiplicity_bridge(
    g: Arc<FinGroup>,
    h: &[usize],
    declared: &[DeclaredMultiplicity],
) -> Result<BridgeReport, LiftingError> {
    let ctx = CliffordContext::build(g.clone(), h)?;
    let q = ctx.quotient();
    let coset_coords: Vec<Vec<i64>> = (0..g.order()).map(|x| q.element(ctx.coset_of(x))).collect();
    let stabilizers: Vec<Vec<usize>> =
        (0..ctx.irr_h().len()).map(|t| ctx.orbit_data(t).map(|o| o.stabilizer)).collect::<Result<_, _>>()?;

    let mut rows = Vec::new();
    let (mut f_formula, mut f_declared, mut f_twist, mut f_duality, mut f_kernel) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for rho in 0..ctx.irr_g().len() {
        let report = ctx.restriction_report(rho);
        let chi = ctx.irr_g().character(rho);
        // X(ρ) by direct comparison of class-function values.
        let direct: BTreeSet<Vec<i64>> = q
            .elements()
            .into_iter()
            .filter(|w| {
                let omega = ClassFunction::from_element_fn(&g, |x| Cyclotomic::from_rotation(q.pairing(w, &coset_coords[x])));
                chi.tensor(&omega).map(|t| t.values() == chi.values()).unwrap_or(false)
            })
            .collect();
        let reported: BTreeSet<Vec<i64>> = report.x_pi.iter().cloned().collect();
        if direct != reported {
            f_twist.push(format!("rho {rho}: {} twists fix it, {} reported", direct.len(), reported.len()));
        }
        let kernel: Vec<usize> = (0..g.order())
            .filter(|&x| direct.iter().all(|w| q.pairing(w, &coset_coords[x]).is_one()))
            .collect();
        if kernel.len() * direct.len() != g.order() {
            f_duality.push(format!("rho {rho}: |Ker X|·|X| = {}·{}", kernel.len(), direct.len()));
        }
        for (&tau, &m) in report.constituents.iter().zip(&report.multiplicities) {
            let index = g.order() / stabilizers[tau].len();
            let kernel_image = kernel.len() / h.len();
            if (m * m) as usize * index != direct.len() {
                f_formula.push(format!("rho {rho}, tau {tau}: m² = {}, |X|/index = {}/{index}", m * m, direct.len()));
            }
            let decl = declared.iter().find(|d| d.rho == rho && d.tau == tau).map(|d| d.m);
            if let Some(d) = decl {
                if d != m {
                    f_declared.push(format!("rho {rho}, tau {tau}: declared {d}, computed {m}"));
                }
            }
            if m == 1 {
                let same = kernel == stabilizers[tau];
                if !same || kernel_image * h.len() != stabilizers[tau].len() {
                    f_kernel.push(format!("rho {rho}, tau {tau}: Ker X(ρ) differs from S_φ(τ)"));
                }
            }
            rows.push(BridgeRow { rho, tau, m, declared: decl, x_rho: direct.len(), stabilizer_index: index, kernel: kernel.len(), kernel_image });
        }
    }
    for d in declared {
        if !rows.iter().any(|r| r.rho == d.rho && r.tau == d.tau) {
            f_declared.push(format!("declared incidence rho {}, tau {} does not occur", d.rho, d.tau));
        }
    }
    let total = rows.len();
    let checks = vec![
        tally("restriction-multiplicity", f_formula, total),
        tally("declared-multiplicity", f_declared, total),
        tally("twisting-character", f_twist, total),
        tally("kernel-duality", f_duality, total),
        tally("multiplicity-one-kernel", f_kernel, total),
    ];
    Ok(BridgeReport { group_order: g.order(), subgroup_order: h.len(), rows, checks })
}

/// The bridge for `S̄` and `S̃` of a lifting datum, with multiplicities declared by
/// the packet labels; abelian inputs force every multiplicity to be one.
pub fn classical_bridge(l: &LiftingDatum, packet: &CoarsePacket) -> Result<BridgeReport, LiftingError> {
    let g = Arc::new(FinGroup::from_abelian(&l.s_bar));
    let h: Vec<usize> = l.s_tilde.ambient_elements().iter().map(|x| l.s_bar.index_of(x)).collect();
    let mut report = multiplicity_bridge(g, &h, &[])?;
    let declared: Vec<&str> = packet.labels.iter().filter(|x| x.multiplicity != 1).map(|x| x.id.as_str()).collect();
    let all_one = report.rows.iter().all(|r| r.m == 1);
    report.checks.push(Check::new(
        "abelian-multiplicity-one",
        all_one && declared.is_empty(),
        if declared.is_empty() { "every m(ρ, τ) = 1".to_string() } else { format!("labels declared with m ≠ 1: {}", declared.join(", ")) },
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library;

    fn run(g: FinGroup, h: Vec<usize>) -> BridgeReport {
        let r = multiplicity_bridge(Arc::new(g), &h, &[]).unwrap();
        assert!(r.all_passed(), "{:#?}", r.checks);
        r
    }

    #[test]
    fn d4_over_center() {
        let g = library::dihedral(4);
        let z = g.center();
        let r = run(g, z);
        let two: Vec<&BridgeRow> = r.rows.iter().filter(|x| x.m == 2).collect();
        assert_eq!(two.len(), 1);
        assert_eq!((two[0].x_rho, two[0].stabilizer_index), (4, 1));
    }

    #[test]
    fn s3_over_a3() {
        let g = library::symmetric(3);
        let c = library::find_element_of_order(&g, 3);
        let h = g.generated(&[c]);
        let r = run(g, h);
        assert!(r.rows.iter().all(|x| x.m == 1));
        let two_dim: Vec<&BridgeRow> = r.rows.iter().filter(|x| x.x_rho == 2).collect();
        assert_eq!(two_dim.len(), 2);
        assert!(two_dim.iter().all(|x| x.stabilizer_index == 2));
    }

    #[test]
    fn declared_mismatch_fails() {
        let g = library::quaternion();
        let z = g.center();
        let good = multiplicity_bridge(Arc::new(g.clone()), &z, &[]).unwrap();
        let row = good.rows.iter().find(|r| r.m == 2).unwrap();
        let bad = [DeclaredMultiplicity { rho: row.rho, tau: row.tau, m: 1 }];
        let r = multiplicity_bridge(Arc::new(g), &z, &bad).unwrap();
        assert!(!r.all_passed());
    }

    #[test]
    fn nonabelian_quotient_rejected() {
        let g = library::symmetric(4);
        let v4: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) <= 2 && g.class_size(g.class_of(x)) != 6).collect();
        assert_eq!(v4.len(), 4);
        assert!(multiplicity_bridge(Arc::new(g), &v4, &[]).is_err());
    }
}
