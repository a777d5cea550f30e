//! Plain-text rendering of reports.

use std::fmt::Write;

use super::report::{ParameterReport, Report, SyntheticReport};
use crate::lifting::{Check, LiftingReport, PairingOutcome};

fn vec_str(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn checks_block(out: &mut String, checks: &[&Check]) {
    let w = checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
    let _ = writeln!(out, "  checks:");
    for c in checks {
        let pad = w - c.name.chars().count();
        let _ = writeln!(out, "    {}  {}{}  {}", if c.passed { "pass" } else { "FAIL" }, c.name, " ".repeat(pad), c.detail);
    }
}

fn table(out: &mut String, header: (&str, &str), rows: &[(String, String)]) {
    let w = rows.iter().map(|r| r.0.chars().count()).chain([header.0.chars().count()]).max().unwrap_or(0);
    let _ = writeln!(out, "    {:<w$}  {}", header.0, header.1);
    for (a, b) in rows {
        let pad = w - a.chars().count();
        let _ = writeln!(out, "    {a}{}  {b}", " ".repeat(pad));
    }
}

fn lifting_block(out: &mut String, l: &LiftingReport) {
    let c = &l.counts;
    let _ = writeln!(out, "  S̃_φ ≅ {}", l.s_tilde);
    let _ = writeln!(out, "  𝔞(S̄_φ) ≅ {}", l.alpha_image);
    let _ = writeln!(out, "  |X| = {}, |𝔞(S̄_φ^Σ0)| = {}, |X/𝔞(S̄_φ^Σ0)| = {}", c.x, c.sigma0_image, c.fibre);
    let _ = writeln!(out, "  orbit_size = {}", c.orbit_size);
    if c.orbit_count_exact {
        let _ = writeln!(out, "  orbit_count = {}", c.orbit_count);
    } else {
        let _ = writeln!(out, "  orbit_count = {} (≤ {})", c.orbit_count, c.s_tilde);
    }
    let _ = writeln!(out, "  coarse_total = {}", c.coarse_total);
    match &l.pairing {
        PairingOutcome::Assignment(a) => {
            let _ = writeln!(out, "  pairing ({} classes):", a.classes);
            let rows: Vec<(String, String)> = a.tau.iter().map(|(id, t)| (id.clone(), vec_str(t))).collect();
            table(out, ("label", "τ"), &rows);
            if a.free_choices.is_empty() {
                let _ = writeln!(out, "  free choices: none");
            } else {
                let picks: Vec<String> = a.free_choices.iter().map(|f| format!("{} ↦ {}", f.label, vec_str(&f.tau))).collect();
                let _ = writeln!(out, "  free choices: {}", picks.join(", "));
            }
        }
        PairingOutcome::Obstruction(o) => {
            let _ = writeln!(out, "  obstruction (total shift {}):", vec_str(&o.product));
            for s in &o.walk {
                let _ = writeln!(out, "    {} -> {}  {:?} {}", s.from, s.to, s.kind, vec_str(&s.shift));
            }
        }
    }
    if let Some(n) = l.exhaustive {
        let _ = writeln!(out, "  exhaustive assignments = {n}");
    }
    if let Some(r) = &l.refined {
        let _ = writeln!(out, "  refined packet: {{{}}}", r.subset.join(", "));
        for p in &r.parts {
            let _ = writeln!(out, "    ω = {}: {{{}}}", vec_str(&p.omega), p.labels.join(", "));
        }
    }
}

fn parameter_block(out: &mut String, p: &ParameterReport) {
    let g = &p.component_group;
    let _ = writeln!(out, "== parameter {}: {}, dual dimension {}", p.id, p.group, p.dual_dimension);
    let _ = writeln!(out, "  sign coordinates: {}", g.coordinates.join(", "));
    let _ = writeln!(out, "  A_φ ≅ {}  basis {}", g.a_phi, if g.a_basis.is_empty() { "-".into() } else { g.a_basis.join(", ") });
    let _ = writeln!(out, "  center image = {}", g.center);
    let _ = writeln!(out, "  S̄_φ ≅ {}", g.s_bar);
    if !g.s_bar_basis.is_empty() {
        let _ = writeln!(out, "  S̄_φ basis: {}", g.s_bar_basis.join(", "));
    }
    match &g.theta_witness {
        Some(w) => {
            let _ = writeln!(out, "  S̄_φ^Σ0 ≅ {}, θ0-coset nonempty (witness {w})", g.s_bar_sigma0);
        }
        None => {
            let _ = writeln!(out, "  S̄_φ^Σ0 ≅ {}, θ0-coset empty", g.s_bar_sigma0);
        }
    }
    if let Some(o) = &p.oracle {
        let _ = writeln!(
            out,
            "  oracle: |Γ| = {}, commutant dimension {}, {}",
            o.gamma_order,
            o.commutant_dimension,
            if o.agrees { "agrees" } else { "DISAGREES" }
        );
    }
    lifting_block(out, &p.lifting);
    checks_block(out, &p.checks.iter().collect::<Vec<_>>());
    let _ = writeln!(out, "  result: {}", if p.passed { "pass" } else { "FAIL" });
}

fn synthetic_block(out: &mut String, s: &SyntheticReport) {
    let _ = writeln!(out, "== synthetic {}: |S_φ| = {}, |S̃| = {}", s.id, s.group_order, s.subgroup_order);
    if let Some(suite) = &s.suite {
        let _ = writeln!(out, "  S_φ/S̃ ≅ {}", suite.quotient);
    }
    if let Some(b) = &s.bridge {
        let rows: Vec<(String, String)> = b
            .rows
            .iter()
            .map(|r| {
                let decl = r.declared.map_or(String::new(), |d| format!(", declared {d}"));
                (format!("ρ{} / τ{}", r.rho, r.tau), format!("m = {}, |X(ρ)| = {}, index {}{decl}", r.m, r.x_rho, r.stabilizer_index))
            })
            .collect();
        let _ = writeln!(out, "  incidences:");
        table(out, ("pair", "data"), &rows);
    }
    if let Some(l) = &s.lifting {
        lifting_block(out, l);
    }
    checks_block(out, &s.checks.iter().collect::<Vec<_>>());
    let _ = writeln!(out, "  result: {}", if s.passed { "pass" } else { "FAIL" });
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lpacket report, version {}", report.version);
    for p in &report.parameters {
        out.push('\n');
        parameter_block(&mut out, p);
    }
    for s in &report.synthetic {
        out.push('\n');
        synthetic_block(&mut out, s);
    }
    let failures = report.failures();
    out.push('\n');
    let items = report.parameters.len() + report.synthetic.len();
    if failures.is_empty() {
        let _ = writeln!(out, "summary: {items} items, all checks pass");
    } else {
        let _ = writeln!(out, "summary: {items} items, {} failed checks", failures.len());
        for (id, c) in failures {
            let _ = writeln!(out, "  {id}: {} ({})", c.name, c.detail);
        }
    }
    out
}

/// Compact JSON with sorted keys.
pub fn render_machine(report: &Report) -> String {
    let v = serde_json::to_value(report).expect("reports serialize");
    let mut s = serde_json::to_string(&v).expect("values serialize");
    s.push('\n');
    s
}
