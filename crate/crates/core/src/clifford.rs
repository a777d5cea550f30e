//! Clifford theory over a normal subgroup with abelian quotient.
//!
//! Isomorphism of representations is tested by equality of characters.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{
    AbelianPresentation, CharacterTable, ClassFunction, Cyclotomic, FinAbGroup, FinGroup, GroupError, Subgroup,
};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("quotient G/H is not abelian")]
    NonAbelianQuotient,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A group `G`, a normal subgroup `H` with `G/H` abelian, and both character tables.
#[derive(Clone, Debug)]
pub struct CliffordContext {
    g: Arc<FinGroup>,
    h: Subgroup,
    q: FinAbGroup,
    coset_index: Vec<usize>,
    transversal: Vec<usize>,
    irr_g: CharacterTable,
    irr_h: CharacterTable,
    conj_action: Vec<Vec<usize>>,
    twist_action: Vec<Vec<usize>>,
    restriction: Vec<Vec<i64>>,
}

/// Orbit, stabilizer and extension data of one `rho` in `Irr(H)`.
#[derive(Clone, Debug)]
pub struct OrbitData {
    pub rho: usize,
    pub orbit: Vec<usize>,
    /// `G(rho)` as sorted element indices.
    pub stabilizer: Vec<usize>,
    /// Image of `G(rho)` in `Q`, as indices of `Q`.
    pub stabilizer_quotient: Vec<usize>,
    /// Maximal extension subgroup `I` with `H <= I <= G(rho)`.
    pub extension: Subgroup,
    pub extension_table: CharacterTable,
    /// Index in `Irr(I)` of the chosen extension of `rho`.
    pub extension_character: usize,
    /// `I/H` as an abelian group.
    pub extension_quotient: FinAbGroup,
    /// Coordinates in `I/H` of each element of `I` (by local index).
    extension_coords: Vec<Vec<i64>>,
    /// `c(rho)`, as characters of `I/H` (dual coordinates).
    pub c_rho: Vec<Vec<i64>>,
}

impl OrbitData {
    pub fn c_order(&self) -> usize {
        self.c_rho.len()
    }

    /// `pi1 ⊗ omega` on `I`, `omega` a character of `I/H`.
    pub fn twisted_extension(&self, omega: &[i64]) -> ClassFunction {
        let i = self.extension.group();
        let base = self.extension_table.values(self.extension_character);
        let q = &self.extension_quotient;
        ClassFunction::new(
            i.clone(),
            (0..i.class_count())
                .map(|c| &base[c] * &Cyclotomic::from_rotation(q.pairing(omega, &self.extension_coords[i.class_rep(c)])))
                .collect(),
        )
        .expect("class count matches")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub pi: usize,
    pub constituents: Vec<usize>,
    pub multiplicities: Vec<i64>,
    /// Common multiplicity, when all constituents agree.
    pub m: Option<i64>,
    /// `X(pi)` as characters of `Q`.
    pub x_pi: Vec<Vec<i64>>,
    /// `|G : G(rho)|` for the first constituent.
    pub stabilizer_index: usize,
}

impl RestrictionReport {
    /// `m^2 |G:G(rho)| = |X(pi)|`.
    pub fn identity_holds(&self) -> bool {
        self.m.is_some_and(|m| (m * m) as usize * self.stabilizer_index == self.x_pi.len())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Incidence {
    pub pi: usize,
    pub rho: usize,
    pub m: i64,
    pub x_order: usize,
    pub stabilizer_index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub quotient: String,
    pub checks: Vec<SuiteCheck>,
    pub incidences: Vec<Incidence>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn multiplicity_two_count(&self) -> usize {
        self.incidences.iter().filter(|i| i.m == 2).count()
    }
}

fn class_values_equal(a: &[Cyclotomic], b: &[Cyclotomic]) -> bool {
    a == b
}

impl CliffordContext {
    pub fn build(g: Arc<FinGroup>, h_elements: &[usize]) -> Result<Self, CliffordError> {
        let h = g.subgroup(h_elements)?;
        if !g.is_normal(h.elements()) {
            return Err(CliffordError::NotNormal);
        }
        // Cosets, labelled by their smallest member.
        let n = g.order();
        let mut coset_min = vec![usize::MAX; n];
        for x in 0..n {
            let m = h.elements().iter().map(|&y| g.mul(x, y)).min().unwrap();
            coset_min[x] = m;
        }
        let mut reps: Vec<usize> = coset_min.clone();
        reps.sort_unstable();
        reps.dedup();
        let raw_index = |x: usize| reps.binary_search(&coset_min[x]).unwrap();
        for &a in &reps {
            for &b in &reps {
                if raw_index(g.mul(a, b)) != raw_index(g.mul(b, a)) {
                    return Err(CliffordError::NonAbelianQuotient);
                }
            }
        }
        let id_coset = raw_index(g.identity());
        let pres = AbelianPresentation::from_operation(reps.len(), id_coset, |a, b| raw_index(g.mul(reps[a], reps[b])));
        let q = pres.group.clone();
        let coset_index: Vec<usize> = (0..n).map(|x| q.index_of(&pres.coords[raw_index(x)])).collect();
        let mut transversal = vec![usize::MAX; reps.len()];
        for x in 0..n {
            let qi = coset_index[x];
            if transversal[qi] == usize::MAX {
                transversal[qi] = x;
            }
        }

        let irr_g = CharacterTable::compute(&g)?;
        let irr_h = CharacterTable::compute(h.group())?;

        let hg = h.group();
        let conj_action: Vec<Vec<usize>> = transversal
            .iter()
            .map(|&t| {
                let class_map: Vec<usize> = (0..hg.class_count())
                    .map(|c| {
                        let x = h.to_parent(hg.class_rep(c));
                        hg.class_of(h.to_local(g.conjugate(t, x)).unwrap())
                    })
                    .collect();
                (0..irr_h.len())
                    .map(|r| {
                        let vals: Vec<Cyclotomic> = class_map.iter().map(|&c| irr_h.values(r)[c].clone()).collect();
                        (0..irr_h.len()).find(|&s| class_values_equal(irr_h.values(s), &vals)).unwrap()
                    })
                    .collect()
            })
            .collect();

        let twist_action: Vec<Vec<usize>> = q
            .elements()
            .iter()
            .map(|omega| {
                let factor: Vec<Cyclotomic> = (0..g.class_count())
                    .map(|c| Cyclotomic::from_rotation(q.pairing(omega, &q.element(coset_index[g.class_rep(c)]))))
                    .collect();
                (0..irr_g.len())
                    .map(|p| {
                        let vals: Vec<Cyclotomic> =
                            irr_g.values(p).iter().zip(&factor).map(|(a, b)| a * b).collect();
                        (0..irr_g.len()).find(|&s| class_values_equal(irr_g.values(s), &vals)).unwrap()
                    })
                    .collect()
            })
            .collect();

        let restriction = (0..irr_g.len())
            .map(|p| irr_h.decompose(&irr_g.character(p).restrict(&h)?))
            .collect::<Result<Vec<_>, GroupError>>()?;

        Ok(CliffordContext {
            g,
            h,
            q,
            coset_index,
            transversal,
            irr_g,
            irr_h,
            conj_action,
            twist_action,
            restriction,
        })
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.g
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.h
    }

    /// `Q = G/H`.
    pub fn quotient(&self) -> &FinAbGroup {
        &self.q
    }

    /// Index in `Q` of the coset of `x`.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_index[x]
    }

    /// Smallest element of each coset, by `Q` index.
    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn irr_g(&self) -> &CharacterTable {
        &self.irr_g
    }

    pub fn irr_h(&self) -> &CharacterTable {
        &self.irr_h
    }

    /// `rho^g` for `g` the transversal element of `Q` index `qi`.
    pub fn conjugate_character(&self, qi: usize, rho: usize) -> usize {
        self.conj_action[qi][rho]
    }

    /// `pi ⊗ omega` for `omega` the character of `Q` with dual index `wi`.
    pub fn twist(&self, wi: usize, pi: usize) -> usize {
        self.twist_action[wi][pi]
    }

    /// `<Res pi, rho>`.
    pub fn restriction_multiplicity(&self, pi: usize, rho: usize) -> i64 {
        self.restriction[pi][rho]
    }

    pub fn orbit_data(&self, rho: usize) -> Result<OrbitData, CliffordError> {
        let g = &self.g;
        let q = &self.q;
        let qn = q.order() as usize;
        let mut orbit: Vec<usize> = (0..qn).map(|i| self.conj_action[i][rho]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        let stab_q: Vec<usize> = (0..qn).filter(|&i| self.conj_action[i][rho] == rho).collect();
        let stabilizer: Vec<usize> = (0..g.order()).filter(|&x| stab_q.contains(&self.coset_index[x])).collect();

        // Greedy ascent from H by steps of prime index inside G(rho).
        let mut inside = vec![false; qn];
        inside[q.index_of(&q.zero())] = true;
        let mut current = self.extension_test(&inside, rho)?.expect("rho extends to H");
        loop {
            let mut advanced = false;
            for &cand in &stab_q {
                if inside[cand] {
                    continue;
                }
                let x = q.element(cand);
                let mut m = 1i64;
                while !inside[q.index_of(&q.scale(m, &x))] {
                    m += 1;
                }
                let p = smallest_prime_factor(m);
                let step = q.scale(m / p, &x);
                let mut next = inside.clone();
                for (i, &flag) in inside.iter().enumerate() {
                    if flag {
                        let base = q.element(i);
                        for j in 1..p {
                            next[q.index_of(&q.add(&base, &q.scale(j, &step)))] = true;
                        }
                    }
                }
                if let Some(found) = self.extension_test(&next, rho)? {
                    inside = next;
                    current = found;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        let (extension, extension_table, extension_character) = current;

        let i_gens: Vec<Vec<i64>> = (0..qn).filter(|&i| inside[i]).map(|i| q.element(i)).collect();
        let sub = q.subgroup(&i_gens);
        let to_local = sub.coordinate_map();
        let extension_quotient = sub.group().clone();
        let ig = extension.group().clone();
        let extension_coords: Vec<Vec<i64>> = (0..ig.order())
            .map(|l| to_local[&q.element(self.coset_index[extension.to_parent(l)])].clone())
            .collect();

        let mut data = OrbitData {
            rho,
            orbit,
            stabilizer,
            stabilizer_quotient: stab_q.clone(),
            extension,
            extension_table,
            extension_character,
            extension_quotient,
            extension_coords,
            c_rho: Vec::new(),
        };

        let mut c_rho = BTreeSet::new();
        let base = data.extension_table.character(data.extension_character);
        for &qi in &stab_q {
            let t = self.transversal[qi];
            let conj_vals: Vec<Cyclotomic> = (0..ig.class_count())
                .map(|c| {
                    let x = data.extension.to_parent(ig.class_rep(c));
                    base.at(data.extension.to_local(g.conjugate(t, x)).unwrap()).clone()
                })
                .collect();
            let omega = data
                .extension_quotient
                .dual()
                .elements()
                .into_iter()
                .find(|w| data.twisted_extension(w).values() == conj_vals.as_slice());
            if let Some(w) = omega {
                c_rho.insert(w);
            }
        }
        data.c_rho = c_rho.into_iter().collect();
        Ok(data)
    }

    /// Irreducible of the preimage of `inside` restricting to `rho`, if any.
    #[allow(clippy::type_complexity)]
    fn extension_test(
        &self,
        inside: &[bool],
        rho: usize,
    ) -> Result<Option<(Subgroup, CharacterTable, usize)>, CliffordError> {
        let g = &self.g;
        let elems: Vec<usize> = (0..g.order()).filter(|&x| inside[self.coset_index[x]]).collect();
        let sub = g.subgroup(&elems)?;
        let table = CharacterTable::compute(sub.group())?;
        let hg = self.h.group();
        let target = self.irr_h.values(rho);
        let found = (0..table.len()).find(|&i| {
            table.degree(i) == self.irr_h.degree(rho)
                && (0..hg.class_count()).all(|c| {
                    let x = self.h.to_parent(hg.class_rep(c));
                    table.character(i).at(sub.to_local(x).unwrap()) == &target[c]
                })
        });
        Ok(found.map(|i| (sub, table, i)))
    }

    /// Constituents of `Ind_H^G rho` with multiplicities.
    pub fn irr_above(&self, rho: usize) -> Result<Vec<(usize, i64)>, CliffordError> {
        let ind = self.irr_h.character(rho).induce(&self.h)?;
        let mult = self.irr_g.decompose(&ind)?;
        Ok(mult.into_iter().enumerate().filter(|&(_, m)| m > 0).collect())
    }

    pub fn restriction_report(&self, pi: usize) -> RestrictionReport {
        let constituents: Vec<usize> = (0..self.irr_h.len()).filter(|&r| self.restriction[pi][r] > 0).collect();
        let multiplicities: Vec<i64> = constituents.iter().map(|&r| self.restriction[pi][r]).collect();
        let m = match multiplicities.first() {
            Some(&m0) if multiplicities.iter().all(|&m| m == m0) => Some(m0),
            _ => None,
        };
        let x_pi: Vec<Vec<i64>> =
            (0..self.q.order() as usize).filter(|&w| self.twist_action[w][pi] == pi).map(|w| self.q.element(w)).collect();
        let rho = constituents[0];
        let qn = self.q.order() as usize;
        let mut orbit: Vec<usize> = (0..qn).map(|i| self.conj_action[i][rho]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        RestrictionReport { pi, constituents, multiplicities, m, x_pi, stabilizer_index: orbit.len() }
    }
}

fn smallest_prime_factor(m: i64) -> i64 {
    (2..=m).find(|d| m % d == 0).unwrap_or(m)
}

/// Runs the five Clifford-theory checks over every `rho` in `Irr(H)` and `pi` in `Irr(G)`.
pub fn verify_clifford_suite(ctx: &CliffordContext) -> Result<SuiteReport, CliffordError> {
    let nh = ctx.irr_h.len();
    let ng = ctx.irr_g.len();
    let qn = ctx.q.order() as usize;
    let orbits: Vec<OrbitData> = (0..nh).map(|r| ctx.orbit_data(r)).collect::<Result<_, _>>()?;
    let above: Vec<Vec<(usize, i64)>> = (0..nh).map(|r| ctx.irr_above(r)).collect::<Result<_, _>>()?;
    let reports: Vec<RestrictionReport> = (0..ng).map(|p| ctx.restriction_report(p)).collect();

    let mut checks = Vec::new();

    // 1. Every rho lies under some pi.
    let failures: Vec<String> =
        (0..nh).filter(|&r| above[r].is_empty()).map(|r| format!("rho {r} lies under no irreducible of G")).collect();
    checks.push(SuiteCheck {
        name: "existence",
        passed: failures.is_empty(),
        detail: format!("{nh} irreducibles of H, each under at least one irreducible of G"),
        failures,
    });

    // 2. The irreducibles above rho form one orbit under twisting by characters of Q.
    let mut failures = Vec::new();
    for r in 0..nh {
        let pis: BTreeSet<usize> = above[r].iter().map(|&(p, _)| p).collect();
        let Some(&p0) = pis.iter().next() else { continue };
        let twists: BTreeSet<usize> = (0..qn).map(|w| ctx.twist_action[w][p0]).collect();
        if twists != pis {
            failures.push(format!("rho {r}: above = {pis:?}, twists of pi {p0} = {twists:?}"));
        }
    }
    checks.push(SuiteCheck {
        name: "uniqueness-up-to-twist",
        passed: failures.is_empty(),
        detail: "irreducibles above each rho form a single twist orbit".into(),
        failures,
    });

    // 3. Constituents of pi|_H form one orbit and share the multiplicity |c(rho)|.
    let mut failures = Vec::new();
    for rep in &reports {
        let rho = rep.constituents[0];
        let orbit: Vec<usize> = orbits[rho].orbit.clone();
        if rep.constituents != orbit {
            failures.push(format!("pi {}: constituents {:?} are not the orbit {:?}", rep.pi, rep.constituents, orbit));
        }
        match rep.m {
            Some(m) if m as usize == orbits[rho].c_order() => {}
            Some(m) => failures.push(format!("pi {}: m = {m} but |c(rho)| = {}", rep.pi, orbits[rho].c_order())),
            None => failures.push(format!("pi {}: unequal multiplicities {:?}", rep.pi, rep.multiplicities)),
        }
    }
    checks.push(SuiteCheck {
        name: "common-multiplicity",
        passed: failures.is_empty(),
        detail: "restriction constituents share one multiplicity equal to |c(rho)|".into(),
        failures,
    });

    // 4. m^2 |G:G(rho)| = |X(pi)|.
    let mut failures = Vec::new();
    let mut incidences = Vec::new();
    for rep in &reports {
        for (&rho, &m) in rep.constituents.iter().zip(&rep.multiplicities) {
            let idx = orbits[rho].orbit.len();
            incidences.push(Incidence { pi: rep.pi, rho, m, x_order: rep.x_pi.len(), stabilizer_index: idx });
            if (m * m) as usize * idx != rep.x_pi.len() {
                failures.push(format!("pi {} over rho {rho}: m = {m}, |G:G(rho)| = {idx}, |X| = {}", rep.pi, rep.x_pi.len()));
            }
        }
    }
    let m2 = incidences.iter().filter(|i| i.m == 2).count();
    checks.push(SuiteCheck {
        name: "restriction-multiplicity-formula",
        passed: failures.is_empty(),
        detail: format!("{} incidences, {m2} with m = 2", incidences.len()),
        failures,
    });

    // 5. Ind_H^G rho = |c(rho)| * sum over (I/H)^*/c(rho) of Ind_I^G(pi1 ⊗ omega).
    let mut failures = Vec::new();
    for r in 0..nh {
        let od = &orbits[r];
        let c = od.c_order() as i64;
        if let Some(&(p, m)) = above[r].iter().find(|&&(_, m)| m != c) {
            failures.push(format!("rho {r}: pi {p} has multiplicity {m}, expected {c}"));
        }
        let dual = od.extension_quotient.dual();
        let mut covered = vec![false; dual.order() as usize];
        let mut terms: Vec<ClassFunction> = Vec::new();
        for w in dual.elements() {
            if covered[dual.index_of(&w)] {
                continue;
            }
            for cw in &od.c_rho {
                covered[dual.index_of(&dual.add(&w, cw))] = true;
            }
            terms.push(od.twisted_extension(&w).induce(&od.extension)?);
        }
        let mut total: Option<ClassFunction> = None;
        for t in &terms {
            if t.inner_product(t)?.as_integer() != Some(1) {
                failures.push(format!("rho {r}: an induced twist is not irreducible"));
            }
            total = Some(match total {
                None => t.clone(),
                Some(acc) => acc.add(t)?,
            });
        }
        for (a, ta) in terms.iter().enumerate() {
            for tb in &terms[a + 1..] {
                if ta == tb {
                    failures.push(format!("rho {r}: two coset representatives induce the same irreducible"));
                }
            }
        }
        let expected = total.expect("dual group is nonempty").scale(Rational::from_integer(c));
        let ind = ctx.irr_h.character(r).induce(&ctx.h)?;
        if ind != expected {
            failures.push(format!("rho {r}: induced character differs from the coset decomposition"));
        }
    }
    checks.push(SuiteCheck {
        name: "induction-decomposition",
        passed: failures.is_empty(),
        detail: "Ind rho is |c(rho)| copies of the induced twists over (I/H)^*/c(rho)".into(),
        failures,
    });

    Ok(SuiteReport {
        group_order: ctx.g.order(),
        subgroup_order: ctx.h.order(),
        quotient: ctx.q.to_string(),
        checks,
        incidences,
    })
}

/// Convenience entry point matching the context constructor.
pub fn build_context(g: Arc<FinGroup>, h_elements: &[usize]) -> Result<CliffordContext, CliffordError> {
    CliffordContext::build(g, h_elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library;

    fn ctx(g: FinGroup, h: impl Fn(&FinGroup) -> Vec<usize>) -> CliffordContext {
        let hs = h(&g);
        let g = Arc::new(g);
        let hs = g.generated(&hs);
        CliffordContext::build(g, &hs).unwrap()
    }

    fn s3_a3() -> CliffordContext {
        ctx(library::symmetric(3), |g| vec![library::find_element_of_order(g, 3)])
    }

    fn d4_center() -> CliffordContext {
        ctx(library::dihedral(4), |g| g.center())
    }

    #[test]
    fn s3_over_a3() {
        let c = s3_a3();
        assert_eq!(c.quotient(), &FinAbGroup::cyclic(2));
        // Conjugation by a transposition swaps the two nontrivial characters of A3.
        let odd = (0..2).find(|&i| c.transversal()[i] != c.group().identity()).unwrap();
        assert_eq!(c.conjugate_character(odd, 1), 2);
        assert_eq!(c.conjugate_character(odd, 2), 1);
        assert_eq!(c.conjugate_character(odd, 0), 0);

        let od = c.orbit_data(1).unwrap();
        assert_eq!(od.orbit.len(), 2);
        assert_eq!(od.stabilizer.len(), 3);
        assert_eq!(od.c_order(), 1);
        assert_eq!(c.irr_above(0).unwrap(), vec![(0, 1), (1, 1)]);
        assert_eq!(c.irr_above(1).unwrap(), vec![(2, 1)]);

        let rep = c.restriction_report(2);
        assert_eq!(rep.m, Some(1));
        assert_eq!(rep.x_pi.len(), 2);
        assert_eq!(rep.stabilizer_index, 2);
        assert!(rep.identity_holds());
    }

    #[test]
    fn d4_over_center() {
        let c = d4_center();
        assert_eq!(c.quotient(), &FinAbGroup::elementary_two(2));
        for qi in 0..4 {
            for r in 0..2 {
                assert_eq!(c.conjugate_character(qi, r), r);
            }
        }
        let od = c.orbit_data(1).unwrap();
        assert_eq!(od.orbit, vec![1]);
        assert_eq!(od.stabilizer.len(), 8);
        assert_eq!(od.c_order(), 2);
        assert_eq!(c.irr_above(1).unwrap(), vec![(4, 2)]);
        let rep = c.restriction_report(4);
        assert_eq!(rep.m, Some(2));
        assert_eq!(rep.x_pi.len(), 4);
        assert_eq!(rep.stabilizer_index, 1);
    }

    #[test]
    fn trivial_character_extends() {
        for c in [s3_a3(), d4_center()] {
            let od = c.orbit_data(0).unwrap();
            assert_eq!(od.orbit, vec![0]);
            assert_eq!(od.stabilizer.len(), c.group().order());
            assert_eq!(od.c_order(), 1);
        }
    }

    #[test]
    fn whole_group() {
        let g = Arc::new(library::alternating(4));
        let all: Vec<usize> = (0..12).collect();
        let c = CliffordContext::build(g, &all).unwrap();
        assert!(c.quotient().is_trivial());
        let rep = verify_clifford_suite(&c).unwrap();
        assert!(rep.all_passed());
    }

    #[test]
    fn rejections() {
        let g = Arc::new(library::symmetric(3));
        let t = library::find_element_of_order(&g, 2);
        let h = g.generated(&[t]);
        assert_eq!(CliffordContext::build(g.clone(), &h).unwrap_err(), CliffordError::NotNormal);
        let s4 = Arc::new(library::symmetric(4));
        let v4: Vec<usize> = (0..24)
            .filter(|&x| s4.element_order(x) == 1 || (s4.element_order(x) == 2 && s4.class_size(s4.class_of(x)) == 3))
            .collect();
        assert_eq!(v4.len(), 4);
        assert_eq!(CliffordContext::build(s4, &v4).unwrap_err(), CliffordError::NonAbelianQuotient);
    }

    #[test]
    fn suites_pass() {
        let r = verify_clifford_suite(&s3_a3()).unwrap();
        assert!(r.all_passed(), "{r:?}");
        let r = verify_clifford_suite(&d4_center()).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert!(r.multiplicity_two_count() >= 1);
        let r = verify_clifford_suite(&ctx(library::quaternion(), |g| g.center())).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert!(r.incidences.iter().any(|i| i.m == 2 && i.x_order == 4));
    }

    #[test]
    fn corpus_suites_pass() {
        let cases: Vec<CliffordContext> = vec![
            ctx(library::alternating(4), |g| (0..g.order()).filter(|&x| g.element_order(x) == 2).collect()),
            ctx(library::cyclic(4), |_| vec![2]),
            ctx(library::extraspecial_plus_32(), |g| g.center()),
            ctx(library::symmetric(4), |g| (0..g.order()).filter(|&x| g.element_order(x) == 3).collect()),
            ctx(library::dihedral(6), |g| vec![library::find_element_of_order(g, 6)]),
        ];
        for c in &cases {
            let r = verify_clifford_suite(c).unwrap();
            assert!(r.all_passed(), "{r:?}");
        }
        // Faithful character of E32 over its center: m = 4, X = all of Q.
        let e = verify_clifford_suite(&cases[2]).unwrap();
        assert!(e.incidences.iter().any(|i| i.m == 4 && i.x_order == 16));
    }
}
