//! Component groups recomputed from an explicit orthogonal matrix realization.
//!
//! The image `Γ` of the parameter is closed into a finite matrix group. The
//! commutant is found by a linear solve, the isotypic blocks by the character
//! table of `Γ`, and the sign patterns by determinants of explicit reflections.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{f2, CenterImage, ClassicalParameter, ComponentGroupData, ParamError, SdType};
use crate::groups::{CharacterTable, ClassFunction, Cyclotomic, FinGroup};
use crate::Rational;

pub type RatMatrix = Vec<Vec<Rational>>;

/// Largest matrix group the oracle will close.
pub const GAMMA_CAP: usize = 4096;

/// Generators of the image of a parameter in `O(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub generators: Vec<RatMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub id: String,
    pub degree: i64,
    pub multiplicity: i64,
    /// Frobenius–Schur indicator of the block's irreducible.
    pub indicator: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub gamma_order: usize,
    pub commutant_dimension: usize,
    pub blocks: Vec<BlockReport>,
    /// Determinant of the reflection built for each orthogonal block.
    pub reflection_determinants: Vec<i64>,
    pub data: ComponentGroupData,
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(Rational::zero(), |acc, (&x, brow)| if x.is_zero() { acc } else { acc + x * brow[j] }))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &RatMatrix) -> RatMatrix {
    let n = a.first().map_or(0, |r| r.len());
    (0..n).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Row-reduces in place; returns the rank.
fn row_reduce(m: &mut RatMatrix) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let v = f * m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    r
}

pub fn determinant(a: &RatMatrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for i in c + 1..n {
            let f = m[i][c] / m[c][c];
            if !f.is_zero() {
                for j in c..n {
                    let v = f * m[c][j];
                    m[i][j] -= v;
                }
            }
        }
    }
    det
}

fn inverse(a: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let mut aug: RatMatrix = a.iter().zip(identity(n)).map(|(r, i)| r.iter().copied().chain(i).collect()).collect();
    row_reduce(&mut aug);
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn is_orthogonal(g: &RatMatrix, n: usize) -> bool {
    g.len() == n && g.iter().all(|r| r.len() == n) && mat_mul(g, &transpose(g)) == identity(n)
}

/// Dimension of `{X : XA = AX for every generator A}`.
pub fn commutant_dimension(gens: &[RatMatrix], n: usize) -> usize {
    let mut rows: RatMatrix = Vec::new();
    for a in gens {
        for i in 0..n {
            for j in 0..n {
                // (XA - AX)_{ij} = sum_k X_{ik} A_{kj} - A_{ik} X_{kj}
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] += a[k][j];
                    row[k * n + j] -= a[i][k];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    n * n - if rows.is_empty() { 0 } else { row_reduce(&mut rows) }
}

fn close(gens: &[RatMatrix], n: usize) -> Result<Vec<RatMatrix>, ParamError> {
    let mut elems = vec![identity(n)];
    let mut index: HashMap<RatMatrix, usize> = HashMap::from([(identity(n), 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p = mat_mul(&elems[i], g);
            if !index.contains_key(&p) {
                if elems.len() == GAMMA_CAP {
                    return Err(ParamError::OracleMismatch(format!("image group exceeds {GAMMA_CAP} elements")));
                }
                index.insert(p.clone(), elems.len());
                elems.push(p);
            }
        }
        i += 1;
    }
    Ok(elems)
}

fn block(m: &RatMatrix, range: &std::ops::Range<usize>) -> RatMatrix {
    m[range.clone()].iter().map(|r| r[range.clone()].to_vec()).collect()
}

fn trace(m: &RatMatrix) -> Rational {
    (0..m.len()).map(|i| m[i][i]).sum()
}

/// Γ-invariant subspace of dimension `dim` inside `range`, spanned by the orbit of a basis vector.
fn invariant_copy(elems: &[RatMatrix], range: &std::ops::Range<usize>, dim: usize, n: usize) -> Option<RatMatrix> {
    range.clone().find_map(|k| {
        let mut rows: RatMatrix = elems.iter().map(|g| (0..n).map(|i| g[i][k]).collect()).collect();
        (row_reduce(&mut rows) == dim).then_some(rows)
    })
}

/// Recomputes the component-group data of `declared` from `realization`.
pub fn commutant_oracle(realization: &Realization, declared: &ClassicalParameter) -> Result<OracleReport, ParamError> {
    declared.validate("")?;
    let n = declared.dual_dimension() as usize;
    let gens = &realization.generators;
    if let Some(i) = gens.iter().position(|g| !is_orthogonal(g, n)) {
        return Err(ParamError::NotOrthogonal(i));
    }
    let commutant_dim = commutant_dimension(gens, n);
    let elems = close(gens, n)?;
    let index: HashMap<&RatMatrix, usize> = elems.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let gamma = Arc::new(FinGroup::from_fn(elems.len(), 0, |a, b| index[&mat_mul(&elems[a], &elems[b])]));
    let table = CharacterTable::compute(&gamma)?;
    let indicator = |i: usize| -> i64 {
        let chi = table.character(i);
        let s: Cyclotomic = (0..gamma.order()).map(|x| chi.at(gamma.mul(x, x)).clone()).sum();
        s.scale(Rational::new(1, gamma.order() as i64)).as_integer().expect("indicator is an integer")
    };
    let char_of = |f: &dyn Fn(&RatMatrix) -> Rational| {
        ClassFunction::from_element_fn(&gamma, |x| Cyclotomic::rational(f(&elems[x])))
    };

    let whole = table.decompose(&char_of(&|m| trace(m)))?;
    let sum_sq: i64 = whole.iter().map(|m| m * m).sum();
    if sum_sq as usize != commutant_dim {
        return Err(ParamError::OracleMismatch(format!(
            "commutant dimension {commutant_dim} but squared multiplicities sum to {sum_sq}"
        )));
    }

    let mut ranges = Vec::new();
    let mut start = 0;
    for s in &declared.summands {
        let len = s.contribution() as usize;
        ranges.push(start..start + len);
        start += len;
    }
    for (gi, g) in gens.iter().enumerate() {
        for (r, range) in ranges.iter().enumerate() {
            for i in range.clone() {
                if (0..n).any(|j| !range.contains(&j) && !g[i][j].is_zero()) {
                    return Err(ParamError::OracleMismatch(format!(
                        "generator {gi} mixes summand {} with other coordinates",
                        declared.summands[r].id
                    )));
                }
            }
        }
    }

    let mut blocks = Vec::new();
    let mut used = vec![false; table.len()];
    let mut reflections = Vec::new();
    let mut coordinates = Vec::new();
    for (s, range) in declared.summands.iter().zip(&ranges) {
        let mismatch = |why: String| ParamError::OracleMismatch(format!("summand {}: {why}", s.id));
        let mult = table.decompose(&char_of(&|m| trace(&block(m, range))))?;
        let present: Vec<usize> = (0..table.len()).filter(|&i| mult[i] != 0).collect();
        let expected_count = if s.sd_type == SdType::NonSelfDualPair { 2 } else { 1 };
        if present.len() != expected_count || present.iter().any(|&i| used[i]) {
            return Err(mismatch(format!("block carries irreducibles {present:?}")));
        }
        let i0 = present[0];
        let ind = indicator(i0);
        let expected_ind = match s.sd_type {
            SdType::Orthogonal => 1,
            SdType::Symplectic => -1,
            SdType::NonSelfDualPair => 0,
        };
        if table.degree(i0) != s.dim as i64 || mult[i0] != s.multiplicity as i64 || ind != expected_ind {
            return Err(mismatch(format!(
                "found degree {}, multiplicity {}, indicator {ind}",
                table.degree(i0),
                mult[i0]
            )));
        }
        for &i in &present {
            used[i] = true;
        }
        blocks.push(BlockReport { id: s.id.clone(), degree: table.degree(i0), multiplicity: mult[i0], indicator: ind });
        if s.sd_type == SdType::Orthogonal {
            let b = invariant_copy(&elems, range, s.dim as usize, n)
                .ok_or_else(|| mismatch("no invariant copy spanned by a basis vector".into()))?;
            // Orthogonal projector onto the copy, and the reflection through its complement.
            let bt = transpose(&b);
            let e = mat_mul(&mat_mul(&bt, &inverse(&mat_mul(&b, &bt))), &b);
            let r: RatMatrix = identity(n)
                .into_iter()
                .zip(&e)
                .map(|(row, erow)| row.into_iter().zip(erow).map(|(x, &y)| x - y - y).collect())
                .collect();
            if !is_orthogonal(&r, n) || gens.iter().any(|g| mat_mul(g, &r) != mat_mul(&r, g)) {
                return Err(mismatch("reflection does not centralize the image".into()));
            }
            reflections.push((determinant(&r), mult[i0]));
            coordinates.push(s.id.clone());
        }
    }

    let k = reflections.len();
    let minus_one = |i: usize| reflections[i].0 == -Rational::one();
    let a_phi: Vec<u64> = (0..1u64 << k)
        .filter(|&v| (0..k).filter(|&i| v >> i & 1 == 1 && minus_one(i)).count() % 2 == 0)
        .collect();
    // -1 lies in SO(N) iff N is even; on a block of multiplicity l it is -1 in O(l).
    let center = if n % 2 == 0 && declared.center_image == CenterImage::Full {
        (0..k).filter(|&i| reflections[i].1 % 2 == 1).fold(0, |acc, i| acc | 1 << i)
    } else {
        0
    };
    let data = ComponentGroupData::assemble(declared.kind, coordinates, &f2::rref(&a_phi), center);
    Ok(OracleReport {
        gamma_order: gamma.order(),
        commutant_dimension: commutant_dim,
        blocks,
        reflection_determinants: reflections.iter().map(|(d, _)| d.to_integer()).collect(),
        data,
    })
}

#[cfg(test)]
mod tests {
    use super::super::realizations;
    use super::super::{component_group, GroupKind, SummandSpec};
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    #[test]
    fn determinants_and_inverses() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        assert_eq!(determinant(&a), q(1));
        assert_eq!(mat_mul(&a, &inverse(&a)), identity(2));
        assert_eq!(determinant(&vec![vec![q(0), q(1)], vec![q(1), q(0)]]), q(-1));
    }

    #[test]
    fn identity_parameter() {
        let p = ClassicalParameter::new(GroupKind::Sp, 0, vec![SummandSpec::orthogonal("triv", 1)]);
        let r = commutant_oracle(&Realization { generators: vec![] }, &p).unwrap();
        assert_eq!(r.gamma_order, 1);
        assert_eq!(r.commutant_dimension, 1);
        assert_eq!(r.reflection_determinants, vec![-1]);
        assert_eq!(r.data.sign_rank(), 1);
        assert!(r.data.a_phi.is_empty());
        assert_eq!(r.data, component_group(&p).unwrap());
    }

    #[test]
    fn three_quadratic_characters() {
        let (p, real) = realizations::all_dim_one(3);
        let r = commutant_oracle(&real, &p).unwrap();
        assert_eq!(r.commutant_dimension, 3);
        assert_eq!(r.reflection_determinants, vec![-1, -1, -1]);
        assert_eq!(r.data.a_phi.len(), 2);
        assert_eq!(r.data, component_group(&p).unwrap());
    }

    #[test]
    fn dihedral_plane_and_twist() {
        let (p, real) = realizations::so4_two_planes();
        let r = commutant_oracle(&real, &p).unwrap();
        assert_eq!(r.commutant_dimension, 2);
        assert_eq!(r.reflection_determinants, vec![1, 1]);
        assert_eq!(r.data.s_bar_group().order(), 2);
        assert_eq!(r.data, component_group(&p).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let (p, mut real) = realizations::so4_two_planes();
        real.generators[0][0][0] = q(2);
        assert_eq!(commutant_oracle(&real, &p).unwrap_err(), ParamError::NotOrthogonal(0));
        // Declaring the two planes as one doubled plane does not match the blocks.
        let (_, real) = realizations::so4_two_planes();
        let wrong = ClassicalParameter::new(
            GroupKind::SoSplit,
            2,
            vec![SummandSpec::orthogonal("a", 2).with_multiplicity(2)],
        );
        assert!(matches!(commutant_oracle(&real, &wrong), Err(ParamError::OracleMismatch(_))));
    }

    #[test]
    fn whole_corpus_agrees() {
        for (name, p, real) in realizations::corpus() {
            let r = commutant_oracle(&real, &p).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(r.data, component_group(&p).unwrap(), "{name}");
        }
    }
}
