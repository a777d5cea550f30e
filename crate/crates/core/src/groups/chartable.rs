//! Exact character tables by the Dixon–Schneider method.

use std::cmp::Ordering;
use std::sync::Arc;

use num_integer::Roots;
use num_traits::Zero;

use super::classfn::ClassFunction;
use super::cyclotomic::Cyclotomic;
use super::finite::FinGroup;
use super::modp::{smallest_prime_above, Fp};
use super::GroupError;
use crate::Rational;

/// Default largest group order accepted by [`CharacterTable::compute`].
pub const DEFAULT_ORDER_BOUND: usize = 2048;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FinGroup>,
    prime: u64,
    rows: Vec<Vec<Cyclotomic>>,
    degrees: Vec<i64>,
}

impl CharacterTable {
    pub fn compute(group: &Arc<FinGroup>) -> Result<Self, GroupError> {
        Self::compute_with_bound(group, DEFAULT_ORDER_BOUND)
    }

    pub fn compute_with_bound(group: &Arc<FinGroup>, bound: usize) -> Result<Self, GroupError> {
        let g = group.as_ref();
        let n = g.order();
        if n > bound {
            return Err(GroupError::TooLarge { order: n, bound });
        }
        let k = g.class_count();
        let e = g.exponent() as u64;
        let max_class = (0..k).map(|c| g.class_size(c)).max().unwrap() as u64;
        // p > 2 sqrt(n) max_class, and p > n so that squared degrees are recovered uniquely.
        let sqrt_bound = (4 * n as u64 * max_class * max_class).sqrt() + 1;
        let p = smallest_prime_above(sqrt_bound.max(n as u64), e);
        let f = Fp { p };

        let omegas = split_class_algebra(g, &f)?;
        let z = f.pow(f.primitive_root(), (p - 1) / e);
        let inverse_class: Vec<usize> = (0..k).map(|c| g.class_of(g.inv(g.class_rep(c)))).collect();

        let mut rows = Vec::with_capacity(k);
        let mut degrees = Vec::with_capacity(k);
        for w in &omegas {
            let mut s = 0u64;
            for t in 0..k {
                let term = f.mul(f.mul(w[t], w[inverse_class[t]]), f.inv(g.class_size(t) as u64 % p));
                s = f.add(s, term);
            }
            if s == 0 {
                return Err(GroupError::CharacterTable("degenerate central character".into()));
            }
            let d2 = f.mul(n as u64 % p, f.inv(s));
            let d = (1..=n.sqrt() as u64)
                .find(|&d| n as u64 % d == 0 && (d * d) % p == d2)
                .ok_or_else(|| GroupError::CharacterTable("no degree matches the central character".into()))?;
            let modular: Vec<u64> =
                (0..k).map(|t| f.mul(f.mul(d, w[t]), f.inv(g.class_size(t) as u64 % p))).collect();
            let mut row = Vec::with_capacity(k);
            for t in 0..k {
                row.push(lift_value(g, &f, z, e, &modular, t, d)?);
            }
            rows.push(row);
            degrees.push(d as i64);
        }

        let trivial_index = rows
            .iter()
            .position(|r| r.iter().all(|v| v.as_integer() == Some(1)))
            .ok_or_else(|| GroupError::CharacterTable("trivial character missing".into()))?;
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| {
            degrees[a]
                .cmp(&degrees[b])
                .then_with(|| (a != trivial_index).cmp(&(b != trivial_index)))
                .then_with(|| lex_desc(&rows[a], &rows[b]))
        });
        let rows: Vec<Vec<Cyclotomic>> = order.iter().map(|&i| rows[i].clone()).collect();
        let degrees: Vec<i64> = order.iter().map(|&i| degrees[i]).collect();
        let table = CharacterTable { group: group.clone(), prime: p, rows, degrees };
        table.verify()?;
        Ok(table)
    }

    fn verify(&self) -> Result<(), GroupError> {
        let g = self.group.as_ref();
        let k = g.class_count();
        let n = Rational::from_integer(g.order() as i64);
        if self.degrees.iter().map(|d| d * d).sum::<i64>() != g.order() as i64 {
            return Err(GroupError::CharacterTable("sum of squared degrees differs from the order".into()));
        }
        for i in 0..k {
            for j in i..k {
                let ip = ClassFunction::raw_inner(g, &self.rows[i], &self.rows[j]);
                let want = if i == j { 1 } else { 0 };
                if ip.as_integer() != Some(want) {
                    return Err(GroupError::CharacterTable(format!("row orthogonality fails at ({i}, {j})")));
                }
            }
        }
        for s in 0..k {
            for t in s..k {
                let sum: Cyclotomic = (0..k).map(|i| &self.rows[i][s] * &self.rows[i][t].conj()).sum();
                let want = if s == t { n / Rational::from_integer(g.class_size(s) as i64) } else { Rational::zero() };
                if sum.as_rational() != Some(want) {
                    return Err(GroupError::CharacterTable(format!("column orthogonality fails at ({s}, {t})")));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    /// The prime used in the modular stage.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn values(&self, i: usize) -> &[Cyclotomic] {
        &self.rows[i]
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction::new(self.group.clone(), self.rows[i].clone()).expect("row length matches classes")
    }

    pub fn characters(&self) -> Vec<ClassFunction> {
        (0..self.len()).map(|i| self.character(i)).collect()
    }

    /// Multiplicities of each irreducible in a character.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<i64>, GroupError> {
        (0..self.len())
            .map(|i| {
                let ip = chi.inner_product(&self.character(i))?;
                ip.as_integer().filter(|&m| m >= 0).ok_or(GroupError::NotACharacter)
            })
            .collect()
    }

    /// Index of the irreducible equal to `chi`, if any.
    pub fn find(&self, chi: &ClassFunction) -> Option<usize> {
        if !Arc::ptr_eq(chi.group(), &self.group) && chi.group().as_ref() != self.group.as_ref() {
            return None;
        }
        self.rows.iter().position(|r| r.as_slice() == chi.values())
    }
}

fn lex_desc(a: &[Cyclotomic], b: &[Cyclotomic]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.canonical_cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Simultaneous eigenvectors of the class matrices over F_p, normalized at the identity class.
fn split_class_algebra(g: &FinGroup, f: &Fp) -> Result<Vec<Vec<u64>>, GroupError> {
    let k = g.class_count();
    let mut pending: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect()];
    let mut done: Vec<Vec<u64>> = Vec::new();
    for r in 1..k {
        if pending.is_empty() {
            break;
        }
        let m = class_matrix(g, r, f);
        let mut next = Vec::new();
        for space in pending {
            for part in split_space(f, &space, &m)? {
                if part.len() == 1 {
                    done.push(part.into_iter().next().unwrap());
                } else {
                    next.push(part);
                }
            }
        }
        pending = next;
    }
    for space in pending {
        if space.len() != 1 {
            return Err(GroupError::CharacterTable("class algebra did not split".into()));
        }
        done.push(space.into_iter().next().unwrap());
    }
    done.into_iter()
        .map(|v| {
            if v[0] == 0 {
                return Err(GroupError::CharacterTable("eigenvector vanishes at the identity".into()));
            }
            let inv = f.inv(v[0]);
            Ok(v.iter().map(|&x| f.mul(x, inv)).collect())
        })
        .collect()
}

/// `m[s][t]` = number of `x` in class `r` with `x^-1 z_t` in class `s`.
fn class_matrix(g: &FinGroup, r: usize, f: &Fp) -> Vec<Vec<u64>> {
    let k = g.class_count();
    let mut m = vec![vec![0u64; k]; k];
    for t in 0..k {
        let z = g.class_rep(t);
        for &x in &g.classes()[r] {
            let y = g.mul(g.inv(x as usize), z);
            m[g.class_of(y)][t] += 1;
        }
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v %= f.p;
        }
    }
    m
}

/// Splits an invariant subspace (rows in reduced echelon form) into eigenspaces of `m`.
fn split_space(f: &Fp, basis: &[Vec<u64>], m: &[Vec<u64>]) -> Result<Vec<Vec<Vec<u64>>>, GroupError> {
    let d = basis.len();
    if d == 1 {
        return Ok(vec![basis.to_vec()]);
    }
    let k = m.len();
    let mut rows = basis.to_vec();
    let pivots = f.rref(&mut rows);
    let images: Vec<Vec<u64>> = rows
        .iter()
        .map(|b| (0..k).map(|s| (0..k).fold(0, |acc, t| f.add(acc, f.mul(m[s][t], b[t])))).collect())
        .collect();
    // a[i][j] = coordinate i of m b_j.
    let a: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|j| images[j][pivots[i]]).collect()).collect();
    let cp = f.charpoly(&a);
    let roots: Vec<u64> = (0..f.p).filter(|&x| f.eval(&cp, x) == 0).collect();
    if roots.len() == 1 {
        return Ok(vec![rows]);
    }
    let mut parts = Vec::new();
    let mut total = 0;
    for lam in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { f.sub(a[i][j], lam) } else { a[i][j] }).collect())
            .collect();
        let ns = f.nullspace(&shifted);
        let mut vecs: Vec<Vec<u64>> = ns
            .iter()
            .map(|y| (0..k).map(|c| (0..d).fold(0, |acc, j| f.add(acc, f.mul(y[j], rows[j][c])))).collect())
            .collect();
        f.rref(&mut vecs);
        total += vecs.len();
        parts.push(vecs);
    }
    if total != d {
        return Err(GroupError::CharacterTable("class matrix is not diagonalizable mod p".into()));
    }
    Ok(parts)
}

/// Exact value of a character on class `t` from its values mod p on the powers of the representative.
fn lift_value(g: &FinGroup, f: &Fp, z: u64, e: u64, modular: &[u64], t: usize, d: u64) -> Result<Cyclotomic, GroupError> {
    let o = g.element_order(g.class_rep(t)) as u64;
    let step = e / o;
    let w = f.pow(z, step);
    let winv = f.inv(w);
    let oinv = f.inv(o % f.p);
    let vals: Vec<u64> = (0..o).map(|i| modular[g.power_map(t, i as i64)]).collect();
    let mut coeffs = vec![Rational::zero(); e as usize];
    for j in 0..o {
        let wj = f.pow(winv, j);
        let mut acc = 0u64;
        let mut wij = 1u64;
        for &v in &vals {
            acc = f.add(acc, f.mul(v, wij));
            wij = f.mul(wij, wj);
        }
        let mult = f.mul(acc, oinv);
        if mult > d {
            return Err(GroupError::CharacterTable("eigenvalue multiplicity out of range".into()));
        }
        coeffs[(j * step) as usize] = Rational::from_integer(mult as i64);
    }
    Ok(Cyclotomic::new(e as u32, &coeffs))
}

#[cfg(test)]
mod tests {
    use super::super::library;
    use super::*;

    fn table(g: FinGroup) -> CharacterTable {
        CharacterTable::compute(&Arc::new(g)).unwrap()
    }

    #[test]
    fn trivial_group() {
        let t = table(library::cyclic(1));
        assert_eq!(t.len(), 1);
        assert_eq!(t.values(0), &[Cyclotomic::one()]);
    }

    #[test]
    fn z2() {
        let t = table(library::cyclic(2));
        assert_eq!(t.values(0), &[Cyclotomic::one(), Cyclotomic::one()]);
        assert_eq!(t.values(1), &[Cyclotomic::one(), Cyclotomic::from_int(-1)]);
    }

    #[test]
    fn s3() {
        let g = library::symmetric(3);
        let t = table(g.clone());
        assert_eq!(t.degrees(), &[1, 1, 2]);
        // Classes: identity, transpositions (order 2), 3-cycles (order 3).
        assert_eq!(g.element_order(g.class_rep(1)), 2);
        assert_eq!(t.values(2), &[Cyclotomic::from_int(2), Cyclotomic::zero(), Cyclotomic::from_int(-1)]);
        assert_eq!(t.values(1)[1], Cyclotomic::from_int(-1));
    }

    #[test]
    fn known_degree_patterns() {
        let cases: Vec<(FinGroup, Vec<i64>)> = vec![
            (library::dihedral(4), vec![1, 1, 1, 1, 2]),
            (library::quaternion(), vec![1, 1, 1, 1, 2]),
            (library::alternating(4), vec![1, 1, 1, 3]),
            (library::symmetric(4), vec![1, 1, 2, 3, 3]),
            (library::dihedral(6), vec![1, 1, 1, 1, 2, 2]),
            (library::cyclic(5), vec![1; 5]),
        ];
        for (g, degs) in cases {
            assert_eq!(table(g).degrees(), degs.as_slice());
        }
        let e = table(library::extraspecial_plus_32());
        assert_eq!(e.len(), 17);
        assert_eq!(e.degree(16), 4);
    }

    #[test]
    fn order_bound() {
        let g = Arc::new(library::symmetric(4));
        assert!(matches!(CharacterTable::compute_with_bound(&g, 10), Err(GroupError::TooLarge { .. })));
    }

    #[test]
    fn regular_character() {
        let g = Arc::new(library::alternating(4));
        let t = CharacterTable::compute(&g).unwrap();
        let reg = ClassFunction::regular(&g);
        for i in 0..t.len() {
            assert_eq!(reg.inner_product(&t.character(i)).unwrap().as_integer(), Some(t.degree(i)));
            assert_eq!(t.character(i).inner_product(&t.character(i)).unwrap().as_integer(), Some(1));
        }
    }

    #[test]
    fn a4_has_cube_roots() {
        let t = table(library::alternating(4));
        let w = Cyclotomic::root_of_unity(3, 1);
        assert!(t.values(1).contains(&w) || t.values(2).contains(&w));
    }
}
