//! Finite abelian groups in invariant-factor form, homomorphisms and duality.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::intmat::{integer_kernel, smith_normal_form, IntMatrix};
use super::GroupError;

/// Finite abelian group `Z/d_1 x ... x Z/d_r` with `2 <= d_1 | d_2 | ... | d_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

impl TryFrom<Vec<u64>> for FinAbGroup {
    type Error = GroupError;
    fn try_from(v: Vec<u64>) -> Result<Self, GroupError> {
        FinAbGroup::new(v)
    }
}

impl From<FinAbGroup> for Vec<u64> {
    fn from(g: FinAbGroup) -> Vec<u64> {
        g.factors
    }
}

impl FinAbGroup {
    /// Validates an invariant-factor list.
    pub fn new(factors: Vec<u64>) -> Result<Self, GroupError> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(GroupError::InvalidFactors(format!("factor {d} is below 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(GroupError::InvalidFactors(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(FinAbGroup { factors })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FinAbGroup { factors: vec![n] }
        }
    }

    /// `(Z/2)^r`.
    pub fn elementary_two(r: usize) -> Self {
        FinAbGroup { factors: vec![2; r] }
    }

    /// Normalizes an arbitrary list of cyclic orders (1s and 0s are not allowed; 1s are dropped).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &d) in orders.iter().enumerate() {
            assert!(d >= 1, "cyclic order must be positive");
            m[(i, i)] = d as i64;
        }
        let s = smith_normal_form(&m);
        FinAbGroup { factors: s.invariants().into_iter().filter(|&d| d > 1).map(|d| d as u64).collect() }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.rank(), "element has wrong length");
        x.iter().zip(&self.factors).map(|(&v, &d)| v.rem_euclid(d as i64)).collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, x: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = x.iter().map(|a| -a).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: i64, x: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = x.iter().map(|a| k * a).collect();
        self.reduce(&s)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.factors).all(|(&v, &d)| v >= 0 && (v as u64) < d)
    }

    /// Mixed-radix index, last coordinate fastest (lexicographic order).
    pub fn index_of(&self, x: &[i64]) -> usize {
        let x = self.reduce(x);
        x.iter().zip(&self.factors).fold(0usize, |acc, (&v, &d)| acc * d as usize + v as usize)
    }

    pub fn element(&self, mut index: usize) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for (slot, &d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (index % d as usize) as i64;
            index /= d as usize;
        }
        out
    }

    /// All elements in index order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        (0..self.order() as usize).map(|i| self.element(i)).collect()
    }

    /// Standard basis generator `e_i`.
    pub fn generator(&self, i: usize) -> Vec<i64> {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn element_order(&self, x: &[i64]) -> u64 {
        let x = self.reduce(x);
        x.iter()
            .zip(&self.factors)
            .map(|(&v, &d)| d / (v as u64).gcd(&d))
            .fold(1, |a, b| a.lcm(&b))
    }

    /// Pontryagin dual. Its elements are exponent vectors of [`AbCharacter`]s.
    pub fn dual(&self) -> FinAbGroup {
        self.clone()
    }

    /// Evaluation pairing of a dual element `c` with an element `x`.
    pub fn pairing(&self, c: &[i64], x: &[i64]) -> Rotation {
        let e = self.exponent() as i64;
        if e == 1 {
            return Rotation::ONE;
        }
        let mut acc = 0i64;
        for ((&ci, &xi), &d) in c.iter().zip(x).zip(&self.factors) {
            acc = (acc + (ci * xi).rem_euclid(d as i64) * (e / d as i64)).rem_euclid(e);
        }
        Rotation::new(acc, e as u64)
    }

    pub fn character(&self, exponents: &[i64]) -> AbCharacter {
        AbCharacter { group: self.clone(), exponents: self.reduce(exponents) }
    }

    /// Subgroup generated by `gens`, with its own invariant-factor structure.
    pub fn subgroup(&self, gens: &[Vec<i64>]) -> Subgroup {
        Subgroup::generated(self, gens)
    }

    /// Quotient by the subgroup generated by `gens`.
    pub fn quotient(&self, gens: &[Vec<i64>]) -> Quotient {
        Quotient::new(self, gens)
    }

    pub fn identity_hom(&self) -> AbHom {
        AbHom::new(self.clone(), self.clone(), IntMatrix::identity(self.rank())).expect("identity is well defined")
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut all = self.factors.clone();
        all.extend_from_slice(&other.factors);
        FinAbGroup::from_cyclic_orders(&all)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let d = self.factors[i];
            let run = self.factors[i..].iter().take_while(|&&x| x == d).count();
            if run == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// A root of unity `exp(2 pi i num/den)`, kept reduced with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rotation {
    pub num: u64,
    pub den: u64,
}

impl Rotation {
    pub const ONE: Rotation = Rotation { num: 0, den: 1 };

    pub fn new(num: i64, den: u64) -> Rotation {
        assert!(den > 0, "zero denominator");
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        Rotation { num: n / g, den: den / g }
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn mul(&self, other: &Rotation) -> Rotation {
        let den = self.den.lcm(&other.den);
        Rotation::new((self.num * (den / self.den) + other.num * (den / other.den)) as i64, den)
    }

    pub fn inverse(&self) -> Rotation {
        Rotation::new(-(self.num as i64), self.den)
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (n, d) => write!(f, "e({n}/{d})"),
        }
    }
}

/// Linear character of a [`FinAbGroup`], given by an exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbCharacter {
    group: FinAbGroup,
    exponents: Vec<i64>,
}

impl AbCharacter {
    pub fn trivial(group: &FinAbGroup) -> Self {
        AbCharacter { group: group.clone(), exponents: group.zero() }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn eval(&self, x: &[i64]) -> Rotation {
        self.group.pairing(&self.exponents, x)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &AbCharacter) -> AbCharacter {
        assert_eq!(self.group, other.group, "characters of different groups");
        AbCharacter { group: self.group.clone(), exponents: self.group.add(&self.exponents, &other.exponents) }
    }

    pub fn inverse(&self) -> AbCharacter {
        AbCharacter { group: self.group.clone(), exponents: self.group.neg(&self.exponents) }
    }

    /// Pullback along a homomorphism into this character's group.
    pub fn pullback(&self, f: &AbHom) -> AbCharacter {
        assert_eq!(f.target(), &self.group, "pullback along a map with the wrong target");
        let src = f.source();
        // The value on source generator j is the value on its image.
        let exps: Vec<i64> = (0..src.rank())
            .map(|j| {
                let r = self.eval(&f.apply(&src.generator(j)));
                let d = src.invariant_factors()[j];
                // r has order dividing d, so r = k/d.
                debug_assert_eq!(d % r.den, 0);
                (r.num * (d / r.den)) as i64
            })
            .collect();
        src.character(&exps)
    }
}

/// Homomorphism of finite abelian groups; column `j` is the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMatrix) -> Result<Self, GroupError> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(GroupError::IllDefinedHom(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        let mut m = matrix;
        for j in 0..source.rank() {
            let col = target.reduce(&m.column(j));
            let d = source.invariant_factors()[j] as i64;
            if target.scale(d, &col).iter().any(|&v| v != 0) {
                return Err(GroupError::IllDefinedHom(format!(
                    "generator {j} has order {d} but its image {col:?} does not"
                )));
            }
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(AbHom { source, target, matrix: m })
    }

    /// Builds the map from the images of the source generators.
    pub fn from_images(source: FinAbGroup, target: FinAbGroup, images: &[Vec<i64>]) -> Result<Self, GroupError> {
        if images.len() != source.rank() {
            return Err(GroupError::IllDefinedHom(format!(
                "{} images given for {} generators",
                images.len(),
                source.rank()
            )));
        }
        if let Some(bad) = images.iter().find(|x| x.len() != target.rank()) {
            return Err(GroupError::IllDefinedHom(format!("image {bad:?} has wrong length")));
        }
        let m = IntMatrix::from_columns(target.rank(), images);
        Self::new(source, target, m)
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let m = IntMatrix::zeros(target.rank(), source.rank());
        AbHom { source, target, matrix: m }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.target.reduce(&self.matrix.mul_vec(&self.source.reduce(x)))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AbHom) -> AbHom {
        assert_eq!(inner.target, self.source, "composition of incompatible maps");
        let m = self.matrix.mul(&inner.matrix);
        AbHom::new(inner.source.clone(), self.target.clone(), m).expect("composition is well defined")
    }

    pub fn is_zero(&self) -> bool {
        (0..self.source.rank()).all(|j| self.apply(&self.source.generator(j)).iter().all(|&v| v == 0))
    }

    pub fn kernel(&self) -> Subgroup {
        let (r, s) = (self.source.rank(), self.target.rank());
        // Integer solutions of M x + diag(b) y = 0, projected to x.
        let mut big = IntMatrix::zeros(s, r + s);
        for i in 0..s {
            for j in 0..r {
                big[(i, j)] = self.matrix[(i, j)];
            }
            big[(i, r + i)] = self.target.invariant_factors()[i] as i64;
        }
        let gens: Vec<Vec<i64>> =
            integer_kernel(&big).into_iter().map(|k| self.source.reduce(&k[..r])).collect();
        Subgroup::generated(&self.source, &gens)
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<Vec<i64>> = (0..self.source.rank()).map(|j| self.apply(&self.source.generator(j))).collect();
        Subgroup::generated(&self.target, &gens)
    }

    pub fn kernel_image(&self) -> (Subgroup, Subgroup) {
        (self.kernel(), self.image())
    }
}

/// A subgroup with its own invariant-factor presentation and an embedding into the ambient group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: FinAbGroup,
    embedding: AbHom,
}

impl Subgroup {
    fn generated(ambient: &FinAbGroup, gens: &[Vec<i64>]) -> Subgroup {
        let gens: Vec<Vec<i64>> = gens.iter().map(|g| ambient.reduce(g)).collect();
        let (r, m) = (ambient.rank(), gens.len());
        // Relation lattice {c : sum c_k g_k = 0}.
        let mut big = IntMatrix::zeros(r, m + r);
        for (k, g) in gens.iter().enumerate() {
            for i in 0..r {
                big[(i, k)] = g[i];
            }
        }
        for i in 0..r {
            big[(i, m + i)] = ambient.invariant_factors()[i] as i64;
        }
        let rel: Vec<Vec<i64>> = integer_kernel(&big).into_iter().map(|k| k[..m].to_vec()).collect();
        let rel_mat = IntMatrix::from_columns(m, &rel);
        let s = smith_normal_form(&rel_mat);
        let uinv = s.u.unimodular_inverse();
        let diag = s.d.diagonal();
        let gmat = IntMatrix::from_columns(r, &gens);
        let mut factors = Vec::new();
        let mut images = Vec::new();
        for i in 0..m {
            let d = diag.get(i).copied().unwrap_or(0);
            assert!(d != 0, "subgroup of a finite group must be finite");
            if d == 1 {
                continue;
            }
            factors.push(d as u64);
            images.push(ambient.reduce(&gmat.mul_vec(&uinv.column(i))));
        }
        let group = FinAbGroup::new(factors).expect("Smith invariants form a divisibility chain");
        let embedding = AbHom::from_images(group.clone(), ambient.clone(), &images).expect("embedding is well defined");
        Subgroup { group, embedding }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn embedding(&self) -> &AbHom {
        &self.embedding
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Elements as ambient vectors, in subgroup index order.
    pub fn ambient_elements(&self) -> Vec<Vec<i64>> {
        self.group.elements().iter().map(|x| self.embedding.apply(x)).collect()
    }

    /// Map from ambient vector to subgroup coordinates.
    pub fn coordinate_map(&self) -> HashMap<Vec<i64>, Vec<i64>> {
        self.group.elements().into_iter().map(|x| (self.embedding.apply(&x), x)).collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let x = self.embedding.target().reduce(x);
        self.ambient_elements().contains(&x)
    }

    /// Ambient generators (images of the subgroup's own basis).
    pub fn ambient_generators(&self) -> Vec<Vec<i64>> {
        (0..self.group.rank()).map(|i| self.embedding.apply(&self.group.generator(i))).collect()
    }
}

/// Quotient `A / <gens>` with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: FinAbGroup,
    projection: AbHom,
}

impl Quotient {
    fn new(ambient: &FinAbGroup, gens: &[Vec<i64>]) -> Quotient {
        let r = ambient.rank();
        let m = gens.len();
        let mut big = IntMatrix::zeros(r, m + r);
        for (k, g) in gens.iter().enumerate() {
            let g = ambient.reduce(g);
            for i in 0..r {
                big[(i, k)] = g[i];
            }
        }
        for i in 0..r {
            big[(i, m + i)] = ambient.invariant_factors()[i] as i64;
        }
        let s = smith_normal_form(&big);
        let diag = s.d.diagonal();
        let mut factors = Vec::new();
        let mut rows = Vec::new();
        for i in 0..r {
            let d = diag[i];
            assert!(d != 0, "quotient of a finite group must be finite");
            if d == 1 {
                continue;
            }
            factors.push(d as u64);
            rows.push(s.u.row(i));
        }
        let group = FinAbGroup::new(factors).expect("Smith invariants form a divisibility chain");
        let mat = if rows.is_empty() { IntMatrix::zeros(0, r) } else { IntMatrix::from_rows(&rows) };
        let projection = AbHom::new(ambient.clone(), group.clone(), mat).expect("projection is well defined");
        Quotient { group, projection }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn projection(&self) -> &AbHom {
        &self.projection
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }
}

/// Invariant-factor presentation of an abstract finite abelian group given by a
/// multiplication closure on element indices `0..order`.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    pub group: FinAbGroup,
    /// Coordinates of each element index.
    pub coords: Vec<Vec<i64>>,
    /// Element index of each coordinate vector, in [`FinAbGroup::index_of`] order.
    pub element_at: Vec<usize>,
}

impl AbelianPresentation {
    pub fn from_operation(order: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        // Polycyclic sweep: adjoin elements in index order, recording relative orders.
        let mut old: Vec<Option<Vec<i64>>> = vec![None; order];
        old[identity] = Some(Vec::new());
        let mut members = vec![identity];
        let mut gens: Vec<usize> = Vec::new();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        for x in 0..order {
            if old[x].is_some() {
                continue;
            }
            let k = gens.len();
            let mut m = 1;
            let mut p = x;
            while old[p].is_none() {
                p = mul(p, x);
                m += 1;
            }
            // x^m lies in the span of earlier generators.
            let mut rel = old[p].clone().unwrap();
            for v in rel.iter_mut() {
                *v = -*v;
            }
            rel.push(m);
            relations.push(rel);
            gens.push(x);
            for c in old.iter_mut().flatten() {
                c.push(0);
            }
            let base = members.clone();
            let mut power = x;
            for i in 1..m {
                for &s in &base {
                    let y = mul(s, power);
                    let mut c = old[s].clone().unwrap();
                    c[k] = i;
                    old[y] = Some(c);
                    members.push(y);
                }
                power = mul(power, x);
            }
        }
        let k = gens.len();
        let rel_cols: Vec<Vec<i64>> = relations
            .into_iter()
            .map(|mut r| {
                r.resize(k, 0);
                r
            })
            .collect();
        let rel_mat = IntMatrix::from_columns(k, &rel_cols);
        let s = smith_normal_form(&rel_mat);
        let diag = s.d.diagonal();
        let keep: Vec<usize> = (0..k).filter(|&i| diag[i] != 1).collect();
        let group = FinAbGroup::new(keep.iter().map(|&i| diag[i] as u64).collect()).expect("Smith invariants");
        let coords: Vec<Vec<i64>> = old
            .into_iter()
            .map(|c| {
                let y = s.u.mul_vec(&c.expect("every element reached"));
                group.reduce(&keep.iter().map(|&i| y[i]).collect::<Vec<_>>())
            })
            .collect();
        let mut element_at = vec![usize::MAX; order];
        for (e, c) in coords.iter().enumerate() {
            element_at[group.index_of(c)] = e;
        }
        AbelianPresentation { group, coords, element_at }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(f: &[u64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_chain() {
        assert!(FinAbGroup::new(vec![4, 2]).is_err());
        assert!(FinAbGroup::new(vec![1]).is_err());
        assert!(FinAbGroup::new(vec![2, 6]).is_ok());
    }

    #[test]
    fn normalizes_cyclic_orders() {
        assert_eq!(FinAbGroup::from_cyclic_orders(&[2, 3]), g(&[6]));
        assert_eq!(FinAbGroup::from_cyclic_orders(&[4, 6]), g(&[2, 12]));
        assert_eq!(FinAbGroup::from_cyclic_orders(&[1, 1]), FinAbGroup::trivial());
    }

    #[test]
    fn duals_keep_factors() {
        assert_eq!(g(&[6]).dual(), g(&[6]));
        assert_eq!(g(&[2, 4]).dual(), g(&[2, 4]));
        assert_eq!(FinAbGroup::trivial().dual(), FinAbGroup::trivial());
    }

    #[test]
    fn display() {
        assert_eq!(g(&[2, 2]).to_string(), "(Z/2)^2");
        assert_eq!(g(&[2, 4]).to_string(), "Z/2 x Z/4");
        assert_eq!(FinAbGroup::trivial().to_string(), "1");
    }

    #[test]
    fn zero_map() {
        let a = g(&[2, 2]);
        let f = AbHom::zero(a.clone(), a.clone());
        let (k, i) = f.kernel_image();
        assert_eq!(k.order(), 4);
        assert_eq!(i.order(), 1);
    }

    #[test]
    fn sum_map() {
        let a = g(&[2, 2]);
        let f = AbHom::from_images(a.clone(), g(&[2]), &[vec![1], vec![1]]).unwrap();
        let (k, i) = f.kernel_image();
        assert_eq!(k.group(), &g(&[2]));
        assert_eq!(k.ambient_elements(), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(i.group(), &g(&[2]));
    }

    #[test]
    fn identity_map() {
        let a = g(&[2, 6]);
        let (k, i) = a.identity_hom().kernel_image();
        assert_eq!(k.order(), 1);
        assert_eq!(i.group(), &a);
    }

    #[test]
    fn ill_defined_rejected() {
        // Z/2 -> Z/4 sending the generator to 1 is not a homomorphism.
        assert!(AbHom::from_images(g(&[2]), g(&[4]), &[vec![1]]).is_err());
        assert!(AbHom::from_images(g(&[2]), g(&[4]), &[vec![2]]).is_ok());
    }

    #[test]
    fn quotient_orders() {
        let a = g(&[2, 4]);
        let q = a.quotient(&[vec![0, 2]]);
        assert_eq!(q.group(), &g(&[2, 2]));
        let q = a.quotient(&[vec![1, 1]]);
        assert_eq!(q.group(), &g(&[2]));
        assert!(q.projection().apply(&[1, 1]).iter().all(|&v| v == 0));
    }

    #[test]
    fn presentation_of_z2xz4() {
        let a = g(&[2, 4]);
        let els = a.elements();
        let p = AbelianPresentation::from_operation(8, 0, |x, y| a.index_of(&a.add(&els[x], &els[y])));
        assert_eq!(p.group, a);
        for x in 0..8 {
            for y in 0..8 {
                let z = a.index_of(&a.add(&els[x], &els[y]));
                assert_eq!(p.group.add(&p.coords[x], &p.coords[y]), p.coords[z]);
            }
        }
    }

    fn arb_group() -> impl Strategy<Value = FinAbGroup> {
        prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 6]), 0..4)
            .prop_map(|v| FinAbGroup::from_cyclic_orders(&v))
    }

    proptest! {
        #[test]
        fn kernel_times_image(src in arb_group(), tgt in arb_group(), seed in prop::collection::vec(0i64..12, 16)) {
            // Scale a raw matrix so that every column is well defined.
            let mut images = Vec::new();
            for j in 0..src.rank() {
                let d = src.invariant_factors()[j];
                let col: Vec<i64> = (0..tgt.rank()).map(|i| {
                    let t = tgt.invariant_factors()[i];
                    let step = (t / t.gcd(&d)) as i64;
                    seed[(i * 4 + j) % 16] * step
                }).collect();
                images.push(col);
            }
            let f = AbHom::from_images(src.clone(), tgt.clone(), &images).unwrap();
            let (k, i) = f.kernel_image();
            prop_assert_eq!(k.order() * i.order(), src.order());
            for x in k.ambient_elements() {
                prop_assert!(f.apply(&x).iter().all(|&v| v == 0));
            }
            // Brute-force kernel size.
            let brute = src.elements().iter().filter(|x| f.apply(x).iter().all(|&v| v == 0)).count();
            prop_assert_eq!(brute as u64, k.order());
        }

        #[test]
        fn dual_is_perfect(a in arb_group()) {
            prop_assert_eq!(a.dual().order(), a.order());
            // Evaluation A -> dual(dual(A)) is injective.
            let chars = a.dual().elements();
            let mut seen = std::collections::HashSet::new();
            for x in a.elements() {
                let row: Vec<Rotation> = chars.iter().map(|c| a.pairing(c, &x)).collect();
                prop_assert!(seen.insert(row));
            }
        }

        #[test]
        fn characters_multiply(a in arb_group(), i in 0usize..64, j in 0usize..64, k in 0usize..64) {
            let n = a.order() as usize;
            let (c1, c2, x) = (a.element(i % n), a.element(j % n), a.element(k % n));
            let (x1, x2) = (a.character(&c1), a.character(&c2));
            prop_assert_eq!(x1.mul(&x2).eval(&x), x1.eval(&x).mul(&x2.eval(&x)));
            prop_assert!(x1.eval(&a.zero()).is_one());
        }
    }
}
