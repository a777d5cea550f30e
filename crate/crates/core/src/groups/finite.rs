//! Finite groups given by a multiplication table.

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;

use super::abelian::FinAbGroup;
use super::GroupError;

/// Largest group expanded from permutation generators.
pub const PERMUTATION_CAP: usize = 1 << 14;

/// Finite group on the element indices `0..order`.
///
/// Conjugacy classes are ordered by element order, then by smallest member index,
/// so the identity class is always class 0.
#[derive(Clone, Debug)]
pub struct FinGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    element_order: Vec<u32>,
    exponent: u32,
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
}

impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FinGroup {}

impl FinGroup {
    /// Validates a full multiplication table: `table[a][b]` is the index of `a*b`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Axiom("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Axiom(format!("row {a} has length {} instead of {n}", row.len())));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(GroupError::Axiom(format!("product {a}*{b} = {c} is out of range")));
                }
                flat.push(c as u32);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] as usize == x && flat[x * n + e] as usize == x))
            .ok_or_else(|| GroupError::Axiom("no identity element".into()))?;
        for a in 0..n {
            let has_inverse = (0..n).any(|b| flat[a * n + b] as usize == identity && flat[b * n + a] as usize == identity);
            if !has_inverse {
                return Err(GroupError::Axiom(format!("element {a} has no inverse")));
            }
        }
        let m = |a: usize, b: usize| flat[a * n + b] as usize;
        // Light's test: (a g) b = a (g b) for g in a generating set suffices.
        let mut gens: Vec<usize> = Vec::new();
        let mut reached = vec![false; n];
        reached[identity] = true;
        let mut count = 1;
        while count < n {
            let g = (0..n).find(|&x| !reached[x]).unwrap();
            gens.push(g);
            let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(x) = stack.pop() {
                for &h in &gens {
                    let y = m(x, h);
                    if !reached[y] {
                        reached[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        for &g in &gens {
            for a in 0..n {
                let ag = m(a, g);
                for b in 0..n {
                    if m(ag, b) != m(a, m(g, b)) {
                        return Err(GroupError::Axiom(format!("associativity fails at ({a}, {g}, {b})")));
                    }
                }
            }
        }
        Ok(Self::build(n, flat, identity))
    }

    /// Expands permutation generators on `degree` points (images of `0..degree`).
    ///
    /// Elements are numbered in breadth-first order from the identity; the product
    /// `p*q` applies `p` first, then `q`.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(GroupError::Axiom(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let id: Vec<u32> = (0..degree as u32).collect();
        let gens: Vec<Vec<u32>> = gens.iter().map(|g| g.iter().map(|&i| i as u32).collect()).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(id, 0)]);
        let mut head = 0;
        while head < elems.len() {
            for g in &gens {
                let p = compose(&elems[head], g);
                if !index.contains_key(&p) {
                    if elems.len() >= PERMUTATION_CAP {
                        return Err(GroupError::TooLarge { order: elems.len() + 1, bound: PERMUTATION_CAP });
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            head += 1;
        }
        let n = elems.len();
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[a * n + b] = index[&compose(&elems[a], &elems[b])] as u32;
            }
        }
        Ok(Self::build(n, flat, 0))
    }

    /// Builds from a trusted multiplication closure.
    pub fn from_fn(order: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut flat = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                flat[a * order + b] = mul(a, b) as u32;
            }
        }
        Self::build(order, flat, identity)
    }

    /// The abelian group as a table, elements in [`FinAbGroup::index_of`] order.
    pub fn from_abelian(a: &FinAbGroup) -> Self {
        let els = a.elements();
        Self::from_fn(els.len(), 0, |x, y| a.index_of(&a.add(&els[x], &els[y])))
    }

    fn build(order: usize, table: Vec<u32>, identity: usize) -> Self {
        let n = order;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] as usize == identity).unwrap() as u32;
        }
        let mut element_order = vec![0u32; n];
        for a in 0..n {
            let (mut k, mut p) = (1u32, a);
            while p != identity {
                p = table[p * n + a] as usize;
                k += 1;
            }
            element_order[a] = k;
        }
        let exponent = element_order.iter().fold(1u32, |e, &o| e.lcm(&o));

        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let mut members = Vec::new();
            for g in 0..n {
                let y = table[table[g * n + x] as usize * n + inverse[g] as usize];
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = raw.len() as u32;
                    members.push(y);
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        raw.sort_by_key(|c| (element_order[c[0] as usize], c[0]));
        for (k, c) in raw.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = k as u32;
            }
        }
        FinGroup { order, table, identity, inverse, element_order, exponent, classes: raw, class_of }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.element_order[a] as i64;
        let mut r = self.identity;
        for _ in 0..k.rem_euclid(o) {
            r = self.mul(r, a);
        }
        r
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_order[a] as usize
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a] as usize
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0] as usize
    }

    /// Class of `rep(c)^k`.
    pub fn power_map(&self, c: usize, k: i64) -> usize {
        self.class_of(self.pow(self.class_rep(c), k))
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }

    /// Closure of `gens` under multiplication, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        members.sort_unstable();
        members
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        for &x in elems {
            if x >= self.order {
                return false;
            }
            inside[x] = true;
        }
        inside[self.identity] && elems.iter().all(|&a| elems.iter().all(|&b| inside[self.mul(a, b)]))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        for &x in elems {
            inside[x] = true;
        }
        (0..self.order).all(|g| elems.iter().all(|&h| inside[self.conjugate(g, h)]))
    }

    pub fn center(&self) -> Vec<usize> {
        let mut z: Vec<usize> = self.classes.iter().filter(|c| c.len() == 1).map(|c| c[0] as usize).collect();
        z.sort_unstable();
        z
    }

    /// The subgroup on `elems` as a group in its own right.
    pub fn subgroup(self: &Arc<Self>, elems: &[usize]) -> Result<Subgroup, GroupError> {
        let mut elems = elems.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.is_subgroup(&elems) {
            return Err(GroupError::NotClosed);
        }
        let mut local = vec![u32::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            local[x] = i as u32;
        }
        let id = local[self.identity] as usize;
        let group = FinGroup::from_fn(elems.len(), id, |a, b| local[self.mul(elems[a], elems[b])] as usize);
        Ok(Subgroup { parent: self.clone(), group: Arc::new(group), elements: elems, local })
    }
}

fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    p.iter().map(|&i| q[i as usize]).collect()
}

/// A subgroup of a [`FinGroup`] carried as a group with an embedding.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FinGroup>,
    group: Arc<FinGroup>,
    elements: Vec<usize>,
    local: Vec<u32>,
}

impl Subgroup {
    pub fn parent(&self) -> &Arc<FinGroup> {
        &self.parent
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    /// Parent indices of the members, sorted; position = local index.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn to_parent(&self, local: usize) -> usize {
        self.elements[local]
    }

    pub fn to_local(&self, parent: usize) -> Option<usize> {
        match self.local[parent] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    pub fn contains(&self, parent: usize) -> bool {
        self.local[parent] != u32::MAX
    }
}

#[cfg(test)]
mod tests {
    use super::super::library;
    use super::*;

    #[test]
    fn s3_classes() {
        let g = library::symmetric(3);
        assert_eq!(g.order(), 6);
        let sizes: Vec<usize> = (0..g.class_count()).map(|c| g.class_size(c)).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.class_rep(0), g.identity());
    }

    #[test]
    fn classes_partition() {
        for g in [library::dihedral(4), library::quaternion(), library::alternating(4), library::extraspecial_plus_32()] {
            let mut all: Vec<u32> = g.classes().iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..g.order() as u32).collect::<Vec<_>>());
        }
    }

    #[test]
    fn table_axioms_checked() {
        // Z/3 by table is fine.
        let t = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(FinGroup::from_table(&t).is_ok());
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let bad = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FinGroup::from_table(&bad), Err(GroupError::Axiom(_))));
        let no_id = vec![vec![1, 0], vec![0, 0]];
        assert!(FinGroup::from_table(&no_id).is_err());
    }

    #[test]
    fn subgroups() {
        let g = Arc::new(library::symmetric(3));
        let a3 = g.generated(&[library::find_element_of_order(&g, 3)]);
        assert_eq!(a3.len(), 3);
        assert!(g.is_normal(&a3));
        let s = g.subgroup(&a3).unwrap();
        assert!(s.group().is_abelian());
        assert!(g.subgroup(&[0, 1, 2]).is_err() || g.is_subgroup(&[0, 1, 2]));
    }

    #[test]
    fn permutation_cap() {
        // S_8 has 40320 elements, above the cap.
        let gens = vec![vec![1, 0, 2, 3, 4, 5, 6, 7], vec![1, 2, 3, 4, 5, 6, 7, 0]];
        assert!(matches!(FinGroup::from_permutations(8, &gens), Err(GroupError::TooLarge { .. })));
    }
}
