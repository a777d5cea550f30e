//! Class functions, inner products, restriction and induction.

use std::sync::Arc;

use super::cyclotomic::Cyclotomic;
use super::finite::{FinGroup, Subgroup};
use super::GroupError;
use crate::Rational;

#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FinGroup>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

fn same_group(a: &Arc<FinGroup>, b: &Arc<FinGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.as_ref() == b.as_ref()
}

impl ClassFunction {
    /// Values are indexed by conjugacy class.
    pub fn new(group: Arc<FinGroup>, values: Vec<Cyclotomic>) -> Result<Self, GroupError> {
        if values.len() != group.class_count() {
            return Err(GroupError::ClassCount { expected: group.class_count(), found: values.len() });
        }
        Ok(ClassFunction { group, values })
    }

    /// Evaluates `f` on one representative per class.
    pub fn from_element_fn(group: &Arc<FinGroup>, f: impl Fn(usize) -> Cyclotomic) -> Self {
        let values = (0..group.class_count()).map(|c| f(group.class_rep(c))).collect();
        ClassFunction { group: group.clone(), values }
    }

    pub fn trivial(group: &Arc<FinGroup>) -> Self {
        Self::from_element_fn(group, |_| Cyclotomic::one())
    }

    pub fn regular(group: &Arc<FinGroup>) -> Self {
        let n = group.order() as i64;
        let id = group.identity();
        Self::from_element_fn(group, |g| if g == id { Cyclotomic::from_int(n) } else { Cyclotomic::zero() })
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn at_class(&self, c: usize) -> &Cyclotomic {
        &self.values[c]
    }

    pub fn at(&self, g: usize) -> &Cyclotomic {
        &self.values[self.group.class_of(g)]
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[self.group.class_of(self.group.identity())]
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, GroupError> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    /// Pointwise product (character of the tensor product).
    pub fn tensor(&self, other: &ClassFunction) -> Result<ClassFunction, GroupError> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn scale(&self, q: Rational) -> ClassFunction {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.scale(q)).collect() }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    fn check_same(&self, other: &ClassFunction) -> Result<(), GroupError> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(GroupError::GroupMismatch)
        }
    }

    /// `(1/|G|) sum_g self(g) conj(other(g))`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Cyclotomic, GroupError> {
        self.check_same(other)?;
        Ok(Self::raw_inner(&self.group, &self.values, &other.values))
    }

    pub(crate) fn raw_inner(g: &FinGroup, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let sum: Cyclotomic = (0..g.class_count())
            .map(|c| (&a[c] * &b[c].conj()).scale(Rational::from_integer(g.class_size(c) as i64)))
            .sum();
        sum.scale(Rational::new(1, g.order() as i64))
    }

    /// Restriction to a subgroup of this function's group.
    pub fn restrict(&self, sub: &Subgroup) -> Result<ClassFunction, GroupError> {
        if !same_group(&self.group, sub.parent()) {
            return Err(GroupError::GroupMismatch);
        }
        let h = sub.group();
        Ok(Self::from_element_fn(h, |local| self.at(sub.to_parent(local)).clone()))
    }

    /// Induction of a class function of `sub.group()` to `sub.parent()`.
    pub fn induce(&self, sub: &Subgroup) -> Result<ClassFunction, GroupError> {
        if !same_group(&self.group, sub.group()) {
            return Err(GroupError::GroupMismatch);
        }
        let g = sub.parent();
        let h_order = sub.order() as i64;
        let values = (0..g.class_count())
            .map(|c| {
                let rep = g.class_rep(c);
                let sum: Cyclotomic = (0..g.order())
                    .filter_map(|x| sub.to_local(g.conjugate(x, rep)))
                    .map(|y| self.at(y).clone())
                    .sum();
                sum.scale(Rational::new(1, h_order))
            })
            .collect();
        Ok(ClassFunction { group: g.clone(), values })
    }
}

/// Restriction of `chi` to the subgroup on `elements`.
pub fn restrict_class_function(chi: &ClassFunction, elements: &[usize]) -> Result<(Subgroup, ClassFunction), GroupError> {
    let sub = chi.group().subgroup(elements)?;
    let r = chi.restrict(&sub)?;
    Ok((sub, r))
}

/// Induction of `rho` (a class function of `sub.group()`) to the parent group.
pub fn induce_class_function(rho: &ClassFunction, sub: &Subgroup) -> Result<ClassFunction, GroupError> {
    rho.induce(sub)
}

#[cfg(test)]
mod tests {
    use super::super::chartable::CharacterTable;
    use super::super::library;
    use super::*;
    use proptest::prelude::*;

    fn s3_a3() -> (Arc<FinGroup>, Subgroup) {
        let g = Arc::new(library::symmetric(3));
        let a3 = g.generated(&[library::find_element_of_order(&g, 3)]);
        let sub = g.subgroup(&a3).unwrap();
        (g, sub)
    }

    #[test]
    fn restrict_trivial() {
        let (g, sub) = s3_a3();
        let r = ClassFunction::trivial(&g).restrict(&sub).unwrap();
        assert_eq!(r, ClassFunction::trivial(sub.group()));
    }

    #[test]
    fn induce_from_a3() {
        let (g, sub) = s3_a3();
        let tg = CharacterTable::compute(&g).unwrap();
        let th = CharacterTable::compute(sub.group()).unwrap();
        // Trivial of A3 induces to trivial + sign.
        let ind = th.character(0).induce(&sub).unwrap();
        assert_eq!(tg.decompose(&ind).unwrap(), vec![1, 1, 0]);
        // A nontrivial character induces to the 2-dimensional irreducible.
        let ind = th.character(1).induce(&sub).unwrap();
        assert_eq!(tg.decompose(&ind).unwrap(), vec![0, 0, 1]);
        assert_eq!(ind.values(), &[Cyclotomic::from_int(2), Cyclotomic::zero(), Cyclotomic::from_int(-1)]);
    }

    #[test]
    fn mismatch_is_an_error() {
        let (g, sub) = s3_a3();
        let a = ClassFunction::trivial(&g);
        let b = ClassFunction::trivial(sub.group());
        assert!(matches!(a.inner_product(&b), Err(GroupError::GroupMismatch)));
        assert!(matches!(a.induce(&sub), Err(GroupError::GroupMismatch)));
    }

    #[test]
    fn non_subgroup_rejected() {
        let g = Arc::new(library::symmetric(3));
        let t = library::find_element_of_order(&g, 2);
        let bad = vec![g.identity(), t, library::find_element_of_order(&g, 3)];
        let chi = ClassFunction::trivial(&g);
        assert!(matches!(restrict_class_function(&chi, &bad), Err(GroupError::NotClosed)));
    }

    fn frobenius_on(g: FinGroup, gens_of_h: impl Fn(&FinGroup) -> Vec<usize>) {
        let g = Arc::new(g);
        let h = g.generated(&gens_of_h(&g));
        let sub = g.subgroup(&h).unwrap();
        let tg = CharacterTable::compute(&g).unwrap();
        let th = CharacterTable::compute(sub.group()).unwrap();
        for rho in th.characters() {
            let ind = rho.induce(&sub).unwrap();
            for chi in tg.characters() {
                let lhs = ind.inner_product(&chi).unwrap();
                let rhs = rho.inner_product(&chi.restrict(&sub).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn frobenius_reciprocity() {
        frobenius_on(library::symmetric(3), |g| vec![library::find_element_of_order(g, 3)]);
        frobenius_on(library::dihedral(4), |g| g.center());
        frobenius_on(library::alternating(4), |g| {
            (0..g.order()).filter(|&x| g.element_order(x) == 2).collect()
        });
        frobenius_on(library::symmetric(4), |g| {
            (0..g.order()).filter(|&x| g.element_order(x) == 3).collect()
        });
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn frobenius_on_cyclic_subgroups(which in 0usize..4, x in 0usize..24) {
            let g = Arc::new(match which {
                0 => library::symmetric(4),
                1 => library::dihedral(6),
                2 => library::quaternion(),
                _ => library::alternating(4),
            });
            let x = x % g.order();
            let sub = g.subgroup(&g.generated(&[x])).unwrap();
            let tg = CharacterTable::compute(&g).unwrap();
            let th = CharacterTable::compute(sub.group()).unwrap();
            for rho in th.characters() {
                let ind = rho.induce(&sub).unwrap();
                for chi in tg.characters() {
                    prop_assert_eq!(ind.inner_product(&chi).unwrap(), rho.inner_product(&chi.restrict(&sub).unwrap()).unwrap());
                }
            }
        }
    }
}
