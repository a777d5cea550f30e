//! Linear algebra over F_2 on bit vectors (bit `i` is coordinate `i`).

/// Reduced echelon basis of the span: pivots are lowest set bits, each pivot
/// appears in exactly one basis vector, sorted by pivot.
pub fn rref(vectors: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &b in &basis {
            if v & lowest(b) != 0 {
                v ^= b;
            }
        }
        if v == 0 {
            continue;
        }
        let p = lowest(v);
        for b in basis.iter_mut() {
            if *b & p != 0 {
                *b ^= v;
            }
        }
        basis.push(v);
    }
    basis.sort_by_key(|&b| b.trailing_zeros());
    basis
}

fn lowest(v: u64) -> u64 {
    v & v.wrapping_neg()
}

pub fn pivot(v: u64) -> usize {
    v.trailing_zeros() as usize
}

/// Coordinates of `v` in an [`rref`] basis, if `v` lies in the span.
pub fn coords(basis: &[u64], v: u64) -> Option<Vec<i64>> {
    let c: Vec<i64> = basis.iter().map(|&b| ((v & lowest(b)) != 0) as i64).collect();
    (combine(basis, &c) == v).then_some(c)
}

pub fn combine(basis: &[u64], c: &[i64]) -> u64 {
    basis.iter().zip(c).filter(|(_, &x)| x.rem_euclid(2) == 1).fold(0, |acc, (&b, _)| acc ^ b)
}

pub fn contains(basis: &[u64], v: u64) -> bool {
    coords(basis, v).is_some()
}

/// All elements of the span, in coordinate order.
pub fn span(basis: &[u64]) -> Vec<u64> {
    (0..1u64 << basis.len())
        .map(|m| basis.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0, |acc, (_, &b)| acc ^ b))
        .collect()
}

/// Basis of `{v in F_2^k : <v, w> = 0}`.
pub fn annihilator(k: usize, w: u64) -> Vec<u64> {
    let units: Vec<u64> = (0..k).map(|i| 1u64 << i).collect();
    if w == 0 {
        return units;
    }
    let p = pivot(w);
    let gens: Vec<u64> = units.iter().filter(|&&u| u != 1 << p).map(|&u| if u & w != 0 { u | 1 << p } else { u }).collect();
    rref(&gens)
}

pub fn parity(v: u64) -> bool {
    v.count_ones() % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small() {
        let b = rref(&[0b11, 0b110, 0b101]);
        assert_eq!(b, vec![0b101, 0b110]);
        assert_eq!(coords(&b, 0b011), Some(vec![1, 1]));
        assert_eq!(coords(&b, 0b001), None);
        assert_eq!(annihilator(3, 0b111), vec![0b101, 0b110]);
        assert_eq!(span(&[0b1, 0b10]), vec![0, 1, 2, 3]);
    }

    proptest! {
        #[test]
        fn annihilator_is_kernel(k in 1usize..8, w in 0u64..256) {
            let w = w & ((1 << k) - 1);
            let ann = annihilator(k, w);
            let brute: Vec<u64> = (0..1u64 << k).filter(|&v| !parity(v & w)).collect();
            let mut sp = span(&ann);
            sp.sort_unstable();
            prop_assert_eq!(sp, brute);
        }

        #[test]
        fn rref_preserves_span(vs in proptest::collection::vec(0u64..64, 0..6)) {
            let b = rref(&vs);
            for &v in &vs {
                prop_assert!(contains(&b, v));
            }
            let mut sp = span(&b);
            sp.sort_unstable();
            sp.dedup();
            prop_assert_eq!(sp.len(), 1 << b.len());
        }
    }
}
