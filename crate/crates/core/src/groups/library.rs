//! Small named groups used by tests, fixtures and the CLI.

use super::finite::FinGroup;

fn perms(degree: usize, gens: &[Vec<usize>]) -> FinGroup {
    FinGroup::from_permutations(degree, gens).expect("library generators are valid")
}

pub fn cyclic(n: usize) -> FinGroup {
    FinGroup::from_fn(n, 0, |a, b| (a + b) % n)
}

pub fn symmetric(n: usize) -> FinGroup {
    if n < 2 {
        return cyclic(1);
    }
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(0, 1);
    let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    perms(n, &[t, c])
}

pub fn alternating(n: usize) -> FinGroup {
    if n < 3 {
        return cyclic(1);
    }
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect();
    perms(n, &gens)
}

/// Dihedral group of order `2n`, acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> FinGroup {
    let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    perms(n, &[r, s])
}

/// Quaternion group of order 8: element `4*s + u` is `(-1)^s * [1, i, j, k][u]`.
pub fn quaternion() -> FinGroup {
    // unit products: (sign, unit)
    const T: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FinGroup::from_fn(8, 0, |a, b| {
        let (sa, ua, sb, ub) = (a / 4, a % 4, b / 4, b % 4);
        let (s, u) = T[ua][ub];
        4 * ((sa + sb + s) % 2) + u
    })
}

/// Extraspecial group `2^{1+4}_+` of order 32.
///
/// Element `v + 16 c` is the pair `(v, c)` with `v` in `F_2^4` (bits) and `c` in `F_2`;
/// `(v, c)(w, d) = (v + w, c + d + v_1 w_2 + v_3 w_4)`.
pub fn extraspecial_plus_32() -> FinGroup {
    FinGroup::from_fn(32, 0, |a, b| {
        let (v, c, w, d) = (a & 15, a >> 4, b & 15, b >> 4);
        let beta = ((v & 1) & ((w >> 1) & 1)) ^ (((v >> 2) & 1) & ((w >> 3) & 1));
        (v ^ w) | (((c ^ d ^ beta) & 1) << 4)
    })
}

/// Looks up a group by a short name: `C<n>`/`Z<n>`, `S<n>`, `A<n>`, `D<n>` (order 2n), `Q8`, `E32`.
pub fn named(name: &str) -> Option<FinGroup> {
    let name = name.trim();
    match name {
        "Q8" => return Some(quaternion()),
        "E32" | "2^(1+4)+" => return Some(extraspecial_plus_32()),
        _ => {}
    }
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
    let n: usize = tail.parse().ok()?;
    if n == 0 || n > 64 {
        return None;
    }
    match head {
        "C" | "Z" => Some(cyclic(n)),
        "S" if n <= 6 => Some(symmetric(n)),
        "A" if n <= 6 => Some(alternating(n)),
        "D" => Some(dihedral(n)),
        _ => None,
    }
}

/// Smallest element index of the given order.
pub fn find_element_of_order(g: &FinGroup, k: usize) -> usize {
    (0..g.order()).find(|&x| g.element_order(x) == k).expect("no element of that order")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(dihedral(6).order(), 12);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(extraspecial_plus_32().order(), 32);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion();
        assert_eq!((0..8).filter(|&x| q.element_order(x) == 2).count(), 1);
        assert_eq!(q.center().len(), 2);
        assert!(!q.is_abelian());
    }

    #[test]
    fn extraspecial_center_is_derived() {
        let e = extraspecial_plus_32();
        assert_eq!(e.center(), vec![0, 16]);
        // Commutators land in the center.
        for a in 0..32 {
            for b in 0..32 {
                let c = e.mul(e.mul(a, b), e.mul(e.inv(a), e.inv(b)));
                assert!(c == 0 || c == 16);
            }
        }
        // Plus type: the central involution plus two above each of the 9 nonzero singular vectors.
        let invols = (1..32).filter(|&x| e.element_order(x) == 2).count();
        assert_eq!(invols, 19);
    }

    #[test]
    fn names() {
        assert_eq!(named("S3").unwrap().order(), 6);
        assert_eq!(named("D6").unwrap().order(), 12);
        assert_eq!(named("Z4").unwrap().order(), 4);
        assert!(named("X9").is_none());
    }
}
