//! Explicit orthogonal realizations of small parameters, used as oracle inputs.
//!
//! The image group is a product of `(Z/2)^m` (quadratic characters), `D4`
//! (its 2-dimensional irreducible, possibly twisted), `Z/4` (a rotation by a
//! quarter turn, a non-self-dual pair), `A4` (rotations of a tetrahedron) and `Q8`
//! (left multiplication on the quaternions).

use num_traits::Zero;

use super::oracle::{identity, RatMatrix, Realization};
use super::{ClassicalParameter, GroupKind, SdType, SummandSpec};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    /// Quadratic character given by a mask over the `(Z/2)^m` generators.
    Quad(u32),
    /// The `D4` plane twisted by a quadratic character.
    Plane(u32),
    /// Two copies of the untwisted `D4` plane.
    DoublePlane,
    /// `Z/4` acting by a quarter turn.
    Pair,
    /// `A4` acting on `R^3`.
    Tetrahedral,
    /// `Q8` acting on `R^4`.
    Quaternionic,
}

impl Block {
    fn size(self) -> usize {
        match self {
            Block::Quad(_) => 1,
            Block::Plane(_) | Block::Pair => 2,
            Block::Tetrahedral => 3,
            Block::DoublePlane | Block::Quaternionic => 4,
        }
    }

    fn summand(self, id: &str) -> SummandSpec {
        match self {
            Block::Quad(_) => SummandSpec::orthogonal(id, 1),
            Block::Plane(_) => SummandSpec::orthogonal(id, 2),
            Block::DoublePlane => SummandSpec::orthogonal(id, 2).with_multiplicity(2),
            Block::Pair => SummandSpec::new(id, 1, SdType::NonSelfDualPair),
            Block::Tetrahedral => SummandSpec::orthogonal(id, 3),
            Block::Quaternionic => SummandSpec::new(id, 2, SdType::Symplectic).with_multiplicity(2),
        }
    }
}

fn q(x: i64) -> Rational {
    Rational::from_integer(x)
}

fn from_ints(rows: &[&[i64]]) -> RatMatrix {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn scalar(n: usize, s: i64) -> RatMatrix {
    let mut m = identity(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = q(s);
    }
    m
}

fn block_diag(parts: &[RatMatrix]) -> RatMatrix {
    let n: usize = parts.iter().map(|p| p.len()).sum();
    let mut m = vec![vec![Rational::zero(); n]; n];
    let mut off = 0;
    for p in parts {
        for (i, row) in p.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[off + i][off + j] = x;
            }
        }
        off += p.len();
    }
    m
}

fn quarter_turn() -> RatMatrix {
    from_ints(&[&[0, -1], &[1, 0]])
}

fn mirror() -> RatMatrix {
    from_ints(&[&[1, 0], &[0, -1]])
}

/// Realization of `blocks`, with `m` quadratic-character generators.
pub fn realize(m: usize, blocks: &[Block]) -> Realization {
    let mut generators = Vec::new();
    let each = |f: &dyn Fn(Block) -> RatMatrix| block_diag(&blocks.iter().map(|&b| f(b)).collect::<Vec<_>>());
    for j in 0..m {
        generators.push(each(&|b| match b {
            Block::Quad(mask) | Block::Plane(mask) => scalar(b.size(), if mask >> j & 1 == 1 { -1 } else { 1 }),
            _ => identity(b.size()),
        }));
    }
    let has = |pred: fn(Block) -> bool| blocks.iter().any(|&b| pred(b));
    if has(|b| matches!(b, Block::Plane(_) | Block::DoublePlane)) {
        for g in [quarter_turn(), mirror()] {
            generators.push(each(&|b| match b {
                Block::Plane(_) => g.clone(),
                Block::DoublePlane => block_diag(&[g.clone(), g.clone()]),
                _ => identity(b.size()),
            }));
        }
    }
    if has(|b| b == Block::Pair) {
        generators.push(each(&|b| if b == Block::Pair { quarter_turn() } else { identity(b.size()) }));
    }
    if has(|b| b == Block::Tetrahedral) {
        let cycle = from_ints(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let half = from_ints(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        for g in [cycle, half] {
            generators.push(each(&|b| if b == Block::Tetrahedral { g.clone() } else { identity(b.size()) }));
        }
    }
    if has(|b| b == Block::Quaternionic) {
        // Left multiplication by i and j in the basis 1, i, j, k.
        let li = from_ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        let lj = from_ints(&[&[0, 0, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]]);
        for g in [li, lj] {
            generators.push(each(&|b| if b == Block::Quaternionic { g.clone() } else { identity(b.size()) }));
        }
    }
    debug_assert!(generators.iter().all(|g| g.len() == blocks.iter().map(|b| b.size()).sum::<usize>()));
    Realization { generators }
}

/// Parameter and realization for `blocks`, with summand ids `ids`.
pub fn parameter(kind: GroupKind, m: usize, blocks: &[Block], ids: &[&str]) -> (ClassicalParameter, Realization) {
    let summands: Vec<SummandSpec> = blocks.iter().zip(ids).map(|(&b, id)| b.summand(id)).collect();
    let total: u32 = summands.iter().map(|s| s.contribution()).sum();
    let n = if kind == GroupKind::Sp { (total - 1) / 2 } else { total / 2 };
    (ClassicalParameter::new(kind, n, summands), realize(m, blocks))
}

/// Discrete symplectic parameter with `k` summands: `k` quadratic characters when `k`
/// is odd, otherwise `k - 1` quadratic characters and one plane.
pub fn discrete_sp(k: usize) -> (ClassicalParameter, Realization) {
    let quads = if k % 2 == 1 { k } else { k - 1 };
    let m = (usize::BITS - quads.saturating_sub(1).leading_zeros()) as usize;
    let mut blocks: Vec<Block> = (0..quads as u32).map(Block::Quad).collect();
    if k % 2 == 0 {
        blocks.push(Block::Plane(0));
    }
    let ids: Vec<String> = (1..=k).map(|i| format!("chi{i}")).collect();
    let ids: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    parameter(GroupKind::Sp, m, &blocks, &ids)
}

/// `k` distinct quadratic characters (`k` odd).
pub fn all_dim_one(k: usize) -> (ClassicalParameter, Realization) {
    assert!(k % 2 == 1);
    discrete_sp(k)
}

pub fn so4_two_planes() -> (ClassicalParameter, Realization) {
    parameter(GroupKind::SoSplit, 1, &[Block::Plane(0), Block::Plane(1)], &["rho", "rho_eta"])
}

/// Named corpus of parameters with realizations.
pub fn corpus() -> Vec<(String, ClassicalParameter, Realization)> {
    let mut out: Vec<(String, ClassicalParameter, Realization)> =
        (1..=5).map(|k| discrete_sp(k)).enumerate().map(|(i, (p, r))| (format!("sp-discrete-k{}", i + 1), p, r)).collect();
    let mut add = |name: &str, (p, r): (ClassicalParameter, Realization)| out.push((name.into(), p, r));
    add("sp4-quadratic-tetrahedral", parameter(GroupKind::Sp, 1, &[Block::Quad(0), Block::Quad(1), Block::Tetrahedral], &["one", "eta", "ad"]));
    add("sp2-tetrahedral", parameter(GroupKind::Sp, 0, &[Block::Tetrahedral], &["ad"]));
    add("sp4-pair-plane", parameter(GroupKind::Sp, 0, &[Block::Quad(0), Block::Pair, Block::Plane(0)], &["one", "z", "rho"]));
    add("sp4-doubled-plane", parameter(GroupKind::Sp, 0, &[Block::Quad(0), Block::DoublePlane], &["one", "rho2"]));
    add("so4-planes", so4_two_planes());
    add("so4-quaternionic", parameter(GroupKind::SoSplit, 0, &[Block::Quaternionic], &["q"]));
    add("so6-planes", parameter(GroupKind::SoQuasisplit, 2, &[Block::Plane(0), Block::Plane(1), Block::Plane(2)], &["a", "b", "c"]));
    add("so6-planes-lines", parameter(GroupKind::SoSplit, 1, &[Block::Plane(0), Block::Plane(1), Block::Quad(0), Block::Quad(1)], &["a", "b", "x", "y"]));
    add("so8-planes", parameter(GroupKind::SoSplit, 2, &[Block::Plane(0), Block::Plane(1), Block::Plane(2), Block::Plane(3)], &["a", "b", "c", "d"]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid() {
        for (name, p, r) in corpus() {
            p.validate(&name).unwrap();
            let n = p.dual_dimension() as usize;
            assert!(r.generators.iter().all(|g| g.len() == n), "{name}");
        }
    }

    #[test]
    fn discrete_sizes() {
        for k in 1..=5 {
            let (p, _) = discrete_sp(k);
            assert_eq!(p.summands.len(), k);
            assert!(p.discrete);
            assert!(p.dual_dimension() <= 11);
        }
    }
}
