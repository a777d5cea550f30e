//! Exact arithmetic in cyclotomic fields.
//!
//! A value in `Q(zeta_n)` is a dense rational vector over `1, zeta_n, ..., zeta_n^(n-1)`,
//! reduced modulo the cyclotomic polynomial so that equal values have equal vectors.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::abelian::Rotation;
use crate::Rational;

fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = a.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = r[k + db];
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] -= c * bi;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

#[derive(Clone)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn from_raw(n: u32, mut coeffs: Vec<Rational>) -> Self {
        assert!(n >= 1);
        assert_eq!(coeffs.len(), n as usize);
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        for top in (deg..n as usize).rev() {
            let c = coeffs[top];
            if c.is_zero() {
                continue;
            }
            for (i, &p) in phi.iter().enumerate() {
                if p != 0 {
                    coeffs[top - deg + i] -= c * Rational::from_integer(p);
                }
            }
        }
        Cyclotomic { n, coeffs }
    }

    /// Element of `Q(zeta_n)` from power-basis coefficients (any length, read modulo `n`).
    pub fn new(n: u32, coeffs: &[Rational]) -> Self {
        let mut c = vec![Rational::zero(); n as usize];
        for (j, &v) in coeffs.iter().enumerate() {
            c[j % n as usize] += v;
        }
        Self::from_raw(n, c)
    }

    pub fn rational(q: Rational) -> Self {
        Cyclotomic { n: 1, coeffs: vec![q] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::rational(Rational::from_integer(k))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let mut c = vec![Rational::zero(); n as usize];
        c[k.rem_euclid(n as i64) as usize] = Rational::one();
        Self::from_raw(n, c)
    }

    pub fn from_rotation(r: Rotation) -> Self {
        Self::root_of_unity(r.den as u32, r.num as i64)
    }

    pub fn conductor_bound(&self) -> u32 {
        self.n
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The same value written in `Q(zeta_m)`, `n | m`.
    pub fn lift(&self, m: u32) -> Self {
        assert_eq!(m % self.n, 0, "cannot lift to a non-multiple conductor");
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut c = vec![Rational::zero(); m as usize];
        for (j, &v) in self.coeffs.iter().enumerate() {
            c[j * step] = v;
        }
        Self::from_raw(m, c)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.n.lcm(&other.n);
        (self.lift(m), other.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Galois automorphism `zeta -> zeta^k`, `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(k.rem_euclid(n).gcd(&n), 1, "Galois exponent must be a unit");
        let mut c = vec![Rational::zero(); self.n as usize];
        for (j, &v) in self.coeffs.iter().enumerate() {
            c[(j as i64 * k).rem_euclid(n) as usize] += v;
        }
        Self::from_raw(self.n, c)
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, q: Rational) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|&c| c * q).collect() }
    }

    /// Total order used for deterministic sorting (not compatible with field structure).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.common(other);
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(rhs);
        Cyclotomic { n: a.n, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(rhs);
        Cyclotomic { n: a.n, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        let (a, b) = self.common(rhs);
        let n = a.n as usize;
        let mut c = vec![Rational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                c[(i + j) % n] += x * y;
            }
        }
        Cyclotomic::from_raw(a.n, c)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic { (&self).$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    /// GAP-style: `E(n)^k` is `zeta_n^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut out = String::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if !out.is_empty() || sign == "-" {
                out.push_str(sign);
            }
            let root = match j {
                0 => String::new(),
                1 => format!("E({})", self.n),
                _ => format!("E({})^{}", self.n, j),
            };
            if j == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&root);
            } else {
                out.push_str(&format!("{mag}*{root}"));
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len() - 1, totient(105) as usize);
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in [2u32, 3, 4, 6, 8, 12] {
            let s: Cyclotomic = (0..n as i64).map(|k| z(n, k)).sum();
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn mixed_conductors() {
        // zeta_4 * zeta_4 = -1, zeta_6^3 = -1, zeta_3 = zeta_6^2.
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_int(-1));
        assert_eq!(z(6, 3), Cyclotomic::from_int(-1));
        assert_eq!(z(3, 1), z(6, 2));
        assert_eq!(z(3, 1).lift(12), z(12, 4));
        assert_eq!((&z(3, 1) + &z(3, 2)).as_integer(), Some(-1));
    }

    #[test]
    fn conjugation() {
        let x = &z(8, 1) + &Cyclotomic::from_int(2);
        let n = &x * &x.conj();
        assert_eq!(n.conj(), n);
        // |2 + zeta_8|^2 = 5 + 2 sqrt(2), and sqrt(2) = zeta_8 - zeta_8^3.
        let sqrt2 = &z(8, 1) - &z(8, 3);
        assert_eq!(n, &Cyclotomic::from_int(5) + &(&sqrt2 + &sqrt2));
        assert_eq!(z(5, 2).conj(), z(5, 3));
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::from_int(-1).to_string(), "-1");
        assert_eq!(z(3, 2).to_string(), "-1-E(3)");
        assert_eq!(z(4, 1).to_string(), "E(4)");
    }

    proptest! {
        #[test]
        fn ring_axioms(n in prop::sample::select(vec![3u32, 4, 5, 8, 12]),
                       a in prop::collection::vec(-3i64..4, 12),
                       b in prop::collection::vec(-3i64..4, 12),
                       c in prop::collection::vec(-3i64..4, 12)) {
            let mk = |v: &Vec<i64>| Cyclotomic::new(n, &v.iter().map(|&x| Rational::from_integer(x)).collect::<Vec<_>>());
            let (x, y, w) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
            prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert!((&x - &x).is_zero());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        }
    }
}
