//! Prime-field helpers for the modular stage of the character-table computation.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn pow(&self, mut a: u64, mut k: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        let factors = prime_factors(self.p - 1);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (self.p - 1) / q) != 1))
            .unwrap_or(1)
    }

    /// Reduced row echelon form of `rows` in place; returns pivot columns.
    pub fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, pr);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncols {
                        let v = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{x : a x = 0}` for a square matrix `a`.
    pub fn nullspace(&self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.first().map_or(0, |r| r.len());
        let mut rows = a.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u64; n];
                x[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = self.neg(rows[i][f]);
                }
                x
            })
            .collect()
    }

    /// Characteristic polynomial (coefficients low to high, monic) via Hessenberg reduction.
    pub fn charpoly(&self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h = a.to_vec();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
            if piv != j + 1 {
                h.swap(piv, j + 1);
                for row in h.iter_mut() {
                    row.swap(piv, j + 1);
                }
            }
            let inv = self.inv(h[j + 1][j]);
            for i in j + 2..n {
                let f = self.mul(h[i][j], inv);
                if f == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = self.mul(f, h[j + 1][c]);
                    h[i][c] = self.sub(h[i][c], v);
                }
                for row in h.iter_mut() {
                    let v = self.mul(f, row[i]);
                    row[j + 1] = self.add(row[j + 1], v);
                }
            }
        }
        // p_m(x) = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            let prev = &polys[m];
            let mut next = vec![0u64; m + 2];
            for (k, &c) in prev.iter().enumerate() {
                next[k + 1] = self.add(next[k + 1], c);
                next[k] = self.sub(next[k], self.mul(h[m][m], c));
            }
            let mut t = 1u64;
            for i in (0..m).rev() {
                t = self.mul(t, h[i + 1][i]);
                let f = self.mul(h[i][m], t);
                if f == 0 {
                    continue;
                }
                for (k, &c) in polys[i].iter().enumerate() {
                    next[k] = self.sub(next[k], self.mul(f, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p > bound` with `p ≡ 1 (mod e)`.
pub(crate) fn smallest_prime_above(bound: u64, e: u64) -> u64 {
    let mut p = bound + 1;
    p += (e + 1 - p % e) % e;
    while !is_prime(p) {
        p += e;
    }
    p
}
