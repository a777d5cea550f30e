//! Dense integer matrices and the Smith normal form.

use std::fmt;

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from a list of rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        IntMatrix { rows: r, cols: c, data: rows.iter().flatten().copied().collect() }
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)] == 0))
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    /// Exact determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|i| self.row(i).into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflow")
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        let n = self.rows;
        assert_eq!(n, self.cols, "inverse of non-square matrix");
        // Gauss-Jordan over Z: pivots are units for unimodular input.
        let mut a = self.clone();
        let mut inv = IntMatrix::identity(n);
        for c in 0..n {
            // Euclid on column c below the diagonal until a unit pivot sits at (c, c).
            loop {
                let mut best: Option<usize> = None;
                for r in c..n {
                    if a[(r, c)] != 0 && best.map_or(true, |b| a[(r, c)].abs() < a[(b, c)].abs()) {
                        best = Some(r);
                    }
                }
                let p = best.expect("matrix is not unimodular");
                a.swap_rows(p, c);
                inv.swap_rows(p, c);
                let mut clean = true;
                for r in c + 1..n {
                    let q = a[(r, c)] / a[(c, c)];
                    if q != 0 {
                        a.add_row_multiple(r, c, -q);
                        inv.add_row_multiple(r, c, -q);
                    }
                    if a[(r, c)] != 0 {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            assert!(a[(c, c)].abs() == 1, "matrix is not unimodular");
            if a[(c, c)] == -1 {
                a.negate_row(c);
                inv.negate_row(c);
            }
        }
        for c in (0..n).rev() {
            for r in 0..c {
                let q = a[(r, c)];
                if q != 0 {
                    a.add_row_multiple(r, c, -q);
                    inv.add_row_multiple(r, c, -q);
                }
            }
        }
        inv
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// col[dst] += k * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, in order.
    pub fn invariants(&self) -> Vec<i64> {
        self.d.diagonal().into_iter().take_while(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

/// Smith normal form of an integer matrix.
///
/// Returns unimodular `u`, `v` with `u * m * v` diagonal, nonnegative, and each
/// diagonal entry dividing the next. Zero entries come last.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d[(i, j)];
                    if x != 0 && pivot.map_or(true, |(pi, pj)| x.abs() < d[(pi, pj)].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return Smith { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d[(t, t)];
            let mut clean = true;
            for i in t + 1..r {
                let q = d[(i, t)].div_euclid(p);
                if q != 0 {
                    d.add_row_multiple(i, t, -q);
                    u.add_row_multiple(i, t, -q);
                }
                clean &= d[(i, t)] == 0;
            }
            for j in t + 1..c {
                let q = d[(t, j)].div_euclid(p);
                if q != 0 {
                    d.add_col_multiple(j, t, -q);
                    v.add_col_multiple(j, t, -q);
                }
                clean &= d[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: pull a non-multiple into the pivot row and retry.
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| d[(i, j)] % p != 0));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, 1);
                    u.add_row_multiple(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d, v }
}

/// Integer kernel basis of `m` (columns `x` with `m x = 0`), as a list of vectors.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<i64>> {
    let s = smith_normal_form(m);
    let rank = s.rank();
    (rank..m.cols()).map(|j| s.v.column(j)).collect()
}
