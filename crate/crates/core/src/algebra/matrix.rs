//! Small dense integer matrices with Smith and Hermite normal forms.
//!
//! Everything in scope is at most a few dozen rows of width 4, so the
//! implementation is straightforward elimination over i64 with no sparsity
//! or size tricks.  The Hermite normal form is the unique row-echelon form
//! (positive pivots, entries above a pivot reduced into `[0, pivot)`), which
//! gives us canonical lattice bases.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<i64>) -> IntMatrix {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn diagonal(entries: &[i64]) -> IntMatrix {
        let n = entries.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).expect("matrix entry overflow"))
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| x.checked_mul(k).expect("matrix entry overflow"))
                .collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.get(i, k) as i128 * other.get(k, j) as i128;
                }
                out.set(i, j, i64::try_from(acc).expect("matrix entry overflow"));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let acc: i128 = (0..self.cols)
                    .map(|k| self.get(i, k) as i128 * v[k] as i128)
                    .sum();
                i64::try_from(acc).expect("matrix entry overflow")
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Determinant by cofactor expansion; dimensions here never exceed 4.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        i64::try_from(self.det_i128()).expect("determinant overflow")
    }

    fn det_i128(&self) -> i128 {
        let n = self.rows;
        match n {
            0 => 1,
            1 => self.get(0, 0) as i128,
            2 => {
                self.get(0, 0) as i128 * self.get(1, 1) as i128
                    - self.get(0, 1) as i128 * self.get(1, 0) as i128
            }
            _ => {
                let mut acc: i128 = 0;
                for j in 0..n {
                    let x = self.get(0, j);
                    if x == 0 {
                        continue;
                    }
                    let minor = self.minor(0, j);
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    acc += sign as i128 * x as i128 * minor.det_i128();
                }
                acc
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows - 1, self.cols - 1);
        let mut ii = 0;
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let mut jj = 0;
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                m.set(ii, jj, self.get(i, j));
                jj += 1;
            }
            ii += 1;
        }
        m
    }

    /// Exact inverse of a unimodular matrix via the adjugate.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        assert_eq!(self.rows, self.cols);
        let det = self.det();
        if det.abs() != 1 {
            return Err(Error::Internal(format!(
                "matrix with determinant {det} is not unimodular"
            )));
        }
        let n = self.rows;
        let mut adj = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj.set(j, i, sign * self.minor(i, j).det());
            }
        }
        Ok(adj.scale(det))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self.get(a, j), self.get(b, j));
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self.get(i, a), self.get(i, b));
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    /// row_i -= q * row_k
    fn row_sub_mul(&mut self, i: usize, k: usize, q: i64) {
        for j in 0..self.cols {
            let v = self.get(i, j) as i128 - q as i128 * self.get(k, j) as i128;
            self.set(i, j, i64::try_from(v).expect("matrix entry overflow"));
        }
    }

    /// col_j -= q * col_k
    fn col_sub_mul(&mut self, j: usize, k: usize, q: i64) {
        for i in 0..self.rows {
            let v = self.get(i, j) as i128 - q as i128 * self.get(i, k) as i128;
            self.set(i, j, i64::try_from(v).expect("matrix entry overflow"));
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.set(i, j, -self.get(i, j));
        }
    }

    /// Stack `self` on top of `other` (same width).
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

/// `U * M * V = D` with U, V unimodular and D diagonal with a divisibility
/// chain of non-negative invariant factors.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| self.d.get(i, i) != 0).count()
    }

    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i))
            .take_while(|&x| x != 0)
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);

    let mut k = 0;
    while k < n {
        // pick the non-zero entry of smallest magnitude in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let x = d.get(i, j);
                if x != 0 && pivot.is_none_or(|(pi, pj)| x.abs() < d.get(pi, pj).abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if d.get(i, k) != 0 {
                    let q = d.get(i, k).div_euclid(d.get(k, k));
                    d.row_sub_mul(i, k, q);
                    u.row_sub_mul(i, k, q);
                    if d.get(i, k) != 0 {
                        d.swap_rows(k, i);
                        u.swap_rows(k, i);
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if d.get(k, j) != 0 {
                    let q = d.get(k, j).div_euclid(d.get(k, k));
                    d.col_sub_mul(j, k, q);
                    v.col_sub_mul(j, k, q);
                    if d.get(k, j) != 0 {
                        d.swap_cols(k, j);
                        v.swap_cols(k, j);
                        clean = false;
                    }
                }
            }
            let row_clear = (k + 1..cols).all(|j| d.get(k, j) == 0);
            let col_clear = (k + 1..rows).all(|i| d.get(i, k) == 0);
            if clean && row_clear && col_clear {
                break;
            }
        }
        k += 1;
    }

    // force the divisibility chain d_i | d_{i+1}
    let r = (0..n).take_while(|&i| d.get(i, i) != 0).count();
    loop {
        let mut fixed = true;
        for i in 0..r.saturating_sub(1) {
            let (a, b) = (d.get(i, i), d.get(i + 1, i + 1));
            if b % a != 0 {
                fixed = false;
                // merge the pair and re-eliminate the 2x2 block at (i, i)
                d.row_sub_mul(i, i + 1, -1);
                u.row_sub_mul(i, i + 1, -1);
                loop {
                    let x = d.get(i, i);
                    let y = d.get(i + 1, i);
                    if y != 0 {
                        let q = y.div_euclid(x);
                        d.row_sub_mul(i + 1, i, q);
                        u.row_sub_mul(i + 1, i, q);
                        if d.get(i + 1, i) != 0 {
                            d.swap_rows(i, i + 1);
                            u.swap_rows(i, i + 1);
                        }
                        continue;
                    }
                    let z = d.get(i, i + 1);
                    if z != 0 {
                        let q = z.div_euclid(d.get(i, i));
                        d.col_sub_mul(i + 1, i, q);
                        v.col_sub_mul(i + 1, i, q);
                        if d.get(i, i + 1) != 0 {
                            d.swap_cols(i, i + 1);
                            v.swap_cols(i, i + 1);
                        }
                        continue;
                    }
                    break;
                }
            }
        }
        if fixed {
            break;
        }
    }

    for i in 0..n {
        if d.get(i, i) < 0 {
            d.negate_row(i);
            u.negate_row(i);
        }
    }

    debug_assert_eq!(u.mul(m).mul(&v), d);
    SmithDecomposition { u, d, v }
}

/// Unique row-style Hermite normal form of the row lattice of `m`, with zero
/// rows dropped.  Pivots are positive and entries above a pivot lie in
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let (rows, cols) = (h.rows(), h.cols());
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        loop {
            let pivot = (r..rows)
                .filter(|&i| h.get(i, c) != 0)
                .min_by_key(|&i| h.get(i, c).abs());
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            let mut again = false;
            for i in r + 1..rows {
                if h.get(i, c) != 0 {
                    let q = h.get(i, c).div_euclid(h.get(r, c));
                    h.row_sub_mul(i, r, q);
                    if h.get(i, c) != 0 {
                        again = true;
                    }
                }
            }
            if !again {
                break;
            }
        }
        if h.get(r, c) == 0 {
            continue;
        }
        if h.get(r, c) < 0 {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_euclid(h.get(r, c));
            if q != 0 {
                h.row_sub_mul(i, r, q);
            }
        }
        r += 1;
    }
    // keep the first r (non-zero) rows
    let mut out = IntMatrix::zero(r, cols);
    for i in 0..r {
        for j in 0..cols {
            out.set(i, j, h.get(i, j));
        }
    }
    out
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Solve `A x = b` over the integers.
pub fn integral_solve(a: &IntMatrix, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let s = snf.u.mul_vec(b);
    let n = a.cols();
    let mut y = vec![0i64; n];
    for i in 0..a.rows() {
        let d = if i < n.min(a.rows()) { snf.d.get(i, i) } else { 0 };
        if d == 0 {
            if s[i] != 0 {
                return None;
            }
        } else {
            if s[i] % d != 0 {
                return None;
            }
            y[i] = s[i] / d;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Basis (as rows) of the saturated kernel lattice `{x : A x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let n = a.cols();
    let mut rows = Vec::new();
    for j in rank..n {
        let col: Vec<i64> = (0..n).map(|i| snf.v.get(i, j)).collect();
        rows.push(col);
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    hermite_normal_form(&IntMatrix::from_rows(&refs))
}

/// Saturation of the row lattice: the smallest saturated sublattice
/// containing it, with canonical (HNF) basis rows.
pub fn saturate_rows(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let vinv = snf
        .v
        .unimodular_inverse()
        .expect("V from Smith normal form is unimodular");
    let mut rows = Vec::new();
    for i in 0..r {
        rows.push(vinv.row(i).to_vec());
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    hermite_normal_form(&IntMatrix::from_rows(&refs))
}

/// Does the row lattice of `m` equal its own saturation?
pub fn is_saturated(m: &IntMatrix) -> bool {
    smith_normal_form(m).invariant_factors().iter().all(|&d| d == 1)
}

/// Is `v` an integer combination of the rows of `m`?
pub fn in_row_lattice(m: &IntMatrix, v: &[i64]) -> bool {
    integral_solve(&m.transpose(), v).is_some()
}
