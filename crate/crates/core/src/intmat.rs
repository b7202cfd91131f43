//! Dense integer matrices and Smith normal form.

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
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
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
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

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] += x;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_to(i, j, a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    /// Rows `from..` as a new matrix.
    pub fn row_tail(&self, from: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows - from, self.cols);
        for i in from..self.rows {
            for j in 0..self.cols {
                out.set(i - from, j, self.get(i, j));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, src: usize, dst: usize, k: i64) {
        for j in 0..self.cols {
            let x = self.get(src, j);
            self.add_to(dst, j, k * x);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, src: usize, dst: usize, k: i64) {
        for i in 0..self.rows {
            let x = self.get(i, src);
            self.add_to(i, dst, k * x);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self.set(r, j, -self.get(r, j));
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<i64> = (0..self.cols).map(|j| self.get(i, j)).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// `p * a * q == d` with `d` diagonal, nonnegative, each diagonal entry
/// dividing the next; `q_inv` is the inverse of `q`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.d.get(i, i)).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut p = IntMatrix::identity(m);
    let mut q = IntMatrix::identity(n);
    let mut q_inv = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j).abs();
                if x != 0 && best.is_none_or(|(bi, bj)| x < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        p.swap_rows(t, bi);
        d.swap_cols(t, bj);
        q.swap_cols(t, bj);
        q_inv.swap_rows(t, bj);

        let mut clean = true;
        let pivot = d.get(t, t);
        for i in t + 1..m {
            let k = d.get(i, t) / pivot;
            if k != 0 {
                d.add_row(t, i, -k);
                p.add_row(t, i, -k);
            }
            if d.get(i, t) != 0 {
                clean = false;
            }
        }
        for j in t + 1..n {
            let k = d.get(t, j) / pivot;
            if k != 0 {
                d.add_col(t, j, -k);
                q.add_col(t, j, -k);
                // inverse of col[j] -= k col[t] is row[t] += k row[j] on the left
                q_inv.add_row(j, t, k);
            }
            if d.get(t, j) != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into the pivot row and retry
        let mut offender = None;
        'scan: for i in t + 1..m {
            for j in t + 1..n {
                if d.get(i, j) % pivot != 0 {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            d.add_row(i, t, 1);
            p.add_row(i, t, 1);
            continue;
        }
        if pivot < 0 {
            d.negate_row(t);
            p.negate_row(t);
        }
        t += 1;
    }
    Smith { d, p, q, q_inv, rank: t }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// gcd of absolute values; 0 for an empty or all-zero list.
pub fn gcd_all(xs: impl IntoIterator<Item = i64>) -> i64 {
    xs.into_iter().fold(0, gcd)
}
