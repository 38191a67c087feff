//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<IntegerMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntegerMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// U·A·V = S with U, V unimodular and S diagonal, d₁ | d₂ | … , all dᵢ ≥ 0.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = min_entry(&s, (t..m).flat_map(|i| (t..n).map(move |j| (i, j)))) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&p);
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&p);
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                let cells = (t..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                let (pi, pj) = min_entry(&s, cells).expect("pivot row/column is nonzero");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

fn min_entry(s: &IntegerMatrix, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    cells.filter(|&(i, j)| !s[(i, j)].is_zero()).min_by(|&a, &b| s[a].abs().cmp(&s[b].abs()))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntegerMatrix) -> Result<BigInt> {
    if a.rows != a.cols {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = val;
            }
        }
        prev = m[(k, k)].clone();
    }
    Ok(sign * &m[(n - 1, n - 1)])
}
