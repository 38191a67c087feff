//! Dense matrices over a cyclotomic field, with exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::cyclotomic::{Cyclotomic, Field};

pub type Vector = Vec<Cyclotomic>;

/// Row-major matrix whose entries share one conductor.
#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Cyclotomic>,
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ScalarMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ScalarMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> ScalarMatrix {
        ScalarMatrix { field: field.clone(), rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: &Field, diag: &[Cyclotomic]) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Unit matrix E_ij.
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Cyclotomic>>) -> Result<ScalarMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::InvalidParameter("matrix dimensions must be positive".into()));
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::ConductorMismatch { left: field.conductor(), right: e.conductor() });
                }
                entries.push(e);
            }
        }
        Ok(ScalarMatrix { field: field.clone(), rows: r, cols: c, entries })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> ScalarMatrix {
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect();
        ScalarMatrix::from_rows(field, rows).expect("well-formed integer matrix")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn from_columns(field: &Field, cols: &[Vector]) -> Result<ScalarMatrix> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let rows = (0..r).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect();
        if c == 0 {
            return Err(Error::InvalidParameter("matrix dimensions must be positive".into()));
        }
        ScalarMatrix::from_rows(field, rows)
    }

    fn check_same_shape(&self, other: &ScalarMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ConductorMismatch { left: self.field.conductor(), right: other.field.conductor() });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        Ok(())
    }

    pub fn add(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        self.check_same_shape(other)?;
        Ok(ScalarMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        self.check_same_shape(other)?;
        Ok(ScalarMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &Cyclotomic) -> ScalarMatrix {
        ScalarMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> ScalarMatrix {
        ScalarMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.field != other.field {
            return Err(Error::ConductorMismatch { left: self.field.conductor(), right: other.field.conductor() });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = ScalarMatrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v, &self.field)).collect()
    }

    /// Commutator XY - YX.
    pub fn commutator(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Entrywise complex conjugation.
    pub fn conj(&self) -> ScalarMatrix {
        ScalarMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Cyclotomic::conj).collect(),
        }
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vector {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        rref(self.to_rows()).1.len()
    }

    pub fn inverse(&self) -> Result<ScalarMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug: Vec<Vector> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
                row
            })
            .collect();
        let (reduced, pivots) = rref(aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        let rows = reduced.into_iter().map(|r| r[n..].to_vec()).collect();
        ScalarMatrix::from_rows(&self.field, rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Kernel {x : self·x = 0} as a list of basis vectors (free-variable basis).
    pub fn kernel(&self) -> Vec<Vector> {
        nullspace(&self.to_rows(), self.cols, &self.field)
    }
}

pub fn dot(a: &[Cyclotomic], b: &[Cyclotomic], field: &Field) -> Cyclotomic {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn is_zero_vector(v: &[Cyclotomic]) -> bool {
    v.iter().all(Cyclotomic::is_zero)
}

/// Reduced row-echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vector>) -> (Vec<Vector>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of {x : Σ_j rows[i][j] x_j = 0 for all i}, one vector per free column.
pub fn nullspace(rows: &[Vector], ncols: usize, field: &Field) -> Vec<Vector> {
    if rows.is_empty() {
        return (0..ncols)
            .map(|k| (0..ncols).map(|j| if j == k { field.one() } else { field.zero() }).collect())
            .collect();
    }
    let (reduced, pivots) = rref(rows.to_vec());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            v
        })
        .collect()
}
