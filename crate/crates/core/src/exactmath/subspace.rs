//! Subspaces of K^d kept in reduced row-echelon form.

use crate::error::{Error, Result};
use crate::exactmath::cyclotomic::{Cyclotomic, Field};
use crate::exactmath::matrix::{nullspace, rref, Vector};

/// A subspace with its canonical (reduced row-echelon) basis. Two subspaces
/// are equal exactly when their canonical bases agree row by row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonical span of `vectors` inside K^ambient.
    pub fn canonicalize(field: &Field, ambient: usize, vectors: Vec<Vector>) -> Result<Subspace> {
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
            if let Some(e) = v.iter().find(|e| e.field() != field) {
                return Err(Error::ConductorMismatch { left: field.conductor(), right: e.conductor() });
            }
        }
        let (basis, pivots) = if vectors.is_empty() { (vec![], vec![]) } else { rref(vectors) };
        Ok(Subspace { field: field.clone(), ambient, basis, pivots })
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { field: field.clone(), ambient, basis: vec![], pivots: vec![] }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        Subspace { field: field.clone(), ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of the given standard basis vectors e_i.
    pub fn coordinate(field: &Field, ambient: usize, indices: &[usize]) -> Subspace {
        let vecs = indices
            .iter()
            .map(|&i| (0..ambient).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        Subspace::canonicalize(field, ambient, vecs).expect("valid coordinate vectors")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        if self.field != other.field {
            return Err(Error::ConductorMismatch { left: self.field.conductor(), right: other.field.conductor() });
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, or None when v is outside.
    pub fn coordinates(&self, v: &[Cyclotomic]) -> Option<Vector> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= &(c * b);
                }
            }
        }
        residual.iter().all(Cyclotomic::is_zero).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[Cyclotomic]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether `other` ⊆ self.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::canonicalize(&self.field, self.ambient, vecs)
    }

    /// Linear functionals vanishing on the subspace (w with w·u = 0 for all u).
    pub fn annihilator(&self) -> Vec<Vector> {
        nullspace(&self.basis, self.ambient, &self.field)
    }

    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(&self.field, self.ambient));
        }
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        let sol = nullspace(&eqs, self.ambient, &self.field);
        Subspace::canonicalize(&self.field, self.ambient, sol)
    }
}

/// Lattice operation selector for [`subspace_meet_join`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Meet,
    Join,
    Contains,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeValue {
    Space(Subspace),
    Bool(bool),
}

pub fn subspace_meet_join(u: &Subspace, v: &Subspace, op: LatticeOp) -> Result<LatticeValue> {
    Ok(match op {
        LatticeOp::Meet => LatticeValue::Space(u.meet(v)?),
        LatticeOp::Join => LatticeValue::Space(u.join(v)?),
        LatticeOp::Contains => LatticeValue::Bool(u.contains(v)?),
    })
}
