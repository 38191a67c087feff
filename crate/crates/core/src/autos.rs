//! Automorphisms as coordinate matrices, and their eigenspaces.

use crate::error::{Error, Result};
use crate::exactmath::{Cyclotomic, Field, ScalarMatrix, Subspace, Vector};
use crate::liealg::MatrixLieAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// X ↦ A X A⁻¹
    Inner(ScalarMatrix),
    /// X ↦ −K Xᵀ K⁻¹
    Outer(ScalarMatrix),
    Composite,
    /// Acts as a scalar on each subspace of a grading.
    Scaling,
    User,
}

/// A linear operator on an algebra, acting on basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    algebra: MatrixLieAlgebra,
    matrix: ScalarMatrix,
    provenance: Provenance,
}

impl AlgebraMap {
    /// Wraps a raw coordinate matrix (column a = image of basis element a).
    pub fn from_matrix(algebra: &MatrixLieAlgebra, matrix: ScalarMatrix, provenance: Provenance) -> Result<AlgebraMap> {
        let n = algebra.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.rows() });
        }
        if matrix.field() != algebra.field() {
            return Err(Error::ConductorMismatch {
                left: algebra.field().conductor(),
                right: matrix.field().conductor(),
            });
        }
        if !matrix.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        Ok(AlgebraMap { algebra: algebra.clone(), matrix, provenance })
    }

    pub fn identity(algebra: &MatrixLieAlgebra) -> AlgebraMap {
        let matrix = ScalarMatrix::identity(algebra.field(), algebra.dim());
        AlgebraMap {
            algebra: algebra.clone(),
            matrix,
            provenance: Provenance::Inner(ScalarMatrix::identity(algebra.field(), algebra.ambient_size())),
        }
    }

    /// Acts on coordinates as the given (invertible) matrix built from the
    /// images of basis matrices under `f`.
    fn from_matrix_map(
        algebra: &MatrixLieAlgebra,
        provenance: Provenance,
        err: fn(usize) -> Error,
        f: impl Fn(&ScalarMatrix) -> Result<ScalarMatrix>,
    ) -> Result<AlgebraMap> {
        let cols = algebra
            .basis()
            .iter()
            .enumerate()
            .map(|(i, b)| algebra.coordinates(&f(b)?).ok_or_else(|| err(i)))
            .collect::<Result<Vec<Vector>>>()?;
        let matrix = ScalarMatrix::from_columns(algebra.field(), &cols)?;
        AlgebraMap::from_matrix(algebra, matrix, provenance)
    }

    pub fn algebra(&self) -> &MatrixLieAlgebra {
        &self.algebra
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn apply(&self, coords: &[Cyclotomic]) -> Vector {
        self.matrix.mul_vec(coords)
    }

    /// self ∘ other
    pub fn compose(&self, other: &AlgebraMap) -> Result<AlgebraMap> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let matrix = self.matrix.mul(&other.matrix)?;
        let provenance = match (&self.provenance, &other.provenance) {
            (Provenance::Inner(a), Provenance::Inner(b)) => Provenance::Inner(a.mul(b)?),
            _ => Provenance::Composite,
        };
        Ok(AlgebraMap { algebra: self.algebra.clone(), matrix, provenance })
    }

    pub fn inverse(&self) -> Result<AlgebraMap> {
        let provenance = match &self.provenance {
            Provenance::Inner(a) => Provenance::Inner(a.inverse()?),
            Provenance::Scaling => Provenance::Scaling,
            _ => Provenance::Composite,
        };
        Ok(AlgebraMap { algebra: self.algebra.clone(), matrix: self.matrix.inverse()?, provenance })
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

pub fn inner_auto(algebra: &MatrixLieAlgebra, a: &ScalarMatrix) -> Result<AlgebraMap> {
    let m = algebra.ambient_size();
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != m {
        return Err(Error::DimensionMismatch { expected: m, found: a.rows() });
    }
    let inv = a.inverse()?;
    AlgebraMap::from_matrix_map(algebra, Provenance::Inner(a.clone()), Error::NotNormalizing, |x| a.mul(x)?.mul(&inv))
}

pub fn outer_auto(algebra: &MatrixLieAlgebra, k: &ScalarMatrix) -> Result<AlgebraMap> {
    let m = algebra.ambient_size();
    if !k.is_square() {
        return Err(Error::NotSquare { rows: k.rows(), cols: k.cols() });
    }
    if k.rows() != m {
        return Err(Error::DimensionMismatch { expected: m, found: k.rows() });
    }
    let t = k.transpose();
    if &t != k && t != k.neg() {
        return Err(Error::WrongSymmetry("symmetric or antisymmetric"));
    }
    let inv = k.inverse()?;
    let minus_k = k.neg();
    AlgebraMap::from_matrix_map(algebra, Provenance::Outer(k.clone()), Error::NotPreserved, |x| {
        minus_k.mul(&x.transpose())?.mul(&inv)
    })
}

/// g[X_a, X_b] = [gX_a, gX_b] on every basis pair.
pub fn is_automorphism(g: &AlgebraMap) -> bool {
    let l = &g.algebra;
    let n = l.dim();
    let images: Vec<Vector> = (0..n).map(|a| g.matrix.column(a)).collect();
    for a in 0..n {
        for b in a + 1..n {
            let lhs = g.apply(&l.bracket_coords(&l.unit_vector(a), &l.unit_vector(b)));
            let rhs = l.bracket_coords(&images[a], &images[b]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn commute(g: &AlgebraMap, h: &AlgebraMap) -> Result<bool> {
    if g.algebra != h.algebra {
        return Err(Error::AlgebraMismatch);
    }
    Ok(g.matrix.mul(&h.matrix)? == h.matrix.mul(&g.matrix)?)
}

/// Eigenspaces found among a list of candidate eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    pub spaces: Vec<(Cyclotomic, Subspace)>,
    /// The eigenspaces exhaust the algebra.
    pub resolved: bool,
}

pub fn eigenspaces(g: &AlgebraMap, candidates: &[Cyclotomic]) -> Result<EigenReport> {
    if candidates.is_empty() {
        return Err(Error::NoCandidates);
    }
    let field = g.algebra.field();
    let n = g.algebra.dim();
    let id = ScalarMatrix::identity(field, n);
    let mut seen: Vec<&Cyclotomic> = Vec::new();
    let mut spaces = Vec::new();
    let mut total = 0;
    for lambda in candidates {
        if lambda.field() != field {
            return Err(Error::ConductorMismatch { left: field.conductor(), right: lambda.conductor() });
        }
        if seen.contains(&lambda) {
            continue;
        }
        seen.push(lambda);
        let shifted = g.matrix.sub(&id.scale(lambda))?;
        let ker = shifted.kernel();
        if ker.is_empty() {
            continue;
        }
        let space = Subspace::canonicalize(field, n, ker)?;
        total += space.dim();
        spaces.push((lambda.clone(), space));
        if total == n {
            break;
        }
    }
    Ok(EigenReport { spaces, resolved: total == n })
}

/// All ratios a_i / a_j of nonzero diagonal entries, without repeats.
pub fn ratio_candidates(diagonal: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
    let mut out: Vec<Cyclotomic> = Vec::new();
    for a in diagonal {
        for b in diagonal {
            let r = a * &b.inv()?;
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Roots of unity of the field, plus ratio candidates for diagonal inner maps.
pub fn default_candidates(g: &AlgebraMap) -> Vec<Cyclotomic> {
    let field: &Field = g.algebra.field();
    let mut out = field.roots_of_unity();
    if let Provenance::Inner(a) = &g.provenance {
        if a.is_diagonal() {
            if let Ok(rs) = ratio_candidates(&a.diagonal_entries()) {
                for r in rs {
                    if !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::make_sl;

    #[test]
    fn diagonal_ratios_on_sl2() {
        let f = Field::new(4).unwrap();
        let l = make_sl(&f, 2).unwrap();
        let d = ScalarMatrix::diagonal(&f, &[f.from_int(2), f.from_int(3)]);
        let g = inner_auto(&l, &d).unwrap();
        let rep = eigenspaces(&g, &default_candidates(&g)).unwrap();
        assert!(rep.resolved);
        let mut vals: Vec<String> = rep.spaces.iter().map(|(v, _)| v.to_string()).collect();
        vals.sort();
        assert_eq!(vals, vec!["1", "2/3", "3/2"]);
    }
}
