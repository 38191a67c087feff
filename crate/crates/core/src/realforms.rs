//! Real forms as fixed points of conjugate-linear involutions J = J₀∘h.
//!
//! The working field must be a quadratic imaginary cyclotomic field
//! (conductor 3, 4 or 6), so its real subfield is ℚ and every real form
//! has a basis with rational structure constants.

use std::collections::HashSet;

use crate::autos::{is_automorphism, AlgebraMap};
use crate::error::{Error, Result};
use crate::exactmath::matrix::{nullspace, rref};
use crate::exactmath::{Cyclotomic, Field, ScalarMatrix, Subspace, Vector};
use crate::gradings::{grade_by, universal_group, verify_grading, Grading, Label, UniversalGroupResult};
use crate::liealg::MatrixLieAlgebra;

/// x ↦ J₀(h(x)), acting on coordinates as x ↦ Jm·conj(x).
#[derive(Clone, Debug)]
pub struct AntiAuto {
    algebra: MatrixLieAlgebra,
    h: AlgebraMap,
    jm: ScalarMatrix,
}

impl AntiAuto {
    pub fn algebra(&self) -> &MatrixLieAlgebra {
        &self.algebra
    }

    pub fn h(&self) -> &AlgebraMap {
        &self.h
    }

    pub fn apply(&self, x: &[Cyclotomic]) -> Vector {
        let c: Vector = x.iter().map(Cyclotomic::conj).collect();
        self.jm.mul_vec(&c)
    }
}

fn check_conductor(field: &Field) -> Result<()> {
    match field.conductor() {
        3 | 4 | 6 => Ok(()),
        n => Err(Error::RealFormConductor(n)),
    }
}

/// Matrix C with conj(X_a) = Σ_b C_ba X_b.
fn conjugation_matrix(l: &MatrixLieAlgebra) -> Result<ScalarMatrix> {
    let cols = l
        .basis()
        .iter()
        .enumerate()
        .map(|(a, b)| l.coordinates(&b.conj()).ok_or(Error::NotConjugationStable(a)))
        .collect::<Result<Vec<Vector>>>()?;
    ScalarMatrix::from_columns(l.field(), &cols)
}

pub fn make_antiauto(algebra: &MatrixLieAlgebra, h: &AlgebraMap) -> Result<AntiAuto> {
    check_conductor(algebra.field())?;
    if h.algebra() != algebra {
        return Err(Error::AlgebraMismatch);
    }
    if !is_automorphism(h) {
        return Err(Error::NotAutomorphism);
    }
    let c = conjugation_matrix(algebra)?;
    let jm = c.mul(&h.matrix().conj())?;
    if !jm.mul(&jm.conj())?.is_identity() {
        return Err(Error::NotInvolutive);
    }
    let j = AntiAuto { algebra: algebra.clone(), h: h.clone(), jm };
    let n = algebra.dim();
    for a in 0..n {
        for b in a + 1..n {
            let (ea, eb) = (algebra.unit_vector(a), algebra.unit_vector(b));
            let lhs = j.apply(&algebra.bracket_coords(&ea, &eb));
            let rhs = algebra.bracket_coords(&j.apply(&ea), &j.apply(&eb));
            if lhs != rhs {
                return Err(Error::NotAutomorphism);
            }
        }
    }
    Ok(j)
}

/// Entrywise complex conjugation, J₀.
pub fn standard_conjugation(algebra: &MatrixLieAlgebra) -> Result<AntiAuto> {
    make_antiauto(algebra, &AlgebraMap::identity(algebra))
}

/// ℚ-coordinates of a field element in the basis (1, ζ).
fn split(c: &Cyclotomic, q: &Field) -> [Cyclotomic; 2] {
    let co = c.coeffs();
    [q.from_rational(co[0].clone()), q.from_rational(co[1].clone())]
}

/// 2×2 rational matrix of y ↦ c·conj(y) (conj = false: y ↦ c·y).
fn real_block(c: &Cyclotomic, conj: bool, q: &Field) -> [[Cyclotomic; 2]; 2] {
    let f = c.field();
    let basis = [f.one(), f.zeta()];
    let images: Vec<[Cyclotomic; 2]> =
        basis.iter().map(|b| split(&(c * &(if conj { b.conj() } else { b.clone() })), q)).collect();
    [[images[0][0].clone(), images[1][0].clone()], [images[0][1].clone(), images[1][1].clone()]]
}

/// Rational matrix of x ↦ M·conj(x) (or M·x) on ℚ^{2·cols}.
fn realify(m: &ScalarMatrix, conj: bool, q: &Field) -> Vec<Vector> {
    let mut rows = vec![vec![q.zero(); 2 * m.cols()]; 2 * m.rows()];
    for a in 0..m.rows() {
        for b in 0..m.cols() {
            let e = m.get(a, b);
            if e.is_zero() {
                continue;
            }
            let blk = real_block(e, conj, q);
            for s in 0..2 {
                for t in 0..2 {
                    rows[2 * a + s][2 * b + t] = blk[s][t].clone();
                }
            }
        }
    }
    rows
}

fn unsplit(y: &[Cyclotomic], f: &Field) -> Vector {
    y.chunks(2)
        .map(|p| {
            let re = p[0].as_rational().expect("rational").clone();
            let im = p[1].as_rational().expect("rational").clone();
            f.from_rational(re) + f.zeta().scale(&im)
        })
        .collect()
}

/// A ℚ-basis of {x ∈ span(vectors) : J x = x}, as coordinate vectors of the algebra.
fn fixed_in_span(j: &AntiAuto, vectors: &[Vector]) -> Result<Vec<Vector>> {
    let f = j.algebra.field();
    let q = Field::rationals();
    let b = ScalarMatrix::from_columns(f, vectors)?;
    // J(Bc) − Bc = Jm·conj(B)·conj(c) − B·c
    let lhs = realify(&j.jm.mul(&b.conj())?, true, &q);
    let rhs = realify(&b, false, &q);
    let eqs: Vec<Vector> = lhs.iter().zip(&rhs).map(|(x, y)| x.iter().zip(y).map(|(a, b)| a - b).collect()).collect();
    let sol = nullspace(&eqs, 2 * vectors.len(), &q);
    Ok(sol.iter().map(|c| b.mul_vec(&unsplit(c, f))).collect())
}

/// Real Lie algebra with a ℚ-basis of J-fixed elements of a complex algebra.
#[derive(Clone, Debug)]
pub struct RealLieAlgebra {
    parent: MatrixLieAlgebra,
    basis: Vec<Vector>,
    /// ad x_i in the real basis; rational entries, stored over the conductor-1 field.
    ad: Vec<ScalarMatrix>,
    pivots: Vec<usize>,
    solver: ScalarMatrix,
}

impl RealLieAlgebra {
    fn new(parent: &MatrixLieAlgebra, basis: Vec<Vector>) -> Result<RealLieAlgebra> {
        let q = Field::rationals();
        let d = basis.len();
        let flat: Vec<Vector> = basis.iter().map(|x| x.iter().flat_map(|c| split(c, &q)).collect()).collect();
        let (_, pivots) = rref(flat.clone());
        if pivots.len() < d {
            return Err(Error::DependentBasis);
        }
        let bp: Vec<Vector> = flat.iter().map(|row| pivots.iter().map(|&p| row[p].clone()).collect()).collect();
        let solver = ScalarMatrix::from_rows(&q, bp)?.transpose().inverse()?;
        let mut r = RealLieAlgebra { parent: parent.clone(), basis, ad: vec![], pivots, solver };
        let mut ad = Vec::with_capacity(d);
        for i in 0..d {
            let cols = (0..d)
                .map(|k| {
                    let z = parent.bracket_coords(&r.basis[i], &r.basis[k]);
                    r.coordinates(&z).ok_or(Error::NonRational)
                })
                .collect::<Result<Vec<Vector>>>()?;
            ad.push(ScalarMatrix::from_columns(&q, &cols)?);
        }
        r.ad = ad;
        Ok(r)
    }

    pub fn parent(&self) -> &MatrixLieAlgebra {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis elements as coordinate vectors of the complex parent.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Rational coordinates (over the conductor-1 field) of a parent vector, if it lies in the real span.
    pub fn coordinates(&self, z: &[Cyclotomic]) -> Option<Vector> {
        let q = Field::rationals();
        let flat: Vector = z.iter().flat_map(|c| split(c, &q)).collect();
        let zp: Vector = self.pivots.iter().map(|&p| flat[p].clone()).collect();
        let r = self.solver.mul_vec(&zp);
        let f = self.parent.field();
        let mut back = vec![f.zero(); z.len()];
        for (c, x) in r.iter().zip(&self.basis) {
            let c = f.from_rational(c.as_rational()?.clone());
            for (b, xe) in back.iter_mut().zip(x) {
                *b += &(&c * xe);
            }
        }
        (back == z).then_some(r)
    }

    /// Structure constants: column k of ad(i) holds [x_i, x_k].
    pub fn ad(&self, i: usize) -> &ScalarMatrix {
        &self.ad[i]
    }

    pub fn bracket(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Vector {
        let q = Field::rationals();
        let mut out = vec![q.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let col = self.ad[i].mul_vec(y);
            for (o, c) in out.iter_mut().zip(col) {
                *o += &(xi * &c);
            }
        }
        out
    }

    pub fn killing_matrix(&self) -> ScalarMatrix {
        let q = Field::rationals();
        let d = self.dim();
        let mut g = ScalarMatrix::zeros(&q, d.max(1), d.max(1));
        for i in 0..d {
            for k in i..d {
                let t = self.ad[i].mul(&self.ad[k]).expect("square").trace();
                g.set(i, k, t.clone());
                g.set(k, i, t);
            }
        }
        g
    }

    /// The adjoint image as a matrix Lie algebra over ℚ; needs a trivial centre.
    pub fn adjoint_algebra(&self) -> Result<MatrixLieAlgebra> {
        let q = Field::rationals();
        MatrixLieAlgebra::from_basis(format!("{}_real", self.parent.name()), &q, self.dim(), self.ad.clone())
    }

    /// Whether the ℂ-span of the real basis is the whole parent.
    pub fn spans_parent(&self) -> bool {
        Subspace::canonicalize(self.parent.field(), self.parent.dim(), self.basis.clone())
            .is_ok_and(|s| s.dim() == self.parent.dim())
    }
}

pub fn fixed_point_form(j: &AntiAuto) -> Result<RealLieAlgebra> {
    let l = &j.algebra;
    let units: Vec<Vector> = (0..l.dim()).map(|i| l.unit_vector(i)).collect();
    let fixed = fixed_in_span(j, &units)?;
    if fixed.len() != l.dim() {
        return Err(Error::RealDimension { expected: l.dim(), found: fixed.len() });
    }
    RealLieAlgebra::new(l, fixed)
}

/// A grading of a real form, carried by its rational adjoint algebra.
#[derive(Clone, Debug)]
pub struct RealGrading {
    pub real: RealLieAlgebra,
    pub grading: Grading,
}

impl RealGrading {
    pub fn profile_string(&self) -> String {
        self.grading.profile_string()
    }

    pub fn universal_group(&self) -> UniversalGroupResult {
        universal_group(&self.grading)
    }

    /// Complex spans of the real parts, inside the parent algebra.
    pub fn complexified_parts(&self) -> Result<Vec<Subspace>> {
        let parent = self.real.parent();
        let f = parent.field();
        self.grading
            .parts()
            .iter()
            .map(|(_, s)| {
                let vs = s
                    .basis()
                    .iter()
                    .map(|r| {
                        let mut v = vec![f.zero(); parent.dim()];
                        for (c, x) in r.iter().zip(self.real.basis()) {
                            let c = f.from_rational(c.as_rational().ok_or(Error::NonRational)?.clone());
                            for (a, b) in v.iter_mut().zip(x) {
                                *a += &(&c * b);
                            }
                        }
                        Ok(v)
                    })
                    .collect::<Result<Vec<Vector>>>()?;
                Subspace::canonicalize(f, parent.dim(), vs)
            })
            .collect()
    }
}

/// Real grading from J-fixed bases of every complex part, or None when some
/// part has too few fixed vectors.
pub fn fundamental_method(g: &Grading, j: &AntiAuto) -> Result<Option<RealGrading>> {
    if g.algebra() != &j.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let mut pieces: Vec<(Label, Vec<Vector>)> = Vec::new();
    for (label, s) in g.parts() {
        let fixed = fixed_in_span(j, s.basis())?;
        if fixed.len() != s.dim() {
            return Ok(None);
        }
        pieces.push((label.clone(), fixed));
    }
    let basis: Vec<Vector> = pieces.iter().flat_map(|(_, v)| v.iter().cloned()).collect();
    let real = RealLieAlgebra::new(&j.algebra, basis)?;
    let adj = real.adjoint_algebra()?;
    let q = Field::rationals();
    let mut offset = 0;
    let mut parts = Vec::new();
    for (label, vs) in &pieces {
        let coords: Vec<Vector> = (offset..offset + vs.len()).map(|i| adj.unit_vector(i)).collect();
        offset += vs.len();
        parts.push((label.clone(), Subspace::canonicalize(&q, adj.dim(), coords)?));
    }
    let grading = Grading::new(&adj, parts)?;
    if let Some(v) = verify_grading(&grading).violations.first() {
        return Err(Error::NotAGrading(v.to_string()));
    }
    Ok(Some(RealGrading { real, grading }))
}

/// Whether h lies in the finite group generated by `gens`, provided the
/// grading by `gens` has real bases. Returns false for h outside the group.
pub fn real_basis_method(gens: &[AlgebraMap], h: &AlgebraMap, order_bound: usize) -> Result<bool> {
    let l = h.algebra().clone();
    let j0 = standard_conjugation(&l)?;
    let g = grade_by(&l, gens, &[])?;
    if fundamental_method(&g, &j0)?.is_none() {
        return Err(Error::NoRealBasis);
    }
    let id = ScalarMatrix::identity(l.field(), l.dim());
    let mut seen: HashSet<Vec<Cyclotomic>> = HashSet::new();
    seen.insert(id.entries().to_vec());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for gen in gens {
            let y = gen.matrix().mul(&x)?;
            if seen.insert(y.entries().to_vec()) {
                if seen.len() > order_bound {
                    return Err(Error::Inconclusive(order_bound));
                }
                frontier.push(y);
            }
        }
    }
    if !seen.contains(h.matrix().entries()) {
        return Ok(false);
    }
    make_antiauto(&l, h)?;
    Ok(true)
}

/// Inertia (p, q) of the Killing form, by symmetric Gaussian elimination.
pub fn real_killing_signature(r: &RealLieAlgebra) -> Result<(usize, usize)> {
    let (p, q, radical) = inertia(&r.killing_matrix());
    if radical > 0 || r.dim() == 0 {
        return Err(Error::DegenerateKilling { radical });
    }
    Ok((p, q))
}

/// (positive, negative, zero) inertia of a rational symmetric matrix.
pub fn inertia(m: &ScalarMatrix) -> (usize, usize, usize) {
    let n = m.rows();
    let mut a: Vec<Vector> = m.to_rows();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero()) {
            a.swap(k, i);
            for row in a.iter_mut() {
                row.swap(k, i);
            }
        } else if let Some((i, jx)) =
            (k..n).flat_map(|i| (i + 1..n).map(move |jx| (i, jx))).find(|&(i, jx)| !a[i][jx].is_zero())
        {
            // row/column i += row/column jx makes the diagonal entry 2·a_ij
            let rj = a[jx].clone();
            for (x, y) in a[i].iter_mut().zip(&rj) {
                *x += y;
            }
            for row in a.iter_mut() {
                let y = row[jx].clone();
                row[i] += &y;
            }
            a.swap(k, i);
            for row in a.iter_mut() {
                row.swap(k, i);
            }
        } else {
            break;
        }
        let pivot = a[k][k].clone();
        let sign = pivot.as_rational().map(|r| r > &num_rational::BigRational::from_integer(0.into()));
        match sign {
            Some(true) => pos += 1,
            _ => neg += 1,
        }
        let inv = pivot.inv().expect("nonzero pivot");
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            let rk = a[k].clone();
            for (x, y) in a[i].iter_mut().zip(&rk) {
                *x -= &(&f * y);
            }
            for row in a.iter_mut() {
                let y = &f * &row[k];
                row[i] -= &y;
            }
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}
