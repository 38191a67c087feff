//! Matrix Lie algebras with explicit bases and structure constants.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::matrix::{is_zero_vector, nullspace, rref};
use crate::exactmath::{Cyclotomic, Field, Rational, ScalarMatrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    SpecialLinear,
    Orthogonal(ScalarMatrix),
    Symplectic(ScalarMatrix),
    /// Spanned by an explicit list of matrices.
    Span,
}

type Structure = Vec<Vec<Vec<(usize, Cyclotomic)>>>;

struct AlgebraData {
    name: String,
    kind: AlgebraKind,
    field: Field,
    m: usize,
    basis: Vec<ScalarMatrix>,
    // structure[a][b] lists (d, c) with [X_a, X_b] = Σ c X_d
    structure: Structure,
    pivots: Vec<usize>,
    solver: ScalarMatrix,
}

/// A Lie algebra of m×m matrices with a fixed ordered basis.
#[derive(Clone)]
pub struct MatrixLieAlgebra(Arc<AlgebraData>);

impl PartialEq for MatrixLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.m == other.0.m && self.0.basis == other.0.basis)
    }
}

impl Eq for MatrixLieAlgebra {}

impl fmt::Debug for MatrixLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, conductor {})", self.0.name, self.dim(), self.0.field.conductor())
    }
}

/// sl(m): H_i = E_ii − E_{i+1,i+1} first, then E_ij (i ≠ j) in lexicographic order.
pub fn make_sl(field: &Field, m: usize) -> Result<MatrixLieAlgebra> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("sl(m) needs m >= 2, got {m}")));
    }
    let mut basis = Vec::with_capacity(m * m - 1);
    for i in 0..m - 1 {
        let mut h = ScalarMatrix::zeros(field, m, m);
        h.set(i, i, field.one());
        h.set(i + 1, i + 1, field.from_int(-1));
        basis.push(h);
    }
    for i in 0..m {
        for j in 0..m {
            if i != j {
                basis.push(ScalarMatrix::unit(field, m, i, j));
            }
        }
    }
    MatrixLieAlgebra::build(format!("sl({m})"), AlgebraKind::SpecialLinear, field, m, basis)
}

pub fn make_orthogonal(k: &ScalarMatrix) -> Result<MatrixLieAlgebra> {
    check_form(k, true)?;
    let m = k.rows();
    let name = if k.is_identity() { format!("o({m})") } else { format!("o_K({m})") };
    let basis = form_algebra_basis(k);
    MatrixLieAlgebra::build(name, AlgebraKind::Orthogonal(k.clone()), k.field(), m, basis)
}

pub fn make_symplectic(k: &ScalarMatrix) -> Result<MatrixLieAlgebra> {
    check_form(k, false)?;
    let m = k.rows();
    let basis = form_algebra_basis(k);
    MatrixLieAlgebra::build(format!("sp_K({m})"), AlgebraKind::Symplectic(k.clone()), k.field(), m, basis)
}

fn check_form(k: &ScalarMatrix, symmetric: bool) -> Result<()> {
    if !k.is_square() {
        return Err(Error::NotSquare { rows: k.rows(), cols: k.cols() });
    }
    let t = k.transpose();
    let ok = if symmetric { &t == k } else { t == k.neg() };
    if !ok {
        return Err(Error::WrongSymmetry(if symmetric { "symmetric" } else { "antisymmetric" }));
    }
    if !k.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    Ok(())
}

/// Solutions of XᵀK + KX = 0, unknowns x_ij in row-major order.
fn form_algebra_basis(k: &ScalarMatrix) -> Vec<ScalarMatrix> {
    let field = k.field();
    let m = k.rows();
    let var = |r: usize, c: usize| r * m + c;
    let mut eqs = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut row = vec![field.zero(); m * m];
            for t in 0..m {
                // (XᵀK)_ij = Σ_t x_ti K_tj,  (KX)_ij = Σ_t K_it x_tj
                row[var(t, i)] += k.get(t, j);
                row[var(t, j)] += k.get(i, t);
            }
            eqs.push(row);
        }
    }
    nullspace(&eqs, m * m, field)
        .into_iter()
        .map(|v| {
            let rows = v.chunks(m).map(<[Cyclotomic]>::to_vec).collect();
            ScalarMatrix::from_rows(field, rows).expect("square solution matrix")
        })
        .collect()
}

impl MatrixLieAlgebra {
    /// Algebra spanned by `basis`; checks independence and closure.
    pub fn from_basis(
        name: impl Into<String>,
        field: &Field,
        m: usize,
        basis: Vec<ScalarMatrix>,
    ) -> Result<MatrixLieAlgebra> {
        for b in &basis {
            if b.rows() != m || b.cols() != m {
                return Err(Error::DimensionMismatch { expected: m, found: b.rows().max(b.cols()) });
            }
            if b.field() != field {
                return Err(Error::ConductorMismatch { left: field.conductor(), right: b.field().conductor() });
            }
        }
        MatrixLieAlgebra::build(name.into(), AlgebraKind::Span, field, m, basis)
    }

    fn build(
        name: String,
        kind: AlgebraKind,
        field: &Field,
        m: usize,
        basis: Vec<ScalarMatrix>,
    ) -> Result<MatrixLieAlgebra> {
        let dim = basis.len();
        let flat: Vec<Vector> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let pivots = if dim == 0 { vec![] } else { rref(flat.clone()).1 };
        if pivots.len() < dim {
            return Err(Error::DependentBasis);
        }
        // coordinates c solve cᵀ B_p = x_p, so c = (B_pᵀ)⁻¹ x_p
        let solver = if dim == 0 {
            ScalarMatrix::zeros(field, 1, 1)
        } else {
            let bp: Vec<Vector> = flat.iter().map(|row| pivots.iter().map(|&p| row[p].clone()).collect()).collect();
            ScalarMatrix::from_rows(field, bp)?.transpose().inverse()?
        };
        let mut data = AlgebraData { name, kind, field: field.clone(), m, basis, structure: vec![], pivots, solver };
        let mut structure: Structure = vec![vec![vec![]; dim]; dim];
        #[allow(clippy::needless_range_loop)]
        for a in 0..dim {
            for b in a + 1..dim {
                let c = data.basis[a].commutator(&data.basis[b])?;
                let coords = data.solve(&c).ok_or(Error::NotClosed(a, b))?;
                let sparse: Vec<(usize, Cyclotomic)> =
                    coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                structure[b][a] = sparse.iter().map(|(d, x)| (*d, -x)).collect();
                structure[a][b] = sparse;
            }
        }
        data.structure = structure;
        Ok(MatrixLieAlgebra(Arc::new(data)))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> MatrixLieAlgebra {
        let d = &self.0;
        MatrixLieAlgebra(Arc::new(AlgebraData {
            name: name.into(),
            kind: d.kind.clone(),
            field: d.field.clone(),
            m: d.m,
            basis: d.basis.clone(),
            structure: d.structure.clone(),
            pivots: d.pivots.clone(),
            solver: d.solver.clone(),
        }))
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.0.kind
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn ambient_size(&self) -> usize {
        self.0.m
    }

    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn basis(&self) -> &[ScalarMatrix] {
        &self.0.basis
    }

    /// Nonzero structure constants of [X_a, X_b] as (d, c_ab^d).
    pub fn structure(&self, a: usize, b: usize) -> &[(usize, Cyclotomic)] {
        &self.0.structure[a][b]
    }

    pub fn zero_vector(&self) -> Vector {
        vec![self.0.field.zero(); self.dim()]
    }

    pub fn unit_vector(&self, i: usize) -> Vector {
        let mut v = self.zero_vector();
        v[i] = self.0.field.one();
        v
    }

    /// Coordinates of a matrix in the basis, or None if it lies outside the algebra.
    pub fn coordinates(&self, x: &ScalarMatrix) -> Option<Vector> {
        if x.rows() != self.0.m || x.cols() != self.0.m || x.field() != &self.0.field {
            return None;
        }
        self.0.solve(x)
    }

    pub fn matrix_of(&self, coords: &[Cyclotomic]) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(&self.0.field, self.0.m, self.0.m);
        for (c, b) in coords.iter().zip(&self.0.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c)).expect("same shape");
            }
        }
        out
    }

    pub fn element(&self, coords: Vector) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: coords.len() });
        }
        if let Some(c) = coords.iter().find(|c| c.field() != &self.0.field) {
            return Err(Error::ConductorMismatch { left: self.0.field.conductor(), right: c.conductor() });
        }
        Ok(Element { algebra: self.clone(), coords })
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element { algebra: self.clone(), coords: self.unit_vector(i) }
    }

    pub fn element_of_matrix(&self, x: &ScalarMatrix) -> Result<Element> {
        let coords = self.coordinates(x).ok_or(Error::NotPreserved(0))?;
        Ok(Element { algebra: self.clone(), coords })
    }

    /// Bracket of coordinate vectors through the structure constants.
    pub fn bracket_coords(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Vector {
        let mut out = self.zero_vector();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() || a == b {
                    continue;
                }
                let s = xa * yb;
                for (d, c) in &self.0.structure[a][b] {
                    out[*d] += &(&s * c);
                }
            }
        }
        out
    }

    /// Matrix of ad x: column b holds the coordinates of [x, X_b].
    pub fn ad_matrix(&self, x: &[Cyclotomic]) -> ScalarMatrix {
        let n = self.dim();
        let mut out = ScalarMatrix::zeros(&self.0.field, n, n);
        for b in 0..n {
            let col = self.bracket_coords(x, &self.unit_vector(b));
            for (d, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(d, b, v);
                }
            }
        }
        out
    }

    /// Gram matrix of the Killing form, B(X_a, X_b) = tr(ad X_a ad X_b).
    pub fn killing_matrix(&self) -> ScalarMatrix {
        let n = self.dim();
        let field = &self.0.field;
        // ad_a[d][e] = c_{ae}^d
        let ads: Vec<Vec<Vec<(usize, Cyclotomic)>>> = (0..n)
            .map(|a| {
                let mut rows = vec![vec![]; n];
                for e in 0..n {
                    for (d, c) in &self.0.structure[a][e] {
                        rows[*d].push((e, c.clone()));
                    }
                }
                rows
            })
            .collect();
        let mut out = ScalarMatrix::zeros(field, n.max(1), n.max(1));
        for a in 0..n {
            for b in a..n {
                let mut acc = field.zero();
                for d in 0..n {
                    for (e, x) in &ads[a][d] {
                        for (d2, y) in &ads[b][*e] {
                            if *d2 == d {
                                acc += &(x * y);
                            }
                        }
                    }
                }
                out.set(a, b, acc.clone());
                out.set(b, a, acc);
            }
        }
        out
    }

    /// Σ_cyclic [[X_a, X_b], X_c] = 0 for all basis triples.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        let units: Vec<Vector> = (0..n).map(|i| self.unit_vector(i)).collect();
        let brackets: Vec<Vec<Vector>> =
            (0..n).map(|a| (0..n).map(|b| self.bracket_coords(&units[a], &units[b])).collect()).collect();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let mut s = self.bracket_coords(&brackets[a][b], &units[c]);
                    let t = self.bracket_coords(&brackets[b][c], &units[a]);
                    let u = self.bracket_coords(&brackets[c][a], &units[b]);
                    for ((x, y), z) in s.iter_mut().zip(&t).zip(&u) {
                        *x += y;
                        *x += z;
                    }
                    if !is_zero_vector(&s) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Re-expands every basis commutator and compares with the stored constants.
    pub fn check_closure(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let c = self.0.basis[a].commutator(&self.0.basis[b]).expect("same shape");
                let expect = self.matrix_of(&self.bracket_coords(&self.unit_vector(a), &self.unit_vector(b)));
                c == expect
            })
        })
    }

    /// Subalgebra spanned by coordinate vectors of this algebra.
    pub fn subalgebra(&self, name: impl Into<String>, vectors: &[Vector]) -> Result<MatrixLieAlgebra> {
        let basis = vectors.iter().map(|v| self.matrix_of(v)).collect();
        MatrixLieAlgebra::from_basis(name, &self.0.field, self.0.m, basis)
    }

    /// Simple ideals, found by splitting along eigenspaces of the centroid.
    /// Each ideal must be defined over the rationals.
    pub fn ideal_decomposition(&self) -> Result<Vec<MatrixLieAlgebra>> {
        let n = self.dim();
        let radical = n - if n == 0 { 0 } else { self.killing_matrix().rank() };
        if n == 0 || radical > 0 {
            return Err(Error::DegenerateKilling { radical });
        }
        let mut out = Vec::new();
        self.split_ideals(&mut out)?;
        Ok(out)
    }

    fn split_ideals(&self, out: &mut Vec<MatrixLieAlgebra>) -> Result<()> {
        let n = self.dim();
        let field = &self.0.field;
        let centroid = self.centroid();
        let Some(t) = centroid.iter().find(|t| {
            let c = t.get(0, 0).clone();
            *t != &ScalarMatrix::identity(field, n).scale(&c)
        }) else {
            out.push(self.clone());
            return Ok(());
        };
        let c = rational_eigenvalue(t)?;
        let shifted = t.sub(&ScalarMatrix::identity(field, n).scale(&field.from_rational(c)))?;
        let ker = shifted.kernel();
        let (im, _) = rref(shifted.transpose().to_rows());
        let idx = out.len() + 1;
        let a = self.subalgebra(format!("{}.ideal{}", self.0.name, idx), &ker)?;
        let b = self.subalgebra(format!("{}.ideal{}", self.0.name, idx + 1), &im)?;
        a.split_ideals(out)?;
        b.split_ideals(out)?;
        // names follow the final order
        let base = self.0.name.split(".ideal").next().unwrap_or_default().to_string();
        let renamed: Vec<MatrixLieAlgebra> =
            out.iter().enumerate().map(|(i, alg)| alg.renamed(format!("{base}.ideal{}", i + 1))).collect();
        *out = renamed;
        Ok(())
    }

    /// Basis of {T : T ad_a = ad_a T for all basis a}.
    fn centroid(&self) -> Vec<ScalarMatrix> {
        let n = self.dim();
        let field = &self.0.field;
        let mut rows: Vec<Vector> = Vec::new();
        for a in 0..n {
            let ad = self.ad_matrix(&self.unit_vector(a));
            for i in 0..n {
                for j in 0..n {
                    // Σ_k t_ik A_kj − Σ_k A_ik t_kj
                    let mut row = vec![field.zero(); n * n];
                    for k in 0..n {
                        let akj = ad.get(k, j);
                        if !akj.is_zero() {
                            row[i * n + k] += akj;
                        }
                        let aik = ad.get(i, k);
                        if !aik.is_zero() {
                            row[k * n + j] -= aik;
                        }
                    }
                    if !is_zero_vector(&row) {
                        rows.push(row);
                    }
                }
            }
            let (reduced, _) = rref(std::mem::take(&mut rows));
            rows = reduced;
        }
        nullspace(&rows, n * n, field)
            .into_iter()
            .map(|v| {
                let rows = v.chunks(n).map(<[Cyclotomic]>::to_vec).collect();
                ScalarMatrix::from_rows(field, rows).expect("square")
            })
            .collect()
    }
}

impl AlgebraData {
    fn solve(&self, x: &ScalarMatrix) -> Option<Vector> {
        let dim = self.basis.len();
        let entries = x.entries();
        if dim == 0 {
            return is_zero_vector(entries).then(Vec::new);
        }
        let xp: Vector = self.pivots.iter().map(|&p| entries[p].clone()).collect();
        let coords = self.solver.mul_vec(&xp);
        let mut residual = entries.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, e) in residual.iter_mut().zip(b.entries()) {
                if !e.is_zero() {
                    *r -= &(c * e);
                }
            }
        }
        is_zero_vector(&residual).then_some(coords)
    }
}

/// A rational root of the minimal polynomial of `t`.
fn rational_eigenvalue(t: &ScalarMatrix) -> Result<Rational> {
    let n = t.rows();
    let field = t.field();
    let not_rational = || Error::IdealSplit("centroid has no rational eigenvalue".into());
    // Krylov sequence I, T, T², … until dependent
    let mut powers: Vec<Vector> = vec![ScalarMatrix::identity(field, n).entries().to_vec()];
    let mut cur = ScalarMatrix::identity(field, n);
    let relation = loop {
        cur = cur.mul(t)?;
        let mut rows = powers.clone();
        rows.push(cur.entries().to_vec());
        // dependency among columns of [I, T, …, T^k]: solve Σ a_i T^i = 0
        let cols: Vec<Vector> = (0..n * n).map(|e| rows.iter().map(|r| r[e].clone()).collect()).collect();
        let ker = nullspace(&cols, rows.len(), field);
        if let Some(k) = ker.into_iter().next() {
            break k;
        }
        powers.push(cur.entries().to_vec());
    };
    let coeffs: Vec<Rational> =
        relation.iter().map(|c| c.as_rational().cloned().ok_or_else(not_rational)).collect::<Result<_>>()?;
    rational_root(&coeffs).ok_or_else(not_rational)
}

/// Some rational root of Σ coeffs[i] xⁱ, by the rational root theorem.
fn rational_root(coeffs: &[Rational]) -> Option<Rational> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    if ints.first().is_some_and(Zero::is_zero) {
        return Some(Rational::zero());
    }
    let eval =
        |r: &Rational| ints.iter().rev().fold(Rational::zero(), |acc, c| acc * r + Rational::from(c.clone())).is_zero();
    let ps = divisors(ints.first()?)?;
    let qs = divisors(ints.last()?)?;
    for p in &ps {
        for q in &qs {
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(sign) * p, q.clone());
                if eval(&r) {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn divisors(x: &BigInt) -> Option<Vec<BigInt>> {
    let x: u64 = x.abs().try_into().ok()?;
    if x > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d * d != x {
                out.push(BigInt::from(x / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// An element of a [`MatrixLieAlgebra`] in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    algebra: MatrixLieAlgebra,
    coords: Vector,
}

impl Element {
    pub fn algebra(&self) -> &MatrixLieAlgebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[Cyclotomic] {
        &self.coords
    }

    pub fn matrix(&self) -> ScalarMatrix {
        self.algebra.matrix_of(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coords)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Element { algebra: self.algebra.clone(), coords })
    }

    pub fn scale(&self, s: &Cyclotomic) -> Element {
        let coords = self.coords.iter().map(|a| a * s).collect();
        Element { algebra: self.algebra.clone(), coords }
    }

    pub fn bracket(&self, other: &Element) -> Result<Element> {
        bracket(self, other)
    }
}

pub fn bracket(x: &Element, y: &Element) -> Result<Element> {
    if x.algebra != y.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let coords = x.algebra.bracket_coords(&x.coords, &y.coords);
    Ok(Element { algebra: x.algebra.clone(), coords })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_basis_and_bracket() {
        let f = Field::new(4).unwrap();
        let l = make_sl(&f, 2).unwrap();
        assert_eq!(l.dim(), 3);
        let (h, e, fe) = (l.basis_element(0), l.basis_element(1), l.basis_element(2));
        assert_eq!(bracket(&e, &fe).unwrap(), h);
        assert!(bracket(&h, &h).unwrap().is_zero());
        assert_eq!(l.killing_matrix().get(0, 0), &f.from_int(8));
    }

    #[test]
    fn form_algebra_dimensions() {
        let f = Field::new(4).unwrap();
        let i4 = ScalarMatrix::identity(&f, 4);
        assert_eq!(make_orthogonal(&i4).unwrap().dim(), 6);
        let j = ScalarMatrix::from_ints(&f, &[&[0, 1], &[-1, 0]]);
        let sp2 = make_symplectic(&j).unwrap();
        assert_eq!(sp2.dim(), 3);
        assert_eq!(make_symplectic(&i4), Err(Error::WrongSymmetry("antisymmetric")));
        let singular = ScalarMatrix::from_ints(&f, &[&[1, 0], &[0, 0]]);
        assert_eq!(make_orthogonal(&singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn rational_roots() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        // (x - 2/3)(x + 1) = x² + x/3 - 2/3
        let root = rational_root(&[r(-2, 3), r(1, 3), r(1, 1)]).unwrap();
        assert!(root == r(2, 3) || root == r(-1, 1));
        assert_eq!(rational_root(&[r(-2, 1), r(0, 1), r(1, 1)]), None);
    }
}
