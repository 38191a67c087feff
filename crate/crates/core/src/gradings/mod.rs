//! Gradings: direct-sum decompositions compatible with the bracket.

mod analysis;
mod group;

pub use analysis::{displayed, fingerprint, hierarchy_dot, Fingerprint, FormKind, GroupForm};
pub use group::{diag_group, group_name, regrade_from_diag, universal_group, DiagDescription, UniversalGroupResult};

use std::cmp::Ordering;
use std::fmt;

use crate::autos::{commute, default_candidates, eigenspaces, is_automorphism, AlgebraMap, Provenance};
use crate::error::{Error, Result};
use crate::exactmath::{Cyclotomic, Rational, Subspace, Vector};
use crate::liealg::MatrixLieAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// Eigenvalues of the grading generators, in generator order.
    Eigen(Vec<Cyclotomic>),
    Name(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Eigen(vals) => {
                let parts: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
            Label::Name(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    algebra: MatrixLieAlgebra,
    parts: Vec<(Label, Subspace)>,
}

impl Grading {
    /// No checks beyond ambient dimensions; run [`verify_grading`] for the axioms.
    pub fn new(algebra: &MatrixLieAlgebra, parts: Vec<(Label, Subspace)>) -> Result<Grading> {
        for (_, s) in &parts {
            if s.ambient_dim() != algebra.dim() {
                return Err(Error::DimensionMismatch { expected: algebra.dim(), found: s.ambient_dim() });
            }
            if s.field() != algebra.field() {
                return Err(Error::ConductorMismatch {
                    left: algebra.field().conductor(),
                    right: s.field().conductor(),
                });
            }
        }
        Ok(Grading { algebra: algebra.clone(), parts })
    }

    /// Subspaces spanned by coordinate vectors, labelled by position.
    pub fn from_spans(algebra: &MatrixLieAlgebra, spans: Vec<Vec<Vector>>) -> Result<Grading> {
        let parts = spans
            .into_iter()
            .enumerate()
            .map(|(i, vs)| {
                Ok((Label::Name(i.to_string()), Subspace::canonicalize(algebra.field(), algebra.dim(), vs)?))
            })
            .collect::<Result<_>>()?;
        Grading::new(algebra, parts)
    }

    pub fn trivial(algebra: &MatrixLieAlgebra) -> Grading {
        let full = Subspace::full(algebra.field(), algebra.dim());
        Grading { algebra: algebra.clone(), parts: vec![(Label::Eigen(vec![]), full)] }
    }

    pub fn algebra(&self) -> &MatrixLieAlgebra {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[(Label, Subspace)] {
        &self.parts
    }

    pub fn subspace(&self, j: usize) -> &Subspace {
        &self.parts[j].1
    }

    pub fn label(&self, j: usize) -> &Label {
        &self.parts[j].0
    }

    /// Subspace dimensions, largest first.
    pub fn profile(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.parts.iter().map(|(_, s)| s.dim()).collect();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        dims
    }

    /// "1 x 3-dim + 12 x 1-dim"
    pub fn profile_string(&self) -> String {
        profile_string(&self.profile())
    }

    /// Parts ordered by (dimension, canonical basis).
    pub fn sorted(&self) -> Grading {
        let mut parts = self.parts.clone();
        parts.sort_by(|a, b| subspace_order(&a.1, &b.1));
        Grading { algebra: self.algebra.clone(), parts }
    }

    pub fn reversed(&self) -> Grading {
        let mut parts = self.parts.clone();
        parts.reverse();
        Grading { algebra: self.algebra.clone(), parts }
    }

    pub fn relabel(&self, labels: Vec<Label>) -> Result<Grading> {
        if labels.len() != self.parts.len() {
            return Err(Error::DimensionMismatch { expected: self.parts.len(), found: labels.len() });
        }
        let parts = labels.into_iter().zip(&self.parts).map(|(l, (_, s))| (l, s.clone())).collect();
        Ok(Grading { algebra: self.algebra.clone(), parts })
    }

    /// Index of the part containing the coordinate vector v.
    pub fn locate(&self, v: &[Cyclotomic]) -> Option<usize> {
        self.parts.iter().position(|(_, s)| s.contains_vector(v))
    }
}

pub fn profile_string(dims: &[usize]) -> String {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for &d in dims {
        match groups.last_mut() {
            Some((dim, count)) if *dim == d => *count += 1,
            _ => groups.push((d, 1)),
        }
    }
    groups.iter().map(|(d, c)| format!("{c} x {d}-dim")).collect::<Vec<_>>().join(" + ")
}

fn subspace_key(s: &Subspace) -> Vec<Vec<Rational>> {
    s.basis().iter().map(|v| v.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()).collect()
}

pub(crate) fn subspace_order(a: &Subspace, b: &Subspace) -> Ordering {
    a.dim().cmp(&b.dim()).then_with(|| subspace_key(a).cmp(&subspace_key(b)))
}

/// Where the bracket of two parts lands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Zero,
    Into(usize),
    /// Not contained in any single part.
    Split,
}

/// Targets for all pairs j ≤ k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    n: usize,
    cells: Vec<Target>,
}

impl BracketTable {
    pub fn get(&self, j: usize, k: usize) -> Target {
        let (a, b) = if j <= k { (j, k) } else { (k, j) };
        self.cells[a * self.n + b]
    }

    /// (j, k, l) for every j ≤ k with [L_j, L_k] ⊆ L_l nonzero.
    pub fn relations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.n {
            for k in j..self.n {
                if let Target::Into(l) = self.get(j, k) {
                    out.push((j, k, l));
                }
            }
        }
        out
    }
}

pub fn bracket_table(g: &Grading) -> BracketTable {
    let n = g.len();
    let alg = &g.algebra;
    let mut cells = vec![Target::Zero; n * n];
    for j in 0..n {
        for k in j..n {
            let mut images: Vec<Vector> = Vec::new();
            for x in g.subspace(j).basis() {
                for y in g.subspace(k).basis() {
                    let z = alg.bracket_coords(x, y);
                    if !z.iter().all(Cyclotomic::is_zero) {
                        images.push(z);
                    }
                }
            }
            cells[j * n + k] = match images.first() {
                None => Target::Zero,
                Some(first) => match g.locate(first) {
                    Some(l) if images.iter().all(|v| g.subspace(l).contains_vector(v)) => Target::Into(l),
                    _ => Target::Split,
                },
            };
        }
    }
    BracketTable { n, cells }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroSubspace(usize),
    /// Σ dim L_j exceeds the dimension of their join.
    NotDirect {
        total: usize,
        join: usize,
    },
    /// The join is a proper subspace.
    NotSpanning {
        join: usize,
        dim: usize,
    },
    BracketSplits(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroSubspace(j) => write!(f, "subspace {j} is zero"),
            Violation::NotDirect { total, join } => {
                write!(f, "sum is not direct: dimensions add to {total} but span {join}")
            }
            Violation::NotSpanning { join, dim } => write!(f, "subspaces span {join} of {dim} dimensions"),
            Violation::BracketSplits(j, k) => write!(f, "[L{j}, L{k}] is not inside a single subspace"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingReport {
    pub violations: Vec<Violation>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::NotAGrading(v.to_string())),
        }
    }
}

pub fn verify_grading(g: &Grading) -> GradingReport {
    let mut violations = Vec::new();
    let dim = g.algebra.dim();
    for (j, (_, s)) in g.parts.iter().enumerate() {
        if s.is_zero() {
            violations.push(Violation::ZeroSubspace(j));
        }
    }
    let total: usize = g.parts.iter().map(|(_, s)| s.dim()).sum();
    let all: Vec<Vector> = g.parts.iter().flat_map(|(_, s)| s.basis().iter().cloned()).collect();
    let join = Subspace::canonicalize(g.algebra.field(), dim, all).map_or(0, |s| s.dim());
    if total != join {
        violations.push(Violation::NotDirect { total, join });
    }
    if join != dim {
        violations.push(Violation::NotSpanning { join, dim });
    }
    let table = bracket_table(g);
    for j in 0..g.len() {
        for k in j..g.len() {
            if table.get(j, k) == Target::Split {
                violations.push(Violation::BracketSplits(j, k));
            }
        }
    }
    GradingReport { violations }
}

/// Common refinement of the eigenspace decompositions of commuting automorphisms.
/// Missing candidate lists fall back to [`default_candidates`].
pub fn grade_by(algebra: &MatrixLieAlgebra, gens: &[AlgebraMap], candidates: &[Vec<Cyclotomic>]) -> Result<Grading> {
    for g in gens {
        if g.algebra() != algebra {
            return Err(Error::AlgebraMismatch);
        }
        let built_from_matrix = matches!(g.provenance(), Provenance::Inner(_) | Provenance::Outer(_));
        if !built_from_matrix && !is_automorphism(g) {
            return Err(Error::NotAutomorphism);
        }
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !commute(&gens[i], &gens[j])? {
                return Err(Error::NonCommuting(i, j));
            }
        }
    }
    let mut parts: Vec<(Vec<Cyclotomic>, Subspace)> = vec![(vec![], Subspace::full(algebra.field(), algebra.dim()))];
    for (i, g) in gens.iter().enumerate() {
        let cands = match candidates.get(i) {
            Some(c) => c.clone(),
            None => default_candidates(g),
        };
        let report = eigenspaces(g, &cands)?;
        if !report.resolved {
            return Err(Error::UnresolvedSpectrum(i));
        }
        let mut next = Vec::new();
        for (label, s) in &parts {
            for (lambda, e) in &report.spaces {
                let m = s.meet(e)?;
                if !m.is_zero() {
                    let mut l = label.clone();
                    l.push(lambda.clone());
                    next.push((l, m));
                }
            }
        }
        parts = next;
    }
    let parts = parts.into_iter().map(|(l, s)| (Label::Eigen(l), s)).collect();
    Grading::new(algebra, parts)
}

/// Every part of `fine` lies in exactly one part of `coarse`, and each coarse
/// part is the sum of the fine parts inside it.
pub fn refines(fine: &Grading, coarse: &Grading) -> Result<bool> {
    if fine.algebra != coarse.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let mut members: Vec<Vec<Vector>> = vec![vec![]; coarse.len()];
    for (_, s) in &fine.parts {
        let hosts: Vec<usize> =
            (0..coarse.len()).filter(|&c| coarse.subspace(c).contains(s).unwrap_or(false)).collect();
        if hosts.len() != 1 {
            return Ok(false);
        }
        members[hosts[0]].extend(s.basis().iter().cloned());
    }
    for (c, vs) in members.into_iter().enumerate() {
        let span = Subspace::canonicalize(fine.algebra.field(), fine.algebra.dim(), vs)?;
        if &span != coarse.subspace(c) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn coarsen(g: &Grading, partition: &[Vec<usize>]) -> Result<Grading> {
    let mut seen = vec![false; g.len()];
    for block in partition {
        if block.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        for &j in block {
            if j >= g.len() {
                return Err(Error::InvalidPartition(format!("index {j} out of range")));
            }
            if seen[j] {
                return Err(Error::InvalidPartition(format!("index {j} repeated")));
            }
            seen[j] = true;
        }
    }
    if let Some(j) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidPartition(format!("index {j} missing")));
    }
    let parts = partition
        .iter()
        .map(|block| {
            let vs = block.iter().flat_map(|&j| g.subspace(j).basis().iter().cloned()).collect();
            let label = if block.len() == 1 {
                g.label(block[0]).clone()
            } else {
                Label::Name(block.iter().map(|j| g.label(*j).to_string()).collect::<Vec<_>>().join("+"))
            };
            Ok((label, Subspace::canonicalize(g.algebra.field(), g.algebra.dim(), vs)?))
        })
        .collect::<Result<_>>()?;
    let out = Grading::new(&g.algebra, parts)?;
    verify_grading(&out).into_result()?;
    Ok(out)
}

/// All parts one-dimensional.
pub fn is_finest(g: &Grading) -> bool {
    g.parts.iter().all(|(_, s)| s.dim() == 1)
}

/// Same set of subspaces, ignoring order and labels.
pub fn same_subspaces(a: &Grading, b: &Grading) -> bool {
    a.algebra == b.algebra && a.len() == b.len() && a.parts.iter().all(|(_, s)| b.parts.iter().any(|(_, t)| s == t))
}

/// For eigenvalue labels: every nonzero [L_u, L_v] lands in L_{u·v}.
pub fn labels_multiply(g: &Grading) -> bool {
    let table = bracket_table(g);
    table.relations().into_iter().all(|(j, k, l)| match (g.label(j), g.label(k), g.label(l)) {
        (Label::Eigen(u), Label::Eigen(v), Label::Eigen(w)) => {
            u.len() == v.len() && u.len() == w.len() && u.iter().zip(v).zip(w).all(|((a, b), c)| &(a * b) == c)
        }
        _ => false,
    })
}
