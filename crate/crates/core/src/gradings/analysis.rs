use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::group::{group_name, universal_group, UniversalGroupResult};
use super::{bracket_table, profile_string, refines, same_subspaces, verify_grading, Grading};
use crate::error::{Error, Result};
use crate::exactmath::{ScalarMatrix, Subspace, Vector};
use crate::liealg::{make_orthogonal, make_symplectic};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroupForm {
    Group { free_rank: usize, torsion: Vec<BigInt> },
    NotGroupIndexable,
}

impl fmt::Display for GroupForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupForm::Group { free_rank, torsion } => f.write_str(&group_name(*free_rank, torsion)),
            GroupForm::NotGroupIndexable => f.write_str("not group-indexable"),
        }
    }
}

/// Invariants preserved by equivalence of gradings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fingerprint {
    pub profile: Vec<usize>,
    pub group: GroupForm,
    /// (dim L_j, dim L_k, dim L_l) over nonzero [L_j, L_k] ⊆ L_l, j ≤ k; sorted.
    pub triples: Vec<(usize, usize, usize)>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counts: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for t in &self.triples {
            *counts.entry(*t).or_default() += 1;
        }
        let brackets: Vec<String> = counts.iter().map(|((a, b, c), n)| format!("{n} x ({a},{b})->{c}")).collect();
        write!(
            f,
            "profile: {}; group: {}; brackets: {}",
            profile_string(&self.profile),
            self.group,
            if brackets.is_empty() { "none".to_string() } else { brackets.join(", ") }
        )
    }
}

pub fn fingerprint(g: &Grading) -> Fingerprint {
    let g = g.sorted();
    let group = match universal_group(&g) {
        UniversalGroupResult::Group { free_rank, torsion, .. } => GroupForm::Group { free_rank, torsion },
        UniversalGroupResult::NotGroupIndexable { .. } => GroupForm::NotGroupIndexable,
    };
    let dim = |j: usize| g.subspace(j).dim();
    let mut triples: Vec<(usize, usize, usize)> = bracket_table(&g)
        .relations()
        .into_iter()
        .map(|(j, k, l)| {
            let (a, b) = (dim(j).min(dim(k)), dim(j).max(dim(k)));
            (a, b, dim(l))
        })
        .collect();
    triples.sort_unstable();
    Fingerprint { profile: g.profile(), group, triples }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Orthogonal,
    Symplectic,
}

/// Grading of o_K(m) or sp_K(m) cut out of a grading of sl(m), when the
/// subalgebra is the sum of its intersections with the parts.
pub fn displayed(g: &Grading, k: &ScalarMatrix, kind: FormKind) -> Result<Option<Grading>> {
    let l = g.algebra();
    if k.rows() != l.ambient_size() {
        return Err(Error::DimensionMismatch { expected: l.ambient_size(), found: k.rows() });
    }
    let s = match kind {
        FormKind::Orthogonal => make_orthogonal(k)?,
        FormKind::Symplectic => make_symplectic(k)?,
    };
    let inside = s
        .basis()
        .iter()
        .enumerate()
        .map(|(i, b)| l.coordinates(b).ok_or(Error::NotPreserved(i)))
        .collect::<Result<Vec<Vector>>>()?;
    let sub = Subspace::canonicalize(l.field(), l.dim(), inside)?;
    let mut total = 0;
    let mut pieces = Vec::new();
    for (label, part) in g.parts() {
        let m = part.meet(&sub)?;
        if m.is_zero() {
            continue;
        }
        total += m.dim();
        let vs: Vec<Vector> =
            m.basis().iter().map(|v| s.coordinates(&l.matrix_of(v)).expect("inside the subalgebra")).collect();
        pieces.push((label.clone(), Subspace::canonicalize(s.field(), s.dim(), vs)?));
    }
    if total != s.dim() {
        return Ok(None);
    }
    let out = Grading::new(&s, pieces)?;
    let report = verify_grading(&out);
    if let Some(v) = report.violations.first() {
        return Err(Error::NotAGrading(v.to_string()));
    }
    Ok(Some(out))
}

/// DOT digraph of the covering relation of `refines`; edges point fine → coarse.
pub fn hierarchy_dot(entries: &[(String, Grading)]) -> Result<String> {
    let n = entries.len();
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let (a, b) = (&entries[i].1, &entries[j].1);
                if a.algebra() != b.algebra() {
                    continue;
                }
                below[i][j] = refines(a, b)? && !same_subspaces(a, b);
            }
        }
    }
    let mut out = String::from("digraph refinement {\n  rankdir=BT;\n");
    for (name, g) in entries {
        out.push_str(&format!("  \"{}\" [label=\"{}\\n{}\"];\n", name, name, g.profile_string()));
    }
    for i in 0..n {
        for j in 0..n {
            if below[i][j] && !(0..n).any(|k| below[i][k] && below[k][j]) {
                out.push_str(&format!("  \"{}\" -> \"{}\";\n", entries[i].0, entries[j].0));
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
