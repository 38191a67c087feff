use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{bracket_table, grade_by, Grading};
use crate::autos::{AlgebraMap, Provenance};
use crate::error::{Error, Result};
use crate::exactmath::{smith_normal_form, Cyclotomic, IntegerMatrix, ScalarMatrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalGroupResult {
    /// ℤ^free_rank × ∏ ℤ_{torsion[i]}; labels list the free coordinates first.
    Group {
        free_rank: usize,
        torsion: Vec<BigInt>,
        labels: Vec<Vec<BigInt>>,
    },
    NotGroupIndexable {
        witness: (usize, usize),
    },
}

impl UniversalGroupResult {
    pub fn is_group(&self) -> bool {
        matches!(self, UniversalGroupResult::Group { .. })
    }

    /// "Z^2 x Z_4 x Z_4", "trivial", or "not group-indexable".
    pub fn describe(&self) -> String {
        match self {
            UniversalGroupResult::Group { free_rank, torsion, .. } => group_name(*free_rank, torsion),
            UniversalGroupResult::NotGroupIndexable { .. } => "not group-indexable".into(),
        }
    }
}

pub fn group_name(free_rank: usize, torsion: &[BigInt]) -> String {
    let mut parts = Vec::new();
    if free_rank > 0 {
        parts.push(if free_rank == 1 { "Z".to_string() } else { format!("Z^{free_rank}") });
    }
    parts.extend(torsion.iter().map(|d| format!("Z_{d}")));
    if parts.is_empty() {
        "trivial".into()
    } else {
        parts.join(" x ")
    }
}

/// ℤ^J modulo e_j + e_k − e_l, in Smith coordinates. Labels may collide.
pub(crate) struct RelationGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub labels: Vec<Vec<BigInt>>,
}

pub(crate) fn relation_group(g: &Grading) -> RelationGroup {
    let n = g.len();
    let rels = bracket_table(g).relations();
    let mut a = IntegerMatrix::zeros(rels.len(), n);
    for (r, &(j, k, l)) in rels.iter().enumerate() {
        a[(r, j)] += 1;
        a[(r, k)] += 1;
        a[(r, l)] -= 1;
    }
    let snf = smith_normal_form(&a);
    // row lattice of A maps under y ↦ yV onto ⊕ d_i ℤ
    let d: Vec<BigInt> = (0..n).map(|i| if i < rels.len() { snf.s[(i, i)].clone() } else { BigInt::zero() }).collect();
    let free: Vec<usize> = (0..n).filter(|&i| d[i].is_zero()).collect();
    let tors: Vec<usize> = (0..n).filter(|&i| !d[i].is_zero() && !d[i].is_one()).collect();
    let labels = (0..n)
        .map(|j| {
            let mut lab: Vec<BigInt> = free.iter().map(|&i| snf.v[(j, i)].clone()).collect();
            lab.extend(tors.iter().map(|&i| snf.v[(j, i)].mod_floor(&d[i])));
            lab
        })
        .collect();
    RelationGroup { free_rank: free.len(), torsion: tors.iter().map(|&i| d[i].clone()).collect(), labels }
}

pub fn universal_group(g: &Grading) -> UniversalGroupResult {
    let rg = relation_group(g);
    for j in 0..rg.labels.len() {
        for k in j + 1..rg.labels.len() {
            if rg.labels[j] == rg.labels[k] {
                return UniversalGroupResult::NotGroupIndexable { witness: (j, k) };
            }
        }
    }
    UniversalGroupResult::Group { free_rank: rg.free_rank, torsion: rg.torsion, labels: rg.labels }
}

/// Diag(Γ) as a character lattice with concrete generating automorphisms.
#[derive(Clone, Debug)]
pub struct DiagDescription {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Exponent vector per subspace (free coordinates first).
    pub characters: Vec<Vec<BigInt>>,
    /// Scaling automorphisms: free ones at primes 2, 3, 5, …, torsion ones at primitive roots.
    pub generators: Vec<AlgebraMap>,
    /// The scalar each generator takes on each subspace.
    pub values: Vec<Vec<Cyclotomic>>,
}

pub fn diag_group(g: &Grading) -> Result<DiagDescription> {
    let rg = relation_group(g);
    let alg = g.algebra();
    let field = alg.field();
    let n = field.conductor();

    let mut roots = Vec::new();
    for d in &rg.torsion {
        let root = d.to_u32().and_then(|d| field.primitive_root(d));
        roots.push(root);
    }
    if roots.iter().any(Option::is_none) {
        let needed = rg.torsion.iter().fold(BigInt::from(n), |acc, d| acc.lcm(d)).to_u32().unwrap_or(u32::MAX);
        return Err(Error::ConductorTooSmall { conductor: n, needed });
    }

    // basis change to the grading's own basis
    let cols: Vec<Vector> = g.parts().iter().flat_map(|(_, s)| s.basis().iter().cloned()).collect();
    let b = ScalarMatrix::from_columns(field, &cols)?;
    let b_inv = b.inverse().map_err(|_| Error::NotAGrading("subspaces are not a direct sum".into()))?;

    let primes = first_primes(rg.free_rank);
    let mut generators = Vec::new();
    let mut values = Vec::new();
    let coordinate_count = rg.free_rank + rg.torsion.len();
    for c in 0..coordinate_count {
        let per_part: Vec<Cyclotomic> = rg
            .labels
            .iter()
            .map(|lab| {
                let e = &lab[c];
                if c < rg.free_rank {
                    let e = e.to_i64().ok_or_else(|| Error::InvalidParameter("exponent overflow".into()))?;
                    field.from_int(primes[c] as i64).pow(e)
                } else {
                    let root = roots[c - rg.free_rank].as_ref().expect("checked above");
                    root.pow(e.to_i64().expect("reduced modulo the order"))
                }
            })
            .collect::<Result<_>>()?;
        let diag: Vec<Cyclotomic> =
            g.parts().iter().zip(&per_part).flat_map(|((_, s), v)| std::iter::repeat_n(v.clone(), s.dim())).collect();
        let m = b.mul(&ScalarMatrix::diagonal(field, &diag))?.mul(&b_inv)?;
        let map = AlgebraMap::from_matrix(alg, m, Provenance::Scaling)?;
        if !crate::autos::is_automorphism(&map) {
            return Err(Error::NotAGrading("scaling map is not an automorphism".into()));
        }
        generators.push(map);
        values.push(per_part);
    }
    Ok(DiagDescription { free_rank: rg.free_rank, torsion: rg.torsion, characters: rg.labels, generators, values })
}

/// Grades by the generators of Diag(Γ).
pub fn regrade_from_diag(g: &Grading) -> Result<Grading> {
    if let super::UniversalGroupResult::NotGroupIndexable { witness } = universal_group(g) {
        return Err(Error::NotGroupIndexable(witness.0, witness.1));
    }
    let diag = diag_group(g)?;
    let candidates: Vec<Vec<Cyclotomic>> = diag
        .values
        .iter()
        .map(|vals| {
            let mut out: Vec<Cyclotomic> = Vec::new();
            for v in vals {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            out
        })
        .collect();
    grade_by(g.algebra(), &diag.generators, &candidates)
}

fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut p = 2u64;
    while out.len() < k {
        if out.iter().all(|q| !p.is_multiple_of(*q)) {
            out.push(p);
        }
        p += 1;
    }
    out
}
