//! Named algebras, generators and gradings that can be built from scratch.

use num_integer::Integer;

use crate::autos::{default_candidates, inner_auto, ratio_candidates, AlgebraMap};
use crate::error::{Error, Result};
use crate::exactmath::{Cyclotomic, Field, ScalarMatrix, Subspace, Vector};
use crate::gradings::{coarsen, displayed, grade_by, FormKind, Grading, Label};
use crate::liealg::{make_orthogonal, make_sl, make_symplectic, AlgebraKind, MatrixLieAlgebra};

/// Commuting automorphisms with eigenvalue candidates for each.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub maps: Vec<AlgebraMap>,
    pub candidates: Vec<Vec<Cyclotomic>>,
}

impl GeneratorSet {
    pub fn grade(&self, algebra: &MatrixLieAlgebra) -> Result<Grading> {
        grade_by(algebra, &self.maps, &self.candidates)
    }
}

/// Generalized Pauli pair: P = diag(1, ω, …, ω^{m−1}), Q the cyclic shift.
pub fn pauli_matrices(field: &Field, m: usize) -> Result<(ScalarMatrix, ScalarMatrix)> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("Pauli matrices need m >= 2, got {m}")));
    }
    let omega = field
        .primitive_root(m as u32)
        .ok_or(Error::ConductorTooSmall { conductor: field.conductor(), needed: field.conductor().lcm(&(m as u32)) })?;
    let diag: Vec<Cyclotomic> = (0..m).map(|k| omega.pow(k as i64).expect("root is nonzero")).collect();
    let p = ScalarMatrix::diagonal(field, &diag);
    let mut q = ScalarMatrix::zeros(field, m, m);
    for i in 0..m {
        q.set(i, (i + 1) % m, field.one());
    }
    Ok((p, q))
}

pub fn pauli_generators(algebra: &MatrixLieAlgebra) -> Result<GeneratorSet> {
    let (p, q) = pauli_matrices(algebra.field(), algebra.ambient_size())?;
    let maps = vec![inner_auto(algebra, &p)?, inner_auto(algebra, &q)?];
    let candidates = maps.iter().map(default_candidates).collect();
    Ok(GeneratorSet { maps, candidates })
}

/// A single Ad_D with D diagonal, generic and compatible with the defining form.
pub fn cartan_generators(algebra: &MatrixLieAlgebra) -> Result<GeneratorSet> {
    let field = algebra.field();
    let m = algebra.ambient_size();
    let primes = first_primes(m);
    let diag: Vec<Cyclotomic> = match algebra.kind() {
        AlgebraKind::SpecialLinear => primes.iter().map(|&p| field.from_int(p)).collect(),
        AlgebraKind::Orthogonal(k) | AlgebraKind::Symplectic(k) => {
            let pairs =
                monomial_pairing(k).ok_or_else(|| Error::NoDiagonalTorus("defining matrix is not monomial".into()))?;
            let cycles: Vec<(usize, usize)> = (0..m).filter_map(|i| (pairs[i] > i).then_some((i, pairs[i]))).collect();
            if cycles.len() != m / 2 {
                return Err(Error::NoDiagonalTorus(format!(
                    "defining matrix pairs {} of {} coordinate pairs; no generic diagonal torus",
                    cycles.len(),
                    m / 2
                )));
            }
            let mut d = vec![field.one(); m];
            for (c, &(i, j)) in cycles.iter().enumerate() {
                d[i] = field.from_int(primes[c]);
                d[j] = field.from_ratio(1, primes[c]);
            }
            d
        }
        AlgebraKind::Span => {
            return Err(Error::NoDiagonalTorus("algebra has no defining form".into()));
        }
    };
    let a = ScalarMatrix::diagonal(field, &diag);
    let map = inner_auto(algebra, &a)?;
    let candidates = vec![ratio_candidates(&diag)?];
    Ok(GeneratorSet { maps: vec![map], candidates })
}

/// For a monomial K, the involution i ↦ column of the nonzero entry in row i.
fn monomial_pairing(k: &ScalarMatrix) -> Option<Vec<usize>> {
    let m = k.rows();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let nz: Vec<usize> = (0..m).filter(|&j| !k.get(i, j).is_zero()).collect();
        if nz.len() != 1 {
            return None;
        }
        out.push(nz[0]);
    }
    Some(out)
}

fn first_primes(k: usize) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(k);
    let mut p = 2;
    while out.len() < k {
        if out.iter().all(|q| p % q != 0) {
            out.push(p);
        }
        p += 1;
    }
    out
}

/// Defining matrices to try with the displayed method.
pub fn standard_k_list(field: &Field, m: usize) -> Vec<(String, ScalarMatrix, FormKind)> {
    let mut out = Vec::new();
    out.push(("identity".to_string(), ScalarMatrix::identity(field, m), FormKind::Orthogonal));
    let mut anti = ScalarMatrix::zeros(field, m, m);
    for i in 0..m {
        anti.set(i, m - 1 - i, field.one());
    }
    out.push(("antidiagonal".to_string(), anti, FormKind::Orthogonal));
    for p in 1..m {
        let d: Vec<Cyclotomic> = (0..m).map(|i| field.from_int(if i < p { 1 } else { -1 })).collect();
        out.push((format!("signature({p},{})", m - p), ScalarMatrix::diagonal(field, &d), FormKind::Orthogonal));
    }
    if m.is_multiple_of(2) {
        let k = m / 2;
        let mut block = ScalarMatrix::zeros(field, m, m);
        let mut anti_skew = ScalarMatrix::zeros(field, m, m);
        let mut pairs = ScalarMatrix::zeros(field, m, m);
        for i in 0..k {
            block.set(i, k + i, field.one());
            block.set(k + i, i, field.from_int(-1));
            anti_skew.set(i, m - 1 - i, field.one());
            anti_skew.set(m - 1 - i, i, field.from_int(-1));
            pairs.set(2 * i, 2 * i + 1, field.one());
            pairs.set(2 * i + 1, 2 * i, field.from_int(-1));
        }
        out.push(("block-symplectic".to_string(), block, FormKind::Symplectic));
        out.push(("antidiagonal-symplectic".to_string(), anti_skew, FormKind::Symplectic));
        out.push(("paired-symplectic".to_string(), pairs, FormKind::Symplectic));
    }
    out
}

fn span_of(algebra: &MatrixLieAlgebra, groups: Vec<Vec<Vector>>, names: &[&str]) -> Result<Grading> {
    let parts = groups
        .into_iter()
        .zip(names)
        .map(|(vs, n)| Ok((Label::Name(n.to_string()), Subspace::canonicalize(algebra.field(), algebra.dim(), vs)?)))
        .collect::<Result<_>>()?;
    Grading::new(algebra, parts)
}

/// trivial, Υ₀, Υ₁, Υ₂ on sl(2) with basis (H, E, F).
pub fn sl2_catalog(field: &Field) -> Result<Vec<(String, Grading)>> {
    let l = make_sl(field, 2)?;
    let v = |xs: [i64; 3]| -> Vector { xs.iter().map(|&x| field.from_int(x)).collect() };
    let (h, e, f) = (v([1, 0, 0]), v([0, 1, 0]), v([0, 0, 1]));
    Ok(vec![
        ("sl2.trivial".into(), span_of(&l, vec![vec![h.clone(), e.clone(), f.clone()]], &["L"])?),
        ("sl2.upsilon0".into(), span_of(&l, vec![vec![h.clone()], vec![e.clone(), f.clone()]], &["H", "E,F"])?),
        ("sl2.upsilon1".into(), span_of(&l, vec![vec![h.clone()], vec![e], vec![f]], &["H", "E", "F"])?),
        (
            "sl2.upsilon2".into(),
            span_of(&l, vec![vec![h], vec![v([0, 1, 1])], vec![v([0, 1, -1])]], &["H", "E+F", "E-F"])?,
        ),
    ])
}

/// Cartan and Pauli lines of a 3-dimensional simple ideal, in its own coordinates.
struct Sl2Lines {
    cartan: [Vector; 3],
    pauli: [Vector; 3],
}

fn sl2_lines(ideal: &MatrixLieAlgebra) -> Result<Sl2Lines> {
    let field = ideal.field();
    let unavailable = |why: &str| Error::Unavailable(ideal.name().to_string(), why.to_string());
    let killing = ideal.killing_matrix();
    let form = |x: &[Cyclotomic], y: &[Cyclotomic]| -> Cyclotomic {
        let kx = killing.mul_vec(x);
        kx.iter().zip(y).fold(field.zero(), |acc, (a, b)| acc + a * b)
    };
    // Pauli: x1, x2 Killing-orthogonal and anisotropic, x3 = [x1, x2]
    let x1 = (0..3)
        .map(|i| ideal.unit_vector(i))
        .find(|x| !form(x, x).is_zero())
        .ok_or_else(|| unavailable("Killing form is isotropic on the basis"))?;
    let orth = ScalarMatrix::from_rows(field, vec![killing.mul_vec(&x1)])?.kernel();
    let mut tries = orth.clone();
    if orth.len() == 2 {
        tries.push(orth[0].iter().zip(&orth[1]).map(|(a, b)| a + b).collect());
    }
    let x2 = tries
        .into_iter()
        .find(|x| !form(x, x).is_zero())
        .ok_or_else(|| unavailable("no anisotropic orthogonal vector"))?;
    let x3 = ideal.bracket_coords(&x1, &x2);

    // Cartan: eigenvectors of ad h, eigenvalues 0, ±λ with 2λ² = tr(ad h²)
    let h = x1.clone();
    let ad = ideal.ad_matrix(&h);
    let lambda_sq = ad.mul(&ad)?.trace() * field.from_ratio(1, 2);
    let lambda =
        lambda_sq.rational_sqrt().ok_or_else(|| unavailable("ad h has eigenvalues outside the working field"))?;
    let eig = |mu: &Cyclotomic| -> Result<Vector> {
        let shifted = ad.sub(&ScalarMatrix::identity(field, 3).scale(mu))?;
        shifted.kernel().into_iter().next().ok_or_else(|| unavailable("missing root vector"))
    };
    let e = eig(&lambda)?;
    let f = eig(&-&lambda)?;
    Ok(Sl2Lines { cartan: [h, e, f], pauli: [x1, x2, x3] })
}

/// Direct-sum gradings of o(4) = sl(2) ⊕ sl(2), with K = I₄.
pub fn o4_catalog(field: &Field) -> Result<Vec<(String, Grading)>> {
    let o4 = make_orthogonal(&ScalarMatrix::identity(field, 4))?;
    let ideals = o4.ideal_decomposition()?;
    if ideals.len() != 2 {
        return Err(Error::IdealSplit(format!("expected two ideals, found {}", ideals.len())));
    }
    let lift = |ideal: &MatrixLieAlgebra, v: &Vector| -> Vector {
        o4.coordinates(&ideal.matrix_of(v)).expect("ideal lies in o(4)")
    };
    let mut cartan = Vec::new();
    let mut pauli = Vec::new();
    for ideal in &ideals {
        let lines = sl2_lines(ideal)?;
        cartan.push(lines.cartan.iter().map(|v| lift(ideal, v)).collect::<Vec<_>>());
        pauli.push(lines.pauli.iter().map(|v| lift(ideal, v)).collect::<Vec<_>>());
    }
    let lines = |vs: &[Vector]| vs.iter().map(|v| vec![v.clone()]).collect::<Vec<_>>();

    let mut refined_spans = lines(&cartan[0]);
    refined_spans.extend(lines(&cartan[1]));
    let refined = span_of(&o4, refined_spans, &["h1", "e1", "f1", "h2", "e2", "f2"])?;
    // merge the two Cartan lines
    let cc = coarsen(&refined, &[vec![0, 3], vec![1], vec![2], vec![4], vec![5]])?;

    let mut cp_spans = lines(&cartan[0]);
    cp_spans.extend(lines(&pauli[1]));
    let cp = span_of(&o4, cp_spans, &["h1", "e1", "f1", "p1", "p2", "p3"])?;

    let mut pp_spans = lines(&pauli[0]);
    pp_spans.extend(lines(&pauli[1]));
    let pp = span_of(&o4, pp_spans, &["p1", "p2", "p3", "q1", "q2", "q3"])?;

    Ok(vec![
        ("o4.cartan_x_cartan".into(), cc),
        ("o4.cartan_x_pauli".into(), cp),
        ("o4.pauli_x_pauli".into(), pp),
        ("o4.cartan_refined".into(), refined),
    ])
}

/// Symplectic form with the standard block shape.
pub fn block_symplectic(field: &Field, m: usize) -> Result<ScalarMatrix> {
    standard_k_list(field, m)
        .into_iter()
        .find(|(n, _, _)| n == "block-symplectic")
        .map(|(_, k, _)| k)
        .ok_or_else(|| Error::InvalidParameter(format!("no symplectic form in odd size {m}")))
}

/// First K in `standard_k_list` displaying the Pauli grading of sl(m) as an sp_K grading.
pub fn displayed_pauli_search(field: &Field, m: usize) -> Result<Option<(String, Grading)>> {
    let sl = make_sl(field, m)?;
    let pauli = pauli_generators(&sl)?.grade(&sl)?;
    for (name, k, kind) in standard_k_list(field, m) {
        if kind != FormKind::Symplectic {
            continue;
        }
        if let Some(g) = displayed(&pauli, &k, kind)? {
            return Ok(Some((name, g)));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryInfo {
    pub name: &'static str,
    pub algebra: &'static str,
    pub profile: &'static str,
    pub summary: &'static str,
}

pub const ENTRIES: &[EntryInfo] = &[
    EntryInfo { name: "sl2.trivial", algebra: "sl(2)", profile: "1 x 3-dim", summary: "trivial grading" },
    EntryInfo {
        name: "sl2.upsilon0",
        algebra: "sl(2)",
        profile: "1 x 2-dim + 1 x 1-dim",
        summary: "Cartan line plus root plane",
    },
    EntryInfo { name: "sl2.upsilon1", algebra: "sl(2)", profile: "3 x 1-dim", summary: "Cartan grading" },
    EntryInfo { name: "sl2.upsilon2", algebra: "sl(2)", profile: "3 x 1-dim", summary: "Pauli grading" },
    EntryInfo { name: "sl3.cartan", algebra: "sl(3)", profile: "1 x 2-dim + 6 x 1-dim", summary: "Cartan grading" },
    EntryInfo {
        name: "sl3.pauli",
        algebra: "sl(3)",
        profile: "8 x 1-dim",
        summary: "Pauli grading (conductor divisible by 3)",
    },
    EntryInfo { name: "sl4.cartan", algebra: "sl(4)", profile: "1 x 3-dim + 12 x 1-dim", summary: "Cartan grading" },
    EntryInfo { name: "sl4.pauli", algebra: "sl(4)", profile: "15 x 1-dim", summary: "Pauli grading" },
    EntryInfo { name: "sp4.cartan", algebra: "sp(4)", profile: "1 x 2-dim + 8 x 1-dim", summary: "Cartan grading" },
    EntryInfo {
        name: "sp4.displayed_pauli",
        algebra: "sp(4)",
        profile: "10 x 1-dim",
        summary: "Pauli grading of sl(4) restricted to a displayed sp_K(4)",
    },
    EntryInfo {
        name: "o4.cartan_x_cartan",
        algebra: "o(4)",
        profile: "1 x 2-dim + 4 x 1-dim",
        summary: "Cartan grading of both ideals",
    },
    EntryInfo {
        name: "o4.cartan_x_pauli",
        algebra: "o(4)",
        profile: "6 x 1-dim",
        summary: "Cartan on one ideal, Pauli on the other",
    },
    EntryInfo {
        name: "o4.pauli_x_pauli",
        algebra: "o(4)",
        profile: "6 x 1-dim",
        summary: "Pauli grading of both ideals",
    },
    EntryInfo {
        name: "o4.cartan_refined",
        algebra: "o(4)",
        profile: "6 x 1-dim",
        summary: "Cartan grading with the Cartan plane split by ideal",
    },
];

pub fn entry_info(name: &str) -> Result<&'static EntryInfo> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// A built catalog entry; generator-based entries keep their generators.
#[derive(Clone, Debug)]
pub struct BuiltEntry {
    pub info: &'static EntryInfo,
    pub grading: Grading,
    pub generators: Option<GeneratorSet>,
}

pub fn build_entry(field: &Field, name: &str) -> Result<BuiltEntry> {
    let info = entry_info(name)?;
    let from_gens = |alg: MatrixLieAlgebra, gens: GeneratorSet| -> Result<BuiltEntry> {
        let grading = gens.grade(&alg)?;
        Ok(BuiltEntry { info, grading, generators: Some(gens) })
    };
    let listed = |list: Vec<(String, Grading)>| -> Result<BuiltEntry> {
        let grading = list.into_iter().find(|(n, _)| n == name).map(|(_, g)| g).expect("listed entry");
        Ok(BuiltEntry { info, grading, generators: None })
    };
    match name {
        "sl2.trivial" | "sl2.upsilon0" | "sl2.upsilon1" | "sl2.upsilon2" => listed(sl2_catalog(field)?),
        "o4.cartan_x_cartan" | "o4.cartan_x_pauli" | "o4.pauli_x_pauli" | "o4.cartan_refined" => {
            listed(o4_catalog(field)?)
        }
        "sl3.cartan" | "sl4.cartan" => {
            let l = make_sl(field, if name == "sl3.cartan" { 3 } else { 4 })?;
            let gens = cartan_generators(&l)?;
            from_gens(l, gens)
        }
        "sl3.pauli" | "sl4.pauli" => {
            let l = make_sl(field, if name == "sl3.pauli" { 3 } else { 4 })?;
            let gens = pauli_generators(&l)?;
            from_gens(l, gens)
        }
        "sp4.cartan" => {
            let l = make_symplectic(&block_symplectic(field, 4)?)?;
            let gens = cartan_generators(&l)?;
            from_gens(l, gens)
        }
        "sp4.displayed_pauli" => match displayed_pauli_search(field, 4)? {
            Some((_, grading)) => Ok(BuiltEntry { info, grading, generators: None }),
            None => Err(Error::Unavailable(
                name.to_string(),
                "no antisymmetric K in the standard list displays sp_K(4) in the Pauli grading of sl(4)".into(),
            )),
        },
        _ => Err(Error::UnknownEntry(name.to_string())),
    }
}
