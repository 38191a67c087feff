//! JSON files with exact rational strings.
//!
//! Writers emit a canonical form (fixed field order, pretty-printed, trailing
//! newline), so parse followed by write reproduces any file written here.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::autos::{inner_auto, outer_auto, AlgebraMap, Provenance};
use crate::catalog::GeneratorSet;
use crate::error::{Error, Result};
use crate::exactmath::{Cyclotomic, Field, Rational, ScalarMatrix, Subspace, Vector};
use crate::gradings::{Grading, Label};
use crate::liealg::{make_orthogonal, make_sl, make_symplectic, AlgebraKind, MatrixLieAlgebra};
use crate::realforms::{RealGrading, RealLieAlgebra};

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct ScalarJson {
    pub conductor: u32,
    pub coeffs: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ScalarJson>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum KindJson {
    SpecialLinear,
    Orthogonal { form: MatrixJson },
    Symplectic { form: MatrixJson },
    Span,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub name: String,
    pub ambient_size: usize,
    pub conductor: u32,
    pub kind: KindJson,
    pub basis: Vec<MatrixJson>,
}

/// `inner` and `outer` carry A or K; other provenances carry the coordinate matrix.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub provenance: String,
    pub matrix: MatrixJson,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct MapFileJson {
    pub algebra: AlgebraJson,
    pub map: MapJson,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsJson {
    pub algebra: AlgebraJson,
    pub generators: Vec<MapJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<Vec<Vec<ScalarJson>>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum LabelJson {
    Eigen(Vec<ScalarJson>),
    Name(String),
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct PartJson {
    pub label: LabelJson,
    pub basis: Vec<Vec<ScalarJson>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct GradingJson {
    pub algebra: AlgebraJson,
    pub parts: Vec<PartJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct RealAlgebraJson {
    pub name: String,
    pub dim: usize,
    /// ad of each basis element in the real basis.
    pub ad: Vec<MatrixJson>,
    pub killing: MatrixJson,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("line {} column {}: {e}", e.line(), e.column())))
}

fn schema(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Schema(format!("{path}: {msg}"))
}

pub fn scalar_json(c: &Cyclotomic) -> ScalarJson {
    ScalarJson { conductor: c.conductor(), coeffs: c.coeffs().iter().map(ToString::to_string).collect() }
}

pub fn parse_scalar(s: &ScalarJson, field: &Field, path: &str) -> Result<Cyclotomic> {
    if s.conductor != field.conductor() {
        return Err(schema(path, format!("conductor {} differs from {}", s.conductor, field.conductor())));
    }
    if s.coeffs.len() != field.degree() {
        return Err(schema(path, format!("expected {} coefficients, found {}", field.degree(), s.coeffs.len())));
    }
    let coeffs = s
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Rational::from_str(c).map_err(|_| schema(&format!("{path}.coeffs[{i}]"), format!("bad rational {c:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    field.from_coeffs(coeffs)
}

pub fn matrix_json(m: &ScalarMatrix) -> MatrixJson {
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.to_rows().iter().map(|r| r.iter().map(scalar_json).collect()).collect(),
    }
}

pub fn parse_matrix_json(m: &MatrixJson, field: &Field, path: &str) -> Result<ScalarMatrix> {
    if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
        return Err(schema(path, format!("entries do not form a {}x{} array", m.rows, m.cols)));
    }
    let rows = m
        .entries
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, s)| parse_scalar(s, field, &format!("{path}.entries[{i}][{j}]")))
                .collect::<Result<Vector>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if m.rows == 0 || m.cols == 0 {
        return Ok(ScalarMatrix::zeros(field, m.rows, m.cols));
    }
    ScalarMatrix::from_rows(field, rows)
}

fn vector_json(v: &[Cyclotomic]) -> Vec<ScalarJson> {
    v.iter().map(scalar_json).collect()
}

fn parse_vector(v: &[ScalarJson], field: &Field, path: &str) -> Result<Vector> {
    v.iter().enumerate().map(|(i, s)| parse_scalar(s, field, &format!("{path}[{i}]"))).collect()
}

/// A standalone matrix file; its conductor is read from the first entry.
pub fn parse_matrix(text: &str) -> Result<ScalarMatrix> {
    let m: MatrixJson = from_json(text)?;
    let n = m.entries.first().and_then(|r| r.first()).map(|s| s.conductor).unwrap_or(1);
    let field = Field::new(n).map_err(|e| schema("entries", e))?;
    parse_matrix_json(&m, &field, "matrix")
}

pub fn write_matrix(m: &ScalarMatrix) -> String {
    to_json(&matrix_json(m))
}

pub fn algebra_json(l: &MatrixLieAlgebra) -> AlgebraJson {
    let kind = match l.kind() {
        AlgebraKind::SpecialLinear => KindJson::SpecialLinear,
        AlgebraKind::Orthogonal(k) => KindJson::Orthogonal { form: matrix_json(k) },
        AlgebraKind::Symplectic(k) => KindJson::Symplectic { form: matrix_json(k) },
        AlgebraKind::Span => KindJson::Span,
    };
    AlgebraJson {
        name: l.name().to_string(),
        ambient_size: l.ambient_size(),
        conductor: l.field().conductor(),
        kind,
        basis: l.basis().iter().map(matrix_json).collect(),
    }
}

pub fn parse_algebra_json(a: &AlgebraJson, path: &str) -> Result<MatrixLieAlgebra> {
    let field = Field::new(a.conductor).map_err(|e| schema(&format!("{path}.conductor"), e))?;
    let basis = a
        .basis
        .iter()
        .enumerate()
        .map(|(i, m)| parse_matrix_json(m, &field, &format!("{path}.basis[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let domain = |e: Error| schema(path, e);
    let built = match &a.kind {
        KindJson::SpecialLinear => Some(make_sl(&field, a.ambient_size).map_err(domain)?),
        KindJson::Orthogonal { form } => {
            let k = parse_matrix_json(form, &field, &format!("{path}.kind.form"))?;
            Some(make_orthogonal(&k).map_err(domain)?)
        }
        KindJson::Symplectic { form } => {
            let k = parse_matrix_json(form, &field, &format!("{path}.kind.form"))?;
            Some(make_symplectic(&k).map_err(domain)?)
        }
        KindJson::Span => None,
    };
    match built {
        Some(l) => {
            if l.basis() != basis.as_slice() {
                return Err(schema(&format!("{path}.basis"), "does not match the standard basis of its kind"));
            }
            Ok(l.renamed(a.name.clone()))
        }
        None => MatrixLieAlgebra::from_basis(a.name.clone(), &field, a.ambient_size, basis).map_err(domain),
    }
}

pub fn write_algebra(l: &MatrixLieAlgebra) -> String {
    to_json(&algebra_json(l))
}

pub fn parse_algebra(text: &str) -> Result<MatrixLieAlgebra> {
    parse_algebra_json(&from_json(text)?, "algebra")
}

pub fn map_json(g: &AlgebraMap) -> MapJson {
    let (tag, m) = match g.provenance() {
        Provenance::Inner(a) => ("inner", a),
        Provenance::Outer(k) => ("outer", k),
        Provenance::Composite => ("composite", g.matrix()),
        Provenance::Scaling => ("scaling", g.matrix()),
        Provenance::User => ("user", g.matrix()),
    };
    MapJson { provenance: tag.into(), matrix: matrix_json(m) }
}

pub fn parse_map_json(m: &MapJson, l: &MatrixLieAlgebra, path: &str) -> Result<AlgebraMap> {
    let x = parse_matrix_json(&m.matrix, l.field(), &format!("{path}.matrix"))?;
    let domain = |e: Error| schema(path, e);
    match m.provenance.as_str() {
        "inner" => inner_auto(l, &x).map_err(domain),
        "outer" => outer_auto(l, &x).map_err(domain),
        tag => {
            let p = match tag {
                "composite" => Provenance::Composite,
                "scaling" => Provenance::Scaling,
                "user" => Provenance::User,
                other => return Err(schema(&format!("{path}.provenance"), format!("unknown provenance {other:?}"))),
            };
            AlgebraMap::from_matrix(l, x, p).map_err(domain)
        }
    }
}

pub fn write_map(g: &AlgebraMap) -> String {
    to_json(&MapFileJson { algebra: algebra_json(g.algebra()), map: map_json(g) })
}

pub fn parse_map(text: &str) -> Result<AlgebraMap> {
    let f: MapFileJson = from_json(text)?;
    let l = parse_algebra_json(&f.algebra, "algebra")?;
    parse_map_json(&f.map, &l, "map")
}

/// Candidates are written only when `with_candidates` is set.
pub fn write_generators(l: &MatrixLieAlgebra, gens: &GeneratorSet, with_candidates: bool) -> String {
    to_json(&GeneratorsJson {
        algebra: algebra_json(l),
        generators: gens.maps.iter().map(map_json).collect(),
        candidates: with_candidates.then(|| gens.candidates.iter().map(|c| vector_json(c)).collect()),
    })
}

/// Generator file; missing candidate lists stay empty so grading falls back to defaults.
pub fn parse_generators(text: &str) -> Result<(MatrixLieAlgebra, GeneratorSet)> {
    let f: GeneratorsJson = from_json(text)?;
    let l = parse_algebra_json(&f.algebra, "algebra")?;
    let maps = f
        .generators
        .iter()
        .enumerate()
        .map(|(i, m)| parse_map_json(m, &l, &format!("generators[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let candidates = match &f.candidates {
        None => vec![],
        Some(cs) => {
            if cs.len() != maps.len() {
                return Err(schema("candidates", "needs one list per generator"));
            }
            cs.iter()
                .enumerate()
                .map(|(i, c)| parse_vector(c, l.field(), &format!("candidates[{i}]")))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok((l, GeneratorSet { maps, candidates }))
}

fn label_json(label: &Label) -> LabelJson {
    match label {
        Label::Eigen(v) => LabelJson::Eigen(vector_json(v)),
        Label::Name(s) => LabelJson::Name(s.clone()),
    }
}

pub fn grading_json(g: &Grading) -> GradingJson {
    GradingJson {
        algebra: algebra_json(g.algebra()),
        parts: g
            .parts()
            .iter()
            .map(|(label, s)| PartJson {
                label: label_json(label),
                basis: s.basis().iter().map(|v| vector_json(v)).collect(),
            })
            .collect(),
    }
}

pub fn write_grading(g: &Grading) -> String {
    to_json(&grading_json(g))
}

/// Loads without checking the grading axioms; see `verify_grading`.
pub fn parse_grading(text: &str) -> Result<Grading> {
    let f: GradingJson = from_json(text)?;
    let l = parse_algebra_json(&f.algebra, "algebra")?;
    let field = l.field();
    let parts = f
        .parts
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let path = format!("parts[{j}]");
            let label = match &p.label {
                LabelJson::Eigen(v) => Label::Eigen(parse_vector(v, field, &format!("{path}.label.eigen"))?),
                LabelJson::Name(s) => Label::Name(s.clone()),
            };
            let basis = p
                .basis
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let v = parse_vector(v, field, &format!("{path}.basis[{i}]"))?;
                    if v.len() != l.dim() {
                        return Err(schema(&format!("{path}.basis[{i}]"), format!("expected {} coordinates", l.dim())));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            let s = Subspace::canonicalize(field, l.dim(), basis).map_err(|e| schema(&path, e))?;
            Ok((label, s))
        })
        .collect::<Result<Vec<_>>>()?;
    Grading::new(&l, parts)
}

pub fn write_real_algebra(r: &RealLieAlgebra) -> String {
    to_json(&RealAlgebraJson {
        name: format!("{}_real", r.parent().name()),
        dim: r.dim(),
        ad: (0..r.dim()).map(|i| matrix_json(r.ad(i))).collect(),
        killing: matrix_json(&r.killing_matrix()),
    })
}

/// The grading of the real form, carried by its rational adjoint algebra.
pub fn write_real_grading(g: &RealGrading) -> String {
    write_grading(&g.grading)
}
