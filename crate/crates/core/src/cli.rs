//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::autos::AlgebraMap;
use crate::catalog::{build_entry, standard_k_list, ENTRIES};
use crate::error::{Error, Result};
use crate::exactmath::{Field, ScalarMatrix};
use crate::gradings::{
    diag_group, displayed, fingerprint, grade_by, group_name, hierarchy_dot, regrade_from_diag, same_subspaces,
    universal_group, verify_grading, FormKind, Grading, UniversalGroupResult,
};
use crate::io;
use crate::liealg::{make_orthogonal, make_sl, make_symplectic, MatrixLieAlgebra};
use crate::realforms::{
    fixed_point_form, fundamental_method, make_antiauto, real_basis_method, real_killing_signature,
    standard_conjugation, AntiAuto,
};

#[derive(Parser, Debug)]
#[command(name = "gradekit", version, about = "Exact gradings of small complex Lie algebras")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Conductor n of the working field Q(zeta_n).
    #[arg(long, global = true, env = "GRADEKIT_CONDUCTOR", default_value_t = 4,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub conductor: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build sl(m), o_K(m) or sp_K(m).
    Algebra(AlgebraArgs),
    /// List or build catalog entries.
    Catalog(CatalogArgs),
    /// Grade an algebra by a generator file.
    Grade {
        #[arg(long)]
        generators: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the grading axioms.
    Verify {
        #[arg(long)]
        grading: PathBuf,
    },
    /// Universal group of a grading.
    Ugroup {
        #[arg(long)]
        grading: PathBuf,
    },
    /// Diagonal group of a grading and the regrading check.
    Diag {
        #[arg(long)]
        grading: PathBuf,
        /// Write the generators of the diagonal group as a generator file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Equivalence invariants of one or more gradings.
    Fingerprint {
        #[arg(long = "grading", required = true)]
        gradings: Vec<PathBuf>,
    },
    /// Grading displayed on the subalgebra o_K or sp_K.
    Displayed(DisplayedArgs),
    /// Real forms and real gradings.
    Realform {
        #[command(subcommand)]
        command: RealCommand,
    },
    /// DOT graph of the refinement order on a set of gradings.
    Hierarchy {
        /// Grading file, repeatable; the node is named by the file stem
        #[arg(long = "grading")]
        gradings: Vec<PathBuf>,
        /// Catalog entry, repeatable
        #[arg(long = "entry")]
        entries: Vec<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraType {
    Sl,
    O,
    Sp,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    #[arg(long = "type", value_enum)]
    pub kind: AlgebraType,
    #[arg(long)]
    pub size: usize,
    /// Matrix file with K.
    #[arg(long, conflicts_with = "standard")]
    pub form: Option<PathBuf>,
    /// Name of a standard K (identity, antidiagonal, block-symplectic, ...).
    #[arg(long)]
    pub standard: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[arg(long, conflicts_with = "entry")]
    pub list: bool,
    #[arg(long)]
    pub entry: Option<String>,
    #[arg(long, requires = "entry")]
    pub verify: bool,
    /// Write the grading file.
    #[arg(short, long, requires = "entry")]
    pub output: Option<PathBuf>,
    /// Write the generator file, for entries built from generators.
    #[arg(long, requires = "entry")]
    pub generators_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DisplayedArgs {
    #[arg(long)]
    pub grading: PathBuf,
    #[arg(long, conflicts_with = "standard")]
    pub form: Option<PathBuf>,
    #[arg(long)]
    pub standard: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum RealCommand {
    /// Fixed points of J = J0 o h and their Killing signature.
    Fixed {
        #[arg(long)]
        algebra: PathBuf,
        /// Map file with h; J0 alone when omitted.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Real grading from J-fixed bases of the parts of a complex grading.
    Fundamental {
        #[arg(long)]
        grading: PathBuf,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Membership test of h in the finite group generated by a generator file.
    RealBasis {
        #[arg(long)]
        generators: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 4096)]
        bound: usize,
    },
}

/// Parses `args` and runs the command; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

struct Session {
    field: Field,
    json: bool,
}

impl Session {
    fn check(&self, l: &MatrixLieAlgebra) -> Result<()> {
        let n = l.field().conductor();
        if n != self.field.conductor() {
            return Err(Error::ConductorMismatch { left: self.field.conductor(), right: n });
        }
        Ok(())
    }

    fn grading(&self, path: &Path) -> Result<Grading> {
        let g = io::parse_grading(&read(path)?)?;
        self.check(g.algebra())?;
        Ok(g)
    }

    fn algebra(&self, path: &Path) -> Result<MatrixLieAlgebra> {
        let l = io::parse_algebra(&read(path)?)?;
        self.check(&l)?;
        Ok(l)
    }

    fn map(&self, path: &Path) -> Result<AlgebraMap> {
        let g = io::parse_map(&read(path)?)?;
        self.check(g.algebra())?;
        Ok(g)
    }

    fn form(
        &self,
        file: &Option<PathBuf>,
        standard: &Option<String>,
        m: usize,
    ) -> Result<Option<(ScalarMatrix, Option<FormKind>)>> {
        if let Some(path) = file {
            let k = io::parse_matrix(&read(path)?)?;
            if k.field() != &self.field {
                return Err(Error::ConductorMismatch { left: self.field.conductor(), right: k.field().conductor() });
            }
            return Ok(Some((k, None)));
        }
        if let Some(name) = standard {
            let list = standard_k_list(&self.field, m);
            let names: Vec<&str> = list.iter().map(|(n, _, _)| n.as_str()).collect();
            let found = list.iter().find(|(n, _, _)| n == name).ok_or_else(|| {
                Error::InvalidParameter(format!("unknown standard form {name}; available: {}", names.join(", ")))
            })?;
            return Ok(Some((found.1.clone(), Some(found.2))));
        }
        Ok(None)
    }

    fn antiauto(&self, l: &MatrixLieAlgebra, map: &Option<PathBuf>) -> Result<AntiAuto> {
        match map {
            None => standard_conjugation(l),
            Some(path) => {
                let h = self.map(path)?;
                make_antiauto(l, &h)
            }
        }
    }

    fn emit(&self, text: String, value: Value) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(&value).expect("json");
            s.push('\n');
            s
        } else {
            text
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn form_kind(k: &ScalarMatrix) -> FormKind {
    if &k.transpose() == k {
        FormKind::Orthogonal
    } else {
        FormKind::Symplectic
    }
}

fn group_json(r: &UniversalGroupResult) -> Value {
    match r {
        UniversalGroupResult::Group { free_rank, torsion, labels } => json!({
            "indexable": true,
            "group": r.describe(),
            "free_rank": free_rank,
            "torsion": torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "labels": labels.iter().map(|l| l.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        UniversalGroupResult::NotGroupIndexable { witness } => json!({
            "indexable": false,
            "witness": [witness.0, witness.1],
        }),
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let s = Session { field: Field::new(cli.conductor)?, json: cli.json };
    match &cli.command {
        Command::Algebra(a) => cmd_algebra(&s, a),
        Command::Catalog(c) => cmd_catalog(&s, c),
        Command::Grade { generators, output } => {
            let (l, gens) = io::parse_generators(&read(generators)?)?;
            s.check(&l)?;
            let g = grade_by(&l, &gens.maps, &gens.candidates)?;
            let report = verify_grading(&g);
            if let Some(path) = output {
                write(path, &io::write_grading(&g))?;
            }
            Ok(s.emit(
                format!(
                    "algebra: {}\nprofile: {}\nverify: {}\n",
                    l.name(),
                    g.profile_string(),
                    if report.passed() { "pass" } else { "fail" }
                ),
                json!({"algebra": l.name(), "profile": g.profile_string(), "verified": report.passed()}),
            ))
        }
        Command::Verify { grading } => {
            let g = s.grading(grading)?;
            let report = verify_grading(&g);
            let violations: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
            let mut text =
                format!("profile: {}\nverify: {}\n", g.profile_string(), if report.passed() { "pass" } else { "fail" });
            for v in &violations {
                text.push_str(&format!("violation: {v}\n"));
            }
            Ok(s.emit(
                text,
                json!({"profile": g.profile_string(), "verified": report.passed(), "violations": violations}),
            ))
        }
        Command::Ugroup { grading } => {
            let g = s.grading(grading)?;
            let r = universal_group(&g);
            let text = match &r {
                UniversalGroupResult::Group { labels, .. } => {
                    let mut t = format!("group: {}\n", r.describe());
                    for (j, lab) in labels.iter().enumerate() {
                        let l: Vec<String> = lab.iter().map(ToString::to_string).collect();
                        t.push_str(&format!("L{j}: ({})\n", l.join(", ")));
                    }
                    t
                }
                UniversalGroupResult::NotGroupIndexable { witness } => {
                    format!("not group-indexable: subspaces {} and {} would share a label\n", witness.0, witness.1)
                }
            };
            Ok(s.emit(text, group_json(&r)))
        }
        Command::Diag { grading, output } => {
            let g = s.grading(grading)?;
            let d = diag_group(&g)?;
            let regraded = regrade_from_diag(&g)?;
            let matches = same_subspaces(&regraded, &g);
            if let Some(path) = output {
                let set = crate::catalog::GeneratorSet { maps: d.generators.clone(), candidates: vec![] };
                write(path, &io::write_generators(g.algebra(), &set, false))?;
            }
            let group = group_name(d.free_rank, &d.torsion);
            let mut text = format!("diag group: {group}\ngenerators: {}\n", d.generators.len());
            for (i, vals) in d.values.iter().enumerate() {
                let v: Vec<String> = vals.iter().map(ToString::to_string).collect();
                text.push_str(&format!("g{i}: [{}]\n", v.join(", ")));
            }
            text.push_str(&format!("regrade: {}\n", if matches { "matches" } else { "differs" }));
            Ok(s.emit(
                text,
                json!({
                    "group": group,
                    "values": d.values.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "regrade_matches": matches,
                }),
            ))
        }
        Command::Fingerprint { gradings } => {
            let mut text = String::new();
            let mut values = Vec::new();
            for path in gradings {
                let fp = fingerprint(&s.grading(path)?);
                text.push_str(&format!("{}: {fp}\n", path.display()));
                values.push(json!({"file": path.display().to_string(), "fingerprint": fp.to_string()}));
            }
            Ok(s.emit(text, Value::Array(values)))
        }
        Command::Displayed(d) => {
            let g = s.grading(&d.grading)?;
            let (k, kind) = s
                .form(&d.form, &d.standard, g.algebra().ambient_size())?
                .ok_or_else(|| Error::InvalidParameter("displayed needs --form or --standard".into()))?;
            let kind = kind.unwrap_or_else(|| form_kind(&k));
            match displayed(&g, &k, kind)? {
                Some(h) => {
                    if let Some(path) = &d.output {
                        write(path, &io::write_grading(&h))?;
                    }
                    Ok(s.emit(
                        format!("displayed: {}\n", h.profile_string()),
                        json!({"displayed": true, "profile": h.profile_string()}),
                    ))
                }
                None => Ok(s.emit(
                    "not displayed: subspace dimensions do not add up to the subalgebra\n".into(),
                    json!({"displayed": false}),
                )),
            }
        }
        Command::Realform { command } => cmd_realform(&s, command),
        Command::Hierarchy { gradings, entries } => {
            let mut set = Vec::new();
            for path in gradings {
                let name = path.file_stem().map(|x| x.to_string_lossy().into_owned()).unwrap_or_default();
                set.push((name, s.grading(path)?));
            }
            for e in entries {
                set.push((e.clone(), build_entry(&s.field, e)?.grading));
            }
            if set.is_empty() {
                return Err(Error::InvalidParameter("hierarchy needs at least one grading".into()));
            }
            hierarchy_dot(&set)
        }
    }
}

fn cmd_algebra(s: &Session, a: &AlgebraArgs) -> Result<String> {
    let l = match a.kind {
        AlgebraType::Sl => make_sl(&s.field, a.size)?,
        AlgebraType::O | AlgebraType::Sp => {
            let (k, _) = s.form(&a.form, &a.standard, a.size)?.unwrap_or_else(|| {
                let name = if a.kind == AlgebraType::O { "identity" } else { "block-symplectic" };
                let k = standard_k_list(&s.field, a.size)
                    .into_iter()
                    .find(|(n, _, _)| n == name)
                    .map(|(_, k, _)| k)
                    .unwrap_or_else(|| ScalarMatrix::identity(&s.field, a.size));
                (k, None)
            });
            if k.rows() != a.size {
                return Err(Error::DimensionMismatch { expected: a.size, found: k.rows() });
            }
            if a.kind == AlgebraType::O {
                make_orthogonal(&k)?
            } else {
                make_symplectic(&k)?
            }
        }
    };
    if let Some(path) = &a.output {
        write(path, &io::write_algebra(&l))?;
    }
    let jacobi = l.check_jacobi();
    Ok(s.emit(
        format!(
            "algebra: {}\nambient size: {}\ndim: {}\nconductor: {}\njacobi: {}\n",
            l.name(),
            l.ambient_size(),
            l.dim(),
            l.field().conductor(),
            if jacobi { "pass" } else { "fail" }
        ),
        json!({"algebra": l.name(), "ambient_size": l.ambient_size(), "dim": l.dim(),
               "conductor": l.field().conductor(), "jacobi": jacobi}),
    ))
}

fn cmd_catalog(s: &Session, c: &CatalogArgs) -> Result<String> {
    let Some(name) = &c.entry else {
        let mut text = String::new();
        for e in ENTRIES {
            text.push_str(&format!("{}\t{}\t{}\t{}\n", e.name, e.algebra, e.profile, e.summary));
        }
        let values: Vec<Value> = ENTRIES
            .iter()
            .map(|e| json!({"name": e.name, "algebra": e.algebra, "profile": e.profile, "summary": e.summary}))
            .collect();
        return Ok(s.emit(text, Value::Array(values)));
    };
    let built = build_entry(&s.field, name)?;
    let g = &built.grading;
    if let Some(path) = &c.output {
        write(path, &io::write_grading(g))?;
    }
    if let Some(path) = &c.generators_out {
        let gens = built
            .generators
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter(format!("catalog entry {name} is not built from generators")))?;
        write(path, &io::write_generators(g.algebra(), gens, true))?;
    }
    let mut text = format!("entry: {name}\nalgebra: {}\nprofile: {}\n", g.algebra().name(), g.profile_string());
    let mut value = json!({"entry": name, "algebra": g.algebra().name(), "profile": g.profile_string()});
    if c.verify {
        let report = verify_grading(g);
        text.push_str(&format!("verify: {}\n", if report.passed() { "pass" } else { "fail" }));
        for v in &report.violations {
            text.push_str(&format!("violation: {v}\n"));
        }
        value["verified"] = json!(report.passed());
    }
    Ok(s.emit(text, value))
}

fn cmd_realform(s: &Session, c: &RealCommand) -> Result<String> {
    match c {
        RealCommand::Fixed { algebra, map } => {
            let l = s.algebra(algebra)?;
            let j = s.antiauto(&l, map)?;
            let r = fixed_point_form(&j)?;
            let sig = real_killing_signature(&r);
            let (sig_text, sig_value) = match &sig {
                Ok((p, q)) => (format!("({p}, {q})"), json!([p, q])),
                Err(Error::DegenerateKilling { radical }) => {
                    (format!("degenerate (radical {radical})"), json!({"radical": radical}))
                }
                Err(e) => return Err(e.clone()),
            };
            let compact = matches!(sig, Ok((0, _)));
            if s.json {
                let mut v: Value = serde_json::from_str(&io::write_real_algebra(&r)).expect("json");
                v["signature"] = sig_value;
                v["compact"] = json!(compact);
                return Ok(s.emit(String::new(), v));
            }
            Ok(format!(
                "real form of {}\ndim: {}\nkilling signature: {sig_text}\ncompact: {compact}\n",
                l.name(),
                r.dim()
            ))
        }
        RealCommand::Fundamental { grading, map, output } => {
            let g = s.grading(grading)?;
            let j = s.antiauto(g.algebra(), map)?;
            match fundamental_method(&g, &j)? {
                Some(rg) => {
                    if let Some(path) = output {
                        write(path, &io::write_real_grading(&rg))?;
                    }
                    let group = rg.universal_group();
                    Ok(s.emit(
                        format!("real grading: {}\ngroup: {}\n", rg.profile_string(), group.describe()),
                        json!({"real_grading": true, "profile": rg.profile_string(), "group": group_json(&group)}),
                    ))
                }
                None => Ok(s.emit(
                    "no real grading: some subspace has too few J-fixed vectors\n".into(),
                    json!({"real_grading": false}),
                )),
            }
        }
        RealCommand::RealBasis { generators, map, bound } => {
            let (l, gens) = io::parse_generators(&read(generators)?)?;
            s.check(&l)?;
            let h = s.map(map)?;
            if h.algebra() != &l {
                return Err(Error::AlgebraMismatch);
            }
            let member = real_basis_method(&gens.maps, &h, *bound)?;
            Ok(s.emit(format!("member: {member}\n"), json!({"member": member})))
        }
    }
}
