//! Command implementations behind the `realfib` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use realfib_core::catalog::{Catalog, SurfaceModel};
use realfib_core::conic::{
    analyze, candidate_divisor, construct_section, discriminant, necbundle_conditions,
    surface_class_identities, Decision, Smoothness,
};
use realfib_core::lattice::{enumerator, enumerator_names, ClassEnumerator, ClassVector};
use realfib_core::schema::{self, int_json};
use realfib_core::search::{check_conditions, render_table, search_with, table1_with, ConditionReport};
use realfib_core::topology::{
    default_hyperplane, hyperbolicity_check, linking_number, GreatSubsphere, HyperbolicityVerdict,
};
use realfib_core::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "realfib", version, about = "Real-fibered morphisms of real del Pezzo surfaces and conic bundles")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Lattice enumeration strategy: ellipsoid, box or box:<radius>
    #[arg(long, global = true, default_value = "ellipsoid")]
    pub strategy: String,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the classification table
    Table1,
    /// List the catalog surfaces with their real bases
    Surfaces,
    /// Search for admissible divisors on one surface
    Enumerate { surface: String },
    /// Check the necessary conditions for one divisor
    #[command(allow_negative_numbers = true)]
    Check {
        surface: String,
        /// coefficients in the real basis of the surface
        coeffs: Vec<i64>,
        /// read the divisor from a JSON file instead
        #[arg(long, conflicts_with = "coeffs")]
        divisor: Option<PathBuf>,
    },
    /// Conic bundle computations
    #[command(subcommand)]
    Conic(ConicCommand),
    /// Sample lines through a point to test hyperbolicity of a hypersurface in P^3
    Hyp {
        file: PathBuf,
        /// center, as comma-separated rationals
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sum the linking numbers of PL components with a subspace E
    Link {
        cycles: PathBuf,
        subspace: PathBuf,
        #[arg(long)]
        degree: i64,
        /// normal of a hyperplane through E; defaults to the first normal of E
        #[arg(long, allow_hyphen_values = true)]
        plane: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConicCommand {
    /// The six conditions for D = aF - bK
    #[command(allow_negative_numbers = true)]
    Conditions { s: i64, a: i64, b: i64 },
    /// The candidate divisor (s-2)F - K
    #[command(allow_negative_numbers = true)]
    Candidate { s: i64 },
    /// Discriminant of a conic matrix
    Discriminant { file: PathBuf },
    /// Singular fibers of a conic matrix
    Analyze { file: PathBuf },
    /// Diagonal section with prescribed real singular fibers
    Construct { file: PathBuf },
    /// Chow ring identities for X = 2H + aE with first Chern class c
    #[command(allow_negative_numbers = true)]
    Chow { a: i64, c: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Refuted,
    Invalid,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Refuted => "refuted",
            Status::Invalid => "invalid",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        [Status::Ok, Status::Failed, Status::Refuted, Status::Invalid]
            .into_iter()
            .find(|st| st.as_str() == s)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed | Status::Refuted => 1,
            Status::Invalid => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub text: String,
}

impl CommandResult {
    fn new(status: Status, mut payload: Value, text: String) -> Self {
        if let Value::Object(map) = &mut payload {
            map.insert("status".into(), json!(status.as_str()));
        }
        CommandResult {
            status,
            payload,
            text,
        }
    }

    pub fn invalid(err: &Error) -> Self {
        Self::new(
            Status::Invalid,
            json!({ "error": err.to_string() }),
            format!("error: {err}"),
        )
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.payload).expect("JSON value"),
        }
    }
}

fn pass(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Failed
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    schema::parse(&text)
}

pub fn run(cli: &Cli) -> CommandResult {
    dispatch(cli).unwrap_or_else(|e| CommandResult::invalid(&e))
}

fn dispatch(cli: &Cli) -> Result<CommandResult> {
    let strategy = || enumerator(&cli.strategy);
    match &cli.command {
        Command::Table1 => cmd_table1(&*strategy()?),
        Command::Surfaces => cmd_surfaces(),
        Command::Enumerate { surface } => cmd_enumerate(surface, &*strategy()?),
        Command::Check {
            surface,
            coeffs,
            divisor,
        } => cmd_check(surface, coeffs, divisor.as_deref()),
        Command::Conic(c) => cmd_conic(c),
        Command::Hyp {
            file,
            point,
            trials,
            seed,
        } => cmd_hyp(file, point, *trials, *seed),
        Command::Link {
            cycles,
            subspace,
            degree,
            plane,
        } => cmd_link(cycles, subspace, *degree, plane.as_deref()),
    }
}

pub fn cmd_table1(strategy: &dyn ClassEnumerator) -> Result<CommandResult> {
    let rows = table1_with(&Catalog::builtin(), strategy)?;
    let payload = Value::Array(rows.iter().map(schema::table_row_to_json).collect());
    Ok(CommandResult::new(Status::Ok, payload, render_table(&rows).trim_end().to_string()))
}

fn cmd_surfaces() -> Result<CommandResult> {
    let mut items = Vec::new();
    let mut text = String::new();
    for m in Catalog::builtin().models()? {
        text.push_str(&format!(
            "{:<10} degree {}  s {}  r {}  basis [{}]\n",
            m.name,
            m.degree,
            m.s,
            m.r,
            m.labels().join(", ")
        ));
        items.push(json!({
            "name": m.name,
            "degree": m.degree,
            "s": m.s,
            "r": m.r,
            "basis": m.labels(),
            "canonical": m.canonical.coeffs().iter().map(int_json).collect::<Vec<_>>(),
        }));
    }
    text.push_str(&format!("strategies: {}", enumerator_names().join(", ")));
    Ok(CommandResult::new(Status::Ok, json!({ "surfaces": items }), text))
}

fn report_json(model: &SurfaceModel, d: &ClassVector, r: &ConditionReport) -> Value {
    let opt = |x: &Option<_>| x.as_ref().map_or(Value::Null, int_json);
    json!({
        "divisor": schema::divisor_to_json(model.labels(), d),
        "text": d.render(model.labels()),
        "conditions": {
            "c1": r.c1, "c2": r.c2, "c3": r.c3, "c4": r.c4, "c5": r.c5,
        },
        "self_intersection": int_json(&r.self_intersection),
        "k_degree": int_json(&r.k_degree),
        "genus": opt(&r.genus),
        "ell": opt(&r.ell),
        "very_ample": r.very_ample.map_or(Value::Null, |v| json!(v.to_string())),
        "first_failure": r.first_failure(),
    })
}

fn report_text(model: &SurfaceModel, d: &ClassVector, r: &ConditionReport) -> String {
    let mut out = format!(
        "D = {} on {}  (D.D = {}, D.K = {})\n",
        d.render(model.labels()),
        model.name,
        r.self_intersection,
        r.k_degree
    );
    for (i, c) in r.conditions().iter().enumerate() {
        out.push_str(&format!("  condition {}: {}\n", i + 1, mark(*c)));
    }
    if let (Some(g), Some(l)) = (&r.genus, &r.ell) {
        out.push_str(&format!("  l(D) = {l}  g = {g}"));
        if let Some(v) = r.very_ample {
            out.push_str(&format!("  very ample: {v}"));
        }
    } else {
        out.pop();
    }
    out
}

pub fn cmd_enumerate(surface: &str, strategy: &dyn ClassEnumerator) -> Result<CommandResult> {
    let model = Catalog::builtin().get(surface)?;
    let found = search_with(&model, strategy)?;
    let mut items = Vec::new();
    let mut text = Vec::new();
    for d in &found {
        let r = check_conditions(&model, d)?;
        items.push(report_json(&model, d, &r));
        text.push(format!(
            "{}  l(D) = {}  g = {}  very ample: {}",
            d.render(model.labels()),
            r.ell.clone().unwrap_or_default(),
            r.genus.clone().unwrap_or_default(),
            r.very_ample.map_or("-".to_string(), |v| v.to_string())
        ));
    }
    if text.is_empty() {
        text.push(format!("{surface}: no admissible divisor"));
    }
    let payload = json!({
        "surface": model.name,
        "basis": model.labels(),
        "strategy": strategy.name(),
        "divisors": items,
    });
    Ok(CommandResult::new(Status::Ok, payload, text.join("\n")))
}

pub fn cmd_check(surface: &str, coeffs: &[i64], divisor: Option<&Path>) -> Result<CommandResult> {
    let model = Catalog::builtin().get(surface)?;
    let d = match divisor {
        Some(path) => {
            let (basis, d) = schema::divisor_from_json(&read_json(path)?)?;
            if basis != model.labels() {
                return Err(Error::Input(format!(
                    "basis {basis:?} does not match {:?}",
                    model.labels()
                )));
            }
            d
        }
        None => {
            if coeffs.len() != model.real_rank() {
                return Err(Error::DimensionMismatch {
                    expected: model.real_rank(),
                    found: coeffs.len(),
                });
            }
            ClassVector::from_i64(coeffs)
        }
    };
    let r = check_conditions(&model, &d)?;
    Ok(CommandResult::new(
        pass(r.passes()),
        report_json(&model, &d, &r),
        report_text(&model, &d, &r),
    ))
}

fn cmd_conic(c: &ConicCommand) -> Result<CommandResult> {
    match c {
        ConicCommand::Conditions { s, a, b } => {
            let rep = necbundle_conditions(*s, *a, *b);
            let mut text = format!("D = {a}F - {b}K with s = {s}");
            for (i, c) in rep.conditions.iter().enumerate() {
                text.push_str(&format!("\n  condition {}: {}", i + 1, mark(*c)));
            }
            let payload = json!({ "s": s, "a": a, "b": b, "conditions": rep.conditions });
            Ok(CommandResult::new(pass(rep.passes()), payload, text))
        }
        ConicCommand::Candidate { s } => {
            let cand = candidate_divisor(*s)?;
            let text = format!(
                "D = {}F - K  genus {}  l(D) >= {}",
                cand.a, cand.genus, cand.ell_bound
            );
            let payload = json!({
                "s": s,
                "a": cand.a,
                "b": cand.b,
                "genus": int_json(&cand.genus),
                "ell_bound": int_json(&cand.ell_bound),
            });
            Ok(CommandResult::new(Status::Ok, payload, text))
        }
        ConicCommand::Discriminant { file } => {
            let m = schema::conic_from_json(&read_json(file)?)?;
            let d = discriminant(&m);
            let factored = d.factor().map(|f| f.to_string());
            let text = factored.clone().unwrap_or_else(|| d.to_string());
            let payload = json!({
                "discriminant": schema::form_to_json(&d),
                "expanded": d.to_string(),
                "factored": factored,
            });
            Ok(CommandResult::new(Status::Ok, payload, text))
        }
        ConicCommand::Analyze { file } => {
            let m = schema::conic_from_json(&read_json(file)?)?;
            let a = analyze(&m)?;
            let smooth = match a.smoothness {
                Smoothness::Smooth => "smooth",
                Smoothness::Singular => "singular",
                Smoothness::NecessaryOnly => "necessary condition only",
            };
            let ample = match a.o1_very_ample {
                Decision::Yes => "yes",
                Decision::Undecided => "undecided",
            };
            let factored = a.discriminant.factor().map(|f| f.to_string());
            let text = format!(
                "discriminant {}\nsingular fibers: {} total, {} real\nsquarefree: {}\ns = {}\nsmoothness: {smooth}\nO(1) very ample: {ample}",
                factored.clone().unwrap_or_else(|| a.discriminant.to_string()),
                a.total_fibers,
                a.real_fibers,
                a.squarefree,
                a.s.map_or("-".into(), |s| s.to_string()),
            );
            let payload = json!({
                "discriminant": schema::form_to_json(&a.discriminant),
                "factored": factored,
                "total": a.total_fibers,
                "real": a.real_fibers,
                "infinity": a.discriminant.infinity_multiplicity(),
                "squarefree": a.squarefree,
                "s": a.s,
                "smoothness": smooth,
                "o1_very_ample": ample,
            });
            Ok(CommandResult::new(pass(a.squarefree), payload, text))
        }
        ConicCommand::Construct { file } => {
            let v = read_json(file)?;
            let (splitting, roots) = schema::section_spec_from_json(&v)?;
            let m = construct_section(splitting, roots)?;
            let a = analyze(&m)?;
            let text = format!(
                "splitting {:?}\n{}\ns = {}",
                m.splitting(),
                (0..3)
                    .map(|i| format!("p{} = {}", i + 1, m.entry(i, i)))
                    .collect::<Vec<_>>()
                    .join("\n"),
                a.s.map_or("-".into(), |s| s.to_string()),
            );
            let payload = json!({
                "matrix": schema::conic_to_json(&m),
                "real": a.real_fibers,
                "s": a.s,
            });
            Ok(CommandResult::new(pass(a.squarefree), payload, text))
        }
        ConicCommand::Chow { a, c } => {
            let ids = surface_class_identities(*a, *c)?;
            let text = format!(
                "K_X^2 = {}  s = {}  O(1)|_X = {}F + {}K",
                ids.kx2, ids.s, ids.x, ids.y
            );
            let payload = json!({
                "KX2": int_json(&ids.kx2),
                "s": int_json(&ids.s),
                "x": int_json(&ids.x),
                "y": int_json(&ids.y),
            });
            Ok(CommandResult::new(Status::Ok, payload, text))
        }
    }
}

fn cmd_hyp(file: &Path, point: &str, trials: usize, seed: u64) -> Result<CommandResult> {
    let spec = schema::hypersurface_from_json(&read_json(file)?)?;
    let e = schema::parse_point(point)?;
    let e: [_; 4] = e
        .try_into()
        .map_err(|_| Error::Input("the center needs four coordinates".into()))?;
    let center: Vec<String> = e.iter().map(schema::rational_string).collect();
    let verdict = hyperbolicity_check(&spec, &e, trials, seed)?;
    Ok(match verdict {
        HyperbolicityVerdict::Refuted { trial, witness } => {
            let w: Vec<String> = witness.iter().map(schema::rational_string).collect();
            CommandResult::new(
                Status::Refuted,
                json!({ "verdict": "refuted", "trial": trial, "witness": w, "center": center, "seed": seed }),
                format!("refuted on trial {trial}: the line through ({}) has nonreal points", w.join(", ")),
            )
        }
        HyperbolicityVerdict::Supported {
            trials,
            boundary_contacts,
        } => CommandResult::new(
            Status::Ok,
            json!({
                "verdict": "supported",
                "trials": trials,
                "boundary_contacts": boundary_contacts,
                "center": center,
                "seed": seed,
            }),
            format!("supported: {trials} lines all real ({boundary_contacts} with boundary contact)"),
        ),
    })
}

fn cmd_link(cycles: &Path, subspace: &Path, degree: i64, plane: Option<&str>) -> Result<CommandResult> {
    let components = schema::cycles_from_json(&read_json(cycles)?)?;
    let e = schema::subspace_from_json(&read_json(subspace)?)?;
    let l = match plane {
        Some(p) => GreatSubsphere::new(e.ambient(), vec![schema::parse_point(p)?])?,
        None => default_hyperplane(&e),
    };
    let mut lks = Vec::new();
    for c in &components {
        lks.push(linking_number(c, &e, &l)?);
    }
    let total: i64 = lks.iter().map(|x| x.abs()).sum();
    let holds = total == degree;
    let text = format!(
        "linking numbers {:?}\nsum |lk| = {total}, degree {degree}: {holds}",
        lks
    );
    let payload = json!({
        "linking_numbers": lks,
        "sum": total,
        "degree": degree,
        "criterion": holds,
    });
    Ok(CommandResult::new(pass(holds), payload, text))
}
