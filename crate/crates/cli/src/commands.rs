//! Command-line surface and dispatch.

use std::collections::BTreeMap;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hlts_core::bridge::{
    adjacent_hom_lie, check_hom_lie, check_lie_action, check_lie_o_operator, check_post_lie,
    diagram_actions_agree, diagram_check, lts_from_hom_lie, lts_operator, post_lie_from_o,
    post_lts_from_post_lie, theta_from_rho,
};
use hlts_core::cohomology::OperatorComplex;
use hlts_core::deformation::{check_linear_deformation, check_n_order, extend_with, obstruction};
use hlts_core::limits::Limits;
use hlts_core::lts::{check_hom_lts_with, check_lts_morphism, semidirect_product};
use hlts_core::oop::{check_o_homomorphism, check_o_operator, descent_lts, WeightedOOperator};
use hlts_core::post_lts::{adjacent_lts, check_post_lts, check_post_lts_morphism, post_lts_from_o};
use hlts_core::rep::{check_action, check_representation};
use hlts_core::samples::{random_valid_operator, sample_rng};
use hlts_core::{format_rational, parse_rational, Error as CoreError, Matrix, SparseTensor, Q};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::format::{
    parse_document, resolve, tensor_to_raw, to_document, DeformationEntry, Document, FormatError,
    MapEntry, RawMatrix, Workspace,
};
use crate::report::{Report, Status, EXIT_INPUT, EXIT_VIOLATIONS};

#[derive(Debug, Parser)]
#[command(name = "hlts", version, about = "Exact checks and constructions for Hom-Lie triple systems")]
pub struct Cli {
    /// Workspace document; `-` reads standard input.
    #[arg(short, long, global = true)]
    pub input: Option<String>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Overrides the weight of the operator, as an integer or `p/q`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa: Option<String>,

    /// Largest cohomological degree that may be built.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the axiom checker of one workspace entry.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Derive a new structure and print the extended workspace.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Dimensions of cochains, cocycles, coboundaries and cohomology of a map.
    Cohomology {
        map: String,
        #[arg(long)]
        degree: usize,
    },
    /// Deformations of an operator.
    #[command(subcommand)]
    Deform(DeformCmd),
    /// Hom-Lie level comparisons.
    #[command(subcommand)]
    Bridge(BridgeCmd),
    /// Explicit transformations of input brackets.
    #[command(subcommand)]
    Lint(LintCmd),
    /// Print a random workspace with a valid operator.
    Sample {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCmd {
    Lts { name: String },
    Lie { name: String },
    /// The representation underlying an action.
    Rep { action: String },
    Action { name: String },
    /// A weighted O-operator at either level.
    #[command(name = "o-op")]
    OOp { map: String },
    #[command(name = "post-lts")]
    PostLts { name: String },
    #[command(name = "post-lie")]
    PostLie { name: String },
    Morphism(MorphismArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MorphismKind {
    Lts,
    #[value(name = "post-lts")]
    PostLts,
    /// A homomorphism of operators; `--phi` acts on sources, `--phi-g` on targets.
    #[value(name = "o-op")]
    OOp,
}

#[derive(Debug, Args)]
pub struct MorphismArgs {
    #[arg(long, value_enum)]
    pub kind: MorphismKind,
    pub from: String,
    pub to: String,
    /// Matrix as JSON rows, for example `[[1,0],[0,"1/2"]]`.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: String,
    #[arg(long, allow_hyphen_values = true)]
    pub phi_g: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum BuildCmd {
    /// Semidirect product of an action, weighted by `--kappa` (default 0).
    Semidirect {
        action: String,
        #[arg(long)]
        name: Option<String>,
    },
    Descent {
        map: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Adjacent Hom-Lts of a post-Lts, or adjacent Hom-Lie algebra of a post-Lie algebra.
    Adjacent {
        source: String,
        #[arg(long)]
        name: Option<String>,
    },
    #[command(name = "post-from-o")]
    PostFromO {
        map: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Induced triple structure of a Lie algebra, Lie action or Lie-level map.
    #[command(name = "lts-from-lie")]
    LtsFromLie {
        source: String,
        #[arg(long)]
        name: Option<String>,
    },
    #[command(name = "post-lts-from-post-lie")]
    PostLtsFromPostLie {
        source: String,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DeformCmd {
    Check { deformation: String },
    Obstruct { deformation: String },
    Extend {
        deformation: String,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BridgeCmd {
    Diagram { post_lie: String },
}

#[derive(Debug, Subcommand)]
pub enum LintCmd {
    /// Add `[y,x,..] = −[x,y,..]` for every entry whose mirror is missing.
    #[command(name = "complete-skew")]
    CompleteSkew { name: String },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Input(String),
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// What one invocation prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command. `stdin` is
/// read only when the input is `-`.
pub fn run_args<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let loaded = load(&cli, stdin).and_then(|doc| Ok((resolve(&doc)?, doc)));
    let report = match loaded.and_then(|(ws, doc)| dispatch(&cli, &doc, &ws, echo.clone())) {
        Ok(report) => report,
        Err(e) => error_report(echo, e),
    };
    render(&cli, &report)
}

fn render(cli: &Cli, report: &Report) -> Outcome {
    let stdout = match cli.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => match &report.document {
            // Text output of a constructed workspace is the document itself,
            // so it can be redirected into a file; the summary goes to stderr.
            Some(doc) if report.status != Status::Error => {
                let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
                text.push('\n');
                return Outcome {
                    stdout: text,
                    stderr: report.to_text(),
                    code: report.exit_code,
                };
            }
            _ => report.to_text(),
        },
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: report.exit_code,
    }
}

fn error_report(command: Vec<String>, e: CliError) -> Report {
    match e {
        // A structure that fails the checker a construction requires is a
        // finding, not an input error.
        CliError::Core(CoreError::Invalid { what, report }) => {
            let mut r = Report::new(command);
            r.check(what.clone(), &report);
            r.messages.push(format!("{what} failed its axiom check"));
            r.settle();
            debug_assert_eq!(r.exit_code, EXIT_VIOLATIONS);
            r
        }
        other => Report::error(command, other.to_string()),
    }
}

fn load(cli: &Cli, stdin: &mut dyn Read) -> Result<Document, CliError> {
    let text = match cli.input.as_deref() {
        None => String::new(),
        Some("-") => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| input(format!("reading standard input: {e}")))?;
            s
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))?,
    };
    Ok(parse_document(&text)?)
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::from_env();
    if let Some(d) = cli.max_degree {
        l.max_degree = d;
    }
    l
}

fn kappa_override(cli: &Cli) -> Result<Option<Q>, CliError> {
    cli.kappa
        .as_deref()
        .map(|k| parse_rational(k).map_err(|e| input(format!("--kappa {k:?}: {e}"))))
        .transpose()
}

fn parse_matrix(text: &str, what: &str) -> Result<Matrix<Q>, CliError> {
    let raw: RawMatrix =
        serde_json::from_str(text).map_err(|e| input(format!("{what}: {e}")))?;
    let cols = raw.first().map_or(0, Vec::len);
    if raw.iter().any(|r| r.len() != cols) {
        return Err(input(format!("{what}: rows have different lengths")));
    }
    let rows = raw.into_iter().map(|r| r.into_iter().map(|s| s.0).collect()).collect();
    Ok(Matrix::from_rows(rows, cols))
}

fn matrix_json(m: &Matrix<Q>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|c| Value::String(format_rational(c))).collect()))
            .collect(),
    )
}

fn get<'a, T>(map: &'a BTreeMap<String, T>, name: &str, what: &str) -> Result<&'a T, CliError> {
    map.get(name)
        .ok_or_else(|| input(format!("unknown {what} {name:?}")))
}

/// The triple-system operator named `name`, with the weight overridden by
/// `--kappa` when given.
fn lts_map(cli: &Cli, ws: &Workspace, name: &str) -> Result<WeightedOOperator, CliError> {
    match get(&ws.maps, name, "map")? {
        MapEntry::Lts { op, .. } => Ok(match kappa_override(cli)? {
            Some(k) => WeightedOOperator::new(op.action().clone(), op.map().clone(), k)?,
            None => op.clone(),
        }),
        MapEntry::Lie { .. } => Err(input(format!(
            "map {name:?} is Lie-level; this command needs a triple-system operator"
        ))),
    }
}

fn dispatch(cli: &Cli, doc: &Document, ws: &Workspace, echo: Vec<String>) -> Result<Report, CliError> {
    let mut r = Report::new(echo);
    let lim = limits(cli);
    match &cli.command {
        Command::Check(c) => check(cli, ws, c, &lim, &mut r)?,
        Command::Build(b) => build(cli, ws, b, &mut r)?,
        Command::Cohomology { map, degree } => {
            let op = lts_map(cli, ws, map)?;
            let mut l = lim;
            if cli.max_degree.is_none() {
                l.max_degree = l.max_degree.max(*degree);
            }
            let complex = OperatorComplex::with_limits(&op, l)?;
            let dims = complex.cohomology_dims(*degree)?;
            r.quantity("degree", dims.degree);
            r.quantity("dim_c", dims.dim_c);
            r.quantity("dim_z", dims.dim_z);
            r.quantity("dim_b", json!(dims.dim_b));
            r.quantity("dim_h", json!(dims.dim_h));
            r.quantity("regular_h", dims.regular_h);
            r.quantity("regular_g", dims.regular_g);
        }
        Command::Deform(d) => deform(ws, d, &lim, &mut r)?,
        Command::Bridge(BridgeCmd::Diagram { post_lie }) => {
            let p = get(&ws.post_lie, post_lie, "post-Lie algebra")?;
            let report = check_post_lie(p);
            r.check(format!("Hom-post-Lie algebra {post_lie}"), &report);
            if report.pass() {
                r.flag("adjacent brackets commute with the induced triple structures", diagram_check(p)?);
                r.quantity("actions_agree", diagram_actions_agree(p)?);
            }
        }
        Command::Lint(LintCmd::CompleteSkew { name }) => {
            // Edit the document rather than the resolved workspace so that
            // actions declared with "adjoint" follow the completed bracket.
            let mut out = doc.clone();
            let (raw, t) = if let Some(g) = ws.algebras.get(name) {
                (out.algebras.get_mut(name), g.bracket())
            } else if let Some(g) = ws.lie_algebras.get(name) {
                (out.lie_algebras.get_mut(name), g.bracket())
            } else {
                return Err(input(format!("unknown algebra {name:?}")));
            };
            let (completed, added) = complete_skew(t)?;
            raw.expect("resolved entries come from the document").bracket = tensor_to_raw(&completed);
            resolve(&out)?;
            r.quantity("added_entries", added);
            r.document = Some(out);
        }
        Command::Sample { seed, max_dim } => {
            let mut rng = sample_rng(*seed);
            let op = random_valid_operator(&mut rng, (*max_dim).clamp(1, 4));
            let mut out = Workspace::default();
            out.insert_operator("A", "act", "g", "h", op)?;
            r.document = Some(to_document(&out));
        }
    }
    r.settle();
    Ok(r)
}

fn check(cli: &Cli, ws: &Workspace, c: &CheckCmd, lim: &Limits, r: &mut Report) -> Result<(), CliError> {
    match c {
        CheckCmd::Lts { name } => {
            let g = get(&ws.algebras, name, "algebra")?;
            r.check(format!("Hom-Lts {name}"), &check_hom_lts_with(g, lim)?);
        }
        CheckCmd::Lie { name } => {
            let g = get(&ws.lie_algebras, name, "Lie algebra")?;
            r.check(format!("Hom-Lie algebra {name}"), &check_hom_lie(g));
        }
        CheckCmd::Rep { action } => {
            if let Some(a) = ws.actions.get(action) {
                r.check(
                    format!("representation {action}"),
                    &check_representation(a.action.rep())?,
                );
            } else if let Some(a) = ws.lie_actions.get(action) {
                r.check(format!("Lie action {action}"), &check_lie_action(&a.action));
            } else {
                return Err(input(format!("unknown action {action:?}")));
            }
        }
        CheckCmd::Action { name } => {
            if let Some(a) = ws.actions.get(name) {
                r.check(format!("action {name}"), &check_action(&a.action)?);
            } else if let Some(a) = ws.lie_actions.get(name) {
                r.check(format!("Lie action {name}"), &check_lie_action(&a.action));
            } else {
                return Err(input(format!("unknown action {name:?}")));
            }
        }
        CheckCmd::OOp { map } => match get(&ws.maps, map, "map")? {
            MapEntry::Lts { .. } => {
                let op = lts_map(cli, ws, map)?;
                r.quantity("kappa", format_rational(op.kappa()));
                r.check(format!("weighted O-operator {map}"), &check_o_operator(&op)?);
            }
            MapEntry::Lie {
                map: a,
                lie_action,
                kappa,
                ..
            } => {
                let kappa = kappa_override(cli)?.unwrap_or_else(|| kappa.clone());
                r.quantity("kappa", format_rational(&kappa));
                r.check(
                    format!("Lie-level weighted O-operator {map}"),
                    &check_lie_o_operator(a, lie_action, &kappa)?,
                );
            }
        },
        CheckCmd::PostLts { name } => {
            let p = get(&ws.post_lts, name, "post-Lts")?;
            r.check(format!("Hom-post-Lts {name}"), &check_post_lts(p)?);
        }
        CheckCmd::PostLie { name } => {
            let p = get(&ws.post_lie, name, "post-Lie algebra")?;
            r.check(format!("Hom-post-Lie algebra {name}"), &check_post_lie(p));
        }
        CheckCmd::Morphism(m) => {
            let phi = parse_matrix(&m.phi, "--phi")?;
            let title = format!("morphism {} -> {}", m.from, m.to);
            let report = match m.kind {
                MorphismKind::Lts => check_lts_morphism(
                    get(&ws.algebras, &m.from, "algebra")?,
                    get(&ws.algebras, &m.to, "algebra")?,
                    &phi,
                )?,
                MorphismKind::PostLts => check_post_lts_morphism(
                    get(&ws.post_lts, &m.from, "post-Lts")?,
                    get(&ws.post_lts, &m.to, "post-Lts")?,
                    &phi,
                )?,
                MorphismKind::OOp => {
                    let phi_g = m
                        .phi_g
                        .as_deref()
                        .ok_or_else(|| input("operator homomorphisms need --phi-g"))?;
                    let phi_g = parse_matrix(phi_g, "--phi-g")?;
                    check_o_homomorphism(&lts_map(cli, ws, &m.from)?, &lts_map(cli, ws, &m.to)?, &phi, &phi_g)?
                }
            };
            r.check(title, &report);
        }
    }
    Ok(())
}

fn output_name(name: &Option<String>, source: &str, suffix: &str) -> String {
    name.clone().unwrap_or_else(|| format!("{source}_{suffix}"))
}

fn fresh<T>(map: &BTreeMap<String, T>, name: &str) -> Result<(), CliError> {
    Ok(crate::format::fresh(map, name)?)
}

fn build(cli: &Cli, ws: &Workspace, b: &BuildCmd, r: &mut Report) -> Result<(), CliError> {
    let mut out = ws.clone();
    match b {
        BuildCmd::Semidirect { action, name } => {
            let act = get(&ws.actions, action, "action")?;
            let kappa = kappa_override(cli)?.unwrap_or_else(Q::zero);
            let name = output_name(name, action, "semidirect");
            fresh(&out.algebras, &name)?;
            out.algebras.insert(name.clone(), semidirect_product(&act.action, &kappa)?);
            r.messages.push(format!("built algebra {name}"));
        }
        BuildCmd::Descent { map, name } => {
            let name = output_name(name, map, "descent");
            match get(&ws.maps, map, "map")? {
                MapEntry::Lts { .. } => {
                    fresh(&out.algebras, &name)?;
                    out.algebras.insert(name.clone(), descent_lts(&lts_map(cli, ws, map)?)?);
                    r.messages.push(format!("built algebra {name}"));
                }
                MapEntry::Lie {
                    map: a,
                    lie_action,
                    kappa,
                    ..
                } => {
                    let kappa = kappa_override(cli)?.unwrap_or_else(|| kappa.clone());
                    fresh(&out.lie_algebras, &name)?;
                    out.lie_algebras
                        .insert(name.clone(), post_lie_from_o(a, lie_action, &kappa)?.descent);
                    r.messages.push(format!("built Lie algebra {name}"));
                }
            }
        }
        BuildCmd::Adjacent { source, name } => {
            let name = output_name(name, source, "adjacent");
            if let Some(p) = ws.post_lts.get(source) {
                fresh(&out.algebras, &name)?;
                out.algebras.insert(name.clone(), adjacent_lts(p)?);
                r.messages.push(format!("built algebra {name}"));
            } else if let Some(p) = ws.post_lie.get(source) {
                fresh(&out.lie_algebras, &name)?;
                out.lie_algebras.insert(name.clone(), adjacent_hom_lie(p)?);
                r.messages.push(format!("built Lie algebra {name}"));
            } else {
                return Err(input(format!("unknown post-structure {source:?}")));
            }
        }
        BuildCmd::PostFromO { map, name } => {
            let name = output_name(name, map, "post");
            match get(&ws.maps, map, "map")? {
                MapEntry::Lts { .. } => {
                    fresh(&out.post_lts, &name)?;
                    out.post_lts.insert(name.clone(), post_lts_from_o(&lts_map(cli, ws, map)?)?);
                    r.messages.push(format!("built post-Lts {name}"));
                }
                MapEntry::Lie {
                    map: a,
                    lie_action,
                    kappa,
                    ..
                } => {
                    let kappa = kappa_override(cli)?.unwrap_or_else(|| kappa.clone());
                    let induced = post_lie_from_o(a, lie_action, &kappa)?;
                    fresh(&out.post_lie, &name)?;
                    out.post_lie.insert(name.clone(), induced.post_lie);
                    r.messages.push(format!("built post-Lie algebra {name}"));
                }
            }
        }
        BuildCmd::LtsFromLie { source, name } => {
            let name = output_name(name, source, "lts");
            if let Some(g) = ws.lie_algebras.get(source) {
                out.insert_algebra(&name, lts_from_hom_lie(g)?)?;
                r.messages.push(format!("built algebra {name}"));
            } else if let Some(a) = ws.lie_actions.get(source) {
                let act = theta_from_rho(&a.action)?;
                let (g, h) = (format!("{}_lts", a.algebra), format!("{}_lts", a.module));
                out.insert_action(&name, &g, &h, act)?;
                r.messages.push(format!("built action {name} of {g} on {h}"));
            } else if let Some(MapEntry::Lie {
                action,
                map: a,
                lie_action,
                kappa,
            }) = ws.maps.get(source)
            {
                let kappa = kappa_override(cli)?.unwrap_or_else(|| kappa.clone());
                let op = lts_operator(a, lie_action, &kappa)?;
                let entry = &ws.lie_actions[action];
                let (g, h) = (format!("{}_lts", entry.algebra), format!("{}_lts", entry.module));
                let act_name = format!("{action}_lts");
                if out.actions.get(&act_name).map(|e| &e.action) != Some(op.action()) {
                    out.insert_action(&act_name, &g, &h, op.action().clone())?;
                }
                fresh(&out.maps, &name)?;
                r.quantity("kappa", format_rational(op.kappa()));
                out.maps.insert(name.clone(), MapEntry::Lts { action: act_name, op });
                r.messages.push(format!("built operator {name}"));
            } else {
                return Err(input(format!(
                    "unknown Lie algebra, Lie action or Lie-level map {source:?}"
                )));
            }
        }
        BuildCmd::PostLtsFromPostLie { source, name } => {
            let p = get(&ws.post_lie, source, "post-Lie algebra")?;
            let name = output_name(name, source, "lts");
            fresh(&out.post_lts, &name)?;
            out.post_lts.insert(name.clone(), post_lts_from_post_lie(p)?);
            r.messages.push(format!("built post-Lts {name}"));
        }
    }
    r.document = Some(to_document(&out));
    Ok(())
}

fn deformation<'a>(ws: &'a Workspace, name: &str) -> Result<&'a DeformationEntry, CliError> {
    get(&ws.deformations, name, "deformation")
}

fn deform(ws: &Workspace, d: &DeformCmd, lim: &Limits, r: &mut Report) -> Result<(), CliError> {
    match d {
        DeformCmd::Check { deformation: name } => {
            let d = &deformation(ws, name)?.deformation;
            r.quantity("order", d.order());
            if d.order() == 1 {
                r.check(
                    format!("linear deformation {name}"),
                    &check_linear_deformation(d.op(), d.term(1))?,
                );
            } else {
                r.check(format!("{}-order deformation {name}", d.order()), &check_n_order(d));
            }
        }
        DeformCmd::Obstruct { deformation: name } => {
            let d = &deformation(ws, name)?.deformation;
            let obs = obstruction(d)?;
            r.quantity("order", d.order());
            r.quantity(
                "obstruction",
                serde_json::to_value(tensor_to_raw(&SparseTensor::from_dense(obs.tensor())))
                    .expect("entries serialize"),
            );
            r.quantity("obstruction_is_zero", obs.is_zero());
            let vanishes = extend_with(d, *lim)?.is_some();
            r.quantity("class_vanishes", vanishes);
        }
        DeformCmd::Extend { deformation: name, name: out_name } => {
            let entry = deformation(ws, name)?;
            let d = &entry.deformation;
            match extend_with(d, *lim)? {
                Some(x) => {
                    let next = d.extended(x.clone())?;
                    r.quantity("term", matrix_json(&x));
                    r.quantity("order", next.order());
                    let out_name = output_name(out_name, name, "extended");
                    let mut out = ws.clone();
                    fresh(&out.deformations, &out_name)?;
                    out.deformations.insert(
                        out_name.clone(),
                        DeformationEntry {
                            map: entry.map.clone(),
                            deformation: next,
                        },
                    );
                    r.messages.push(format!("built deformation {out_name}"));
                    r.document = Some(to_document(&out));
                }
                None => {
                    r.quantity("term", Value::Null);
                    r.messages.push(format!("[Obs] nonzero in H²: {name} does not extend to order {}", d.order() + 1));
                }
            }
        }
    }
    Ok(())
}

/// Adds the mirror `[y,x,..] = −[x,y,..]` of every entry whose mirror is
/// absent. Present mirrors with the wrong value are left alone so the
/// checker still reports them.
fn complete_skew(t: &SparseTensor) -> Result<(SparseTensor, usize), CliError> {
    let mut out = t.clone();
    let mut added = 0;
    let keys: Vec<(Vec<usize>, Q)> = t.entries().map(|(k, c)| (k.to_vec(), c.clone())).collect();
    let present: std::collections::BTreeSet<Vec<usize>> = keys.iter().map(|(k, _)| k.clone()).collect();
    for (k, c) in &keys {
        let mut mirror = k.clone();
        mirror.swap(0, 1);
        if mirror != *k && !present.contains(&mirror) && !c.is_zero() {
            let (args, l) = mirror.split_at(mirror.len() - 1);
            out.add_entry(args, l[0], -c.clone())?;
            added += 1;
        }
    }
    Ok((out, added))
}

pub fn main_outcome() -> Outcome {
    run_args(std::env::args_os(), &mut std::io::stdin())
}
