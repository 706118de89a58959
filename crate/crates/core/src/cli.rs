//! The `orderforge` command line.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a checked
//! guarantee fails (a bug); in that case a JSON artifact describing the
//! failure is written next to the report.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dimension::{
    dim_of_with, dim_poset_with, default_kappa_cap, inc_all, inc_min_max, kappa_with, rho_with, IncPairSet, StandardExample,
    DEFAULT_BUDGET,
};
use crate::draw::{emit_drawing, DrawOptions, Format, Overlay};
use crate::error::{Error, Result};
use crate::exposed::{check_rho_kappa_bound, ExposedInstance};
use crate::generators::{doubly_exposed_family, kelly, random_poset, standard_example};
use crate::graph::Graph;
use crate::io::{self, PairsSpec};
use crate::planar::{find_planar_embedding, min_outerplanarity, Embedding};
use crate::poset::Poset;
use crate::reductions::{
    best_component, check_min_max, doubly_exposed_reduce, height_pipeline, link, link_as, min_max_dim, min_max_reduce_drawn,
    min_max_reduce, step_failed, unfold_planar, unfold_sq, DoublyExposedOptions, Drawn, ReductionTrace,
};
use crate::verify::{run_suite, Suite, SuiteReport};

#[derive(Parser, Debug)]
#[command(name = "orderforge", version, about = "Poset dimension, layerings and doubly exposed examples")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Search-node budget for the exact solvers.
    #[arg(long, global = true, env = "ORDERFORGE_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Format of the stdout report.
    #[arg(long = "format", global = true, value_enum, default_value_t = ReportFormat::Json)]
    pub report_format: ReportFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Size, height, extremal elements and cover edges of a poset.
    Info { poset: PathBuf },
    /// Write a generated instance.
    Gen(GenArgs),
    /// Exact dimension of a poset or of a set of incomparable pairs.
    Dim(PairArgs),
    /// Largest standard example among a set of incomparable pairs.
    Rho(PairArgs),
    /// Largest Kelly subposet.
    Kappa {
        poset: PathBuf,
        /// Largest n tried.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Layers of a drawing.
    Layering { graph: PathBuf, embedding: PathBuf },
    /// Layer count of a drawing, or the minimum over all drawings.
    Outerplanarity {
        graph: PathBuf,
        #[arg(long)]
        embedding: Option<PathBuf>,
        /// Enumerate every drawing.
        #[arg(long)]
        exhaustive: bool,
        /// Write the best drawing here.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Run a reduction and write its trace.
    Reduce(ReduceArgs),
    /// Check the structure of a doubly exposed standard example.
    Exposed(ExposedArgs),
    /// DOT or SVG drawing with layer colors and optional overlays.
    Draw(DrawArgs),
    /// Randomized property suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Kelly,
    Sn,
    Random,
    Exposed,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge probability of the random family.
    #[arg(long, default_value_t = 0.35)]
    pub prob: f64,
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
    /// Write a drawing of the cover graph here.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    /// Write the generated pairs here (exposed family).
    #[arg(long)]
    pub pairs: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    pub poset: PathBuf,
    /// `all`, `minmax`, or a pairs file; omitted means the whole poset.
    #[arg(long)]
    pub pairs: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    Minmax,
    Unfold,
    Exposed,
    Height,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    pub poset: PathBuf,
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub pipeline: Pipeline,
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Run the whole exposed construction even when the trivial answer applies.
    #[arg(long)]
    pub force_full: bool,
    /// Write the reduced poset here.
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub out_embedding: Option<PathBuf>,
    #[arg(long)]
    pub out_pairs: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExposedCheck {
    Lemmas,
    Digraph,
    Separated,
    Bound,
}

#[derive(Args, Debug)]
pub struct ExposedArgs {
    pub poset: PathBuf,
    pub embedding: PathBuf,
    #[arg(long)]
    pub pairs: PathBuf,
    #[arg(long, value_enum)]
    pub check: ExposedCheck,
    #[arg(long)]
    pub x0: Option<String>,
    #[arg(long)]
    pub y0: Option<String>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DrawFormat {
    Dot,
    Svg,
}

#[derive(Args, Debug)]
pub struct DrawArgs {
    pub graph: PathBuf,
    pub embedding: PathBuf,
    #[arg(long, value_enum, default_value_t = DrawFormat::Dot)]
    pub output_format: DrawFormat,
    /// Overlay the blue and red trees (needs a poset and `x0`, `y0`).
    #[arg(long)]
    pub trees: bool,
    /// Overlay the path N(a,b), given as `a,b`.
    #[arg(long)]
    pub n_path: Option<String>,
    /// Pairs file supplying `x0`, `y0`.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    #[arg(long)]
    pub x0: Option<String>,
    #[arg(long)]
    pub y0: Option<String>,
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instances per check.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Directory for reproduction files of failures.
    #[arg(long, default_value = ".")]
    pub repro_dir: PathBuf,
}

/// What a subcommand produced.
struct Outcome {
    report: Value,
    /// A checked guarantee failed; the report is the artifact.
    violated: bool,
    /// Raw text for stdout instead of the report.
    raw: Option<String>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, violated: false, raw: None }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Parses `args` (including the program name) and runs; returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Err(e) = check_paths(&cli.command) {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    let result = dispatch(&cli);
    finish(result, &cli, out, err)
}

/// Prints the outcome and maps it to an exit code; invariant violations
/// leave a bug artifact.
fn finish(result: Result<Outcome>, cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match result {
        Ok(o) => {
            let text = match (&o.raw, cli.global.report_format) {
                (Some(raw), _) => raw.clone(),
                (None, ReportFormat::Json) => io::pretty(&o.report),
                (None, ReportFormat::Text) => as_text(&o.report),
            };
            let _ = out.write_all(text.as_bytes());
            if o.violated {
                let _ = writeln!(err, "error: a checked guarantee failed; see the report");
                2
            } else {
                0
            }
        }
        Err(e) if e.is_invariant_violation() => {
            let artifact = artifact_path(&cli.command);
            let body = json!({"error": e.to_string(), "command": format!("{:?}", cli.command)});
            let _ = io::write_text(&artifact, &io::pretty(&body));
            let _ = writeln!(err, "error: {e}\nbug artifact written to {}", artifact.display());
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn as_text(v: &Value) -> String {
    match v {
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        other => format!("{other}\n"),
    }
}

fn artifact_path(c: &Command) -> PathBuf {
    let report = match c {
        Command::Exposed(a) => a.report.clone(),
        Command::Verify(a) => a.report.clone(),
        Command::Reduce(a) => a.trace.clone(),
        _ => None,
    };
    match report {
        Some(p) => {
            let mut s = p.into_os_string();
            s.push(".bug.json");
            PathBuf::from(s)
        }
        None => PathBuf::from("orderforge-bug.json"),
    }
}

/// Output paths must differ from every input path and from each other.
fn check_paths(c: &Command) -> Result<()> {
    let (ins, outs): (Vec<&PathBuf>, Vec<&PathBuf>) = match c {
        Command::Gen(a) => (vec![], [&a.output, &a.embedding, &a.pairs].into_iter().flatten().collect()),
        Command::Outerplanarity { graph, embedding, output, .. } => {
            ([Some(graph), embedding.as_ref()].into_iter().flatten().collect(), output.iter().collect())
        }
        Command::Reduce(a) => (
            [Some(&a.poset), a.embedding.as_ref()].into_iter().flatten().collect(),
            [&a.trace, &a.output, &a.out_embedding, &a.out_pairs].into_iter().flatten().collect(),
        ),
        Command::Exposed(a) => (vec![&a.poset, &a.embedding, &a.pairs], a.report.iter().collect()),
        Command::Draw(a) => ([Some(&a.graph), Some(&a.embedding), a.pairs.as_ref()].into_iter().flatten().collect(), a.output.iter().collect()),
        _ => (vec![], vec![]),
    };
    for (i, o) in outs.iter().enumerate() {
        if ins.contains(o) || outs[..i].contains(o) {
            return Err(Error::Input(format!("output path {} is also used elsewhere", o.display())));
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let budget = cli.global.budget;
    match &cli.command {
        Command::Info { poset } => info(&io::load_poset(poset)?),
        Command::Gen(a) => gen(a, budget),
        Command::Dim(a) => dim(a, budget),
        Command::Rho(a) => {
            let p = io::load_poset(&a.poset)?;
            let pairs = pair_set(&p, a.pairs.as_deref().unwrap_or("all"))?;
            let (rho, se) = rho_with(&p, &pairs, budget)?;
            Ok(Outcome::ok(json!({"rho": rho, "example": se.pairs})))
        }
        Command::Kappa { poset, max } => {
            let p = io::load_poset(poset)?;
            let cap = max.unwrap_or_else(|| default_kappa_cap(&p)).max(3);
            let (k, w) = kappa_with(&p, cap, budget)?;
            Ok(Outcome::ok(json!({"kappa": k, "witness": w})))
        }
        Command::Layering { graph, embedding } => {
            let g = load_graph(graph)?;
            let e = io::load_embedding(embedding, g)?;
            let l = e.layering();
            Ok(Outcome::ok(json!({"count": l.len(), "layers": l.ids(e.graph())})))
        }
        Command::Outerplanarity { graph, embedding, exhaustive, output } => {
            let g = load_graph(graph)?;
            if *exhaustive {
                let m = min_outerplanarity(&g, budget)?;
                if let Some(o) = output {
                    io::write_text(o, &io::embedding_json(&m.embedding))?;
                }
                Ok(Outcome::ok(json!({"k": m.k, "exhaustive": true, "explored": m.explored})))
            } else {
                let path = embedding.as_ref().ok_or_else(|| Error::Input("give --embedding or --exhaustive".into()))?;
                let e = io::load_embedding(path, g)?;
                Ok(Outcome::ok(json!({"k": e.outerplanarity(), "exhaustive": false})))
            }
        }
        Command::Reduce(a) => reduce(a, budget),
        Command::Exposed(a) => exposed(a, budget),
        Command::Draw(a) => draw(a),
        Command::Verify(a) => verify(a, budget),
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    io::parse_graph(&io::read_text(path)?).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn info(p: &Poset) -> Result<Outcome> {
    Ok(Outcome::ok(json!({
        "elements": p.len(),
        "height": if p.is_empty() { 0 } else { p.height()? },
        "minimal": p.mins().len(),
        "maximal": p.maxs().len(),
        "cover_edges": p.covers().len(),
    })))
}

fn gen(a: &GenArgs, budget: u64) -> Result<Outcome> {
    let n = i64::try_from(a.n).unwrap_or(i64::MAX);
    let (p, e, spec): (Poset, Option<Embedding>, Option<PairsSpec>) = match a.family {
        Family::Kelly => {
            let (p, e) = kelly(a.n)?;
            (p, Some(e), None)
        }
        Family::Sn => (standard_example(n)?, None, None),
        Family::Random => {
            if a.n == 0 {
                return Err(Error::NonPositive(0));
            }
            (random_poset(a.seed, a.n, a.prob.clamp(0.0, 1.0)), None, None)
        }
        Family::Exposed => {
            let d = doubly_exposed_family(a.seed, a.n)?;
            let spec = PairsSpec { x0: Some(d.x0.clone()), y0: Some(d.y0.clone()), pairs: d.pairs.to_ids(&d.poset) };
            (d.poset, Some(d.embedding), Some(spec))
        }
    };
    let text = io::poset_json(&p);
    if let Some(path) = &a.embedding {
        let e = match e {
            Some(e) => e,
            None => find_planar_embedding(&p.cover_graph(), budget)?,
        };
        io::write_text(path, &io::embedding_json(&e))?;
    }
    if let Some(path) = &a.pairs {
        let spec = spec.ok_or_else(|| Error::Input("only the exposed family has generated pairs".into()))?;
        io::write_text(path, &io::pretty(&spec))?;
    }
    match &a.output {
        Some(path) => {
            io::write_text(path, &text)?;
            let mut o = info(&p)?;
            o.report["written"] = json!(path.display().to_string());
            Ok(o)
        }
        None => Ok(Outcome { report: Value::Null, violated: false, raw: Some(text) }),
    }
}

fn pair_set(p: &Poset, which: &str) -> Result<IncPairSet> {
    match which {
        "all" => Ok(inc_all(p)),
        "minmax" => Ok(inc_min_max(p)),
        path => IncPairSet::from_ids(p, &io::parse_pairs(&io::read_text(Path::new(path))?)?.pairs),
    }
}

fn dim(a: &PairArgs, budget: u64) -> Result<Outcome> {
    let p = io::load_poset(&a.poset)?;
    let r = match a.pairs.as_deref() {
        None => dim_poset_with(&p, budget)?,
        Some(w) => dim_of_with(&p, &pair_set(&p, w)?, budget)?,
    };
    Ok(Outcome::ok(json!({"d": r.d, "realizer": r.realizer, "nodes": r.nodes})))
}

fn load_drawn(poset: &Path, embedding: &Path) -> Result<Drawn> {
    let p = io::load_poset(poset)?;
    let e = io::load_embedding(embedding, p.cover_graph())?;
    Drawn::new(p, e)
}

fn reduce(a: &ReduceArgs, budget: u64) -> Result<Outcome> {
    let drawn = match &a.embedding {
        Some(e) => Some(load_drawn(&a.poset, e)?),
        None => None,
    };
    let p = match &drawn {
        Some(d) => d.poset.clone(),
        None => io::load_poset(&a.poset)?,
    };
    let need_drawing = || drawn.clone().ok_or_else(|| Error::Input("this pipeline needs --embedding".into()));
    let mut trace = ReductionTrace::default();
    let mut summary = json!({"pipeline": format!("{:?}", a.pipeline).to_lowercase()});
    let mut out_poset: Option<Poset> = None;
    let mut out_embedding: Option<Embedding> = None;
    let mut out_pairs: Option<PairsSpec> = None;
    match a.pipeline {
        Pipeline::Minmax => {
            let all = p.all();
            let (red, e2) = match &drawn {
                Some(d) => {
                    let (r, d2) = min_max_reduce_drawn(d, &all, &all)?;
                    summary["layers"] = json!([d.embedding.outerplanarity(), d2.embedding.outerplanarity()]);
                    (r, Some(d2.embedding))
                }
                None => (min_max_reduce(&p, &all, &all)?, None),
            };
            let bad = check_min_max(&p, &all, &all, &red);
            if !bad.is_empty() {
                return Err(step_failed("min-max-reduction", bad.join("; ")));
            }
            let lhs = budgeted(dim_poset_with(&p, budget).map(|r| r.d))?;
            let rhs = budgeted(min_max_dim(&red.poset, budget))?;
            trace.push(link(
                "min-max-reduction",
                json!({"elements": p.len()}),
                json!({"elements": red.poset.len(), "added": red.added}),
                "dim(P) <= dim_P'(Min P', Max P')",
                lhs,
                rhs,
                |l, r| l <= r,
            )?);
            out_poset = Some(red.poset);
            out_embedding = e2;
        }
        Pipeline::Unfold => match &drawn {
            Some(d) => {
                let up = unfold_planar(d, budget)?;
                trace.push(link(
                    "unfolding-planar",
                    json!({"component": up.component.members, "z": up.z}),
                    json!({"Q": up.q_ids, "side": up.side}),
                    "dim(Min P, Max P) <= 2 dim(Min Q, Max Q)",
                    Some(up.d_p as u64),
                    up.d_q.map(|x| 2 * x as u64),
                    |l, r| l <= r,
                )?);
                out_poset = Some(p.induced(&up.q));
                out_embedding = Some(d.embedding.induced(&up.q));
            }
            None => {
                let c = best_component(&p, budget)?;
                let sub = p.induced(&c.set);
                let x0 = *sub.mins().iter().next().expect("nonempty");
                let r = unfold_sq(&sub, x0, budget)?;
                let s = &r.select;
                if !s.replay_ok {
                    return Err(step_failed("unfolding-select", "L_j, M_j do not reverse every min-max pair"));
                }
                trace.push(link_as(
                    s.d >= 1,
                    "unfolding-select",
                    json!({"component": c.members, "x0": sub.id(x0)}),
                    json!({"i": s.i, "side": format!("{:?}", s.side), "strata_dims": s.dims}),
                    "dim(Min P, Max P) <= 2 d",
                    Some(s.d_main as u64),
                    Some(2 * s.d as u64),
                    |l, r| l <= r,
                )?);
                trace.push(link_as(
                    r.d_q.is_none_or(|dq| dq >= 1),
                    "unfolding-sq",
                    json!({"x0": sub.id(x0)}),
                    json!({"Q": sub.ids_of(&r.q), "S": sub.ids_of(&r.s), "condition": r.condition}),
                    "dim(Min P, Max P) <= 2 dim(Min Q, Max Q)",
                    Some(s.d_main as u64),
                    r.d_q.map(|x| 2 * x as u64),
                    |l, r| l <= r,
                )?);
                out_poset = Some(sub.induced(&r.q));
            }
        },
        Pipeline::Exposed => {
            let d = need_drawing()?;
            let k = d.embedding.outerplanarity();
            let r = doubly_exposed_reduce(&d, k, DoublyExposedOptions { budget, force_full: a.force_full })?;
            summary["k"] = json!(k);
            summary["layers"] = json!(r.layers);
            summary["stub"] = json!(r.stub);
            summary["x0"] = json!(r.x0);
            summary["y0"] = json!(r.y0);
            summary["pairs"] = json!(r.pairs.to_ids(&r.poset));
            trace = r.trace;
            out_pairs = Some(PairsSpec { x0: Some(r.x0), y0: Some(r.y0), pairs: r.pairs.to_ids(&r.poset) });
            out_poset = Some(r.poset);
            out_embedding = Some(r.embedding);
        }
        Pipeline::Height => {
            let d = need_drawing()?;
            let r = height_pipeline(&d, budget)?;
            summary["height"] = json!(r.height);
            summary["q_layers"] = json!(r.q_layers);
            summary["layer_bound"] = json!(r.layer_bound);
            summary["bound"] = json!(r.bound.to_string());
            let violated = !r.layers_ok || r.bound_ok == Some(false);
            trace = r.trace;
            if violated {
                return Err(step_failed("height-pipeline", "layer count or dimension bound exceeded"));
            }
        }
    }
    summary["steps"] = json!(trace.steps.len());
    summary["all_verified"] = json!(trace.all_verified());
    summary["sound"] = json!(trace.sound());
    if let Some(path) = &a.trace {
        io::write_text(path, &io::pretty(&trace))?;
    }
    write_opt(&a.output, out_poset.as_ref().map(io::poset_json))?;
    write_opt(&a.out_embedding, out_embedding.as_ref().map(io::embedding_json))?;
    write_opt(&a.out_pairs, out_pairs.as_ref().map(io::pretty))?;
    Ok(Outcome::ok(summary))
}

fn write_opt(path: &Option<PathBuf>, text: Option<String>) -> Result<()> {
    match (path, text) {
        (Some(p), Some(t)) => io::write_text(p, &t),
        (Some(p), None) => Err(Error::Input(format!("this pipeline produces nothing for {}", p.display()))),
        _ => Ok(()),
    }
}

fn budgeted(r: Result<usize>) -> Result<Option<u64>> {
    match r {
        Ok(d) => Ok(Some(d as u64)),
        Err(Error::BudgetExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `x0`, `y0` from flags, then the pairs file, then the first exterior
/// elements below every `b` and above every `a`.
fn exposing_pair(p: &Poset, e: &Embedding, spec: &PairsSpec, x0: &Option<String>, y0: &Option<String>) -> Result<(String, String)> {
    let pairs = IncPairSet::from_ids(p, &spec.pairs)?;
    let outer = e.outer_vertices();
    let pick = |given: Option<String>, below: bool| -> Result<String> {
        if let Some(g) = given {
            return Ok(g);
        }
        outer
            .iter()
            .copied()
            .find(|&v| pairs.pairs().iter().all(|&(a, b)| if below { p.le(v, b) } else { p.le(a, v) }))
            .map(|v| p.id(v).to_string())
            .ok_or_else(|| Error::Input(format!("no exterior element {} every pair; give --x0/--y0", if below { "below" } else { "above" })))
    };
    let x = pick(x0.clone().or(spec.x0.clone()), true)?;
    let y = pick(y0.clone().or(spec.y0.clone()), false)?;
    Ok((x, y))
}

fn exposed(a: &ExposedArgs, budget: u64) -> Result<Outcome> {
    let d = load_drawn(&a.poset, &a.embedding)?;
    let spec = io::parse_pairs(&io::read_text(&a.pairs)?)?;
    let ip = IncPairSet::from_ids(&d.poset, &spec.pairs)?;
    let (report, violated) = if a.check == ExposedCheck::Bound {
        let r = check_rho_kappa_bound(&d.poset, &d.embedding, &ip, budget)?;
        (to_value(&r), !r.ok())
    } else {
        let (x0, y0) = exposing_pair(&d.poset, &d.embedding, &spec, &a.x0, &a.y0)?;
        let inst = ExposedInstance::new(&d.poset, &d.embedding, &x0, &y0)?;
        let pairs = inst.resolve(&StandardExample { pairs: spec.pairs.clone() })?;
        match a.check {
            ExposedCheck::Lemmas => {
                let r = inst.lemma_predicates(&pairs)?;
                (to_value(&r), !r.ok())
            }
            ExposedCheck::Digraph => {
                let g = inst.digraph(&pairs)?;
                let mut v = to_value(&g);
                v["max_label"] = json!(g.max_label());
                v["largest_class"] = json!(inst.ids(&g.largest_class()));
                (v, g.max_label() > 6)
            }
            ExposedCheck::Separated => {
                let mut v = json!({"size": pairs.len(), "separated": inst.is_separated(&pairs)});
                if pairs.len() > 36 {
                    let n = (pairs.len() - 1) / 36;
                    let s = inst.extract_separated(&pairs, n)?;
                    v["n"] = json!(n);
                    v["extracted"] = json!(inst.ids(&s));
                }
                (v, false)
            }
            ExposedCheck::Bound => unreachable!(),
        }
    };
    if let Some(path) = &a.report {
        io::write_text(path, &io::pretty(&report))?;
    }
    Ok(Outcome { report, violated, raw: None })
}

fn draw(a: &DrawArgs) -> Result<Outcome> {
    let text = io::read_text(&a.graph)?;
    let want_overlay = a.trees || a.n_path.is_some();
    let format = match a.output_format {
        DrawFormat::Dot => Format::Dot,
        DrawFormat::Svg => Format::Svg,
    };
    let title = a.graph.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "G".into());
    let svg = if want_overlay {
        let p = io::parse_poset(&text)?;
        let e = io::load_embedding(&a.embedding, p.cover_graph())?;
        let spec = match &a.pairs {
            Some(path) => io::parse_pairs(&io::read_text(path)?)?,
            None => PairsSpec::default(),
        };
        let (x0, y0) = match (a.x0.clone().or(spec.x0.clone()), a.y0.clone().or(spec.y0.clone())) {
            (Some(x), Some(y)) => (x, y),
            _ => exposing_pair(&p, &e, &spec, &a.x0, &a.y0)?,
        };
        let inst = ExposedInstance::new(&p, &e, &x0, &y0)?;
        let mut overlays = Vec::new();
        if a.trees {
            overlays.extend(Overlay::trees(&inst.poset, &inst.trees));
        }
        if let Some(ab) = &a.n_path {
            let (x, y) = ab.split_once(',').ok_or_else(|| Error::Input("--n-path takes `a,b`".into()))?;
            let np = inst.n_path(inst.poset.require(x)?, inst.poset.require(y)?)?;
            overlays.extend(Overlay::n_path(&inst.poset, &np));
        }
        emit_drawing(&inst.embedding, &DrawOptions { format, title, overlays })?
    } else {
        let g = io::parse_graph(&text)?;
        let e = io::load_embedding(&a.embedding, g)?;
        emit_drawing(&e, &DrawOptions { format, title, overlays: Vec::new() })?
    };
    match &a.output {
        Some(path) => {
            io::write_text(path, &svg)?;
            Ok(Outcome::ok(json!({"written": path.display().to_string(), "bytes": svg.len()})))
        }
        None => Ok(Outcome { report: Value::Null, violated: false, raw: Some(svg) }),
    }
}

fn verify(a: &VerifyArgs, budget: u64) -> Result<Outcome> {
    let suite: Suite = a.suite.parse()?;
    let r = run_suite(suite, a.seed, a.count, budget)?;
    let written = write_repros(&r, &a.suite, &a.repro_dir)?;
    if let Some(path) = &a.report {
        io::write_text(path, &io::pretty(&r))?;
    }
    let summary = json!({
        "suite": a.suite,
        "seed": a.seed,
        "ok": r.ok(),
        "checks": r.checks.iter().map(|c| json!({"name": c.name, "cases": c.cases, "violations": c.violations.len()})).collect::<Vec<_>>(),
        "known_gaps": r.known_gaps.iter().map(|c| json!({"name": c.name, "cases": c.cases, "violations": c.violations.len()})).collect::<Vec<_>>(),
        "repro_files": written,
    });
    Ok(Outcome { report: summary, violated: !r.ok(), raw: None })
}

/// One self-contained file per violation; returns the paths.
fn write_repros(r: &SuiteReport, suite: &str, dir: &Path) -> Result<Vec<String>> {
    let mut written = Vec::new();
    for c in r.checks.iter().filter(|c| !c.ok()) {
        for (i, v) in c.violations.iter().enumerate() {
            let path = dir.join(format!("repro-{}-{}-{}.json", c.name, r.seed, i));
            let body = json!({
                "suite": suite,
                "seed": r.seed,
                "check": c.name,
                "statement": c.statement,
                "detail": v.detail,
                "repro": v.repro,
            });
            io::write_text(&path, &io::pretty(&body))?;
            written.push(path.display().to_string());
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests;
