//! `newton-contact`: Newton polyhedra, nondegeneracy verdicts and contact orders from the command line.
//!
//! Exit codes: 0 on success, 2 when a verdict is Unknown, 1 on errors.

mod diagram;
mod manifest;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use newton_core::classify::classify;
use newton_core::contact::order_of_contact_with;
use newton_core::hypersurface::{
    compute_type, improve_coordinate, improve_until_nondegenerate, normalize, rho1_on_coordinate, AscentStop, ModelHypersurface,
    TypeOptions,
};
use newton_core::nondegen::{check_all, CheckOptions, Grid, SearchOptions, Status};
use newton_core::oracle::{sup_contact_lower_bound, SearchConfig};
use newton_core::polyhedron::Polyhedron;
use newton_core::{parse, parse_auto, GaussianRational, JetCurve, MixedPolynomial};
use serde_json::{json, Value};

use manifest::{render, sha256_hex, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "newton-contact", version, about = "Newton polyhedra, nondegeneracy and contact orders of mixed polynomials")]
struct Cli {
    /// Output format; defaults to json (text for selftest).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the main output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for searches (also NEWTON_CONTACT_THREADS); 0 picks the CPU count.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Polynomial file: expression text, or the JSON serialization.
    #[arg(short, long, conflicts_with = "expr", required_unless_present = "expr")]
    file: Option<PathBuf>,
    /// Inline expression instead of a file.
    #[arg(short, long)]
    expr: Option<String>,
    /// Number of variables; inferred from the highest `zk` (plus `w`) when omitted.
    #[arg(long)]
    nvars: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct CheckArgs {
    /// Component bound for grouping representatives.
    #[arg(long, default_value_t = 12)]
    max_exp: u32,
    #[arg(long, default_value = "wide")]
    grid: Grid,
    /// Seed for the witness refinement starts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Treat F as plurisubharmonic (enables the pluriharmonic-face rule).
    #[arg(long)]
    assert_psh: bool,
}

impl CheckArgs {
    fn options(&self) -> CheckOptions {
        CheckOptions {
            search: SearchOptions { grid: self.grid, seed: self.seed, ..SearchOptions::default() },
            max_exponent: self.max_exp,
            assert_psh: self.assert_psh,
            ..CheckOptions::default()
        }
    }
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    /// Largest exponent of the monomial curve family.
    #[arg(long)]
    oracle_max_exp: Option<u32>,
    /// `default`, `small`, or a comma-separated list such as `1,-1,i,1/2`.
    #[arg(long)]
    palette: Option<String>,
    #[arg(long)]
    jet_degree: Option<u32>,
    #[arg(long)]
    max_curves: Option<usize>,
    /// Only immersed curves (some component of order one).
    #[arg(long)]
    reg_only: bool,
}

impl OracleArgs {
    fn config(&self, base: SearchConfig) -> Result<SearchConfig> {
        let mut cfg = base;
        if let Some(m) = self.oracle_max_exp {
            cfg.max_exponent = m;
        }
        if let Some(p) = &self.palette {
            cfg.palette = match p.as_str() {
                "default" => SearchConfig::default_palette(),
                "small" => SearchConfig::small().palette,
                list => list
                    .split(',')
                    .map(|s| s.trim().parse::<GaussianRational>().map_err(|e| anyhow!("palette entry `{s}`: {e}")))
                    .collect::<Result<_>>()?,
            };
        }
        if let Some(d) = self.jet_degree {
            cfg.jet_degree = d;
        }
        if let Some(m) = self.max_curves {
            cfg.max_curves = m;
        }
        cfg.reg_only |= self.reg_only;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical expansion of a polynomial.
    Parse(Input),
    /// Vertices, facets and face lattice of the Newton polyhedron.
    Polyhedron(Input),
    /// Newton diagram as JSON, with optional SVG (two variables) and CSV files.
    Diagram {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Axis intercepts ρ_j; for a defining function, ρ₁ of its model.
    Rho(Input),
    /// All faces with normals, levels and regularity.
    Faces(Input),
    /// Face part F_κ, selected by vertices or normal; the principal part when neither is given.
    Part {
        #[command(flatten)]
        input: Input,
        /// Vertices as `a,b;c,d`.
        #[arg(long, conflicts_with = "normal")]
        face: Option<String>,
        /// Normal as `a,b`.
        #[arg(long)]
        normal: Option<String>,
    },
    /// Order of contact along a curve, e.g. `--curve "(t^2, t^3)"`.
    Contact {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        curve: String,
    },
    /// Nondegeneracy verdict with certificate or witness.
    Nondegen {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Types of the origin on a model hypersurface.
    Type {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        check: CheckArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Ascend through coordinate changes until F is nondegenerate.
        #[arg(long)]
        improve: bool,
        /// Run the contact oracle even when the verdict settles the type.
        #[arg(long)]
        oracle_bounds: bool,
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Bring a defining function to the form Re(w) + F(z, z̄).
    Normalize(Input),
    /// Coordinate changes raising ρ₁ while F is degenerate.
    Improve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        check: CheckArgs,
        /// Apply a single step only.
        #[arg(long)]
        single: bool,
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Structural classification of F (or of the model F of a defining function).
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Lower bound for the supremum of contact orders over a curve family.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        max_exp: u32,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Run the built-in fixture table.
    Selftest,
}

struct Loaded {
    poly: MixedPolynomial,
    digest: String,
}

fn load(input: &Input) -> Result<Loaded> {
    let text = match (&input.file, &input.expr) {
        (Some(path), _) => std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        (None, Some(e)) => e.clone(),
        (None, None) => bail!("give --file or --expr"),
    };
    let body = text.trim();
    let poly = if body.starts_with('{') {
        MixedPolynomial::from_json(body)?
    } else {
        match input.nvars {
            Some(n) => parse(body, n)?,
            None => parse_auto(body)?,
        }
    };
    Ok(Loaded { poly, digest: sha256_hex(text.as_bytes()) })
}

/// A defining function carries a linear term; anything else is taken to be F itself.
fn is_surface(p: &MixedPolynomial) -> bool {
    p.terms().any(|(m, _)| m.degree() == 1)
}

struct Outcome {
    result: Value,
    text: String,
    config: Value,
    permutation: Option<Vec<usize>>,
    outputs: Vec<String>,
    unknown: bool,
}

impl Outcome {
    fn new(result: Value, text: String) -> Self {
        Outcome { result, text, config: json!({}), permutation: None, outputs: Vec::new(), unknown: false }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| anyhow!("`{x}`: {e}"))).collect()
}

fn model_of(p: &MixedPolynomial) -> Result<ModelHypersurface> {
    Ok(normalize(p)?)
}

fn run(cli: &Cli) -> Result<(Outcome, Option<String>)> {
    let mut digest = None;
    let mut load_in = |i: &Input| -> Result<MixedPolynomial> {
        let l = load(i)?;
        digest = Some(l.digest);
        Ok(l.poly)
    };
    let out = match &cli.command {
        Command::Parse(i) => {
            let p = load_in(i)?;
            let text = format!("{p}\n");
            Outcome::new(json!({"nvars": p.nvars(), "text": p.to_string(), "polynomial": p, "real": p.is_real()}), text)
        }
        Command::Polyhedron(i) => {
            let p = Polyhedron::from_poly(&load_in(i)?);
            let text = format!("{} vertices, {} facets, {} faces\n", p.vertices().len(), p.facets().len(), p.faces().len());
            Outcome::new(to_value(&p), text)
        }
        Command::Diagram { input, svg, csv } => {
            let p = Polyhedron::from_poly(&load_in(input)?);
            let mut outputs = Vec::new();
            if let Some(path) = svg {
                std::fs::write(path, diagram::svg(&p).map_err(|e| anyhow!(e))?)?;
                outputs.push(path.display().to_string());
            }
            if let Some(path) = csv {
                std::fs::write(path, diagram::csv(&p))?;
                outputs.push(path.display().to_string());
            }
            let faces: Vec<_> = p.bounded_faces().into_iter().cloned().collect();
            let result = json!({"vertices": p.vertices(), "bounded_faces": faces, "rho": p.rho()});
            let text = faces.iter().map(|f| format!("{:?}\n", f.vertices)).collect();
            Outcome { outputs, ..Outcome::new(result, text) }
        }
        Command::Rho(i) => {
            let f = load_in(i)?;
            if is_surface(&f) {
                let rep = rho1_on_coordinate(&model_of(&f)?);
                let text = format!("rho1 = {}\n", rep.rho1);
                Outcome { permutation: Some(rep.permutation.clone()), ..Outcome::new(to_value(&rep), text) }
            } else {
                let p = Polyhedron::from_poly(&f);
                let rho = p.rho();
                let rho1 = rho.iter().max().cloned();
                let text = format!("rho = [{}]\n", rho.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "));
                Outcome::new(json!({"rho": rho, "rho1": rho1, "convenient": p.convenient()}), text)
            }
        }
        Command::Faces(i) => {
            let p = Polyhedron::from_poly(&load_in(i)?);
            let mut rows = Vec::new();
            let mut text = String::new();
            for f in p.faces() {
                let regular = if f.bounded { Some(p.regular_face(f)?) } else { None };
                text.push_str(&format!("dim {} normal {:?} level {} vertices {:?}\n", f.dim, f.normal, f.level, f.vertices));
                rows.push(json!({"face": f, "regular": regular}));
            }
            Outcome::new(Value::Array(rows), text)
        }
        Command::Part { input, face, normal } => {
            let f = load_in(input)?;
            let p = Polyhedron::from_poly(&f);
            let (kappa, part) = match (face, normal) {
                (Some(v), _) => {
                    let verts: Vec<Vec<i64>> = v.split(';').map(parse_ints).collect::<Result<_>>()?;
                    let k = p.find_face(&verts).ok_or_else(|| anyhow!("no face with vertices {verts:?}"))?;
                    (Some(k.clone()), f.face_part(k)?)
                }
                (None, Some(a)) => {
                    let k = p.face_of_normal(&parse_ints(a)?)?;
                    (Some(k.clone()), f.face_part(k)?)
                }
                (None, None) => (None, f.principal_part()),
            };
            let text = format!("{part}\n");
            Outcome::new(json!({"face": kappa, "part": part, "text": part.to_string()}), text)
        }
        Command::Contact { input, curve } => {
            let f = load_in(input)?;
            let gamma = JetCurve::parse(curve)?;
            let rep = order_of_contact_with(&Polyhedron::from_poly(&f), &f, &gamma)?;
            let text = format!("O = {}, d = {}\n", rep.contact_order, rep.distance);
            Outcome { config: json!({"curve": gamma}), ..Outcome::new(to_value(&rep), text) }
        }
        Command::Nondegen { input, check } => {
            let opts = check.options();
            let v = check_all(&load_in(input)?, &opts)?;
            let mut text = format!("{:?}\n", v.status);
            if let Some(w) = &v.witness {
                text.push_str(&format!("witness {} on {:?}\n", w.curve_text, w.face.vertices));
            }
            Outcome { config: to_value(&opts), unknown: v.status == Status::Unknown, ..Outcome::new(to_value(&v), text) }
        }
        Command::Type { input, check, oracle, improve, oracle_bounds, cap } => {
            let m = model_of(&load_in(input)?)?;
            let opts = TypeOptions {
                check: check.options(),
                oracle: oracle.config(SearchConfig::small())?,
                oracle_when_nondegenerate: *oracle_bounds,
            };
            let config = json!({"type": opts, "improve": improve, "cap": cap});
            let (report, result) = if *improve {
                let a = improve_until_nondegenerate(&m, &opts, *cap)?;
                (a.report.clone(), to_value(&a))
            } else {
                let t = compute_type(&m, &opts)?;
                (t.clone(), to_value(&t))
            };
            let delta = report.delta1.as_ref().map_or("unset".to_string(), |d| d.to_string());
            let mut text = format!(
                "rho1 = {}, {:?}, delta1 = {}, regular lb = {}, lb = {}\n",
                report.rho1, report.verdict.status, delta, report.delta1_reg_lb, report.delta1_lb
            );
            for n in &report.notes {
                text.push_str(&format!("note: {n}\n"));
            }
            Outcome {
                config,
                permutation: Some(report.permutation.clone()),
                unknown: report.verdict.status == Status::Unknown,
                ..Outcome::new(result, text)
            }
        }
        Command::Normalize(i) => {
            let m = model_of(&load_in(i)?)?;
            let mut text: String = m.changes.iter().map(|c| format!("{c}\n")).collect();
            text.push_str(&format!("F = {}\n", m.f));
            Outcome::new(json!({"model": m, "f_text": m.f.to_string()}), text)
        }
        Command::Improve { input, check, single, cap } => {
            let m = model_of(&load_in(input)?)?;
            let opts = check.options();
            if *single {
                let step = improve_coordinate(&m, &opts)?;
                let text = match &step {
                    Some(s) => format!("{}: rho1 {} -> {}\n", s.change, s.rho1_before, s.rho1_after),
                    None => "no qualifying witness\n".to_string(),
                };
                Outcome { config: json!({"check": opts, "single": true}), ..Outcome::new(to_value(&step), text) }
            } else {
                let topts = TypeOptions { check: opts, ..TypeOptions::default() };
                let a = improve_until_nondegenerate(&m, &topts, *cap)?;
                let mut text: String =
                    a.steps.iter().map(|s| format!("{}: rho1 {} -> {}\n", s.change, s.rho1_before, s.rho1_after)).collect();
                text.push_str(&format!("stopped: {:?}\n", a.stopped));
                Outcome {
                    config: json!({"type": topts, "cap": cap}),
                    permutation: Some(a.report.permutation.clone()),
                    unknown: a.stopped == AscentStop::Unknown,
                    ..Outcome::new(to_value(&a), text)
                }
            }
        }
        Command::Classify { input, check } => {
            let p = load_in(input)?;
            let f = if is_surface(&p) { model_of(&p)?.f } else { p };
            let opts = check.options();
            let c = classify(&f, check.assert_psh, &opts)?;
            let text = format!(
                "rotation invariant {}, {} bounded facets, {:?}, type-four form {:?}\n",
                c.rotation_invariant, c.bounded_facets, c.nondegeneracy, c.type4_form
            );
            Outcome { config: to_value(&opts), unknown: c.nondegeneracy == Status::Unknown, ..Outcome::new(to_value(&c), text) }
        }
        Command::Oracle { input, max_exp, oracle } => {
            let f = load_in(input)?;
            let base = SearchConfig { max_exponent: *max_exp, ..SearchConfig::default() };
            let cfg = oracle.config(base)?;
            let rep = sup_contact_lower_bound(&f, &cfg)?;
            let best = rep.argmax.as_ref().map_or("-".to_string(), |c| c.to_string());
            let text = format!("best {} at {}, infinite flag {}\n", rep.best, best, rep.infinite_flag);
            Outcome { config: to_value(&cfg), ..Outcome::new(to_value(&rep), text) }
        }
        Command::Selftest => {
            let rows = selftest::run();
            let text = selftest::table(&rows);
            let failed = rows.iter().any(|r| !r.pass);
            let out = Outcome::new(to_value(&rows), text);
            if failed {
                emit(cli, &out, None)?;
                bail!("selftest failed");
            }
            out
        }
    };
    Ok((out, digest))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Parse(_) => "parse",
        Command::Polyhedron(_) => "polyhedron",
        Command::Diagram { .. } => "diagram",
        Command::Rho(_) => "rho",
        Command::Faces(_) => "faces",
        Command::Part { .. } => "part",
        Command::Contact { .. } => "contact",
        Command::Nondegen { .. } => "nondegen",
        Command::Type { .. } => "type",
        Command::Normalize(_) => "normalize",
        Command::Improve { .. } => "improve",
        Command::Classify { .. } => "classify",
        Command::Oracle { .. } => "oracle",
        Command::Selftest => "selftest",
    }
}

fn emit(cli: &Cli, out: &Outcome, digest: Option<String>) -> Result<()> {
    let default = if matches!(cli.command, Command::Selftest) { Format::Text } else { Format::Json };
    let body = match cli.format.unwrap_or(default) {
        Format::Text => out.text.clone(),
        Format::Json => {
            let m = RunManifest {
                command: command_name(&cli.command).into(),
                input_sha256: digest,
                config: out.config.clone(),
                version: env!("CARGO_PKG_VERSION").into(),
                permutation: out.permutation.clone(),
                outputs: out.outputs.clone(),
            };
            render(&m, &out.result)
        }
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn uses_workers(c: &Command) -> bool {
    matches!(
        c,
        Command::Nondegen { .. }
            | Command::Oracle { .. }
            | Command::Type { .. }
            | Command::Improve { .. }
            | Command::Classify { .. }
            | Command::Selftest
    )
}

fn workers(cli: &Cli) -> Result<usize> {
    if !uses_workers(&cli.command) {
        return Ok(1);
    }
    if let Some(w) = cli.workers {
        return Ok(w);
    }
    match std::env::var("NEWTON_CONTACT_THREADS") {
        Ok(v) => v.trim().parse().map_err(|_| anyhow!("NEWTON_CONTACT_THREADS must be a number, got `{v}`")),
        Err(_) => Ok(0),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = workers(&cli).and_then(|n| {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| anyhow!(e))?;
        let (out, digest) = run(&cli)?;
        emit(&cli, &out, digest)?;
        Ok(out.unknown)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
