//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use admissible_core::conjectures::{generate_family, FamilySpec};
use admissible_core::root_numbers::archimedean_l_factor;
use admissible_core::{PolarizedGraph, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::complex_file::{load_complex, triple_report};
use crate::graph_file::{load_graph, FileScalar};
use crate::places::{epsilon_report, load_places};
use crate::report::{
    check_entry, csv_record, decompose_entry, header, invariants_entry, BoundKind, CheckStatus, CSV_HEADER,
};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const INTERNAL: i32 = 2;
    pub const VIOLATION: i32 = 3;
}

/// Environment variable naming the default backend (`exact` or `float`).
pub const BACKEND_ENV: &str = "ADMISSIBLE_BACKEND";

#[derive(Parser, Debug)]
#[command(name = "admissible", version, about = "Invariants of polarized metrized graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct BackendArgs {
    /// Exact rational arithmetic.
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Double-precision arithmetic.
    #[arg(long)]
    float: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants, bound reports and decomposition of one or more graphs.
    Invariants {
        #[arg(required = true)]
        files: Vec<String>,
        #[command(flatten)]
        backend: BackendArgs,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// CSV output; float backend only.
        #[arg(long)]
        csv: bool,
        /// Include wall-clock timings (makes output non-deterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Split a graph into bridges and 2-edge-connected pieces.
    Decompose {
        file: String,
        #[command(flatten)]
        backend: BackendArgs,
    },
    /// Check a conjectured bound on a graph or a generated family.
    Check {
        #[arg(required_unless_present = "family", conflicts_with = "family")]
        file: Option<String>,
        /// Family spec such as `chains-of-circles` or `banana:m=3,lengths=unit`.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        bound: BoundArg,
        /// Override the constant on the length of non-separating points, as NUM/DEN.
        #[arg(long)]
        c: Option<String>,
        #[command(flatten)]
        backend: BackendArgs,
        #[arg(long)]
        timing: bool,
    },
    /// Triple pairing on a product complex.
    Triple {
        file: String,
        #[arg(long, default_value_t = 1)]
        level: usize,
        /// Also evaluate the continuous pairing.
        #[arg(long)]
        continuous: bool,
        #[command(flatten)]
        backend: BackendArgs,
    },
    /// Global root number from a list of places.
    Epsilon {
        #[arg(long)]
        places: String,
    },
    /// Archimedean Gamma factor.
    Lfactor {
        #[arg(long)]
        genus: u64,
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum BoundArg {
    Phi,
    Lambda,
    Epsilon,
    Trivial,
}

impl From<BoundArg> for BoundKind {
    fn from(b: BoundArg) -> Self {
        match b {
            BoundArg::Phi => BoundKind::Phi,
            BoundArg::Lambda => BoundKind::Lambda,
            BoundArg::Epsilon => BoundKind::Epsilon,
            BoundArg::Trivial => BoundKind::Trivial,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Backend {
    Exact,
    Float,
}

/// A command failure with its exit code.
struct Failure {
    code: i32,
    messages: Vec<String>,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure {
            code: exit::INPUT,
            messages: vec![msg.into()],
        }
    }
}

struct Output {
    body: String,
    code: i32,
    warnings: Vec<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            code: exit::OK,
            warnings: Vec::new(),
        }
    }
}

fn backend(args: BackendArgs, env: Option<&str>, force_float: bool) -> Result<Backend, Failure> {
    if args.exact {
        return Ok(Backend::Exact);
    }
    if args.float || force_float {
        return Ok(Backend::Float);
    }
    match env.map(str::trim) {
        None | Some("") | Some("exact") => Ok(Backend::Exact),
        Some("float") => Ok(Backend::Float),
        Some(other) => Err(Failure::input(format!(
            "{BACKEND_ENV} must be `exact` or `float`, got `{other}`"
        ))),
    }
}

fn pretty(mut head: Map<String, Value>, body: Value) -> String {
    if let Value::Object(m) = body {
        head.extend(m);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(head)).expect("values serialize");
    s.push('\n');
    s
}

fn load_all<S: FileScalar>(files: &[String]) -> Result<Vec<PolarizedGraph<S>>, Failure> {
    let results: Vec<_> = files.par_iter().map(|f| load_graph::<S>(f)).collect();
    let mut graphs = Vec::with_capacity(files.len());
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(g) => graphs.push(g),
            Err(e) => errors.push(e.to_string()),
        }
    }
    if errors.is_empty() {
        Ok(graphs)
    } else {
        Err(Failure {
            code: exit::INPUT,
            messages: errors,
        })
    }
}

fn invariants<S: FileScalar>(files: &[String], timing: bool) -> Result<Output, Failure> {
    let graphs = load_all::<S>(files)?;
    let results: Vec<_> = files
        .par_iter()
        .zip(graphs.par_iter())
        .map(|(f, g)| {
            let start = Instant::now();
            invariants_entry(f, g).map(|mut o| {
                if timing {
                    o.value["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
                }
                o
            })
        })
        .collect();
    let mut entries = Vec::new();
    let mut internal = Vec::new();
    for r in results {
        let o = r.map_err(Failure::input)?;
        internal.extend(o.internal_errors);
        entries.push(o.value);
    }
    let body = pretty(header("invariants", Some(S::NAME)), json!({"graphs": entries}));
    Ok(Output {
        body,
        code: if internal.is_empty() { exit::OK } else { exit::INTERNAL },
        warnings: internal,
    })
}

fn invariants_csv(files: &[String]) -> Result<Output, Failure> {
    let graphs = load_all::<f64>(files)?;
    let bundles: Vec<_> = graphs
        .par_iter()
        .map(admissible_core::admissible::invariant_bundle)
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(|e| Failure::input(e.to_string()))?;
    for (f, b) in files.iter().zip(bundles) {
        let b = b.map_err(|e| Failure::input(format!("{f}: {e}")))?;
        w.write_record(csv_record(f, &b)).map_err(|e| Failure::input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::input(e.to_string()))?;
    Ok(Output::ok(String::from_utf8(bytes).expect("csv is utf-8")))
}

fn decompose<S: FileScalar>(file: &str) -> Result<Output, Failure> {
    let g = load_graph::<S>(file).map_err(|e| Failure::input(e.to_string()))?;
    let body = decompose_entry(file, &g).map_err(Failure::input)?;
    Ok(Output::ok(pretty(header("decompose", Some(S::NAME)), body)))
}

struct CheckRequest<'a> {
    file: Option<&'a str>,
    family: Option<&'a str>,
    count: usize,
    seed: u64,
    bound: BoundKind,
    c: Option<&'a str>,
    timing: bool,
}

fn check<S: FileScalar>(req: &CheckRequest) -> Result<Output, Failure> {
    let c = match req.c {
        Some(text) => Some(S::from_text(text).map_err(|e| Failure::input(format!("--c: {e}")))?),
        None => None,
    };
    let (graphs, sources): (Vec<PolarizedGraph<S>>, Vec<String>) = match (req.file, req.family) {
        (Some(f), _) => (
            vec![load_graph::<S>(f).map_err(|e| Failure::input(e.to_string()))?],
            vec![f.to_string()],
        ),
        (None, Some(spec)) => {
            let spec = FamilySpec::parse(spec).map_err(|e| Failure::input(e.to_string()))?;
            let gs = generate_family::<S>(&spec, req.count, req.seed).map_err(|e| Failure::input(e.to_string()))?;
            let names = (0..gs.len()).map(|i| format!("{}#{i}", spec.family.name())).collect();
            (gs, names)
        }
        (None, None) => return Err(Failure::input("check needs a file or --family")),
    };
    let results: Vec<_> = graphs
        .par_iter()
        .zip(sources.par_iter())
        .enumerate()
        .map(|(i, (g, src))| {
            let start = Instant::now();
            check_entry(i, src, g, req.bound, c.clone()).map(|(s, mut v)| {
                if req.timing {
                    v["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
                }
                (s, v)
            })
        })
        .collect();
    let mut entries = Vec::new();
    let (mut violations, mut flagged, mut skipped) = (0usize, 0usize, 0usize);
    for r in results {
        let (status, v) = r.map_err(Failure::input)?;
        match status {
            CheckStatus::Violation => violations += 1,
            CheckStatus::Flagged => flagged += 1,
            CheckStatus::Skipped => skipped += 1,
            CheckStatus::Ok => {}
        }
        entries.push(v);
    }
    let mut body = json!({
        "bound": req.bound.as_str(),
        "graphs": entries,
        "summary": {
            "count": graphs.len(),
            "violations": violations,
            "flagged": flagged,
            "skipped": skipped,
        },
    });
    if let Some(c) = &c {
        body["c"] = c.to_json();
    }
    if let Some(f) = req.family {
        body["family"] = json!(f);
        body["seed"] = json!(req.seed);
    }
    Ok(Output {
        body: pretty(header("check", Some(S::NAME)), body),
        code: if violations > 0 { exit::VIOLATION } else { exit::OK },
        warnings: Vec::new(),
    })
}

fn triple<S: FileScalar>(file: &str, level: usize, continuous: bool) -> Result<Output, Failure> {
    if level == 0 {
        return Err(Failure::input("--level must be at least 1"));
    }
    let spec = load_complex::<S>(file).map_err(Failure::input)?;
    let body = triple_report(&spec, level, continuous).map_err(Failure::input)?;
    Ok(Output::ok(pretty(header("triple", Some(S::NAME)), body)))
}

fn dispatch(cli: Cli, env_backend: Option<&str>) -> Result<Output, Failure> {
    match cli.command {
        Command::Invariants {
            files,
            backend: b,
            json: _,
            csv,
            timing,
        } => {
            if csv {
                if b.exact {
                    return Err(Failure::input("CSV output is only available with --float"));
                }
                return invariants_csv(&files);
            }
            match backend(b, env_backend, false)? {
                Backend::Exact => invariants::<Rational>(&files, timing),
                Backend::Float => invariants::<f64>(&files, timing),
            }
        }
        Command::Decompose { file, backend: b } => match backend(b, env_backend, false)? {
            Backend::Exact => decompose::<Rational>(&file),
            Backend::Float => decompose::<f64>(&file),
        },
        Command::Check {
            file,
            family,
            count,
            seed,
            bound,
            c,
            backend: b,
            timing,
        } => {
            let req = CheckRequest {
                file: file.as_deref(),
                family: family.as_deref(),
                count,
                seed,
                bound: bound.into(),
                c: c.as_deref(),
                timing,
            };
            match backend(b, env_backend, false)? {
                Backend::Exact => check::<Rational>(&req),
                Backend::Float => check::<f64>(&req),
            }
        }
        Command::Triple {
            file,
            level,
            continuous,
            backend: b,
        } => match backend(b, env_backend, false)? {
            Backend::Exact => triple::<Rational>(&file, level, continuous),
            Backend::Float => triple::<f64>(&file, level, continuous),
        },
        Command::Epsilon { places } => {
            let ps = load_places(&places).map_err(|e| Failure::input(e.to_string()))?;
            let body = epsilon_report(&ps).map_err(Failure::input)?;
            Ok(Output::ok(pretty(header("epsilon", None), body)))
        }
        Command::Lfactor { genus, s } => {
            let v = archimedean_l_factor(genus, s).map_err(|e| Failure::input(e.to_string()))?;
            let body = json!({
                "genus": genus,
                "s": s,
                "ln_abs": v.ln_abs,
                "sign": v.sign,
                "value": v.value(),
            });
            Ok(Output::ok(pretty(header("lfactor", None), body)))
        }
    }
}

/// Run the tool on `args` (including the program name). `env_backend` is
/// the value of [`BACKEND_ENV`], if set.
pub fn run<I, T>(args: I, env_backend: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, env_backend) {
        Ok(o) => {
            for w in &o.warnings {
                let _ = writeln!(err, "error: {w}");
            }
            let _ = out.write_all(o.body.as_bytes());
            o.code
        }
        Err(f) => {
            for m in &f.messages {
                let _ = writeln!(err, "error: {m}");
            }
            f.code
        }
    }
}
