// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::sections::{elliptic_section_bound, hyperbolic_section_bound, max_section_points};
use crate::analysis::{
    designed_distance, min_distance_exact, run_suite, twisted_distance_bounds, CheckReport, Choice, Context,
    ParamReport, Selection, DEFAULT_BUDGET, SUITES,
};
use crate::codes::{
    bch_b, bch_b_ext, bidegree_code, elliptic_code, hyperbolic_code, segre_code, twisted_code, LinearCode,
};
use crate::error::{Error, Result};
use crate::geometry::{segre_variety, Form, ProjectivePoint, QuadricSpec};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variety {
    Hyperbolic,
    Elliptic,
    Segre,
    Twisted,
    /// The cyclic code `B(s)` over F_{q^d}.
    Bch,
    /// Its subfield subcode `B0(s)`.
    Bch0,
    /// `B^ext(s)` over F_{q^d}.
    BchExt,
    /// Its subfield subcode `B0^ext(s)`.
    Bch0Ext,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum DMode {
    #[default]
    Exhaustive,
    Designed,
    Bounds,
    Skip,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, Args)]
pub struct GlobalArgs {
    /// Order of the base field.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Number of copies of P^1.
    #[arg(long, global = true)]
    pub d: Option<u32>,
    /// Degree of the evaluated forms.
    #[arg(long, global = true)]
    pub s: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub variety: Option<Variety>,
    /// Bidegree `a,b` on the hyperbolic quadric.
    #[arg(long, global = true, value_parser = parse_pair)]
    pub bidegree: Option<(u32, u32)>,
    #[arg(long, global = true, value_enum, default_value_t = DMode::Exhaustive)]
    pub dmode: DMode,
    /// Largest number of scalar classes, or column subsets, an exhaustive search may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Modulus of F_q, constant term first, e.g. `2,1,1`.
    #[arg(long, global = true, value_delimiter = ',', num_args = 1)]
    pub modulus: Option<Vec<u32>>,
    /// Use the second irreducible modulus and the last primitive element.
    #[arg(long, global = true)]
    pub alternate: bool,
    /// Record elapsed times in reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Build a code and print it.
    Build,
    /// Length, dimension and minimum distance information.
    Params,
    /// Run a verification suite, or `all`.
    Verify { suite: String },
    /// Largest number of points on a degree-s section.
    Search,
    /// Count rational points of a variety, or of a form's zeros on it.
    Count {
        /// A form whose zeros on the variety are counted.
        #[arg(long)]
        form: Option<String>,
        /// A quadric surface to use instead of `--variety`.
        #[arg(long)]
        quadric: Option<String>,
    },
    /// Print the generator matrix, or a parity-check matrix.
    Export {
        #[arg(long)]
        parity: bool,
    },
}

#[derive(Clone, Debug, Parser)]
#[command(name = "quadricode", version, about = "Evaluation codes on quadrics and twisted Segre varieties")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_list(text: &str) -> std::result::Result<Vec<u32>, String> {
    text.split(',').map(|x| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

fn parse_pair(text: &str) -> std::result::Result<(u32, u32), String> {
    match parse_list(text)?.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err("expected `a,b`".into()),
    }
}

/// Exit status and the text to print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn context(g: &GlobalArgs) -> Context {
    Context {
        choice: if g.alternate { Choice::Alternate } else { Choice::Default },
        budget: g.budget,
        seed: g.seed,
        timings: g.timings,
        modulus: g.modulus.clone(),
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::Invalid(format!("--{flag} is required")))
}

fn variety(g: &GlobalArgs) -> Variety {
    g.variety.unwrap_or(Variety::Hyperbolic)
}

fn d_of(g: &GlobalArgs, v: Variety) -> Result<u32> {
    match v {
        Variety::Hyperbolic | Variety::Elliptic => match g.d {
            None | Some(2) => Ok(2),
            Some(d) => Err(Error::OutOfRange(format!("the {v:?} quadric has d = 2, not {d}").to_lowercase())),
        },
        _ => Ok(g.d.unwrap_or(2)),
    }
}

pub fn build_code(g: &GlobalArgs) -> Result<LinearCode> {
    let ctx = context(g);
    let q = need(g.q, "q")?;
    let v = variety(g);
    let d = d_of(g, v)?;
    if let Some((a, b)) = g.bidegree {
        if v != Variety::Hyperbolic {
            return Err(Error::Invalid("--bidegree applies to the hyperbolic quadric".into()));
        }
        return bidegree_code(&ctx.small(q)?, a, b);
    }
    let s = need(g.s, "s")?;
    match v {
        Variety::Hyperbolic => hyperbolic_code(&ctx.small(q)?, s),
        Variety::Elliptic => elliptic_code(&ctx.quadratic(q)?, s),
        Variety::Segre => segre_code(&ctx.small(q)?, d, s),
        Variety::Twisted => twisted_code(&ctx.embedding(q, d)?, s),
        Variety::Bch => bch_b(&ctx.tower(q, d)?, s),
        Variety::Bch0 => {
            let t = ctx.tower(q, d)?;
            bch_b(&t, s)?.subfield_subcode(&t, "B0")
        }
        Variety::BchExt => bch_b_ext(&ctx.tower(q, d)?, s),
        Variety::Bch0Ext => {
            let t = ctx.tower(q, d)?;
            bch_b_ext(&t, s)?.subfield_subcode(&t, "B0ext")
        }
    }
}

/// Distance information in the requested mode.
pub fn params(g: &GlobalArgs) -> Result<ParamReport> {
    let code = build_code(g)?;
    let ctx = context(g);
    let mut report = ParamReport::new(&code);
    match g.dmode {
        DMode::Skip => {}
        DMode::Exhaustive => {
            report = min_distance_exact(&code, g.budget)?;
        }
        DMode::Designed | DMode::Bounds => {
            let witness = g.dmode == DMode::Bounds;
            if code.provenance().cyclic.is_some() {
                report.d_lower = Some(designed_distance(&code)? as usize);
                report.method.push("designed".into());
            } else if matches!(variety(g), Variety::Elliptic | Variety::Twisted) && g.bidegree.is_none() {
                let q = need(g.q, "q")?;
                let d = d_of(g, variety(g))?;
                let spec = ctx.embedding(q, d)?;
                let twisted = twisted_code(&spec, need(g.s, "s")?)?;
                // the elliptic quadric is the d = 2 twisted variety for the same w
                if twisted.labels() == code.labels() && twisted.same_code(&code)? {
                    twisted_distance_bounds(&ctx, &spec, &twisted, need(g.s, "s")?, witness, &mut report)?;
                }
            }
        }
    }
    if !g.timings {
        report.elapsed_ms = None;
    }
    Ok(report)
}

fn points_of(g: &GlobalArgs) -> Result<(crate::field::Field, Vec<ProjectivePoint>)> {
    let ctx = context(g);
    let q = need(g.q, "q")?;
    let v = variety(g);
    let d = d_of(g, v)?;
    match v {
        Variety::Hyperbolic => {
            let spec = QuadricSpec::hyperbolic(&ctx.small(q)?);
            Ok((spec.field().clone(), spec.points().to_vec()))
        }
        Variety::Elliptic => {
            let spec = QuadricSpec::elliptic(&ctx.quadratic(q)?);
            Ok((spec.field().clone(), spec.points().to_vec()))
        }
        Variety::Segre => {
            let f = ctx.small(q)?;
            let points = segre_variety(&f, d as usize).into_iter().map(|(p, _)| p).collect();
            Ok((f, points))
        }
        Variety::Twisted => {
            let spec = ctx.embedding(q, d)?;
            Ok((spec.tower().small().clone(), spec.points().to_vec()))
        }
        other => Err(Error::Invalid(format!("{other:?} is a code family, not a variety").to_lowercase())),
    }
}

fn section_bound(v: Variety, q: u64, d: u32, s: u32) -> Option<u64> {
    let s64 = s as u64;
    match v {
        Variety::Hyperbolic => Some(hyperbolic_section_bound(q, s64)),
        Variety::Elliptic => Some(elliptic_section_bound(q, s64)),
        Variety::Segre => Some((q + 1).pow(d) - (q + 1 - s64).pow(d)),
        Variety::Twisted => Some(s64 * (q.pow(d) - 1) / (q - 1)),
        _ => None,
    }
}

fn search(g: &GlobalArgs) -> Result<(bool, Value)> {
    let (field, points) = points_of(g)?;
    let s = need(g.s, "s")?;
    let v = variety(g);
    let q = need(g.q, "q")?;
    let d = d_of(g, v)?;
    let result = max_section_points(&field, &points, s, g.budget)?;
    let bound = section_bound(v, q, d, s);
    let maximizers: Vec<Value> = result
        .maximizers
        .iter()
        .zip(&result.zero_sets)
        .map(|(f, z)| json!({"form": f.to_string(), "zeros": z.len()}))
        .collect();
    let ok = bound.is_some_and(|b| b == result.max_points as u64);
    let value = json!({
        "status": if ok { "pass" } else { "fail" },
        "variety": format!("{v:?}").to_lowercase(),
        "q": q, "d": d, "s": s,
        "n": result.n, "k": result.k,
        "max": result.max_points, "bound": bound,
        "maximizers": maximizers,
        "truncated": result.truncated,
    });
    Ok((ok, value))
}

fn count(g: &GlobalArgs, form: Option<&str>, quadric: Option<&str>) -> Result<Value> {
    let (field, points, kind) = match quadric {
        Some(text) => {
            let ctx = context(g);
            let f = ctx.small(need(g.q, "q")?)?;
            let spec = QuadricSpec::new(Form::parse(&f, Some(4), text)?)?;
            (f, spec.points().to_vec(), Some(spec.kind()))
        }
        None => {
            let (f, p) = points_of(g)?;
            (f, p, None)
        }
    };
    let mut value = json!({"points": points.len()});
    if let Some(kind) = kind {
        value["kind"] = json!(kind);
    }
    if let Some(text) = form {
        let nvars = points.first().ok_or(Error::EmptyPointSet)?.dim() + 1;
        let f = Form::parse(&field, Some(nvars), text)?;
        let mut zeros = 0usize;
        for p in &points {
            if f.evaluate(p.coords())?.is_zero() {
                zeros += 1;
            }
        }
        value["zeros"] = json!(zeros);
    }
    Ok(value)
}

fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("plain data") + "\n",
        Format::Text => text_lines(value, "") + "",
    }
}

/// `key: value` lines, one per scalar leaf, nested keys joined by dots.
fn text_lines(value: &Value, prefix: &str) -> String {
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                match v {
                    Value::Object(_) => text_lines(v, &key),
                    _ => format!("{key}: {}\n", v),
                }
            })
            .collect(),
        other => format!("{other}\n"),
    }
}

fn code_text(code: &LinearCode) -> String {
    let mut out = String::new();
    out.push_str(&format!("provenance: {}\n", serde_json::to_string(code.provenance()).expect("plain data")));
    out.push_str(&format!("field: {}\n", serde_json::to_string(&code.field().descriptor()).expect("plain data")));
    out.push_str(&format!("n: {}\nk: {}\n", code.length(), code.dimension()));
    out.push_str("generator:\n");
    out.push_str(&code.basis().to_text());
    out.push_str("labels:\n");
    for l in code.labels() {
        out.push_str(&format!("{:?}\n", l.0));
    }
    out
}

fn verify(g: &GlobalArgs, suite: &str) -> Result<(bool, String)> {
    let ctx = context(g);
    let sel = Selection { q: g.q, d: g.d, s: g.s, bidegree: g.bidegree };
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
        return Err(Error::UnknownSuite(bad.to_string()));
    }
    let mut reports: Vec<CheckReport> = Vec::new();
    for name in names {
        let sel = if suite == "all" { Selection::default() } else { sel.clone() };
        reports.extend(run_suite(name, &ctx, &sel)?);
    }
    let ok = reports.iter().all(CheckReport::passed);
    let text = match g.format {
        Format::Json => reports.iter().map(|r| serde_json::to_string(r).expect("plain data") + "\n").collect(),
        Format::Text => reports.iter().map(|r| r.to_text() + "\n").collect(),
    };
    Ok((ok, text))
}

fn execute(cli: &Cli) -> Result<(bool, String)> {
    let g = &cli.global;
    match &cli.command {
        Command::Build => {
            let code = build_code(g)?;
            let text = match g.format {
                Format::Json => render(&code.to_json(), Format::Json),
                Format::Text => code_text(&code),
            };
            Ok((true, text))
        }
        Command::Params => {
            let report = params(g)?;
            let ok = report.is_consistent();
            Ok((ok, render(&serde_json::to_value(report).expect("plain data"), g.format)))
        }
        Command::Verify { suite } => verify(g, suite),
        Command::Search => {
            let (ok, value) = search(g)?;
            Ok((ok, render(&value, g.format)))
        }
        Command::Count { form, quadric } => {
            Ok((true, render(&count(g, form.as_deref(), quadric.as_deref())?, g.format)))
        }
        Command::Export { parity } => {
            let code = build_code(g)?;
            let m = if *parity { code.generator().kernel() } else { code.basis() };
            let text = match g.format {
                Format::Json => render(&m.to_json(), Format::Json),
                Format::Text => m.to_text(),
            };
            Ok((true, text))
        }
    }
}

/// Runs a parsed command line; writes to `--out` when given.
pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok((ok, text)) => {
            let code = if ok { EXIT_PASS } else { EXIT_FAIL };
            match &cli.global.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
                },
                None => Outcome { code, stdout: text, stderr: String::new() },
            }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Parses and runs; argument errors map to the usage exit code.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code, stdout: rendered, stderr: String::new() }
            }
        }
    }
}

/// Caps the global thread pool from `QUADRICODE_THREADS`.
pub fn init_threads() {
    if let Some(n) = std::env::var("QUADRICODE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
