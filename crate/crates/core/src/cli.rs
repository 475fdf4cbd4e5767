//! The `wla` command line.
//!
//! Every subcommand produces a [`Report`]; `--format json` prints it as one
//! JSON document whose top-level keys are always `status`, `residuals`,
//! `dims`, `components`, `betti` and `truncated`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::BlockDecl;
use crate::algebroid::AlgebroidSpec;
use crate::cohomology::{betti, build_complex};
use crate::dsl::SpecDocument;
use crate::error::Error;
use crate::families;
use crate::superconnection::extract_components;
use crate::weight_modules::{dim_w, subcomplex_check, w_basis, DEFAULT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "wla", version, about = "Exact workbench for weighted Lie algebroids")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the structure equations and d_E² = 0.
    Check { file: PathBuf },
    /// List the W-bases of one weight with their dimensions.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        weight: u32,
        /// Base polynomial degree cap for the subcomplex check.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
    },
    /// Superconnection components and the flatness cascade.
    Rep {
        file: PathBuf,
        #[arg(long)]
        weight: u32,
    },
    /// Betti numbers of Ω^(i,•) on capped bases.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
    },
    /// Emit a shipped example as a spec file.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        /// Dimension for the `abelian` and `tangent` families.
        #[arg(long, default_value_t = 2)]
        dim: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    Adjoint,
    TangentGraded,
    Prolongation,
    WeightedLieAlgebra,
    E7,
    Aff1,
    Sl2,
    Abelian,
    Broken,
    Tangent,
}

impl ExampleName {
    /// The document this example is written as.
    pub fn document(self, dim: u32) -> Result<SpecDocument, Error> {
        let spec = match self {
            ExampleName::Adjoint => families::adjoint(),
            ExampleName::TangentGraded => {
                families::tangent_graded_bundle("tangent_graded", &families::e3_graded_bundle())?
            }
            ExampleName::Prolongation => families::algebroid_prolongation(
                &families::aff1_action(),
                &[
                    BlockDecl::base("x", 2),
                    BlockDecl::even("z", 1, 1),
                    BlockDecl::even("u", 2, 1),
                ],
            )?,
            ExampleName::WeightedLieAlgebra => {
                return Ok(SpecDocument::tables_from_spec(&families::aff1_core()))
            }
            ExampleName::E7 => families::e7(),
            ExampleName::Aff1 => families::aff1(),
            ExampleName::Sl2 => families::sl2(),
            ExampleName::Abelian => families::abelian(dim),
            ExampleName::Broken => return Ok(SpecDocument::tables_from_spec(&families::broken())),
            ExampleName::Tangent => families::tangent_algebroid(dim),
        };
        Ok(SpecDocument::from_spec(&spec))
    }
}

/// Outcome of one subcommand.
#[derive(Debug, Clone)]
pub struct Report {
    pub code: i32,
    pub message: Option<String>,
    pub residuals: Vec<(String, String)>,
    pub dims: Vec<(String, usize)>,
    pub components: Map<String, Value>,
    pub betti: Option<Vec<usize>>,
    pub truncated: bool,
    /// Free-form lines for text output.
    pub lines: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report {
            code: EXIT_OK,
            message: None,
            residuals: Vec::new(),
            dims: Vec::new(),
            components: Map::new(),
            betti: None,
            truncated: false,
            lines: Vec::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Report {
            code: EXIT_USAGE,
            message: Some(message.into()),
            ..Report::new()
        }
    }

    fn boxed_usage(message: impl Into<String>) -> Box<Self> {
        Box::new(Self::usage(message))
    }

    fn fail_if_residuals(mut self) -> Self {
        if !self.residuals.is_empty() && self.code == EXIT_OK {
            self.code = EXIT_FAIL;
        }
        self
    }

    pub fn status(&self) -> &'static str {
        match self.code {
            EXIT_OK => "ok",
            EXIT_FAIL => "fail",
            _ => "error",
        }
    }

    pub fn to_json(&self) -> Value {
        let residuals: Vec<Value> = self
            .residuals
            .iter()
            .map(|(l, v)| json!({ "label": l, "value": v }))
            .collect();
        let dims: Map<String, Value> = self
            .dims
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let mut out = json!({
            "status": self.status(),
            "residuals": residuals,
            "dims": dims,
            "components": self.components,
            "betti": self.betti,
            "truncated": self.truncated,
        });
        if let Some(m) = &self.message {
            out["message"] = json!(m);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(m) = &self.message {
            s.push_str(&format!("{}: {m}\n", self.status()));
        }
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        for (k, v) in &self.dims {
            s.push_str(&format!("dim {k} = {v}\n"));
        }
        if let Some(b) = &self.betti {
            let b: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!(
                "betti = ({}){}\n",
                b.join(", "),
                if self.truncated { " [truncated]" } else { "" }
            ));
        }
        for (l, v) in &self.residuals {
            s.push_str(&format!("residual {l}: {v}\n"));
        }
        if self.message.is_none() {
            s.push_str(&format!("status: {}\n", self.status()));
        }
        s
    }
}

fn load(path: &Path) -> Result<AlgebroidSpec, Box<Report>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Report::boxed_usage(format!("{}: {e}", path.display())))?;
    SpecDocument::parse(&text)
        .and_then(|doc| doc.to_spec())
        .map_err(|e| Report::boxed_usage(format!("{}:{e}", path.display())))
}

fn weight_in_range(spec: &AlgebroidSpec, weight: u32) -> Result<(), Box<Report>> {
    if weight > spec.degree() {
        return Err(Report::boxed_usage(
            Error::WeightRange {
                weight,
                degree: spec.degree(),
            }
            .to_string(),
        ));
    }
    Ok(())
}

fn dim_key(i: u32, j: u32) -> String {
    format!("({i},{j})")
}

fn check(spec: &AlgebroidSpec) -> Report {
    let mut r = Report::new();
    let table = spec.table();
    let structure = spec.check_structure_equations();
    for res in &structure.residuals {
        r.residuals.push((res.label(table), res.value.to_string()));
    }
    for (g, e) in spec.is_homological().residuals {
        r.residuals.push((format!("d^2 {}", table.generator(g).label()), e.to_string()));
    }
    r.lines.push(format!(
        "{}: degree {}, {} generators, {} structure equations checked",
        spec.name(),
        spec.degree(),
        table.len(),
        structure.checked
    ));
    for l in spec.lints() {
        r.lines.push(format!("lint: {l}"));
    }
    r.fail_if_residuals()
}

fn decompose(spec: &AlgebroidSpec, i: u32, cap: u32) -> Report {
    let mut r = Report::new();
    for j in 0..=i {
        let basis = w_basis(spec, i, j);
        if basis.is_empty() {
            continue;
        }
        let labels = basis.labels();
        r.lines
            .push(format!("W^{} : {}", dim_key(i, j), labels.join(" ")));
        r.components
            .insert(dim_key(i, j), json!(labels));
        r.dims.push((dim_key(i, j), dim_w(spec, i, j) as usize));
    }
    let cert = subcomplex_check(spec, i, cap);
    for v in &cert.violations {
        r.residuals.push((format!("weight {i} leak"), v.clone()));
    }
    r.truncated = spec.table().has_base();
    r.fail_if_residuals()
}

fn rep(spec: &AlgebroidSpec, i: u32) -> Result<Report, Box<Report>> {
    let comps = extract_components(spec, i).map_err(|e| Report::boxed_usage(e.to_string()))?;
    let table = comps.table().clone();
    let mut r = Report::new();
    for j in 0..=i {
        let d = dim_w(spec, i, j) as usize;
        if d > 0 {
            r.dims.push((dim_key(i, j), d));
        }
    }
    for p in comps.levels() {
        let mut level = Map::new();
        for w in comps.basis() {
            let v = comps.get(p, w);
            if !v.is_zero() {
                let label = w.render(&table);
                r.lines.push(format!("D_{p}({label}) = {v}"));
                level.insert(label, json!(v.to_string()));
            }
        }
        r.components.insert(format!("D_{p}"), Value::Object(level));
    }
    let cascade = comps.flatness_cascade();
    for (p, label, v) in &cascade.residuals {
        r.residuals
            .push((format!("cascade p={p} at {label}"), v.to_string()));
    }
    if !comps.reassembles(spec) {
        r.residuals
            .push(("reassembly".into(), "sum of D_p differs from d_E".into()));
    }
    r.lines.push(format!(
        "flatness cascade: {} levels, {}",
        cascade.levels,
        if cascade.passed() { "passed" } else { "failed" }
    ));
    Ok(r.fail_if_residuals())
}

fn cohomology(spec: &AlgebroidSpec, i: u32, cap: u32) -> Report {
    let complex = match build_complex(spec, i, cap) {
        Ok(c) => c,
        Err(e @ Error::CapTooSmall { .. }) => {
            let mut r = Report::new();
            r.code = EXIT_FAIL;
            r.truncated = true;
            r.residuals.push(("cap".into(), e.to_string()));
            return r;
        }
        Err(e) => return Report::usage(e.to_string()),
    };
    let b = betti(&complex);
    let mut r = Report::new();
    for (j, d) in b.dims.iter().enumerate() {
        r.dims.push((dim_key(i, j as u32), *d));
    }
    if !complex.is_closed() {
        r.residuals
            .push(("d^2".into(), "consecutive differentials do not compose to zero".into()));
    }
    if b.truncated {
        r.lines
            .push(format!("bases truncated at base polynomial degree {cap}"));
    }
    r.betti = Some(b.betti);
    r.truncated = b.truncated;
    r.fail_if_residuals()
}

fn example(name: ExampleName, dim: u32, output: Option<&Path>) -> Report {
    let doc = match name.document(dim) {
        Ok(d) => d,
        Err(e) => return Report::usage(e.to_string()),
    };
    let text = doc.print();
    let mut r = Report::new();
    match output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                return Report::usage(format!("{}: {e}", path.display()));
            }
            r.lines.push(format!("wrote {}", path.display()));
        }
        None => {
            r.lines.push(text.trim_end().to_string());
            r.components.insert("spec".into(), json!(text));
        }
    }
    r
}

fn execute(cli: &Cli) -> Report {
    let result = match &cli.command {
        Command::Check { file } => load(file).map(|s| check(&s)),
        Command::Decompose { file, weight, cap } => load(file).and_then(|s| {
            weight_in_range(&s, *weight)?;
            Ok(decompose(&s, *weight, *cap))
        }),
        Command::Rep { file, weight } => load(file).and_then(|s| rep(&s, *weight)),
        Command::Cohomology { file, weight, cap } => load(file).and_then(|s| {
            weight_in_range(&s, *weight)?;
            Ok(cohomology(&s, *weight, *cap))
        }),
        Command::Example { name, dim, output } => Ok(example(*name, *dim, output.as_deref())),
    };
    result.unwrap_or_else(|r| *r)
}

fn wants_json(args: &[OsString]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

/// Parses `args` (including the program name), runs the subcommand and
/// writes its report to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let (report, format) = match Cli::try_parse_from(&args) {
        Ok(cli) => (execute(&cli), cli.format),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let format = if wants_json(&args) {
                Format::Json
            } else {
                Format::Text
            };
            (Report::usage(e.render().to_string().trim_end()), format)
        }
    };
    let text = match format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Text => report.to_text(),
    };
    let _ = out.write_all(text.as_bytes());
    report.code
}
