//! Command-line front end: argument parsing, input handling, rendering and
//! the example corpus.

pub mod corpus;
pub mod input;
pub mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pushout_core::analyzer::{analyze, analyze_metric, AnalysisOptions};
use pushout_core::complex::Complex;
use pushout_core::homology::{homology, Coefficients, HomologyProfile};
use pushout_core::metric::{vietoris_rips, Distance, MetricCover};
use serde::Serialize;

use input::{read_cover, read_input, Input, InputDocument, InputError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "pushout",
    version,
    about = "Cover decompositions of simplicial and Vietoris-Rips complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Distance matrix (.json or lower-triangular .csv) or facet list (.json).
    pub input: PathBuf,
    /// Vietoris-Rips radius.
    #[arg(short = 'r', long = "radius")]
    pub radius: Option<String>,
    /// Largest dimension (simplices for `vr`, homology degree otherwise).
    #[arg(long = "max-dim", default_value_t = 4)]
    pub max_dim: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarise VR_r of a distance matrix.
    Vr {
        #[command(flatten)]
        common: Common,
    },
    /// Reduced homology of a complex.
    Homology {
        #[command(flatten)]
        common: Common,
        /// Coefficients: q, z or zp:<p>. Repeatable.
        #[arg(long = "field")]
        fields: Vec<String>,
    },
    /// Evaluate the decomposition criteria for a cover.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// JSON file {"X": [...], "Y": [...]}.
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long = "field")]
        fields: Vec<String>,
        #[arg(long, overrides_with = "no_verify")]
        verify: bool,
        #[arg(long = "no-verify")]
        no_verify: bool,
    },
    /// The built-in example corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
        #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CorpusAction {
    List,
    Run,
}

pub fn parse_coefficients(s: &str) -> Result<Coefficients, InputError> {
    let t = s.trim().to_ascii_lowercase();
    match t.as_str() {
        "q" => Ok(Coefficients::RATIONALS),
        "z" => Ok(Coefficients::Integers),
        _ => {
            let p = t
                .strip_prefix("zp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| InputError(format!("unknown field {s:?}; use q, z or zp:<p>")))?;
            Coefficients::prime(p).map_err(|e| InputError(e.to_string()))
        }
    }
}

fn coefficients(fields: &[String]) -> Result<Vec<Coefficients>, InputError> {
    if fields.is_empty() {
        return Ok(vec![Coefficients::RATIONALS, Coefficients::Integers]);
    }
    let mut out = Vec::new();
    for f in fields {
        let c = parse_coefficients(f)?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

fn radius(common: &Common, doc: &InputDocument) -> Result<Option<Distance>, InputError> {
    let r = match &common.radius {
        Some(s) => Some(
            s.parse::<Distance>()
                .map_err(|e| InputError(format!("radius: {e}")))?,
        ),
        None => doc.radius.clone(),
    };
    match &r {
        Some(Distance::Infinite) => Err(InputError("radius must be finite".into())),
        _ => Ok(r),
    }
}

fn require_radius(common: &Common, doc: &InputDocument) -> Result<Distance, InputError> {
    radius(common, doc)?.ok_or_else(|| InputError("distance input needs a radius (-r)".into()))
}

/// The complex described by the input: VR_r for distances, else the facets.
fn complex_of(common: &Common, doc: &InputDocument, cap: usize) -> Result<Complex, InputError> {
    match &doc.input {
        Input::Distances(s) => {
            let r = require_radius(common, doc)?;
            Ok(vietoris_rips(s, r.as_rational().expect("finite"), cap))
        }
        Input::Facets { complex, .. } => Ok(complex.clone()),
    }
}

#[derive(Serialize)]
struct VrSummary {
    vertices: usize,
    counts: Vec<usize>,
    complete: bool,
}

#[derive(Serialize)]
struct HomologyOutput<'a> {
    max_degree: usize,
    profiles: &'a [HomologyProfile],
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

enum Failure {
    Input(String),
    Io(std::io::Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<pushout_core::complex::ComplexError> for Failure {
    fn from(e: pushout_core::complex::ComplexError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<pushout_core::homology::HomologyError> for Failure {
    fn from(e: pushout_core::homology::HomologyError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn cmd_vr(common: &Common, out: &mut dyn Write) -> Result<i32, Failure> {
    let doc = read_input(&common.input)?;
    if !matches!(doc.input, Input::Distances(_)) {
        return Err(Failure::Input("vr needs a distance matrix".into()));
    }
    let k = complex_of(common, &doc, common.max_dim)?;
    let counts = k.f_vector(common.max_dim)?;
    let summary = VrSummary {
        vertices: counts.first().copied().unwrap_or(0),
        complete: k.is_fully_enumerable(),
        counts,
    };
    match common.format {
        Format::Json => emit_json(out, &summary)?,
        Format::Text => {
            writeln!(out, "vertices: {}", summary.vertices)?;
            writeln!(
                out,
                "edges: {}",
                summary.counts.get(1).copied().unwrap_or(0)
            )?;
            for (d, c) in summary.counts.iter().enumerate() {
                writeln!(out, "dim {d}: {c}")?;
            }
            if !summary.complete {
                writeln!(
                    out,
                    "(larger simplices exist beyond dimension {})",
                    common.max_dim
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_homology(common: &Common, fields: &[String], out: &mut dyn Write) -> Result<i32, Failure> {
    let doc = read_input(&common.input)?;
    let coeffs = coefficients(fields)?;
    let k = complex_of(common, &doc, common.max_dim + 1)?;
    let max_degree = match k.enumeration_limit() {
        Some(limit) => common.max_dim.min(limit.saturating_sub(1)),
        None => common.max_dim,
    };
    let profiles = coeffs
        .iter()
        .map(|&c| homology(&k, c, max_degree, true))
        .collect::<Result<Vec<_>, _>>()?;
    match common.format {
        Format::Json => emit_json(
            out,
            &HomologyOutput {
                max_degree,
                profiles: &profiles,
            },
        )?,
        Format::Text => {
            for p in &profiles {
                writeln!(
                    out,
                    "{:<4} reduced Betti {}",
                    p.coefficients.to_string(),
                    render::betti_line(p)
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_decompose(
    common: &Common,
    cover_path: Option<&PathBuf>,
    fields: &[String],
    verify: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let doc = read_input(&common.input)?;
    let spec = match cover_path {
        Some(p) => read_cover(p)?,
        None => doc
            .cover
            .clone()
            .ok_or_else(|| InputError("decompose needs a cover (--cover)".into()))?,
    };
    let options = AnalysisOptions {
        dim_cap: common.max_dim,
        coefficients: coefficients(fields)?,
        verify,
    };
    if options.dim_cap == 0 {
        return Err(Failure::Input("--max-dim must be at least 1".into()));
    }
    let report = match &doc.input {
        Input::Distances(space) => {
            let r = require_radius(common, &doc)?;
            let (x, y) = spec.resolve(space.labels())?;
            let mc = MetricCover::new(
                space.clone(),
                x,
                y,
                r.as_rational().expect("finite").clone(),
            )
            .map_err(|e| InputError(e.to_string()))?;
            analyze_metric(&mc, &options)?
        }
        Input::Facets { complex, labels } => {
            let cover = spec.cover_for(complex, labels)?;
            let mut report = analyze(complex, &cover, &options)?;
            report.cover.labels = Some(labels.clone());
            report
        }
    };
    match common.format {
        Format::Json => emit_json(out, &report)?,
        Format::Text => write!(out, "{}", render::report(&report))?,
    }
    Ok(if report.is_sound() {
        EXIT_OK
    } else {
        EXIT_DISCREPANCY
    })
}

#[derive(Serialize)]
struct CorpusLine {
    name: &'static str,
    passed: bool,
    failures: Vec<String>,
}

fn cmd_corpus(action: CorpusAction, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    match action {
        CorpusAction::List => {
            let cases = corpus::cases();
            match format {
                Format::Json => {
                    let names: Vec<&str> = cases.iter().map(|c| c.name).collect();
                    emit_json(out, &names)?;
                }
                Format::Text => {
                    for c in &cases {
                        writeln!(out, "{:<24} {}", c.name, c.summary)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        CorpusAction::Run => {
            let outcomes = corpus::run_all();
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            match format {
                Format::Json => {
                    let lines: Vec<CorpusLine> = outcomes
                        .iter()
                        .map(|o| CorpusLine {
                            name: o.name,
                            passed: o.passed(),
                            failures: o.failures.clone(),
                        })
                        .collect();
                    emit_json(out, &lines)?;
                }
                Format::Text => {
                    for o in &outcomes {
                        writeln!(
                            out,
                            "{} {}",
                            if o.passed() { "PASS" } else { "FAIL" },
                            o.name
                        )?;
                        for f in &o.failures {
                            writeln!(out, "     {f}")?;
                        }
                    }
                    writeln!(
                        out,
                        "{} of {} cases passed",
                        outcomes.len() - failed,
                        outcomes.len()
                    )?;
                }
            }
            Ok(if failed == 0 {
                EXIT_OK
            } else {
                EXIT_DISCREPANCY
            })
        }
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = match &cli.command {
        Command::Vr { common } => cmd_vr(common, out),
        Command::Homology { common, fields } => cmd_homology(common, fields, out),
        Command::Decompose {
            common,
            cover,
            fields,
            no_verify,
            ..
        } => cmd_decompose(common, cover.as_ref(), fields, !no_verify, out),
        Command::Corpus { action, format } => cmd_corpus(*action, *format, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
