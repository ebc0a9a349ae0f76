//! Command-line pipeline: ingest, normalize, assign membership values, generate rules.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::diag::Diagnostic;
use crate::emit;
use crate::ingest::{self, Format, IngestError, ParseOptions, SCHEMA};
use crate::membership::{self, AnnotatedOntology, AssignOptions, MembershipTable};
use crate::model::{ElementCounts, OntologyModel};
use crate::normalize::{self, NormalizeError, NormalizeOptions, DEFAULT_MAX_ELEMENTS};
use crate::rulegen;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_BOUND: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "fuzzonto", version, about = "Normalize an OWL ontology, assign membership values and emit fuzzy rules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bring the ontology to standard form.
    Normalize(CommonArgs),
    /// Normalize, then assign membership values.
    Assign(CommonArgs),
    /// Normalize, assign, then generate identifying fuzzy rules.
    Rules(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
    Rdfxml,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Rdfxml,
    Json,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Input ontology (RDF/XML, or JSON when the name ends in `.json`).
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Override input format detection.
    #[arg(long, value_enum)]
    pub input_format: Option<InputFormat>,
    /// Fail on unsupported constructs and validation errors.
    #[arg(long)]
    pub strict: bool,
    /// Count only asserted elements when assigning membership values.
    #[arg(long)]
    pub asserted_only: bool,
    /// Write rewrite traces as JSON to this path.
    #[arg(long, value_name = "PATH")]
    pub trace: Option<PathBuf>,
    /// Write a diagnostics report as JSON to this path.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_ELEMENTS)]
    pub max_elements: usize,
    /// Write primary output here instead of stdout.
    #[arg(long, short, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseTiming {
    pub name: &'static str,
    pub millis: f64,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct BeforeAfter {
    pub before: ElementCounts,
    pub after: ElementCounts,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticsReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub warnings: Vec<Diagnostic>,
    pub counts: BeforeAfter,
    pub rewrites: BTreeMap<String, usize>,
    pub passes: usize,
    pub phases: Vec<PhaseTiming>,
}

impl DiagnosticsReport {
    fn new(command: &'static str) -> Self {
        Self {
            schema: SCHEMA,
            command,
            warnings: Vec::new(),
            counts: BeforeAfter::default(),
            rewrites: BTreeMap::new(),
            passes: 0,
            phases: Vec::new(),
        }
    }

    fn phase(&mut self, name: &'static str, elapsed: Duration) {
        self.phases.push(PhaseTiming {
            name,
            millis: (elapsed.as_secs_f64() * 1e6).round() / 1e3,
        });
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the requested command.
/// Returns the process exit code.
pub fn run_pipeline<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    match run(cli, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let (command, args) = match &cli.command {
        Command::Normalize(a) => ("normalize", a),
        Command::Assign(a) => ("assign", a),
        Command::Rules(a) => ("rules", a),
    };
    if args.format == OutputFormat::Rdfxml && command != "normalize" {
        return Err(Failure::new(
            EXIT_PARSE,
            format!("--format rdfxml is only available for `normalize`, not `{command}`"),
        ));
    }
    let mut report = DiagnosticsReport::new(command);
    let result = execute(command, args, &mut report, stdout, stderr);

    for w in &report.warnings {
        let _ = writeln!(stderr, "{w}");
    }
    if let Some(path) = &args.report {
        let mut bytes = serde_json::to_vec_pretty(&report).expect("report serializes");
        bytes.push(b'\n');
        write_atomic(path, &bytes)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write report {}: {e}", path.display())))?;
    }
    result
}

fn execute(
    command: &'static str,
    args: &CommonArgs,
    report: &mut DiagnosticsReport,
    stdout: &mut dyn Write,
    _stderr: &mut dyn Write,
) -> Result<(), Failure> {
    let t = Instant::now();
    let bytes = std::fs::read(&args.input).map_err(|e| {
        Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", args.input.display()))
    })?;
    let format = match args.input_format {
        Some(InputFormat::Json) => Format::Json,
        Some(InputFormat::Rdfxml) => Format::RdfXml,
        None => Format::from_path(&args.input),
    };
    let parsed = ingest::parse_document(&bytes, format, ParseOptions { strict: args.strict })
        .map_err(|e| {
            let code = match e {
                IngestError::UnsupportedConstruct { .. } => EXIT_UNSUPPORTED,
                _ => EXIT_PARSE,
            };
            Failure::new(code, format!("{}: {e}", args.input.display()))
        })?;
    report.warnings.extend(parsed.warnings);
    let diagnostics = ingest::validate_model(&parsed.model);
    let errors = diagnostics.iter().filter(|d| d.is_error()).count();
    report.warnings.extend(diagnostics);
    report.phase("ingest", t.elapsed());
    if args.strict && errors > 0 {
        return Err(Failure::new(
            EXIT_VALIDATION,
            format!("{errors} validation error(s) in strict mode"),
        ));
    }

    let model = parsed.model;
    report.counts.before = model.counts();
    let normalized = normalize::normalize(
        &model,
        NormalizeOptions {
            max_elements: args.max_elements,
        },
    )
    .map_err(|e| match e {
        NormalizeError::FixpointOverflow { .. } => Failure::new(EXIT_BOUND, e.to_string()),
    })?;
    report.phase("normalize.stage1", normalized.stage1_time);
    report.phase("normalize.stage2", normalized.stage2_time);
    report.passes = normalized.passes;
    report.counts.after = normalized.model.counts();
    report.rewrites = normalized
        .log
        .tally()
        .into_iter()
        .map(|(r, n)| (r.to_string(), n))
        .collect();
    report.warnings.extend(normalized.log.warnings.iter().cloned());
    if let Some(path) = &args.trace {
        write_atomic(path, &emit::traces_json(&normalized.log.traces)).map_err(|e| {
            Failure::new(EXIT_PARSE, format!("cannot write trace {}: {e}", path.display()))
        })?;
    }

    let output = match command {
        "normalize" => match args.format {
            OutputFormat::Json => emit::model_json(&normalized.model),
            OutputFormat::Text => emit::model_text(&normalized.model).into_bytes(),
            OutputFormat::Rdfxml => emit::emit_normalized_rdf(&normalized.model)
                .map_err(|e| Failure::new(EXIT_BOUND, e.to_string()))?,
        },
        _ => {
            let annotated = assign_timed(
                &normalized.model,
                AssignOptions {
                    asserted_only: args.asserted_only,
                },
                report,
            );
            if command == "assign" {
                match args.format {
                    OutputFormat::Text => emit::annotated_text(&annotated).into_bytes(),
                    _ => emit::annotated_json(&annotated),
                }
            } else {
                let t = Instant::now();
                let rules = rulegen::generate_rules(&annotated);
                for v in rulegen::check_consistency(&rules, &annotated) {
                    report
                        .warnings
                        .push(Diagnostic::error("rule-consistency", v.to_string()));
                }
                report.phase("rules", t.elapsed());
                match args.format {
                    OutputFormat::Text => emit::rules_text(&rules).into_bytes(),
                    _ => emit::rules_json(&rules),
                }
            }
        }
    };

    match &args.out {
        Some(path) => write_atomic(path, &output)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(&output)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot write output: {e}"))),
    }
}

/// The four membership sub-steps, timed separately and run in order.
fn assign_timed(
    model: &OntologyModel,
    options: AssignOptions,
    report: &mut DiagnosticsReport,
) -> AnnotatedOntology {
    let restricted;
    let view = if options.asserted_only {
        restricted = model.asserted_only();
        &restricted
    } else {
        model
    };
    let groups = membership::build_equivalence_groups(view);

    let t = Instant::now();
    let property_mu = membership::assign_property_mu(view, &groups);
    report.phase("membership.properties", t.elapsed());

    let t = Instant::now();
    let mut complex_mu = membership::assign_partof_mu(view, &groups);
    report.phase("membership.part_of", t.elapsed());

    let t = Instant::now();
    complex_mu.extend(membership::assign_relation_mu(view, &groups));
    report.phase("membership.rest", t.elapsed());

    let t = Instant::now();
    let annotated = membership::copy_to_equivalents(AnnotatedOntology {
        model: model.clone(),
        table: MembershipTable {
            property_mu,
            complex_mu,
        },
        groups,
    });
    report.phase("membership.copy", t.elapsed());
    annotated
}
