//! Command-line driver.
//!
//! Every command computes all of its artifacts in memory first and only then
//! writes them, each through a temporary file renamed into place, so a failed
//! run leaves earlier output untouched.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::classical::{element_report, generate_classical, ClassicalError};
use crate::codegen::{generate_quantum, CodegenError, GenOptions, TargetQpl, DEFAULT_SHOTS};
use crate::ir::{
    deserialize_ir, lower_class_model, lower_sequence_model, serialize_ir, CircuitIr, IrJsonError,
    SystemIr, ValidateOptions, ValidationReport,
};
use crate::metrics::{equivalence_verdict, MetricError, DEFAULT_THRESHOLD};
use crate::parser::{parse_class_diagram, parse_sequence_diagram, ParseError};
use crate::sim::{probabilities, sample, Counts, CountsError, Distribution, SimError};

/// Shots drawn for the reference distribution when a circuit cannot be
/// simulated exactly.
pub const REFERENCE_SHOTS: u64 = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "qumodel",
    version,
    about = "Compile UML models of hybrid quantum-classical systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Inputs {
    /// Class diagram describing packages, classes and associations.
    #[arg(long, value_name = "FILE")]
    pub class_diagram: Option<PathBuf>,
    /// Sequence diagram describing the circuit.
    #[arg(long, value_name = "FILE", conflicts_with = "ir")]
    pub sequence_diagram: Option<PathBuf>,
    /// IR JSON produced by `parse`, instead of diagrams.
    #[arg(long, value_name = "FILE", conflicts_with = "class_diagram")]
    pub ir: Option<PathBuf>,
    /// Accept gates and measurements on a qubit after it was measured.
    #[arg(long)]
    pub allow_mid_circuit: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse diagrams, write the IR JSON and a validation report.
    Parse {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Also print the IR JSON to stdout.
        #[arg(long)]
        ir_dump: bool,
    },
    /// Generate quantum programs, classical skeletons and a manifest.
    Generate {
        #[command(flatten)]
        inputs: Inputs,
        /// `all` or a comma-separated list of qiskit, cirq, qsharp, braket.
        #[arg(long, default_value = "all", value_delimiter = ',')]
        targets: Vec<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SHOTS)]
        shots: u64,
        /// Seed written into the generated programs where the target accepts one.
        #[arg(long, env = "M2Q_SEED")]
        seed: Option<u64>,
        /// Fail instead of emitting helper stubs for non-native gates.
        #[arg(long)]
        no_placeholders: bool,
        /// Also write the IR JSON.
        #[arg(long)]
        ir_dump: bool,
    },
    /// Run the reference simulator and write probabilities and counts.
    Simulate {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SHOTS)]
        shots: u64,
        #[arg(long, env = "M2Q_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Compare a counts JSON against the reference simulator.
    Verify {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_name = "FILE")]
        counts: PathBuf,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
        /// Directory for the verdict report; stdout only when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "M2Q_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Write the element completeness report for the classical skeletons.
    Report {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{err}", path.display())]
    Parse { path: PathBuf, err: ParseError },
    #[error("{}: {err}", path.display())]
    IrJson { path: PathBuf, err: IrJsonError },
    #[error("{}: {err}", path.display())]
    Counts { path: PathBuf, err: CountsError },
    #[error("{}: validation failed\n{report}", path.display())]
    Validation {
        path: PathBuf,
        report: ValidationReport,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Codegen(#[from] CodegenError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("verdict failed: kl {kl} is not below {threshold}")]
    VerdictFailed { kl: f64, threshold: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. }
            | CliError::Parse { .. }
            | CliError::IrJson { .. }
            | CliError::Counts { .. }
            | CliError::Usage(_) => 2,
            CliError::Validation { .. }
            | CliError::Codegen(_)
            | CliError::Classical(_)
            | CliError::Sim(_)
            | CliError::Metric(_)
            | CliError::VerdictFailed { .. } => 1,
        }
    }
}

/// File stem without diagram or IR suffixes: `bell.puml` and `bell.ir.json`
/// both give `bell`.
pub fn input_stem(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".to_string());
    for suffix in [
        ".ir.json",
        ".counts.json",
        ".puml",
        ".plantuml",
        ".uml",
        ".txt",
        ".json",
    ] {
        if let Some(stem) = name.strip_suffix(suffix) {
            if !stem.is_empty() {
                return stem.to_string();
            }
        }
    }
    match name.rsplit_once('.') {
        Some((stem, _)) if !stem.is_empty() => stem.to_string(),
        _ => name,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Everything loaded from the inputs of one invocation.
#[derive(Debug, Default)]
pub struct Loaded {
    pub stem: String,
    pub system: SystemIr,
    pub circuit: Option<CircuitIr>,
    /// Non-fatal findings from lowering.
    pub report: ValidationReport,
}

pub fn load(inputs: &Inputs) -> Result<Loaded, CliError> {
    let opts = ValidateOptions {
        allow_mid_circuit: inputs.allow_mid_circuit,
    };
    if let Some(path) = &inputs.ir {
        let (system, circuit) = deserialize_ir(&read(path)?).map_err(|err| CliError::IrJson {
            path: path.clone(),
            err,
        })?;
        let has_circuit = circuit.n_qubits > 0 || circuit.n_clbits > 0 || !circuit.ops.is_empty();
        return Ok(Loaded {
            stem: input_stem(path),
            system,
            circuit: has_circuit.then_some(circuit),
            report: ValidationReport::default(),
        });
    }
    if inputs.class_diagram.is_none() && inputs.sequence_diagram.is_none() {
        return Err(CliError::Usage(
            "give --class-diagram, --sequence-diagram or --ir".to_string(),
        ));
    }
    let mut loaded = Loaded::default();
    if let Some(path) = &inputs.class_diagram {
        let model = parse_class_diagram(&read(path)?).map_err(|err| CliError::Parse {
            path: path.clone(),
            err,
        })?;
        loaded.system = lower_class_model(&model);
        loaded.stem = input_stem(path);
    }
    if let Some(path) = &inputs.sequence_diagram {
        let model = parse_sequence_diagram(&read(path)?).map_err(|err| CliError::Parse {
            path: path.clone(),
            err,
        })?;
        let circuit =
            lower_sequence_model(&model, opts).map_err(|report| CliError::Validation {
                path: path.clone(),
                report,
            })?;
        loaded.report = crate::ir::validate_circuit_with(&circuit, opts);
        loaded.circuit = Some(circuit);
        loaded.stem = input_stem(path);
    }
    Ok(loaded)
}

fn need_circuit(l: &Loaded) -> Result<&CircuitIr, CliError> {
    l.circuit.as_ref().ok_or_else(|| {
        CliError::Usage(
            "this command needs --sequence-diagram or an --ir with a circuit".to_string(),
        )
    })
}

/// Artifacts staged for writing, keyed by path relative to the output root.
#[derive(Debug, Default)]
pub struct Artifacts {
    files: BTreeMap<PathBuf, Vec<u8>>,
}

impl Artifacts {
    pub fn add(&mut self, rel: impl Into<PathBuf>, contents: impl Into<Vec<u8>>) {
        self.files.insert(rel.into(), contents.into());
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.files.keys().map(PathBuf::as_path)
    }

    /// Writes every file to a temporary sibling first, then renames them all.
    pub fn commit(self, root: &Path) -> Result<(), CliError> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CliError::Io { path, source }
        };
        let mut staged = Vec::new();
        for (rel, contents) in &self.files {
            let dest = root.join(rel);
            let dir = dest.parent().unwrap_or(root);
            std::fs::create_dir_all(dir).map_err(io(dir))?;
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io(dir))?;
            tmp.write_all(contents).map_err(io(&dest))?;
            staged.push((tmp, dest));
        }
        for (tmp, dest) in staged {
            tmp.persist(&dest).map_err(|e| CliError::Io {
                path: dest.clone(),
                source: e.error,
            })?;
        }
        Ok(())
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON value serializes");
    s.push('\n');
    s
}

fn resolve_targets(names: &[String]) -> Result<(Vec<TargetQpl>, bool), CliError> {
    if names.iter().any(|n| n.eq_ignore_ascii_case("all")) {
        return Ok((TargetQpl::ALL.to_vec(), true));
    }
    let mut out = Vec::new();
    for n in names {
        let t: TargetQpl = n
            .trim()
            .parse()
            .map_err(|e: crate::codegen::UnknownTarget| CliError::Usage(e.to_string()))?;
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out.sort();
    Ok((out, false))
}

pub struct Outcome {
    pub stdout: String,
    pub artifacts: Artifacts,
    pub out: Option<PathBuf>,
    /// Set when artifacts should be written but the command still fails.
    pub error: Option<CliError>,
}

impl Outcome {
    fn new(out: Option<PathBuf>) -> Self {
        Outcome {
            stdout: String::new(),
            artifacts: Artifacts::default(),
            out,
            error: None,
        }
    }
}

fn cmd_parse(inputs: &Inputs, out: &Path, ir_dump: bool) -> Result<Outcome, CliError> {
    let mut o = Outcome::new(Some(out.to_path_buf()));
    let loaded = match load(inputs) {
        Err(CliError::Validation { path, report }) => {
            let stem = input_stem(&path);
            o.artifacts.add(
                format!("reports/{stem}.validation.json"),
                pretty(&report.to_json()),
            );
            o.error = Some(CliError::Validation { path, report });
            return Ok(o);
        }
        other => other?,
    };
    let circuit = loaded.circuit.clone().unwrap_or_default();
    let ir = serialize_ir(&loaded.system, &circuit);
    o.artifacts
        .add(format!("ir/{}.ir.json", loaded.stem), ir.clone());
    o.artifacts.add(
        format!("reports/{}.validation.json", loaded.stem),
        pretty(&loaded.report.to_json()),
    );
    if ir_dump {
        o.stdout = ir;
    }
    Ok(o)
}

fn cmd_generate(
    inputs: &Inputs,
    targets: &[String],
    out: &Path,
    opts: &GenOptions,
    ir_dump: bool,
) -> Result<Outcome, CliError> {
    let (targets, all) = resolve_targets(targets)?;
    let loaded = load(inputs)?;
    let mut o = Outcome::new(Some(out.to_path_buf()));
    let stem = &loaded.stem;
    let mut target_entries = serde_json::Map::new();
    if let Some(c) = &loaded.circuit {
        for t in targets {
            match generate_quantum(c, t, opts) {
                Ok(p) => {
                    let file = format!("quantum/{stem}.{}", t.extension());
                    o.artifacts.add(&file, p.source);
                    target_entries.insert(
                        t.name().to_string(),
                        json!({
                            "file": file,
                            "manifest": p.manifest,
                            "placeholders": p.placeholders,
                            "warnings": p.warnings,
                        }),
                    );
                }
                Err(e @ CodegenError::UnsupportedFeature { .. }) if all => {
                    target_entries
                        .insert(t.name().to_string(), json!({ "skipped": e.to_string() }));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    let tree = generate_classical(&loaded.system, stem)?;
    let classical_files: Vec<String> = tree.paths().map(|p| format!("classical/{p}")).collect();
    let method_count = tree.method_count();
    for f in tree.files {
        o.artifacts.add(format!("classical/{}", f.path), f.text);
    }
    if ir_dump {
        let circuit = loaded.circuit.clone().unwrap_or_default();
        o.artifacts.add(
            format!("ir/{stem}.ir.json"),
            serialize_ir(&loaded.system, &circuit),
        );
    }
    let manifest = json!({
        "stem": stem,
        "shots": opts.shots,
        "seed": opts.seed,
        "targets": target_entries,
        "classical": {
            "files": classical_files,
            "methods": method_count,
            "elements": loaded.system.counts(),
        },
    });
    o.artifacts
        .add(format!("reports/{stem}.manifest.json"), pretty(&manifest));
    Ok(o)
}

fn cmd_simulate(inputs: &Inputs, out: &Path, shots: u64, seed: u64) -> Result<Outcome, CliError> {
    let loaded = load(inputs)?;
    let c = need_circuit(&loaded)?;
    let mut o = Outcome::new(Some(out.to_path_buf()));
    let stem = &loaded.stem;
    match probabilities(c) {
        Ok(d) => o.artifacts.add(
            format!("reports/{stem}.probabilities.json"),
            format!("{}\n", d.to_json()),
        ),
        Err(SimError::ExactModeUnsupported) => {}
        Err(e) => return Err(e.into()),
    }
    let counts = sample(c, shots, seed)?;
    let text = format!("{}\n", counts.to_json());
    o.artifacts
        .add(format!("reports/{stem}.counts.json"), text.clone());
    o.stdout = text;
    Ok(o)
}

/// Exact probabilities when the circuit allows it, otherwise a large sample.
pub fn reference_distribution(c: &CircuitIr, seed: u64) -> Result<Distribution, CliError> {
    match probabilities(c) {
        Ok(d) => Ok(d),
        Err(SimError::ExactModeUnsupported) => {
            let counts = sample(c, REFERENCE_SHOTS, seed)?;
            Ok(Distribution::from_counts(&counts).expect("sampled counts are nonempty"))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_verify(
    inputs: &Inputs,
    counts_path: &Path,
    threshold: f64,
    out: Option<&Path>,
    seed: u64,
) -> Result<Outcome, CliError> {
    let loaded = load(inputs)?;
    let c = need_circuit(&loaded)?;
    let counts_err = |err| CliError::Counts {
        path: counts_path.to_path_buf(),
        err,
    };
    let counts = Counts::from_json(&read(counts_path)?).map_err(counts_err)?;
    let candidate = Distribution::from_counts(&counts).map_err(counts_err)?;
    let reference = reference_distribution(c, seed)?;
    let verdict = equivalence_verdict(&reference, &candidate, threshold)?;
    let mut o = Outcome::new(out.map(Path::to_path_buf));
    o.stdout = verdict.to_json();
    if out.is_some() {
        o.artifacts.add(
            format!("reports/{}.verdict.json", input_stem(counts_path)),
            verdict.to_json(),
        );
    }
    if !verdict.pass {
        o.error = Some(CliError::VerdictFailed {
            kl: verdict.kl,
            threshold,
        });
    }
    Ok(o)
}

fn cmd_report(inputs: &Inputs, out: &Path) -> Result<Outcome, CliError> {
    let loaded = load(inputs)?;
    let tree = generate_classical(&loaded.system, &loaded.stem)?;
    let report = element_report(&loaded.system, &tree);
    let text = pretty(&serde_json::to_value(report).expect("report serializes"));
    let mut o = Outcome::new(Some(out.to_path_buf()));
    o.artifacts.add(
        format!("reports/{}.elements.json", loaded.stem),
        text.clone(),
    );
    o.stdout = text;
    Ok(o)
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Parse {
            inputs,
            out,
            ir_dump,
        } => cmd_parse(inputs, out, *ir_dump),
        Command::Generate {
            inputs,
            targets,
            out,
            shots,
            seed,
            no_placeholders,
            ir_dump,
        } => {
            let opts = GenOptions {
                shots: *shots,
                seed: *seed,
                allow_placeholders: !no_placeholders,
            };
            cmd_generate(inputs, targets, out, &opts, *ir_dump)
        }
        Command::Simulate {
            inputs,
            out,
            shots,
            seed,
        } => cmd_simulate(inputs, out, *shots, *seed),
        Command::Verify {
            inputs,
            counts,
            threshold,
            out,
            seed,
        } => cmd_verify(inputs, counts, *threshold, out.as_deref(), *seed),
        Command::Report { inputs, out } => cmd_report(inputs, out),
    }
}

/// Runs the CLI and returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    if let Some(root) = &outcome.out {
        if let Err(e) = outcome.artifacts.commit(root) {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    }
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    match outcome.error {
        Some(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
        None => 0,
    }
}
