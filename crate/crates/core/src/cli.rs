//! Command-line driver: `list`, `construct`, `verify` and `export`.
//!
//! Every command produces a [`RunReport`] as JSON on standard output. Exit
//! code 0 means every check passed, 1 that some check failed and 2 a usage,
//! input or I/O error.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LatticeError, Result};
use crate::hyperbolic::{
    compare_with_construction, deep_hole_checks, enumerate_section_classes, orthocomplement, section_vector,
    weyl_vector_ln, DeepHoleFile, DeepHoleReport,
};
use crate::lattice_file::{ExportFormat, LatticeFile};
use crate::leech::{certify_leech, compare_corollary, construct_leech, corollary_zero, Certificate};
use crate::niemeier::{bundled, glue_data, niemeier_cached, NiemeierLattice};
use crate::report::{record, Check};
use crate::roots::format_label;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "leech", version, about = "Niemeier lattices and the Leech lattice in exact arithmetic")]
pub struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Include wall-clock timings in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Gap,
}

impl From<FormatArg> for ExportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => ExportFormat::Json,
            FormatArg::Gap => ExportFormat::Gap,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the bundled Niemeier lattices.
    List,
    /// Build and certify the lattice for one or all codewords of a Niemeier lattice.
    Construct {
        label: String,
        /// Codeword index, or `all`.
        #[arg(long, default_value = "0")]
        codeword: String,
        /// Cross-check against the orthogonal complement in `U + N`.
        #[arg(long)]
        oracle: bool,
        /// Compare codeword 0 with the congruence sublattice.
        #[arg(long)]
        corollary: bool,
        /// Also count norm-4 vectors (slow).
        #[arg(long)]
        deep: bool,
        /// Export with the form negated.
        #[arg(long)]
        positive: bool,
        /// Directory for exported lattices.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Certify a lattice file, or check a deep-hole file.
    Verify {
        path: PathBuf,
        /// Also count norm-4 vectors.
        #[arg(long)]
        deep: bool,
        /// Treat the input as a deep-hole file.
        #[arg(long)]
        deephole: bool,
    },
    /// Write a Niemeier lattice with its provenance.
    Export {
        label: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ListEntry {
    pub label: String,
    pub components: Vec<String>,
    pub glue_generators: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodewordResult {
    pub codeword: usize,
    pub classes: Vec<Vec<String>>,
    pub n_gamma: String,
    pub a_gamma: String,
    pub index: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub list: Vec<ListEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub codewords: Vec<CodewordResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deep_hole: Option<DeepHoleReport>,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings: BTreeMap<String, f64>,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport { command: command.into(), ..Default::default() }
    }

    fn finish(mut self) -> Self {
        self.passed = self.checks.iter().all(|c| c.passed)
            && self.deep_hole.as_ref().is_none_or(DeepHoleReport::passed);
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

struct Timer {
    enabled: bool,
    times: BTreeMap<String, f64>,
}

impl Timer {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            *self.times.entry(name.into()).or_default() += start.elapsed().as_secs_f64();
        }
        out
    }
}

/// Parses arguments, runs the command and prints its report; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.to_json());
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs a parsed command. `Err` is reserved for usage and input errors; failed
/// checks are recorded in the report.
pub fn run(cli: &Cli) -> Result<RunReport> {
    let mut timer = Timer { enabled: cli.timings, times: BTreeMap::new() };
    let mut report = match cli.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| LatticeError::Parse(format!("--jobs: {e}")))?;
            pool.install(|| dispatch(&cli.command, &mut timer))?
        }
        None => dispatch(&cli.command, &mut timer)?,
    };
    report.timings = timer.times;
    Ok(report.finish())
}

fn dispatch(command: &Command, timer: &mut Timer) -> Result<RunReport> {
    match command {
        Command::List => Ok(cmd_list()),
        Command::Construct { label, codeword, oracle, corollary, deep, positive, out, format } => {
            let opts = ConstructOptions {
                codeword: codeword.clone(),
                oracle: *oracle,
                corollary: *corollary,
                deep: *deep,
                positive: *positive,
                out: out.clone(),
                format: (*format).into(),
            };
            cmd_construct(label, &opts, timer)
        }
        Command::Verify { path, deep, deephole } => cmd_verify(path, *deep, *deephole, timer),
        Command::Export { label, out, format } => cmd_export(label, out, (*format).into(), timer),
    }
}

fn cmd_list() -> RunReport {
    let mut report = RunReport::new("list");
    report.list = bundled()
        .iter()
        .map(|g| ListEntry {
            label: g.label.clone(),
            components: g.components.iter().map(ToString::to_string).collect(),
            glue_generators: g.glue.len(),
        })
        .collect();
    report
}

#[derive(Clone, Debug)]
pub struct ConstructOptions {
    pub codeword: String,
    pub oracle: bool,
    pub corollary: bool,
    pub deep: bool,
    pub positive: bool,
    pub out: Option<PathBuf>,
    pub format: ExportFormat,
}

fn file_stem(label: &str) -> String {
    label.replace('^', "_")
}

fn extension(format: ExportFormat) -> &'static str {
    match format {
        ExportFormat::Json => "json",
        ExportFormat::Gap => "g",
    }
}

fn write_output(dir: &Path, name: &str, contents: &str) -> Result<String> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    Ok(path.display().to_string())
}

fn selected_codewords(n: &NiemeierLattice, selector: &str) -> Result<Vec<usize>> {
    if selector == "all" {
        return Ok((0..n.code_order()).collect());
    }
    let i: usize = selector
        .parse()
        .map_err(|_| LatticeError::Parse(format!("--codeword expects an index or \"all\", got {selector:?}")))?;
    if i >= n.code_order() {
        return Err(LatticeError::Parse(format!("codeword {i} out of range: {} has {} codewords", n.label, n.code_order())));
    }
    Ok(vec![i])
}

/// Outcome of one codeword, computed independently of the others.
struct CodewordRun {
    result: CodewordResult,
    checks: Vec<Check>,
    export: Option<LatticeFile>,
}

fn failed(module: &'static str, check: &str, e: &LatticeError) -> Check {
    let module = match e {
        LatticeError::Consistency { module, .. } => *module,
        _ => module,
    };
    Check::new(module, check, false, e.to_string())
}

fn run_codeword(n: &NiemeierLattice, i: usize, opts: &ConstructOptions) -> CodewordRun {
    let mut checks = Vec::new();
    let c = match construct_leech(n, i) {
        Ok(c) => c,
        Err(e) => {
            checks.push(failed("leech-build", &format!("construct codeword {i}"), &e));
            let result = CodewordResult {
                codeword: i,
                classes: Vec::new(),
                n_gamma: String::new(),
                a_gamma: String::new(),
                index: String::new(),
                certificate: None,
                output: None,
            };
            return CodewordRun { result, checks, export: None };
        }
    };
    let certificate = match certify_leech(&c.lattice, opts.deep) {
        Ok(cert) => {
            let failures = cert.failures();
            record(&mut checks, "leech-build", &format!("codeword {i} certified"), failures.is_empty(), failures.join(", "));
            Some(cert)
        }
        Err(e) => {
            checks.push(failed("leech-build", &format!("codeword {i} certified"), &e));
            None
        }
    };
    if opts.oracle {
        let agreement = weyl_vector_ln(n)
            .and_then(|w| Ok((w, section_vector(n, i)?)))
            .and_then(|(w, s)| orthocomplement(n, &w, &s))
            .and_then(|oc| compare_with_construction(n, &oc, &c.forms, &c.kernel_basis));
        match agreement {
            Ok(a) => {
                let detail = format!("coordinates {}, module {}, gram {}", a.coordinates, a.module, a.gram);
                record(&mut checks, "hyperbolic", &format!("codeword {i} orthocomplement oracle"), a.all_pass(), detail);
            }
            Err(e) => checks.push(failed("hyperbolic", &format!("codeword {i} orthocomplement oracle"), &e)),
        }
    }
    let result = CodewordResult {
        codeword: i,
        classes: c.classes.iter().map(|a| a.iter().map(ToString::to_string).collect()).collect(),
        n_gamma: c.forms.n_gamma.to_string(),
        a_gamma: c.forms.a_gamma.to_string(),
        index: c.index.to_string(),
        certificate,
        output: None,
    };
    let export = opts.out.as_ref().map(|_| LatticeFile::from_construction(&c, opts.positive));
    CodewordRun { result, checks, export }
}

/// The section classes of `L_N` project exactly onto the canonical representatives.
fn section_class_check(n: &NiemeierLattice, checks: &mut Vec<Check>) {
    match enumerate_section_classes(n) {
        Ok(sols) => {
            let found: BTreeSet<_> = sols.into_iter().map(|r| r.v).collect();
            let expected: BTreeSet<_> = n.code.iter().map(|w| w.v.clone()).collect();
            let detail = format!("{} classes, |code| = {}", found.len(), n.code_order());
            record(checks, "hyperbolic", "section classes = canonical representatives", found == expected, detail);
        }
        Err(e) => checks.push(failed("hyperbolic", "section classes = canonical representatives", &e)),
    }
}

fn cmd_construct(label: &str, opts: &ConstructOptions, timer: &mut Timer) -> Result<RunReport> {
    glue_data(label)?;
    let mut report = RunReport::new("construct");
    report.inputs.insert("label".into(), label.into());
    report.inputs.insert("codeword".into(), opts.codeword.clone());
    for (flag, on) in [("oracle", opts.oracle), ("corollary", opts.corollary), ("deep", opts.deep), ("positive", opts.positive)] {
        report.inputs.insert(flag.into(), on.to_string());
    }
    if opts.out.is_some() {
        report.inputs.insert("format".into(), extension(opts.format).into());
    }
    let n = match timer.time("assemble", || niemeier_cached(label)) {
        Ok(n) => n,
        Err(e) => {
            report.checks.push(failed("niemeier", "assemble", &e));
            return Ok(report);
        }
    };
    record(&mut report.checks, "niemeier", "assemble", true, format!("{}, h = {}, |code| = {}", n.label, n.h, n.code_order()));
    let indices = selected_codewords(&n, &opts.codeword)?;
    let runs: Vec<CodewordRun> =
        timer.time("construct", || indices.par_iter().map(|&i| run_codeword(&n, i, opts)).collect());
    if opts.oracle {
        timer.time("section classes", || section_class_check(&n, &mut report.checks));
    }
    if opts.corollary {
        timer.time("corollary", || {
            let outcome = corollary_zero(&n).and_then(|cor| {
                let con = construct_leech(&n, 0)?;
                compare_corollary(&n, &cor, &con)
            });
            match outcome {
                Ok(()) => {
                    record(&mut report.checks, "leech-build", "corollary equals codeword 0", true, "");
                }
                Err(e) => report.checks.push(failed("leech-build", "corollary equals codeword 0", &e)),
            }
        });
    }
    let stem = file_stem(&n.label);
    for mut run in runs {
        report.checks.append(&mut run.checks);
        if let (Some(dir), Some(file)) = (&opts.out, &run.export) {
            let name = format!("{stem}_codeword{}.{}", run.result.codeword, extension(opts.format));
            let path = write_output(dir, &name, &file.render(opts.format)?)?;
            run.result.output = Some(path.clone());
            report.outputs.push(path);
        }
        report.codewords.push(run.result);
    }
    Ok(report)
}

fn cmd_verify(path: &Path, deep: bool, deephole: bool, timer: &mut Timer) -> Result<RunReport> {
    let mut report = RunReport::new(if deephole { "verify-deephole" } else { "verify" });
    report.inputs.insert("path".into(), path.display().to_string());
    report.inputs.insert("deep".into(), deep.to_string());
    if deephole {
        let input = DeepHoleFile::read(path)?.input()?;
        let dh = timer.time("deep hole", || deep_hole_checks(&input))?;
        record(&mut report.checks, "hyperbolic", "deep hole", dh.is_deep_hole, dh.distance_squared.clone().unwrap_or_default());
        report.deep_hole = Some(dh);
        return Ok(report);
    }
    let lattice = LatticeFile::read(path)?.lattice()?;
    let cert = timer.time("certify", || certify_leech(&lattice, deep))?;
    let failures = cert.failures();
    record(&mut report.checks, "leech-build", "certified", failures.is_empty(), failures.join(", "));
    report.certificate = Some(cert);
    Ok(report)
}

fn cmd_export(label: &str, out: &Path, format: ExportFormat, timer: &mut Timer) -> Result<RunReport> {
    glue_data(label)?;
    let mut report = RunReport::new("export");
    report.inputs.insert("label".into(), label.into());
    report.inputs.insert("format".into(), extension(format).into());
    let n = match timer.time("assemble", || niemeier_cached(label)) {
        Ok(n) => n,
        Err(e) => {
            report.checks.push(failed("niemeier", "assemble", &e));
            return Ok(report);
        }
    };
    let types = format_label(&n.types());
    record(&mut report.checks, "niemeier", "assemble", true, format!("{types}, h = {}", n.h));
    let file = LatticeFile::from_niemeier(&n);
    let name = format!("{}.{}", file_stem(&n.label), extension(format));
    report.outputs.push(write_output(out, &name, &file.render(format)?)?);
    Ok(report)
}
