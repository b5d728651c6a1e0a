//! The `check` and `deloop` commands.
//!
//! Both commands load documents, run the matching checkers and render the
//! resulting reports as text or as a JSON envelope. Exit codes: `0` when
//! every check passes, `1` on a failing check, `2` when an input cannot be
//! read or parsed, `3` when structures are enriched over different bases.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

use crate::deloop::{check_v2category, tensor_enriched, verify_delooping};
use crate::doc::{enriched_document, Loader, Reference, Structure};
use crate::enrich::{check_enriched_category, check_enriched_functor, EnrichedCategory};
use crate::error::Error;
use crate::fincat::check_category_laws;
use crate::monoidal::{check_kfold, check_symmetric, KFoldStructure};
use crate::report::{CheckOptions, DiagramReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BASE_MISMATCH: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub check: CheckOptions,
    pub format: Format,
    /// Directory for the product categories built by `deloop`.
    pub emit: Option<PathBuf>,
    /// File receiving the machine-readable report.
    pub report: Option<PathBuf>,
}

/// Result of one command: the exit status, the reports and both renderings.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub reports: Vec<DiagramReport>,
    pub error: Option<Error>,
    pub text: String,
    pub machine: String,
}

impl RunOutcome {
    pub fn rendered(&self, format: Format) -> &str {
        match format {
            Format::Text => &self.text,
            Format::Machine => &self.machine,
        }
    }

    pub fn passed(&self) -> bool {
        self.exit_code == EXIT_PASS
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    inputs: Vec<String>,
    exhaustive_budget: u64,
    sample: u64,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    suites: &'a [DiagramReport],
    coverage: BTreeMap<String, u64>,
    passed: bool,
    exit_code: i32,
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::BaseMismatch(_) => EXIT_BASE_MISMATCH,
        _ => EXIT_PARSE,
    }
}

fn finish(command: &str, inputs: Vec<String>, options: &RunOptions, result: Result<Vec<DiagramReport>, Error>) -> RunOutcome {
    let (reports, error) = match result {
        Ok(r) => (r, None),
        Err(e) => (Vec::new(), Some(e)),
    };
    let passed = error.is_none() && reports.iter().all(DiagramReport::passed);
    let exit_code = match &error {
        Some(e) => exit_code_for(e),
        None if passed => EXIT_PASS,
        None => EXIT_FAIL,
    };
    let mut coverage = BTreeMap::new();
    for r in &reports {
        for (label, n) in &r.coverage {
            *coverage.entry(format!("{}: {label}", r.suite)).or_insert(0) += n;
        }
    }

    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.to_string());
    }
    match &error {
        Some(e) => text.push_str(&format!("error: {e}\n")),
        None => {
            let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
            let failing: usize = reports.iter().map(|r| r.failing().count()).sum();
            let verdict = if passed { "PASS" } else { "FAIL" };
            text.push_str(&format!("result: {verdict} ({checks} checks, {failing} failing)\n"));
        }
    }

    let envelope = Envelope {
        tool: "itermon",
        version: env!("CARGO_PKG_VERSION"),
        command,
        inputs,
        exhaustive_budget: options.check.exhaustive_budget,
        sample: options.check.sample,
        seed: options.check.seed,
        error: error.as_ref().map(Error::to_string),
        suites: &reports,
        coverage,
        passed,
        exit_code,
    };
    let mut machine = serde_json::to_string_pretty(&envelope).expect("reports serialize");
    machine.push('\n');

    let mut out = RunOutcome {
        exit_code,
        reports,
        error,
        text,
        machine,
    };
    if let Some(path) = &options.report {
        if let Err(e) = fs::write(path, &out.machine) {
            out.text.push_str(&format!("error: cannot write report {}: {e}\n", path.display()));
            out.exit_code = EXIT_PARSE;
        }
    }
    out
}

/// Loads one document and runs every checker that applies to its kind.
pub fn run_check(path: &Path, options: &RunOptions) -> RunOutcome {
    let result = Loader::new().load(path).map(|s| check_structure(&s, &options.check));
    finish("check", vec![path.display().to_string()], options, result)
}

pub fn check_structure(s: &Structure, options: &CheckOptions) -> Vec<DiagramReport> {
    match s {
        Structure::Category(c) => vec![check_category_laws(c)],
        Structure::KFold(v) => vec![check_category_laws(v.base()), check_kfold(v, options)],
        Structure::Symmetric(sym) => vec![check_category_laws(sym.base()), check_symmetric(sym, options)],
        Structure::Enriched(cat) => vec![check_enriched_category(cat, options)],
        Structure::EnrichedFunctor(t) => vec![
            check_enriched_category(t.source(), options),
            check_enriched_category(t.target(), options),
            check_enriched_functor(t, options),
        ],
        Structure::V2Category(w) => vec![check_v2category(w, options)],
    }
}

fn expect_kfold(s: Structure, path: &Path) -> Result<Arc<KFoldStructure>, Error> {
    match s {
        Structure::KFold(v) => Ok(v),
        other => Err(Error::Parse {
            file: path.display().to_string(),
            line: 0,
            column: 0,
            message: format!("expected a kfold document, found {}", other.kind()),
        }),
    }
}

fn expect_enriched(s: Structure, path: &Path) -> Result<Arc<EnrichedCategory>, Error> {
    match s {
        Structure::Enriched(c) => Ok(c),
        other => Err(Error::Parse {
            file: path.display().to_string(),
            line: 0,
            column: 0,
            message: format!("expected an enriched document, found {}", other.kind()),
        }),
    }
}

/// File name for an emitted product.
pub fn product_file_name(a: &str, i: usize, b: &str) -> String {
    let clean = |s: &str| -> String {
        s.chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect()
    };
    format!("{}.x{i}.{}.json", clean(a), clean(b))
}

/// Writes `a ⊗^(1)_i b` for every ordered pair of samples and every valid
/// `i`, referring to the base by the absolute path of `v_path`.
fn emit_products(dir: &Path, v_path: &Path, v: &KFoldStructure, sample: &[EnrichedCategory]) -> Result<(), Error> {
    let io = |e: std::io::Error| Error::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    fs::create_dir_all(dir).map_err(io)?;
    let base_path = fs::canonicalize(v_path).map_err(|e| Error::Io {
        path: v_path.display().to_string(),
        message: e.to_string(),
    })?;
    let base = Reference::path(base_path.display().to_string());
    for i in 1..v.k() {
        for a in sample {
            for b in sample {
                let product = tensor_enriched(a, b, i)?;
                let doc = enriched_document(&product, base.clone());
                doc.write(&dir.join(product_file_name(a.name(), i, b.name())))?;
            }
        }
    }
    Ok(())
}

/// Checks the base and the samples, then replays the delooping on them.
pub fn run_deloop(v_path: &Path, cat_paths: &[PathBuf], options: &RunOptions) -> RunOutcome {
    let mut inputs = vec![v_path.display().to_string()];
    inputs.extend(cat_paths.iter().map(|p| p.display().to_string()));
    let result = (|| {
        let mut loader = Loader::new();
        let v = expect_kfold(loader.load(v_path)?, v_path)?;
        let sample = cat_paths
            .iter()
            .map(|p| Ok((*expect_enriched(loader.load(p)?, p)?).clone()))
            .collect::<Result<Vec<_>, Error>>()?;
        let mut reports = vec![check_kfold(&v, &options.check)];
        reports.extend(sample.iter().map(|c| check_enriched_category(c, &options.check)));
        reports.push(verify_delooping(&v, &sample, &options.check)?);
        if let Some(dir) = &options.emit {
            emit_products(dir, v_path, &v, &sample)?;
        }
        Ok(reports)
    })();
    finish("deloop", inputs, options, result)
}

