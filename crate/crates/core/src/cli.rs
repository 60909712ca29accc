//! Command-line front end. Reports are JSON objects with keys
//! `command`, `inputs`, `result`, `diagnostics` and `version`; object keys
//! are emitted in sorted order so identical invocations give identical bytes.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::{format_rational, Element, Monomial};
use crate::classifier::{classify_with, Certificate, Verdict, DEFAULT_N_MAX};
use crate::engine::{
    apply, build_basis, commutator_pair, commutator_projected_gram, make_fk, q_value, selfcomm_form_on, TruncatedBasis,
};
use crate::error::Error;
use crate::linalg::{is_antisymmetric, psd_test, rank, ExactMatrix, HermitianForm, PsdOutcome};
use crate::symbol::{format_symbol, parse_symbol};
use crate::verify::{self, Bounds, Selection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Truncation order for `matrix` and `rank` when `--N` is not given.
pub const DEFAULT_ORDER: u32 = 5;

#[derive(Debug, Parser)]
#[command(name = "dual-toeplitz", version, about = "Exact dual Toeplitz operator computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    Selfcomm,
    Commutator,
}

#[derive(Debug, clap::Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide normality of S_φ.
    Classify {
        #[arg(long)]
        symbol: String,
        #[arg(long = "N-max", default_value_t = DEFAULT_N_MAX)]
        n_max: u32,
        /// Include wall-clock time in the diagnostics (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Dump a restricted self-commutator or commutator matrix.
    Matrix {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        symbol2: Option<String>,
        #[arg(long, value_enum, default_value = "selfcomm")]
        kind: MatrixKind,
        #[arg(long = "N", default_value_t = DEFAULT_ORDER)]
        order: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Ranks for every order 1..=N: the self-commutator matrix, or the
    /// commutator matrix when --symbol2 is given.
    Rank {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        symbol2: Option<String>,
        #[arg(long = "N", default_value_t = DEFAULT_ORDER)]
        order: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Truncation order for the commutator-rank suite.
        #[arg(long = "N")]
        order: Option<u32>,
        /// Exponent bound for the monomial and radial-pair suites.
        #[arg(long)]
        max_exponent: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Compute S_φ f, for f given as --f or as the test vector f_k with --k.
    Apply {
        #[arg(long)]
        symbol: String,
        #[arg(long, conflicts_with = "k")]
        f: Option<String>,
        #[arg(long)]
        k: Option<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// ⟨f, g⟩ in L²(𝔻) with normalized area measure.
    InnerProduct {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        symbol2: String,
        #[command(flatten)]
        output: Output,
    },
}

/// A command failure: message and exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

struct Report {
    command: &'static str,
    inputs: Map<String, Value>,
    result: Value,
    diagnostics: Map<String, Value>,
    csv: Option<String>,
    code: i32,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self { command, inputs: Map::new(), result: Value::Null, diagnostics: Map::new(), csv: None, code: EXIT_OK }
    }

    fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    fn diagnostic(&mut self, key: &str, value: impl Into<Value>) {
        self.diagnostics.insert(key.to_string(), value.into());
    }

    fn to_json(&self) -> String {
        let value = json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "diagnostics": self.diagnostics,
            "version": env!("CARGO_PKG_VERSION"),
        });
        let mut s = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

fn parse(text: &str, flag: &str) -> Result<Element, Failure> {
    parse_symbol(text).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn symbol_input(report: &mut Report, key: &str, text: &str, parsed: &Element) {
    report.input(key, json!({ "source": text, "canonical": format_symbol(parsed) }));
}

fn label(m: Monomial) -> Value {
    json!([m.n, m.m])
}

fn matrix_json(m: &ExactMatrix) -> Value {
    Value::from(m.to_string_rows())
}

fn matrix_csv(m: &ExactMatrix, basis: &TruncatedBasis) -> String {
    let labels = basis.labels();
    let mut out = String::from("n,m");
    for l in labels {
        out.push_str(&format!(",e_{}_{}", l.n, l.m));
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(m.to_string_rows()) {
        out.push_str(&format!("{},{},{}\n", l.n, l.m, row.join(",")));
    }
    out
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::ZeroUpTo(order) => json!({ "kind": "ZeroUpTo", "order": order }),
        Certificate::NotNormalCertified { order, entry, witness } => {
            let witness = witness.as_ref().map_or(Value::Null, |w| {
                json!({
                    "element": format_symbol(&w.element),
                    "coordinates": w.coordinates.iter().map(|c| c.to_canonical_string()).collect::<Vec<_>>(),
                    "q_value": format_rational(&w.q_value),
                })
            });
            json!({
                "kind": "NotNormalCertified",
                "order": order,
                "entry": {
                    "row": label(entry.row_label),
                    "col": label(entry.col_label),
                    "value": entry.value.to_canonical_string(),
                },
                "witness": witness,
            })
        }
    }
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "status": v.status.as_str(),
        "rule": v.rule.tag(),
        "certificate": v.certificate.as_ref().map_or(Value::Null, certificate_json),
        "note": v.note,
    })
}

fn psd_json(outcome: &PsdOutcome, basis: &TruncatedBasis, phi: &Element) -> Value {
    match outcome {
        PsdOutcome::Psd { rank } => json!({ "psd": true, "rank": rank }),
        PsdOutcome::Indefinite { witness, value } => {
            let element = basis.combine(witness);
            json!({
                "psd": false,
                "witness": {
                    "coordinates": witness.iter().map(|c| c.to_canonical_string()).collect::<Vec<_>>(),
                    "element": format_symbol(&element),
                    "form_value": format_rational(value),
                    "q_value": format_rational(&q_value(phi, &element)),
                },
            })
        }
    }
}

fn cmd_classify(symbol: &str, n_max: u32, timing: bool) -> Result<Report, Failure> {
    let mut report = Report::new("classify");
    let phi = parse(symbol, "symbol")?;
    symbol_input(&mut report, "symbol", symbol, &phi);
    report.input("N_max", n_max);
    let start = Instant::now();
    let verdict = classify_with(&phi, n_max)?;
    if timing {
        report.diagnostic("elapsed_ms", start.elapsed().as_secs_f64() * 1e3);
    }
    report.result = verdict_json(&verdict);
    Ok(report)
}

fn cmd_matrix(symbol: &str, symbol2: Option<&str>, kind: MatrixKind, order: u32) -> Result<Report, Failure> {
    let mut report = Report::new("matrix");
    let phi = parse(symbol, "symbol")?;
    symbol_input(&mut report, "symbol", symbol, &phi);
    report.input("N", order);
    let basis = build_basis(order)?;
    let matrix = match kind {
        MatrixKind::Selfcomm => {
            report.input("kind", "selfcomm");
            let a = selfcomm_form_on(&phi, &basis);
            let form = HermitianForm::new(a.clone())?;
            report.diagnostic("is_zero", a.is_zero());
            report.diagnostic("rank", rank(&a));
            report.diagnostic("psd_test", psd_json(&psd_test(&form), &basis, &phi));
            a
        }
        MatrixKind::Commutator => {
            report.input("kind", "commutator");
            let text = symbol2.ok_or_else(|| usage("--symbol2 is required for --kind commutator"))?;
            let psi = parse(text, "symbol2")?;
            symbol_input(&mut report, "symbol2", text, &psi);
            let (b, g) = commutator_pair(&phi, &psi, order)?;
            let r = rank(&b);
            report.diagnostic("rank", r);
            report.diagnostic("rank_even", r.is_multiple_of(2));
            report.diagnostic("swapped_antisymmetric", is_antisymmetric(&b.permute_rows(basis.swap()))?);
            report.diagnostic("range_gram_rank", rank(&g));
            report.diagnostic("projected_gram_rank", rank(&commutator_projected_gram(&phi, &psi, order)?));
            b
        }
    };
    report.result = json!({
        "labels": basis.labels().iter().map(|l| label(*l)).collect::<Vec<_>>(),
        "matrix": matrix_json(&matrix),
    });
    report.csv = Some(matrix_csv(&matrix, &basis));
    Ok(report)
}

fn cmd_rank(symbol: &str, symbol2: Option<&str>, order: u32) -> Result<Report, Failure> {
    let mut report = Report::new("rank");
    let phi = parse(symbol, "symbol")?;
    symbol_input(&mut report, "symbol", symbol, &phi);
    report.input("N", order);
    if order == 0 {
        return Err(Error::InvalidOrder.into());
    }
    let psi = symbol2.map(|t| parse(t, "symbol2").map(|p| (t, p))).transpose()?;
    let mut rows = Vec::new();
    let mut csv = String::new();
    match &psi {
        None => {
            csv.push_str("N,rank,is_zero\n");
            for n in 1..=order {
                let a = selfcomm_form_on(&phi, &build_basis(n)?);
                let r = rank(&a);
                rows.push(json!({ "N": n, "rank": r, "is_zero": a.is_zero() }));
                csv.push_str(&format!("{n},{r},{}\n", a.is_zero()));
            }
        }
        Some((text, psi)) => {
            symbol_input(&mut report, "symbol2", text, psi);
            csv.push_str("N,rank,rank_even,swapped_antisymmetric,projected_gram_rank,range_gram_rank\n");
            for n in 1..=order {
                let basis = build_basis(n)?;
                let (b, g) = commutator_pair(&phi, psi, n)?;
                let r = rank(&b);
                let anti = is_antisymmetric(&b.permute_rows(basis.swap()))?;
                let projected = rank(&commutator_projected_gram(&phi, psi, n)?);
                let range = rank(&g);
                rows.push(json!({
                    "N": n,
                    "rank": r,
                    "rank_even": r.is_multiple_of(2),
                    "swapped_antisymmetric": anti,
                    "projected_gram_rank": projected,
                    "range_gram_rank": range,
                }));
                csv.push_str(&format!("{n},{r},{},{anti},{projected},{range}\n", r.is_multiple_of(2)));
            }
        }
    }
    report.input("kind", if psi.is_some() { "commutator" } else { "selfcomm" });
    report.result = Value::from(rows);
    report.csv = Some(csv);
    Ok(report)
}

fn cmd_verify(suite: &str, order: Option<u32>, max_exponent: Option<u32>) -> Result<Report, Failure> {
    let mut report = Report::new("verify");
    report.input("suite", suite);
    let selection: Selection = suite.parse()?;
    let mut bounds = Bounds::default();
    if let Some(n) = order {
        if n == 0 {
            return Err(Error::InvalidOrder.into());
        }
        bounds.commutator_order = n;
    }
    if let Some(e) = max_exponent {
        bounds.monomial_max = e;
        bounds.radial_max = e;
    }
    for (name, value) in verify::describe_bounds(&bounds) {
        report.input(name, value);
    }
    let reports = verify::run(selection, &bounds);
    let all_passed = reports.iter().all(verify::SuiteReport::all_passed);
    let mut csv = String::from("suite,passed,failed\n");
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            csv.push_str(&format!("{},{},{}\n", r.suite, r.passed, r.failed));
            json!({
                "suite": r.suite.name(),
                "passed": r.passed,
                "failed": r.failed,
                "first_counterexample": r.first_counterexample,
            })
        })
        .collect();
    report.result = json!({ "all_passed": all_passed, "suites": suites });
    report.csv = Some(csv);
    if !all_passed {
        report.code = EXIT_VERIFY_FAILED;
    }
    Ok(report)
}

fn cmd_apply(symbol: &str, f: Option<&str>, k: Option<i64>) -> Result<Report, Failure> {
    let mut report = Report::new("apply");
    let phi = parse(symbol, "symbol")?;
    symbol_input(&mut report, "symbol", symbol, &phi);
    let vector = match (f, k) {
        (Some(text), None) => {
            let v = parse(text, "f")?;
            symbol_input(&mut report, "f", text, &v);
            v
        }
        (None, Some(k)) => {
            report.input("k", k);
            make_fk(k)?
        }
        _ => return Err(usage("exactly one of --f and --k is required")),
    };
    let image = apply(&phi, &vector);
    report.result = json!({
        "vector": format_symbol(&vector),
        "image": format_symbol(&image),
        "q_value": format_rational(&q_value(&phi, &vector)),
    });
    Ok(report)
}

fn cmd_inner_product(symbol: &str, symbol2: &str) -> Result<Report, Failure> {
    let mut report = Report::new("inner-product");
    let f = parse(symbol, "symbol")?;
    let g = parse(symbol2, "symbol2")?;
    symbol_input(&mut report, "symbol", symbol, &f);
    symbol_input(&mut report, "symbol2", symbol2, &g);
    report.result = Value::from(f.inner(&g).to_canonical_string());
    Ok(report)
}

fn render(report: &Report, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(report.to_json()),
        Format::Csv => {
            report.csv.clone().ok_or_else(|| usage(format!("--format csv is not available for {}", report.command)))
        }
    }
}

/// Runs a parsed command, writing the report; returns the exit code.
pub fn execute(cli: Cli) -> i32 {
    let (result, output) = match cli.command {
        Command::Classify { symbol, n_max, timing, output } => (cmd_classify(&symbol, n_max, timing), output),
        Command::Matrix { symbol, symbol2, kind, order, output } => {
            (cmd_matrix(&symbol, symbol2.as_deref(), kind, order), output)
        }
        Command::Rank { symbol, symbol2, order, output } => (cmd_rank(&symbol, symbol2.as_deref(), order), output),
        Command::Verify { suite, order, max_exponent, output } => (cmd_verify(&suite, order, max_exponent), output),
        Command::Apply { symbol, f, k, output } => (cmd_apply(&symbol, f.as_deref(), k), output),
        Command::InnerProduct { symbol, symbol2, output } => (cmd_inner_product(&symbol, &symbol2), output),
    };
    let outcome = result.and_then(|report| Ok((render(&report, output.format)?, report.code)));
    match outcome {
        Ok((text, code)) => match write_output(&text, output.out.as_ref()) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn write_output(text: &str, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Entry point used by the binary: parses `std::env::args` and executes.
pub fn main() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
