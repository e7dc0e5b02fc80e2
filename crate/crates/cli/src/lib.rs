//! Command implementations for the `polyweb` binary.
//!
//! Every command renders its whole output into a string before anything is
//! written, so a failed run never leaves a partial file behind.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polyweb_core::transition::{check_nonnegative, check_unitriangular, oracle_from_bases};
use polyweb_core::{
    catalan, compute_transition, delta_product, enumerate_syt, polytabloid, tableau_to_web, verify, Fault, Polynomial,
    SpechtBasis, StandardTableau, SyzygyRule, TabloidVector, TransitionMatrix, VerificationReport, VerifyOptions, Web,
    WebBasis, DEFAULT_ORACLE_CAP, DEFAULT_SEED,
};

pub const ENUM_CAP: usize = 10;
pub const MATRIX_CAP: usize = 6;

pub const ENUM_CAP_VAR: &str = "POLYWEB_ENUM_CAP";
pub const MATRIX_CAP_VAR: &str = "POLYWEB_MATRIX_CAP";
pub const ORACLE_CAP_VAR: &str = "POLYWEB_ORACLE_CAP";

#[derive(Debug, Parser)]
#[command(name = "polyweb", version, about = "Polytabloid and web bases of the (n,n) Specht module")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List standard tableaux, webs and the bijection between them.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Include each standard polytabloid as a list of tabloids.
        #[arg(long)]
        polytabloids: bool,
    },
    /// Compute the transition matrix from polytabloids to webs.
    Matrix {
        #[command(flatten)]
        common: Common,
        /// Also write the product of minors for every web to this file.
        #[arg(long, value_name = "PATH")]
        dump_poly: Option<PathBuf>,
    },
    /// Check positivity and unitriangularity; exit 1 on any failure.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = FaultArg::None)]
        inject_fault: FaultArg,
    },
    /// Compare the transition matrix with the intertwiner oracle.
    OracleCompare {
        #[command(flatten)]
        common: Common,
    },
    /// Time matrix construction (and the oracle) for every size up to `--n`.
    Bench {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub with_oracle: bool,
    #[arg(long, env = ORACLE_CAP_VAR, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
    /// Largest `n` the command accepts. Defaults to the command's memory guard,
    /// which can also be set through `POLYWEB_ENUM_CAP` or `POLYWEB_MATRIX_CAP`.
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    None,
    SyzygySignFlip,
    NegativeEntry,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::None => Fault::None,
            FaultArg::SyzygySignFlip => Fault::SyzygySignFlip,
            FaultArg::NegativeEntry => Fault::NegativeEntry,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 1,
        }
    }
}

/// A finished command: the rendered primary output, plus any side files.
#[derive(Debug)]
pub struct Output {
    pub status: Status,
    pub body: String,
    pub out: Option<PathBuf>,
    pub extra_files: Vec<(PathBuf, String)>,
}

impl Output {
    /// Write the side files, then the body to `out` or stdout.
    pub fn emit(&self) -> anyhow::Result<()> {
        for (path, text) in &self.extra_files {
            write_file(path, text)?;
        }
        match &self.out {
            Some(path) => write_file(path, &self.body),
            None => {
                print!("{}", self.body);
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Run a parsed command, reading cap overrides through `env`.
///
/// Errors are usage errors or refusals; verification failures come back as
/// `Status::VerificationFailed`.
pub fn run(cli: &Cli, env: impl Fn(&str) -> Option<String>) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Enumerate { common, polytabloids } => {
            let n = sized(common, cap(common, &env, ENUM_CAP_VAR, ENUM_CAP)?)?;
            finish(common, Status::Success, enumerate(n, common.format, *polytabloids)?)
        }
        Command::Matrix { common, dump_poly } => {
            let n = sized(common, cap(common, &env, MATRIX_CAP_VAR, MATRIX_CAP)?)?;
            let computed = compute_transition(n, SyzygyRule::Standard)?;
            let body = render_matrix(&computed.matrix, common.format)?;
            let mut out = finish(common, Status::Success, body)?;
            if let Some(path) = dump_poly {
                out.extra_files.push((path.clone(), dump_polynomials(computed.matrix.col_labels())?));
            }
            Ok(out)
        }
        Command::Verify { common, inject_fault } => {
            let n = sized(common, cap(common, &env, MATRIX_CAP_VAR, MATRIX_CAP)?)?;
            if common.with_oracle {
                oracle_guard(common, n)?;
            }
            let options = VerifyOptions {
                with_oracle: common.with_oracle,
                oracle_cap: common.oracle_cap,
                fault: (*inject_fault).into(),
                seed: common.seed,
                ..VerifyOptions::default()
            };
            let report = verify(n, &options)?;
            let status = if report.passed() { Status::Success } else { Status::VerificationFailed };
            finish(common, status, render_report(&report, common.format)?)
        }
        Command::OracleCompare { common } => {
            let n = sized(common, cap(common, &env, MATRIX_CAP_VAR, MATRIX_CAP)?)?;
            oracle_guard(common, n)?;
            let cmp = oracle_compare(n)?;
            let status = if cmp.agrees { Status::Success } else { Status::VerificationFailed };
            finish(common, status, render_comparison(&cmp, common.format)?)
        }
        Command::Bench { common } => {
            let n = sized(common, cap(common, &env, MATRIX_CAP_VAR, MATRIX_CAP)?)?;
            let rows = bench(n, common.with_oracle.then_some(common.oracle_cap))?;
            finish(common, Status::Success, render_bench(&rows, common.format)?)
        }
    }
}

fn cap(common: &Common, env: &impl Fn(&str) -> Option<String>, var: &str, default: usize) -> anyhow::Result<usize> {
    if let Some(c) = common.cap {
        return Ok(c);
    }
    match env(var) {
        Some(v) => v.trim().parse().with_context(|| format!("{var} must be a nonnegative integer, got {v:?}")),
        None => Ok(default),
    }
}

fn sized(common: &Common, cap: usize) -> anyhow::Result<usize> {
    let n = common.n as usize;
    if n > cap {
        bail!("refusing n = {n}: above the cap of {cap} (raise it with --cap or the environment)");
    }
    Ok(n)
}

fn oracle_guard(common: &Common, n: usize) -> anyhow::Result<()> {
    if n > common.oracle_cap {
        bail!(
            "refusing to run the oracle at n = {n}: above the oracle cap of {} (raise it with --oracle-cap or {ORACLE_CAP_VAR})",
            common.oracle_cap
        );
    }
    Ok(())
}

fn finish(common: &Common, status: Status, body: String) -> anyhow::Result<Output> {
    Ok(Output { status, body, out: common.out.clone(), extra_files: Vec::new() })
}

fn json(value: &impl Serialize) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> anyhow::Result<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    write(&mut w)?;
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)?)
}

fn partner_label(w: &Web) -> String {
    w.partners().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Enumeration {
    pub n: usize,
    pub count: usize,
    pub tableaux: Vec<StandardTableau>,
    pub webs: Vec<Web>,
    /// `pairing[k]` is the index of the web matched with `tableaux[k]`.
    pub pairing: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polytabloids: Option<Vec<TabloidVector>>,
}

pub fn enumeration(n: usize, with_polytabloids: bool) -> anyhow::Result<Enumeration> {
    let tableaux = enumerate_syt(n)?;
    let basis = WebBasis::new(n)?;
    let pairing = tableaux
        .iter()
        .map(|t| basis.index_of(&tableau_to_web(t)).context("tableau mapped outside the web basis"))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let count = tableaux.len();
    if catalan(n) != count.into() || basis.dim() != count {
        bail!("enumeration size mismatch at n = {n}");
    }
    let polytabloids = with_polytabloids.then(|| tableaux.iter().map(|t| polytabloid(t)).collect());
    Ok(Enumeration { n, count, tableaux, webs: basis.webs().to_vec(), pairing, polytabloids })
}

fn enumerate(n: usize, format: Format, with_polytabloids: bool) -> anyhow::Result<String> {
    let e = enumeration(n, with_polytabloids)?;
    match format {
        Format::Json => json(&e),
        Format::Csv => csv_string(|w| {
            let mut header = vec!["index", "tableau", "web"];
            if e.polytabloids.is_some() {
                header.push("polytabloid");
            }
            w.write_record(&header)?;
            for (k, t) in e.tableaux.iter().enumerate() {
                let mut rec = vec![k.to_string(), t.to_string(), partner_label(&e.webs[e.pairing[k]])];
                if let Some(p) = &e.polytabloids {
                    rec.push(p[k].to_string());
                }
                w.write_record(&rec)?;
            }
            Ok(())
        }),
    }
}

// ---------------------------------------------------------------------------
// matrix
// ---------------------------------------------------------------------------

fn render_matrix(a: &TransitionMatrix, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => json(a),
        Format::Csv => csv_string(|w| {
            let mut header = vec!["tableau\\web".to_string()];
            header.extend(a.col_labels().iter().map(partner_label));
            w.write_record(&header)?;
            for (t, row) in a.row_labels().iter().zip(a.entries()) {
                let mut rec = vec![t.to_string()];
                rec.extend(row.iter().map(|x| x.to_string()));
                w.write_record(&rec)?;
            }
            Ok(())
        }),
    }
}

#[derive(Serialize)]
struct WebPolynomial<'a> {
    web: &'a Web,
    polynomial: Polynomial,
}

fn dump_polynomials(webs: &[Web]) -> anyhow::Result<String> {
    let list: Vec<WebPolynomial> =
        webs.iter().map(|w| WebPolynomial { web: w, polynomial: delta_product(w) }).collect();
    json(&list)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn render_report(r: &VerificationReport, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_string(|w| {
            let flag = |b: bool| if b { "pass" } else { "fail" }.to_string();
            let oracle = match r.oracle_agrees {
                Some(b) => flag(b),
                None => "NotRun".to_string(),
            };
            w.write_record(["check", "result", "detail"])?;
            w.write_record(["n".into(), r.n.to_string(), String::new()])?;
            w.write_record(["nonnegative".into(), flag(r.nonnegative), String::new()])?;
            w.write_record(["diagonalOnes".into(), flag(r.diagonal_ones), String::new()])?;
            w.write_record(["supportAcyclic".into(), flag(r.support_acyclic), String::new()])?;
            w.write_record(["rowSignsPositive".into(), flag(r.row_signs_positive), String::new()])?;
            w.write_record([
                "resolutionSampleNonnegative".into(),
                flag(r.resolution_sample_nonnegative),
                format!("{} samples", r.resolution_sample_size),
            ])?;
            w.write_record(["oracleAgrees".into(), oracle, String::new()])?;
            for c in &r.counterexamples {
                w.write_record(["counterexample", c.check.as_str(), c.detail.as_str()])?;
            }
            Ok(())
        }),
    }
}

// ---------------------------------------------------------------------------
// oracle-compare
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub computed: String,
    pub oracle: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleComparison {
    pub n: usize,
    pub dim: usize,
    pub agrees: bool,
    /// Set when the oracle could not produce a matrix (wrong nullspace
    /// dimension, or non-integral after normalization).
    pub oracle_error: Option<String>,
    pub mismatches: Vec<Mismatch>,
}

pub fn oracle_compare(n: usize) -> anyhow::Result<OracleComparison> {
    let computed = compute_transition(n, SyzygyRule::Standard)?.matrix;
    let dim = computed.dim();
    let oracle = match oracle_from_bases(&SpechtBasis::new(n)?, &WebBasis::new(n)?) {
        Ok(o) => o,
        Err(e) => {
            return Ok(OracleComparison {
                n,
                dim,
                agrees: false,
                oracle_error: Some(e.to_string()),
                mismatches: vec![],
            })
        }
    };
    let mut mismatches = Vec::new();
    for row in 0..dim {
        for col in 0..dim {
            if computed.entry(row, col) != oracle.entry(row, col) {
                mismatches.push(Mismatch {
                    row,
                    col,
                    computed: computed.entry(row, col).to_string(),
                    oracle: oracle.entry(row, col).to_string(),
                });
            }
        }
    }
    Ok(OracleComparison { n, dim, agrees: mismatches.is_empty(), oracle_error: None, mismatches })
}

fn render_comparison(c: &OracleComparison, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => json(c),
        Format::Csv => csv_string(|w| {
            w.write_record(["n", "dim", "agrees", "oracleError"])?;
            w.write_record([
                c.n.to_string(),
                c.dim.to_string(),
                c.agrees.to_string(),
                c.oracle_error.clone().unwrap_or_default(),
            ])?;
            w.write_record(["row", "col", "computed", "oracle"])?;
            for m in &c.mismatches {
                w.write_record([m.row.to_string(), m.col.to_string(), m.computed.clone(), m.oracle.clone()])?;
            }
            Ok(())
        }),
    }
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchRow {
    pub n: usize,
    pub dim: usize,
    pub matrix_millis: f64,
    pub memo_entries: usize,
    pub syzygy_applications: u64,
    pub checks_millis: f64,
    pub oracle_millis: Option<f64>,
}

pub fn bench(max_n: usize, oracle_cap: Option<usize>) -> anyhow::Result<Vec<BenchRow>> {
    let millis = |t: Instant| t.elapsed().as_secs_f64() * 1e3;
    (1..=max_n)
        .map(|n| {
            let start = Instant::now();
            let computed = compute_transition(n, SyzygyRule::Standard)?;
            let matrix_millis = millis(start);

            let start = Instant::now();
            let _ = (check_nonnegative(&computed.matrix), check_unitriangular(&computed.matrix));
            let checks_millis = millis(start);

            let oracle_millis = match oracle_cap {
                Some(cap) if n <= cap => {
                    let start = Instant::now();
                    oracle_from_bases(&SpechtBasis::new(n)?, &WebBasis::new(n)?)?;
                    Some(millis(start))
                }
                _ => None,
            };
            Ok(BenchRow {
                n,
                dim: computed.matrix.dim(),
                matrix_millis,
                memo_entries: computed.stats.memo_entries,
                syzygy_applications: computed.stats.syzygy_applications,
                checks_millis,
                oracle_millis,
            })
        })
        .collect()
}

fn render_bench(rows: &[BenchRow], format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => json(&rows),
        Format::Csv => csv_string(|w| {
            w.write_record([
                "n",
                "dim",
                "matrixMillis",
                "memoEntries",
                "syzygyApplications",
                "checksMillis",
                "oracleMillis",
            ])?;
            for r in rows {
                w.write_record([
                    r.n.to_string(),
                    r.dim.to_string(),
                    format!("{:.3}", r.matrix_millis),
                    r.memo_entries.to_string(),
                    r.syzygy_applications.to_string(),
                    format!("{:.3}", r.checks_millis),
                    r.oracle_millis.map(|m| format!("{m:.3}")).unwrap_or_default(),
                ])?;
            }
            Ok(())
        }),
    }
}
