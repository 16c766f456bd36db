//! Command implementations behind the `hirzecode` binary.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use hirzecode::code::evaluation_matrix;
use hirzecode::lattice::a_value;
use hirzecode::search::nonzero_codewords;
use hirzecode::surface::monomial_at;
use hirzecode::{
    build_code, curve_point_bound, dimension_closed_form, dimension_oracle, distance_evidence, equivalent, exhaustive_distance, hypothesis_h,
    monomial_basis, polygon_points, polygon_summary, puncture_fiber, rational_points, representatives, special_kernel_element, Bidegree, Field,
    LinearCode, DEFAULT_BUDGET,
};

/// Exit status for malformed or unsupported input.
pub const EXIT_INVALID: u8 = 2;
/// Exit status when a verification check fails.
pub const EXIT_MISMATCH: u8 = 1;

#[derive(Debug, Parser)]
#[command(name = "hirzecode", version, about = "Evaluation codes on Hirzebruch surfaces: parameters, oracles and export")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the parameters of one code.
    Params(ParamsArgs),
    /// Check closed forms against oracles over a sweep; exits 1 on any mismatch.
    Verify(SweepArgs),
    /// Write a generator matrix in the v1 text format.
    Export(ExportArgs),
    /// Tabulate parameters over a sweep.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Instance {
    #[arg(long)]
    pub eta: u32,
    #[arg(long = "dT", allow_negative_numbers = true)]
    pub dt: i64,
    #[arg(long = "dX", allow_negative_numbers = true)]
    pub dx: i64,
    #[arg(long)]
    pub q: u64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct BudgetArg {
    /// Largest number of nonzero codewords enumerated by exhaustive search.
    #[arg(long, env = "HIRZECODE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamsFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub instance: Instance,
    #[command(flatten)]
    pub budget: BudgetArg,
    #[arg(long, value_enum, default_value_t = ParamsFormat::Text)]
    pub format: ParamsFormat,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub instance: Instance,
    /// Delete the coordinates on the fibre x1 = 0.
    #[arg(long)]
    pub punctured: bool,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [0u32, 2, 3])]
    pub eta: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 4, 5])]
    pub q: Vec<u64>,
    #[arg(long = "dX-min", allow_negative_numbers = true, default_value_t = 0)]
    pub dx_min: i64,
    #[arg(long = "dX-max", allow_negative_numbers = true, default_value_t = 4)]
    pub dx_max: i64,
    /// Lower end of the dT range; defaults to -eta*dX for each row.
    #[arg(long = "dT-min", allow_negative_numbers = true)]
    pub dt_min: Option<i64>,
    #[arg(long = "dT-max", allow_negative_numbers = true, default_value_t = 6)]
    pub dt_max: i64,
    #[command(flatten)]
    pub budget: BudgetArg,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
}

impl SweepArgs {
    /// All `(eta, dT, dX, q)` in the sweep, ordered by `(eta, q, dT, dX)`.
    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for &eta in &self.eta {
            for &q in &self.q {
                for dx in self.dx_min..=self.dx_max {
                    let lo = self.dt_min.unwrap_or(-(eta as i64) * dx);
                    for dt in lo..=self.dt_max {
                        out.push(Instance { eta, dt, dx, q });
                    }
                }
            }
        }
        out.sort_by_key(|i| (i.eta, i.q, i.dt, i.dx));
        out.dedup_by_key(|i| (i.eta, i.q, i.dt, i.dx));
        out
    }
}

/// A failure to be reported with a specific exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: EXIT_INVALID, error: e.into() }
    }
}

/// Runs a parsed command, writing results to `out`. Returns the exit status.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    match cli.command {
        Command::Params(a) => params(&a, out),
        Command::Export(a) => export(&a, out),
        Command::Verify(a) => table(&a, true, out),
        Command::Sweep(a) => table(&a, false, out),
    }
}

fn resolve(instance: &Instance) -> hirzecode::Result<(Field, Bidegree)> {
    let field = Field::with_order(instance.q)?;
    let bideg = Bidegree::new(instance.eta, instance.dt, instance.dx);
    bideg.validate()?;
    Ok((field, bideg))
}

#[derive(Debug, Serialize)]
struct ParamsReport {
    eta: u32,
    dt: i64,
    dx: i64,
    q: u32,
    n: usize,
    k_formula: Option<u64>,
    k_oracle: usize,
    d_formula: Option<u64>,
    d_cert: Option<u64>,
    d_source: Option<&'static str>,
    hypothesis_h: bool,
    a: String,
    m: Option<i64>,
    s: Option<String>,
    s_tilde: Option<i64>,
    h: Option<i64>,
    curve_bound: Option<u64>,
    closed_form: &'static str,
}

/// Certified distance from the collected evidence, with its source.
fn certified(code: &LinearCode, budget: u64) -> hirzecode::Result<(Option<u64>, Option<&'static str>, hirzecode::DistanceEvidence)> {
    let ev = distance_evidence(code, budget)?;
    if let Some(d) = ev.exhaustive {
        return Ok((Some(d), Some("exhaustive"), ev));
    }
    match (&ev.bound, ev.witness_weight) {
        (Some(b), Some(w)) if b.bound == w => Ok((Some(w), Some("witness+bound"), ev)),
        _ => Ok((None, None, ev)),
    }
}

fn params(args: &ParamsArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let (field, bideg) = resolve(&args.instance)?;
    let q = field.order();
    let code = build_code(&field, &bideg)?;
    let (d_cert, d_source, ev) = certified(&code, args.budget.budget)?;
    let summary = polygon_summary(&bideg, q).ok();
    let terms = summary.as_ref().and_then(|s| s.terms.clone());
    let report = ParamsReport {
        eta: bideg.eta,
        dt: bideg.dt,
        dx: bideg.dx,
        q,
        n: code.length(),
        k_formula: dimension_closed_form(&bideg, q).ok(),
        k_oracle: dimension_oracle(&code),
        d_formula: ev.closed_form,
        d_cert,
        d_source,
        hypothesis_h: hypothesis_h(&bideg, q),
        a: a_value(&bideg).to_string(),
        m: terms.as_ref().map(|t| t.m),
        s: terms.as_ref().map(|t| t.s.to_string()),
        s_tilde: terms.as_ref().map(|t| t.s_tilde),
        h: terms.as_ref().map(|t| t.h),
        curve_bound: curve_point_bound(&bideg, q).ok().map(|c| c.value),
        closed_form: if bideg.eta == 1 { "unsupported (eta=1)" } else { "supported" },
    };
    match args.format {
        ParamsFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        ParamsFormat::Text => write_params_text(&report, out)?,
    }
    Ok(0)
}

fn write_params_text(r: &ParamsReport, out: &mut dyn Write) -> std::io::Result<()> {
    fn opt<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map_or_else(|| "n/a".to_string(), T::to_string)
    }
    writeln!(out, "instance: eta={} dT={} dX={} q={}", r.eta, r.dt, r.dx, r.q)?;
    writeln!(out, "closed_form: {}", r.closed_form)?;
    writeln!(out, "n={} k={} d={}", r.n, r.k_oracle, opt(&r.d_cert))?;
    writeln!(out, "k_formula: {}", opt(&r.k_formula))?;
    writeln!(out, "k_oracle: {}", r.k_oracle)?;
    writeln!(out, "d_formula: {}", opt(&r.d_formula))?;
    writeln!(out, "d_cert: {} ({})", opt(&r.d_cert), r.d_source.unwrap_or("uncertified"))?;
    writeln!(out, "H: {}", r.hypothesis_h)?;
    writeln!(out, "A: {}", r.a)?;
    writeln!(out, "m: {}  s: {}  s_tilde: {}  h: {}", opt(&r.m), opt(&r.s), opt(&r.s_tilde), opt(&r.h))?;
    writeln!(out, "curve_bound: {}", opt(&r.curve_bound))
}

fn export(args: &ExportArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let (field, bideg) = resolve(&args.instance)?;
    let mut code = build_code(&field, &bideg)?;
    if args.punctured {
        code = puncture_fiber(&code)?;
    }
    let text = code.export_v1();
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(|error| Failure { code: 1, error })?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

/// One row of the sweep and verify tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub eta: u32,
    #[serde(rename = "dT")]
    pub dt: i64,
    #[serde(rename = "dX")]
    pub dx: i64,
    pub q: u64,
    pub n: Option<usize>,
    pub k_formula: Option<u64>,
    pub k_oracle: Option<usize>,
    pub d_formula: Option<u64>,
    pub d_cert: Option<u64>,
    pub d_source: Option<&'static str>,
    #[serde(rename = "H")]
    pub h: Option<bool>,
    pub notes: String,
}

impl Row {
    fn empty(i: &Instance) -> Row {
        Row {
            eta: i.eta,
            dt: i.dt,
            dx: i.dx,
            q: i.q,
            n: None,
            k_formula: None,
            k_oracle: None,
            d_formula: None,
            d_cert: None,
            d_source: None,
            h: None,
            notes: String::new(),
        }
    }

    /// Whether the row records a failed check.
    pub fn failed(&self) -> bool {
        self.notes.starts_with("FAIL")
    }
}

/// Computes the parameters of one instance and, when `verify` is set, runs
/// every oracle check on it.
pub fn evaluate_instance(i: &Instance, budget: u64, verify: bool) -> Row {
    let mut row = Row::empty(i);
    let (field, bideg) = match resolve(i) {
        Ok(v) => v,
        Err(e) => {
            row.notes = format!("invalid: {e}");
            return row;
        }
    };
    let q = field.order();
    let code = match build_code(&field, &bideg) {
        Ok(c) => c,
        Err(e) => {
            row.notes = format!("invalid: {e}");
            return row;
        }
    };
    row.n = Some(code.length());
    row.k_formula = dimension_closed_form(&bideg, q).ok();
    row.k_oracle = Some(dimension_oracle(&code));
    row.h = Some(hypothesis_h(&bideg, q));
    let mut problems: Vec<String> = Vec::new();
    match certified(&code, budget) {
        Ok((d, source, ev)) => {
            row.d_formula = ev.closed_form;
            row.d_cert = d;
            row.d_source = source;
            if verify && !ev.consistent() {
                problems.push(format!(
                    "distance closed {:?} bound {:?} witness {:?} exhaustive {:?}",
                    ev.closed_form,
                    ev.bound.as_ref().map(|b| b.bound),
                    ev.witness_weight,
                    ev.exhaustive
                ));
            }
        }
        Err(e) => problems.push(format!("distance: {e}")),
    }
    if bideg.eta == 1 {
        row.notes = "oracle-only".into();
        return row;
    }
    if verify {
        problems.extend(verify_checks(&field, &bideg, &code, row.k_formula, row.k_oracle, budget));
    }
    row.notes = if problems.is_empty() {
        if verify { "pass".into() } else { String::new() }
    } else {
        format!("FAIL: {}", problems.join("; "))
    };
    row
}

fn verify_checks(field: &Field, bideg: &Bidegree, code: &LinearCode, k_formula: Option<u64>, k_oracle: Option<usize>, budget: u64) -> Vec<String> {
    let q = field.order();
    let mut problems = Vec::new();
    if k_formula.map(|k| k as usize) != k_oracle {
        problems.push(format!("dimension formula {k_formula:?} vs rank {k_oracle:?}"));
    }
    let reps = representatives(bideg, q).map(|r| r.k_star).unwrap_or_default();
    if code.rank() != reps.len() {
        problems.push(format!("representative rows have rank {} but |K*| = {}", code.rank(), reps.len()));
    }
    if hypothesis_h(bideg, q) {
        match special_kernel_element(field, bideg) {
            Ok(f0) if rational_points(field).iter().all(|p| f0.evaluate(p).is_zero()) => {}
            Ok(_) => problems.push("kernel polynomial does not vanish".into()),
            Err(e) => problems.push(format!("kernel polynomial: {e}")),
        }
    }
    if let Some(p) = equivalence_mismatch(field, bideg) {
        problems.push(p);
    }
    if bideg.dt < 0 && bideg.dx > 0 {
        match puncture_fiber(code) {
            Ok(punctured) => {
                let n_ok = punctured.length() == (q * (q + 1)) as usize;
                let k_ok = punctured.rank() == code.rank();
                let affordable = nonzero_codewords(q, code.rank()).is_some_and(|n| n <= budget);
                let d_ok = !affordable || exhaustive_distance(&punctured, budget) == exhaustive_distance(code, budget);
                if !(n_ok && k_ok && d_ok) {
                    problems.push("fibre puncturing changed the parameters".into());
                }
            }
            Err(e) => problems.push(format!("fibre puncturing: {e}")),
        }
    }
    problems
}

/// First pair of monomials where the exponent criterion and the evaluation
/// vectors disagree.
fn equivalence_mismatch(field: &Field, bideg: &Bidegree) -> Option<String> {
    let q = field.order();
    let lattice = polygon_points(bideg).ok()?;
    let monomials = monomial_basis(bideg).ok()?;
    let matrix = evaluation_matrix(field, &monomials, &rational_points(field));
    for i in 0..lattice.len() {
        for j in i + 1..lattice.len() {
            let same = matrix.row(i) == matrix.row(j);
            if equivalent(bideg, q, lattice[i], lattice[j]).ok()? != same {
                let (a, b) = (monomial_at(bideg, lattice[i]).ok()?, monomial_at(bideg, lattice[j]).ok()?);
                return Some(format!("equivalence criterion disagrees on {a} and {b}"));
            }
        }
    }
    None
}

fn table(args: &SweepArgs, verify: bool, out: &mut dyn Write) -> Result<u8, Failure> {
    let budget = args.budget.budget;
    let rows: Vec<Row> = args.instances().par_iter().map(|i| evaluate_instance(i, budget, verify)).collect();
    write_rows(&rows, args.format, if verify { "verify" } else { "sweep" }, budget, out)?;
    Ok(if verify && rows.iter().any(Row::failed) { EXIT_MISMATCH } else { 0 })
}

/// Writes rows as CSV (with a `#` metadata line) or as a JSON array.
pub fn write_rows(rows: &[Row], format: TableFormat, command: &str, budget: u64, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        TableFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(rows)?)?,
        TableFormat::Csv => {
            writeln!(out, "# hirzecode {} {command} budget={budget}", env!("CARGO_PKG_VERSION"))?;
            let mut w = csv::Writer::from_writer(&mut *out);
            if rows.is_empty() {
                w.write_record(["eta", "dT", "dX", "q", "n", "k_formula", "k_oracle", "d_formula", "d_cert", "d_source", "H", "notes"])?;
            }
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
