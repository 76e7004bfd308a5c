//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a claim was violated, 2 bad arguments or input,
//! 3 a size guard was exceeded.

use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::format::significant;
use crate::generators::TreeFamilySpec;
use crate::graph::Graph;
use crate::graph6;
use crate::indices::{self, Exponent, PowValue};
use crate::verify::{
    extremal_scan, findings_for, second_minimum_assessment, sweep, ClaimId, ParamPoint, Status,
    SweepConfig, SweepResult, Universe,
};

pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

const CSV_HEADER: &str = "# irregularity-lab v1";

#[derive(Debug, Parser)]
#[command(name = "irregularity-lab", version, about = "Degree-irregularity indices, tree families and claim verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Graph6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IndexName {
    #[value(name = "Ap")]
    Ap,
    #[value(name = "Alb")]
    Alb,
    #[value(name = "sigma")]
    Sigma,
    #[value(name = "F")]
    F,
    #[value(name = "M2")]
    M2,
    #[value(name = "Zp")]
    Zp,
    #[value(name = "SO")]
    So,
    #[value(name = "irrp")]
    Irrp,
    #[value(name = "Np")]
    Np,
    #[value(name = "gap")]
    Gap,
}

impl IndexName {
    fn label(self) -> &'static str {
        match self {
            IndexName::Ap => "Ap",
            IndexName::Alb => "Alb",
            IndexName::Sigma => "sigma",
            IndexName::F => "F",
            IndexName::M2 => "M2",
            IndexName::Zp => "Zp",
            IndexName::So => "SO",
            IndexName::Irrp => "irrp",
            IndexName::Np => "Np",
            IndexName::Gap => "gap",
        }
    }

    fn takes_exponent(self) -> bool {
        matches!(self, IndexName::Ap | IndexName::Zp | IndexName::Irrp | IndexName::Np)
    }
}

#[derive(Debug, clap::Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long = "out")]
    out: Option<std::path::PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate indices on graph6 input (file or standard input) or families.
    Compute {
        /// graph6 file, one graph per line; standard input when absent.
        #[arg(long = "in")]
        input: Option<std::path::PathBuf>,
        /// Family specs such as `bethe:k=3,d=2`, used instead of graph6 input.
        #[arg(long, value_delimiter = ';')]
        family: Vec<TreeFamilySpec>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "Ap")]
        index: Vec<IndexName>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        p: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Emit graph6 for tree family specs.
    Generate {
        #[arg(long, value_delimiter = ';', required = true)]
        family: Vec<TreeFamilySpec>,
        #[command(flatten)]
        output: Output,
    },
    /// Stream every graph of a universe as graph6.
    Enumerate {
        /// `trees:4..9`, `graphs:2..6`, `random-trees:n=12,count=50` and so on.
        #[arg(long)]
        universe: String,
        /// Seed for random universes that do not carry one.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Check claims over a universe, graph6 input or families.
    Verify {
        /// Comma-separated claim ids.
        #[arg(long, value_delimiter = ',', required = true)]
        claim: Vec<String>,
        #[arg(long)]
        universe: Option<String>,
        #[arg(long = "in")]
        input: Option<std::path::PathBuf>,
        #[arg(long, value_delimiter = ';')]
        family: Vec<TreeFamilySpec>,
        /// Exponents; `p:q` pairs give the second exponent where needed.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        p: Vec<ParamPoint>,
        /// Path lengths for pendant-path claims.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        t: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Leave per-instance reports out of JSON output.
        #[arg(long)]
        summary_only: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Extremal values of A_p^p over all trees of the given orders.
    Scan {
        /// Order or order range `a..b`, within 4..14.
        #[arg(long)]
        n: String,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        p: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_guard() {
                EXIT_GUARD
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("i/o: {e}"))
}

fn emit(output: &Output, stdout: &mut dyn Write, body: &[u8]) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(io_error),
        None => stdout.write_all(body).map_err(io_error),
    }
}

fn read_graphs(input: &Option<std::path::PathBuf>, stdin: &mut dyn BufRead) -> Result<Vec<Graph>> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path).map_err(io_error)?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(io_error)?;
            s
        }
    };
    graph6::decode_lines(&text)
}

/// Rounds every non-integer number to 12 significant digits.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().and_then(|x| significant(x).parse::<f64>().ok()) {
                if let Some(r) = serde_json::Number::from_f64(x) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn json_bytes(value: impl Serialize) -> Result<Vec<u8>> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    round_floats(&mut v);
    let mut out = serde_json::to_vec_pretty(&v).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut out = format!("{CSV_HEADER}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        let err = |e: csv::Error| Error::InvalidParameter(e.to_string());
        w.write_record(header).map_err(err)?;
        for row in rows {
            w.write_record(row).map_err(err)?;
        }
        w.flush().map_err(io_error)?;
    }
    Ok(out)
}

fn unsupported(command: &str, format: Format) -> Error {
    Error::InvalidParameter(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn execute(command: Command, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Compute {
            input,
            family,
            index,
            p,
            output,
        } => {
            let graphs = if family.is_empty() {
                read_graphs(&input, stdin)?
            } else {
                family.iter().map(TreeFamilySpec::build).collect::<Result<_>>()?
            };
            let exponents = p.into_iter().map(Exponent::new).collect::<Result<Vec<_>>>()?;
            let rows = compute_rows(&graphs, &index, &exponents)?;
            let body = match output.format.unwrap_or(Format::Csv) {
                Format::Csv => csv_bytes(
                    &["graph6", "index", "p", "pow", "value", "backing"],
                    &rows.iter().map(ComputeRow::cells).collect::<Vec<_>>(),
                )?,
                Format::Json => json_bytes(&rows)?,
                f => return Err(unsupported("compute", f)),
            };
            emit(&output, stdout, &body)?;
            Ok(0)
        }
        Command::Generate { family, output } => {
            let graphs: Vec<Graph> = family.iter().map(TreeFamilySpec::build).collect::<Result<_>>()?;
            let body = match output.format.unwrap_or(Format::Graph6) {
                Format::Graph6 => graph6_lines(&graphs),
                Format::Json => json_bytes(
                    family
                        .iter()
                        .zip(&graphs)
                        .map(|(f, g)| json!({"family": f.to_string(), "graph6": graph6::encode(g), "n": g.n(), "m": g.m()}))
                        .collect::<Vec<_>>(),
                )?,
                f => return Err(unsupported("generate", f)),
            };
            emit(&output, stdout, &body)?;
            Ok(0)
        }
        Command::Enumerate { universe, seed, output } => {
            let universe = parse_universe(&universe, seed)?;
            let graphs: Vec<Graph> = universe
                .instances()?
                .iter()
                .map(|i| i.graph())
                .collect::<Result<_>>()?;
            let body = match output.format.unwrap_or(Format::Graph6) {
                Format::Graph6 => graph6_lines(&graphs),
                Format::Json => json_bytes(graphs.iter().map(graph6::encode).collect::<Vec<_>>())?,
                f => return Err(unsupported("enumerate", f)),
            };
            emit(&output, stdout, &body)?;
            Ok(0)
        }
        Command::Verify {
            claim,
            universe,
            input,
            family,
            p,
            t,
            seed,
            jobs,
            summary_only,
            output,
        } => {
            let universe = match (universe, family.is_empty()) {
                (Some(u), true) => parse_universe(&u, seed)?,
                (None, false) => Universe::Families(family),
                (None, true) => Universe::Explicit(read_graphs(&input, stdin)?),
                (Some(_), false) => {
                    return Err(Error::InvalidParameter("give either --universe or --family".into()))
                }
            };
            let config = SweepConfig {
                p_grid: p,
                t_grid: t,
                jobs,
            };
            let mut results = Vec::new();
            for id in &claim {
                results.push(sweep(id, &universe, &config)?);
            }
            let body = match output.format.unwrap_or(Format::Json) {
                Format::Json => json_bytes(results.iter().map(|r| verify_json(r, summary_only)).collect::<Vec<_>>())?,
                Format::Csv => csv_bytes(
                    &[
                        "claim_id",
                        "universe",
                        "p",
                        "q",
                        "reports",
                        "holds_strict",
                        "holds_equality",
                        "precondition_skipped",
                        "violated",
                        "classifier_disagreements",
                    ],
                    &results.iter().flat_map(summary_rows).collect::<Vec<_>>(),
                )?,
                f => return Err(unsupported("verify", f)),
            };
            emit(&output, stdout, &body)?;
            Ok(if results.iter().any(SweepResult::failed) {
                EXIT_VIOLATION
            } else {
                0
            })
        }
        Command::Scan { n, p, output } => {
            let orders = parse_orders(&n)?;
            let mut entries = Vec::new();
            let mut failed = false;
            for n in orders {
                for &p in &p {
                    let scan = extremal_scan(n, p)?;
                    let second = if n >= 10 {
                        Some(second_minimum_assessment(&scan)?)
                    } else {
                        None
                    };
                    failed |= !scan.min_only_path
                        || !scan.max_only_star
                        || second.as_ref().is_some_and(|s| !s.passed());
                    entries.push(json!({"scan": scan, "second_minimum": second}));
                }
            }
            let body = match output.format.unwrap_or(Format::Json) {
                Format::Json => json_bytes(&entries)?,
                f => return Err(unsupported("scan", f)),
            };
            emit(&output, stdout, &body)?;
            Ok(if failed { EXIT_VIOLATION } else { 0 })
        }
    }
}

fn graph6_lines(graphs: &[Graph]) -> Vec<u8> {
    graphs
        .iter()
        .map(|g| graph6::encode(g) + "\n")
        .collect::<String>()
        .into_bytes()
}

fn parse_orders(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    match format!("trees:{s}").parse::<Universe>()? {
        Universe::Trees(range) => Ok(range),
        _ => unreachable!("trees prefix"),
    }
}

/// Random universes take `--seed` when their spec has none; they never fall
/// back to an implicit seed.
fn parse_universe(spec: &str, seed: Option<u64>) -> Result<Universe> {
    if spec.starts_with("random-") && !spec.contains("seed=") {
        let seed = seed.ok_or_else(|| Error::InvalidParameter("random universes need --seed".into()))?;
        return format!("{spec},seed={seed}").parse();
    }
    spec.parse()
}

#[derive(Debug, Serialize)]
struct ComputeRow {
    graph6: String,
    index: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(serialize_with = "pow_json")]
    pow: PowValue,
    value: f64,
    backing: &'static str,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    disconnected: bool,
}

fn pow_json<S: serde::Serializer>(v: &PowValue, s: S) -> std::result::Result<S::Ok, S::Error> {
    match *v {
        PowValue::Exact(x) => match u64::try_from(x) {
            Ok(small) => s.serialize_u64(small),
            Err(_) => s.serialize_str(&x.to_string()),
        },
        PowValue::Float(x) => s.serialize_f64(x),
    }
}

impl ComputeRow {
    fn cells(&self) -> Vec<String> {
        let pow = match self.pow {
            PowValue::Exact(v) => v.to_string(),
            PowValue::Float(v) => significant(v),
        };
        vec![
            self.graph6.clone(),
            self.index.to_string(),
            self.p.map(significant).unwrap_or_default(),
            pow,
            significant(self.value),
            self.backing.to_string(),
        ]
    }
}

fn compute_rows(graphs: &[Graph], index: &[IndexName], exponents: &[Exponent]) -> Result<Vec<ComputeRow>> {
    let mut rows = Vec::new();
    for g in graphs {
        let code = graph6::encode(g);
        for &name in index {
            let row = |p: Option<Exponent>, pow: PowValue, value: f64, disconnected: bool| ComputeRow {
                graph6: code.clone(),
                index: name.label(),
                p: p.map(Exponent::get),
                pow,
                value,
                backing: if pow.is_exact() { "exact" } else { "float" },
                disconnected,
            };
            let exact = |v: u128| row(None, PowValue::Exact(v), v as f64, false);
            if name.takes_exponent() {
                for &p in exponents {
                    let iv = match name {
                        IndexName::Ap => indices::general_albertson(g, p),
                        IndexName::Irrp => indices::total_irregularity_general(g, p),
                        IndexName::Np => indices::nonselfcentrality_general(g, p)?,
                        _ => {
                            let z = indices::first_zagreb_general(g, p.get())?;
                            rows.push(row(Some(p), z, z.as_f64(), false));
                            continue;
                        }
                    };
                    rows.push(row(Some(p), iv.pow, iv.value(), iv.disconnected));
                }
                continue;
            }
            rows.push(match name {
                IndexName::Alb => exact(indices::albertson(g) as u128),
                IndexName::Sigma => exact(indices::sigma(g) as u128),
                IndexName::F => exact(indices::forgotten(g) as u128),
                IndexName::M2 => exact(indices::zagreb_second(g) as u128),
                IndexName::Gap => exact(indices::degree_gap(g) as u128),
                IndexName::So => {
                    let v = indices::sombor(g);
                    row(None, PowValue::Float(v), v, false)
                }
                _ => unreachable!("exponent indices handled above"),
            });
        }
    }
    Ok(rows)
}

fn verify_json(result: &SweepResult, summary_only: bool) -> Value {
    let claim: Option<ClaimId> = result.claim_id.parse().ok();
    let mut v = json!({
        "claim_id": result.claim_id,
        "statement": claim.map(ClaimId::statement),
        "universe": result.universe,
        "failed": result.failed(),
        "summary": result.summary,
        "findings": findings_for(&result.claim_id).collect::<Vec<_>>(),
    });
    if !summary_only {
        v["reports"] = json!(result.reports);
    }
    v
}

fn summary_rows(result: &SweepResult) -> Vec<Vec<String>> {
    type Group = ((Option<f64>, Option<f64>), [usize; 6]);
    let mut groups: Vec<Group> = Vec::new();
    for r in &result.reports {
        let key = (r.params.p, r.params.q);
        let slot = match groups.iter().position(|(k, _)| *k == key) {
            Some(i) => i,
            None => {
                groups.push((key, [0; 6]));
                groups.len() - 1
            }
        };
        let counts = &mut groups[slot].1;
        counts[0] += 1;
        counts[match r.status {
            Status::HoldsStrict => 1,
            Status::HoldsEquality => 2,
            Status::PreconditionSkipped => 3,
            Status::Violated => 4,
        }] += 1;
        if r.classifier_disagrees() {
            counts[5] += 1;
        }
    }
    groups
        .into_iter()
        .map(|((p, q), counts)| {
            let mut row = vec![
                result.claim_id.clone(),
                result.universe.clone(),
                p.map(significant).unwrap_or_default(),
                q.map(significant).unwrap_or_default(),
            ];
            row.extend(counts.iter().map(usize::to_string));
            row
        })
        .collect()
}
