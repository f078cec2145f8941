//! Command-line front end. Every subcommand prints one payload in the
//! requested format, preceded by a `# minaff <version> <command>` line
//! unless `--no-header` is given.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::charcalc::{freudenthal, tensor_truncated, BigCharacter};
use crate::dynkin::{Diagram, Node, RootVector, Weight};
use crate::error::{Error, Result};
use crate::kostant::{kostant_p, restricted_partitions};
use crate::krtensor::{
    kr_lweights_near_top, replay_outer, theorem_main_check, tpa_reducible, tpd_irreducible_sufficient,
    TripleConfig,
};
use crate::lweight::DrinfeldSpec;
use crate::minclass::classify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "minaff", version, about = "Exact checks on minimal affinizations of simply-laced type")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Truncation depth for character tables.
    #[arg(long, env = "MINAFF_DEPTH", global = true)]
    depth: Option<u32>,
    /// Write the payload to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    no_header: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Positive roots, graded by height.
    Roots { diagram: Diagram },
    /// Kostant partition count of a root-lattice vector.
    Kostant {
        diagram: Diagram,
        /// `{"1":1,"2":1}` or `1,1,0,0`.
        eta: String,
    },
    /// Weight-space dimensions at `λ - ϑ_J` for connected `J`.
    Dimtable { diagram: Diagram, lambda: String },
    /// Preminimality, minimality order and coherence of Drinfeld data.
    Classify { diagram: Diagram, spec: String },
    /// The ℓ-weights `Y[l,r,m](J)` of a KR module.
    KrLweights {
        diagram: Diagram,
        /// `l,r,m`.
        #[arg(allow_hyphen_values = true)]
        string: String,
    },
    /// Irreducibility criteria for tensor products.
    TensorCheck {
        #[command(subcommand)]
        mode: TensorMode,
    },
    /// Weight-space replay of a triple configuration.
    Replay { config: String },
    /// Certificate for coherent data against its incoherent partner.
    Theorem {
        diagram: Diagram,
        spec: String,
        /// Boundary node whose branch the partner keeps.
        #[arg(long)]
        leaf: Option<Node>,
    },
}

#[derive(Debug, Subcommand)]
enum TensorMode {
    /// Type A criterion against a KR module at the last node.
    Tpa {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long)]
        eta: u32,
    },
    /// Sufficient type D criterion for two boundary KR modules.
    Tpd {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        i: Node,
        #[arg(long)]
        j: Node,
        #[arg(long)]
        mi: u32,
        #[arg(long)]
        mj: u32,
        #[arg(long, allow_hyphen_values = true)]
        exponent: i64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roots { .. } => "roots",
            Command::Kostant { .. } => "kostant",
            Command::Dimtable { .. } => "dimtable",
            Command::Classify { .. } => "classify",
            Command::KrLweights { .. } => "kr-lweights",
            Command::TensorCheck { mode: TensorMode::Tpa { .. } } => "tensor-check tpa",
            Command::TensorCheck { mode: TensorMode::Tpd { .. } } => "tensor-check tpd",
            Command::Replay { .. } => "replay",
            Command::Theorem { .. } => "theorem",
        }
    }
}

enum Payload {
    Table { columns: Vec<String>, rows: Vec<Vec<Value>> },
    Object(Value),
}

fn names(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Inconsistent(format!("serialization failed: {e}")))
}

/// Inline JSON, or the contents of a file when the argument names one.
fn load_payload(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read payload `{arg}`: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    serde_json::from_str(&load_payload(arg)?).map_err(|e| Error::Parse(e.to_string()))
}

/// `{"1":2,"4":1}` or a comma-separated coordinate list.
fn parse_coords(rank: usize, arg: &str) -> Result<Vec<i64>> {
    let t = arg.trim();
    if t.starts_with('{') {
        let map: BTreeMap<String, i64> = parse_json(t)?;
        return Ok(Weight::from_node_map(rank, &map)?.coords().to_vec());
    }
    let coords: Vec<i64> = t
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("`{x}`: {e}"))))
        .collect::<Result<_>>()?;
    if coords.len() != rank {
        return Err(Error::RankMismatch { expected: rank, got: coords.len() });
    }
    Ok(coords)
}

fn weight_value(w: &Weight) -> Value {
    json!(w.to_node_map())
}

fn roots(d: &Diagram) -> Payload {
    let mut columns = vec!["index".to_string(), "height".to_string()];
    columns.extend((1..=d.rank()).map(|i| format!("a{i}")));
    let rows = d
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(t, r)| {
            let mut row = vec![json!(t + 1), json!(r.height())];
            row.extend(r.coords().iter().map(|&c| json!(c)));
            row
        })
        .collect();
    Payload::Table { columns, rows }
}

fn dimtable(d: &Diagram, lambda: &Weight, depth: Option<u32>) -> Result<Payload> {
    d.check_weight(lambda)?;
    if !lambda.is_dominant() || lambda.is_zero() {
        return Err(Error::Precondition(format!("λ = {lambda} must be dominant and nonzero")));
    }
    let depth = depth.unwrap_or(d.rank() as u32);
    let ch: BigCharacter = freudenthal(d, lambda, depth)?;
    let factors: Vec<BigCharacter> = lambda
        .support()
        .iter()
        .map(|i| freudenthal(d, &Weight::fundamental(d.rank(), i).scaled(lambda.at(i)), depth))
        .collect::<Result<_>>()?;
    let w = tensor_truncated(&factors)?;
    let mut rows = Vec::new();
    let mut parts = d.connected_subdiagrams();
    parts.sort_by_key(|j| (std::cmp::Reverse(j.len()), *j));
    for j in parts {
        let eta = d.theta(j);
        if eta.height() > depth as i64 || !lambda.support().intersection(j).is_subset(d.boundary(j)) {
            continue;
        }
        let label = if j == d.all() { "I".to_string() } else { j.to_string() };
        let count = restricted_partitions(d, &eta, lambda).len();
        let v = ch.at(&eta);
        let wv = w.at(&eta);
        let gap = &wv - &v;
        rows.push(vec![json!("#P_ϑ^λ"), json!(label), json!(count)]);
        rows.push(vec![json!("dim V(λ)_{λ−ϑ}"), json!(label), json!(v.to_string())]);
        rows.push(vec![json!("dim W_{λ−ϑ}"), json!(label), json!(wv.to_string())]);
        rows.push(vec![json!("dim W − dim V"), json!(label), json!(gap.to_string())]);
    }
    for row in &mut rows {
        if let Some(n) = row[2].as_str().and_then(|s| s.parse::<i64>().ok()) {
            row[2] = json!(n);
        }
    }
    Ok(Payload::Table { columns: names(&["quantity", "part", "value"]), rows })
}

fn kr_lweights(d: &Diagram, arg: &str) -> Result<Payload> {
    let fields: Vec<&str> = arg.split(',').map(str::trim).collect();
    let [l, r, m] = fields.as_slice() else {
        return Err(Error::Parse(format!("expected `l,r,m`, got `{arg}`")));
    };
    let l: Node = l.parse().map_err(|e| Error::Parse(format!("node `{l}`: {e}")))?;
    let r: i64 = r.parse().map_err(|e| Error::Parse(format!("shift `{r}`: {e}")))?;
    let m: u32 = m.parse().map_err(|e| Error::Parse(format!("length `{m}`: {e}")))?;
    let rows = kr_lweights_near_top(d, l, r, m)?
        .into_iter()
        .map(|f| {
            let weight = f.monomial.weight(d.rank());
            let rn = if f.part.is_empty() { Value::Null } else { json!(f.monomial.is_right_negative().unwrap_or(false)) };
            vec![json!(f.part.to_string()), json!(f.monomial.to_string()), json!(weight.to_string()), json!(1), rn]
        })
        .collect();
    Ok(Payload::Table { columns: names(&["part", "monomial", "weight", "multiplicity", "right_negative"]), rows })
}

fn execute(cli: &Cli) -> Result<Payload> {
    Ok(match &cli.command {
        Command::Roots { diagram } => roots(diagram),
        Command::Kostant { diagram, eta } => {
            let eta = RootVector::from_coords(parse_coords(diagram.rank(), eta)?);
            Payload::Object(json!({
                "diagram": diagram.to_string(),
                "eta": eta.to_node_map(),
                "p": kostant_p(diagram, &eta),
            }))
        }
        Command::Dimtable { diagram, lambda } => {
            let lambda = Weight::from_coords(parse_coords(diagram.rank(), lambda)?);
            dimtable(diagram, &lambda, cli.depth)?
        }
        Command::Classify { diagram, spec } => {
            let spec: DrinfeldSpec = parse_json(spec)?;
            Payload::Object(to_value(&classify(diagram, &spec)?)?)
        }
        Command::KrLweights { diagram, string } => kr_lweights(diagram, string)?,
        Command::TensorCheck { mode: TensorMode::Tpa { rank, lambda, s, eta } } => {
            let lam = Weight::from_coords(parse_coords(*rank, lambda)?);
            let witness = tpa_reducible(*rank, &lam, *s, *eta)?;
            Payload::Object(json!({
                "rank": rank,
                "lambda": weight_value(&lam),
                "s": s,
                "eta": eta,
                "reducible": witness.is_some(),
                "witness": to_value(&witness)?,
            }))
        }
        Command::TensorCheck { mode: TensorMode::Tpd { rank, i, j, mi, mj, exponent } } => {
            let ok = tpd_irreducible_sufficient(*rank, *i, *j, (*mi, *mj), *exponent)?;
            Payload::Object(json!({
                "rank": rank,
                "nodes": [i, j],
                "lengths": [mi, mj],
                "exponent": exponent,
                "irreducible": ok,
            }))
        }
        Command::Replay { config } => {
            let cfg: TripleConfig = parse_json(config)?;
            Payload::Object(to_value(&replay_outer(&cfg)?)?)
        }
        Command::Theorem { diagram, spec, leaf } => {
            let spec: DrinfeldSpec = parse_json(spec)?;
            Payload::Object(to_value(&theorem_main_check(diagram, &spec, *leaf)?)?)
        }
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn render(payload: &Payload, format: Format) -> Result<String> {
    let internal = |e: &dyn std::fmt::Display| Error::Inconsistent(format!("output failed: {e}"));
    match (payload, format) {
        (Payload::Object(v), Format::Json) => {
            Ok(serde_json::to_string_pretty(v).map_err(|e| internal(&e))? + "\n")
        }
        (Payload::Object(v), Format::Text) => Ok(text_object(v, 0)),
        (Payload::Object(_), Format::Csv) => {
            Err(Error::Precondition("csv output is only available for tables".into()))
        }
        (Payload::Table { columns, rows }, Format::Json) => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|row| {
                    Value::Object(columns.iter().zip(row).map(|(c, v)| (c.clone(), v.clone())).collect())
                })
                .collect();
            Ok(serde_json::to_string_pretty(&objs).map_err(|e| internal(&e))? + "\n")
        }
        (Payload::Table { columns, rows }, Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(columns).map_err(|e| internal(&e))?;
            for row in rows {
                w.write_record(row.iter().map(cell)).map_err(|e| internal(&e))?;
            }
            let bytes = w.into_inner().map_err(|e| internal(&e))?;
            String::from_utf8(bytes).map_err(|e| internal(&e))
        }
        (Payload::Table { columns, rows }, Format::Text) => {
            let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(cell).collect()).collect();
            let widths: Vec<usize> = (0..columns.len())
                .map(|c| cells.iter().map(|r| r[c].chars().count()).chain([columns[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |fields: Vec<&str>| {
                let padded: Vec<String> = fields
                    .iter()
                    .zip(&widths)
                    .map(|(f, &w)| format!("{f}{}", " ".repeat(w - f.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(columns.iter().map(String::as_str).collect());
            for r in &cells {
                out += &line(r.iter().map(String::as_str).collect());
            }
            Ok(out)
        }
    }
}

fn text_object(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) | Value::Array(_) if !is_flat(x) => format!("{pad}{k}:\n{}", text_object(x, indent + 1)),
                _ => format!("{pad}{k}: {}\n", cell(x)),
            })
            .collect(),
        Value::Array(items) => items
            .iter()
            .map(|x| {
                if is_flat(x) {
                    format!("{pad}- {}\n", cell(x))
                } else {
                    format!("{pad}-\n{}", text_object(x, indent + 1))
                }
            })
            .collect(),
        other => format!("{pad}{}\n", cell(other)),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.values().all(|x| !x.is_object() && !x.is_array()) && m.len() <= 1,
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

/// Parse `argv`, run the subcommand and write to the given streams.
/// Returns the process exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = execute(&cli).and_then(|p| render(&p, cli.format));
    let body = match result {
        Ok(body) => body,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return if e.is_internal() { 2 } else { 1 };
        }
    };
    let header = if cli.no_header {
        String::new()
    } else {
        format!("# minaff {} {}\n", env!("CARGO_PKG_VERSION"), cli.command.name())
    };
    let text = header + &body;
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            1
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
