//! Command-line front end. [`run`] is the whole program; `main` only forwards to it.

use std::fmt::{Debug, Display};
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::io::{graph_dot, matrix_from_json, matrix_json, GraphJson, QpJson, QuiverJson, SeedJson, SeriesJson};
use crate::matrix::IntMatrix;
use crate::poly::indexed_names;
use crate::qp::{jacobian_dimension, mutate_qp, QuiverWithPotential, DEFAULT_QP_TRUNCATION};
use crate::quantum::{self, CompatiblePair, QuantumSeed, DEFAULT_TRUNCATION};
use crate::quiver::ExchangeMatrix;
use crate::seed::{MutationSequence, Seed, DEFAULT_GRAPH_LIMIT};
use crate::server::{self, AppState};
use crate::session::{Session, Snapshot};
use crate::tropical::{self, check_langlands_duality, check_tropical_duality, f_names};

pub const TRUNCATION_ENV: &str = "CLUSTER_FORGE_TRUNCATION";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "cluster-forge", version, about = "Exact computations with cluster algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub rng_seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

/// Inputs are file paths, `-` for stdin, or inline JSON starting with `{`.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mutate a seed along a sequence of 1-based vertices.
    Mutate {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
    },
    /// Size of the mutation class of a quiver.
    Class {
        input: String,
        #[arg(long, default_value_t = 10000)]
        limit: usize,
    },
    /// Exchange graph of a seed.
    ExchangeGraph {
        input: String,
        #[arg(long, default_value_t = DEFAULT_GRAPH_LIMIT)]
        limit: usize,
    },
    /// Distinct cluster variables.
    Variables {
        input: String,
        #[arg(long, default_value_t = DEFAULT_GRAPH_LIMIT)]
        limit: usize,
    },
    /// C-matrix at the end of a sequence.
    Cmatrix {
        input: String,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// G-matrix at the end of a sequence.
    Gmatrix {
        input: String,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// F-polynomials at the end of a sequence.
    Fpoly {
        input: String,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// Tropical and Langlands duality along a sequence and optional random ones.
    Duality {
        input: String,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
        /// Number of extra random sequences.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Quantum cluster along a sequence (principal pair unless the input has "lambda").
    QuantumMutate {
        input: String,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// Pentagon identity to a truncation.
    Pentagon {
        #[arg(long = "N")]
        n: Option<u32>,
    },
    /// Combinatorial DT invariant.
    Dt {
        input: String,
        #[arg(long = "N")]
        n: Option<u32>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Compare the dilogarithm products of two sequences.
    Identity {
        input: String,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        other: Vec<usize>,
        #[arg(long = "N")]
        n: Option<u32>,
    },
    /// Mutate a quiver with potential.
    QpMutate {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
    },
    /// Truncated Jacobian algebra dimension.
    Jacobian {
        input: String,
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Serve the JSON session API.
    Serve {
        /// Initial seed; ignored when the state file already exists.
        input: Option<String>,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long)]
        state_file: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { name: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain { name, message } => write!(f, "{name}: {message}"),
        }
    }
}

/// `TypeName::Variant` taken from the error's type and debug form.
fn domain<E: Debug + Display>(e: E) -> CliError {
    let ty = std::any::type_name::<E>().rsplit("::").next().unwrap_or("Error").to_string();
    let dbg = format!("{e:?}");
    let variant: String = dbg.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
    CliError::Domain { name: format!("{ty}::{variant}"), message: e.to_string() }
}

fn read_input(input: &str) -> Result<String, CliError> {
    if input.trim_start().starts_with('{') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(input).map_err(|e| CliError::Usage(format!("cannot read {input}: {e}")))
}

fn read_json(input: &str) -> Result<Value, CliError> {
    serde_json::from_str(&read_input(input)?).map_err(|e| CliError::Usage(format!("{input}: invalid JSON: {e}")))
}

fn read_seed(input: &str) -> Result<Seed, CliError> {
    let v = read_json(input)?;
    let json: SeedJson = serde_json::from_value(v).map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
    json.to_seed().map_err(domain)
}

fn read_quiver(input: &str) -> Result<ExchangeMatrix, CliError> {
    Ok(read_seed(input)?.matrix().clone())
}

fn read_qp(input: &str) -> Result<QuiverWithPotential, CliError> {
    let mut v = read_json(input)?;
    if let Value::Object(map) = &mut v {
        if !map.contains_key("truncation") {
            map.insert("truncation".into(), json!(default_truncation(DEFAULT_QP_TRUNCATION as u32)? as usize));
        }
    }
    let json: QpJson = serde_json::from_value(v).map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
    json.to_qp().map_err(domain)
}

/// `CLUSTER_FORGE_TRUNCATION` if set, else `fallback`.
fn default_truncation(fallback: u32) -> Result<u32, CliError> {
    match std::env::var(TRUNCATION_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{TRUNCATION_ENV}={s:?} is not a truncation degree"))),
        Err(_) => Ok(fallback),
    }
}

fn truncation(flag: Option<u32>) -> Result<u32, CliError> {
    flag.map_or_else(|| default_truncation(DEFAULT_TRUNCATION), Ok)
}

fn sequence(seq: &[usize], n: usize) -> Result<MutationSequence, CliError> {
    MutationSequence::from_one_based(seq, n).map_err(domain)
}

/// Indented JSON with arrays of scalars kept on one line.
fn json_out<T: Serialize>(v: &T) -> String {
    let mut s = String::new();
    write_json(&serde_json::to_value(v).expect("serializable"), 0, &mut s);
    s.push('\n');
    s
}

fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(|x| serde_json::to_string(x).expect("scalar")).collect();
            out.push_str(&format!("[{}]", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(indent + 1), Value::String(k.clone())));
                write_json(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("scalar")),
    }
}

fn no_dot(cmd: &str) -> CliError {
    CliError::Usage(format!("--format dot is not supported by {cmd}"))
}

fn matrix_table(m: &IntMatrix) -> String {
    let rows = m.to_rows();
    let width = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    rows.iter()
        .map(|r| r.iter().map(|x| format!("{x:>width$}")).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn seed_table(seed: &Seed) -> String {
    let mut out = String::from("matrix:\n");
    out.push_str(&matrix_table(seed.matrix().matrix()));
    out.push_str("cluster:\n");
    for (i, c) in seed.cluster_strings().iter().enumerate() {
        out.push_str(&format!("  {}: {c}\n", i + 1));
    }
    out.push_str(&format!("coefficients ({}):\n", seed.coefficients().kind()));
    for (i, c) in seed.coefficient_strings().iter().enumerate() {
        out.push_str(&format!("  {}: {c}\n", i + 1));
    }
    out
}

fn qp_dot(qp: &QuiverWithPotential) -> String {
    let mut s = String::from("digraph qp {\n");
    for v in 0..qp.vertices() {
        s.push_str(&format!("  {};\n", v + 1));
    }
    for a in qp.arrows() {
        s.push_str(&format!("  {} -> {} [label=\"{}\"];\n", a.source + 1, a.target + 1, a.name));
    }
    s.push_str("}\n");
    s
}

fn flags_table(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

/// Parses `args` (including the program name) and runs the command, writing the result to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Mutate { input, at } => {
            let seed = read_seed(input)?;
            let t = sequence(at, seed.n())?;
            let seed = seed.seed_at(&t).map_err(domain)?;
            Ok(match format {
                Format::Json => json_out(&SeedJson::from_seed(&seed)),
                Format::Dot => seed.matrix().to_dot(),
                Format::Table => seed_table(&seed),
            })
        }
        Command::Class { input, limit } => {
            let b = read_quiver(input)?;
            let class = b.mutation_class(*limit);
            match format {
                Format::Json => Ok(json_out(&json!({ "size": class.len(), "truncated": class.truncated }))),
                Format::Table => Ok(flags_table(&[("size", class.len().to_string()), ("truncated", class.truncated.to_string())])),
                Format::Dot => Err(no_dot("class")),
            }
        }
        Command::ExchangeGraph { input, limit } => {
            let seed = read_seed(input)?;
            let g = seed.exchange_graph(*limit);
            Ok(match format {
                Format::Json => json_out(&GraphJson::from_graph(&g)),
                Format::Dot => graph_dot(&g),
                Format::Table => {
                    let j = GraphJson::from_graph(&g);
                    let mut s = flags_table(&[
                        ("vertices", j.vertices.to_string()),
                        ("edges", j.edges.to_string()),
                        ("truncated", j.truncated.to_string()),
                        ("infinite_type", j.infinite_type.to_string()),
                    ]);
                    for node in j.nodes {
                        s.push_str(&format!("{}  {}\n", node.digest, node.cluster.join(", ")));
                    }
                    s
                }
            })
        }
        Command::Variables { input, limit } => {
            let seed = read_seed(input)?;
            let vars = seed.cluster_variables(*limit).map_err(domain)?;
            let strings: Vec<String> = vars.variables.iter().map(|v| v.display_with(seed.names())).collect();
            match format {
                Format::Json => Ok(json_out(&json!({
                    "count": strings.len(),
                    "truncated": vars.truncated,
                    "infinite_type": vars.infinite_type,
                    "variables": strings,
                }))),
                Format::Table => {
                    let mut s = flags_table(&[("count", strings.len().to_string()), ("truncated", vars.truncated.to_string())]);
                    s.extend(strings.iter().map(|v| format!("{v}\n")));
                    Ok(s)
                }
                Format::Dot => Err(no_dot("variables")),
            }
        }
        Command::Cmatrix { input, seq } | Command::Gmatrix { input, seq } | Command::Fpoly { input, seq } => {
            let b = read_quiver(input)?.principal();
            let t = sequence(seq, b.n())?;
            let (key, value, table) = match &cli.command {
                Command::Cmatrix { .. } => {
                    let c = tropical::c_matrix(&b, &t).map_err(domain)?;
                    ("c", json!(matrix_json(&c)), matrix_table(&c))
                }
                Command::Gmatrix { .. } => {
                    let g = tropical::g_matrix(&b, &t).map_err(domain)?;
                    ("g", json!(matrix_json(&g)), matrix_table(&g))
                }
                _ => {
                    let names = f_names(b.n());
                    let f: Vec<String> =
                        tropical::f_polynomials(&b, &t).map_err(domain)?.iter().map(|p| p.display_with(&names)).collect();
                    let table = f.iter().enumerate().map(|(i, p)| format!("F{}: {p}\n", i + 1)).collect();
                    ("f", json!(f), table)
                }
            };
            match format {
                Format::Json => Ok(json_out(&json!({ key: value }))),
                Format::Table => Ok(table),
                Format::Dot => Err(no_dot(key)),
            }
        }
        Command::Duality { input, seq, random, depth } => {
            let b = read_quiver(input)?.principal();
            let mut seqs = vec![sequence(seq, b.n())?];
            let mut rng = ChaCha8Rng::seed_from_u64(cli.rng_seed.unwrap_or(0));
            for _ in 0..*random {
                let len = rng.gen_range(0..=*depth);
                seqs.push(MutationSequence::new((0..len).map(|_| rng.gen_range(0..b.n())).collect()));
            }
            let mut failures = Vec::new();
            for t in &seqs {
                let tropical = check_tropical_duality(&b, t).map_err(domain)?;
                let langlands = check_langlands_duality(&b, t).map_err(domain)?;
                for f in tropical.failures.iter().chain(&langlands.failures) {
                    failures.push(format!("[{t}] {f}"));
                }
            }
            let holds = failures.is_empty();
            match format {
                Format::Json => Ok(json_out(&json!({ "holds": holds, "sequences": seqs.len(), "failures": failures }))),
                Format::Table => Ok(flags_table(&[("holds", holds.to_string()), ("sequences", seqs.len().to_string())])),
                Format::Dot => Err(no_dot("duality")),
            }
        }
        Command::QuantumMutate { input, seq } => {
            let v = read_json(input)?;
            let quiver: QuiverJson = serde_json::from_value(v.clone()).map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
            let b = quiver.to_matrix().map_err(domain)?;
            let pair = match v.get("lambda") {
                Some(l) => {
                    let rows: Vec<Vec<crate::io::JsonInt>> =
                        serde_json::from_value(l.clone()).map_err(|e| CliError::Usage(format!("lambda: {e}")))?;
                    let lambda = matrix_from_json(&rows, b.m()).map_err(domain)?;
                    CompatiblePair::new(b, lambda).map_err(domain)?
                }
                None => CompatiblePair::principal(&b).map_err(domain)?,
            };
            let t = sequence(seq, pair.matrix().n())?;
            let qs = QuantumSeed::initial(pair).mutate_sequence(&t).map_err(domain)?;
            let names = indexed_names("x", qs.pair().matrix().m());
            let cluster: Vec<String> = qs.cluster().iter().map(|x| x.display_with(&names)).collect();
            let classical: Vec<String> =
                qs.specialize_q1().map_err(domain)?.iter().map(|x| x.display_with(&names)).collect();
            match format {
                Format::Json => Ok(json_out(&json!({
                    "matrix": matrix_json(qs.pair().matrix().matrix()),
                    "lambda": matrix_json(qs.pair().lambda()),
                    "cluster": cluster,
                    "specialized": classical,
                }))),
                Format::Table => Ok(cluster
                    .iter()
                    .zip(classical.iter().map(Some).chain(std::iter::repeat(None)))
                    .enumerate()
                    .map(|(i, (q, c))| match c {
                        Some(c) => format!("X{}: {q}    [v=1: {c}]\n", i + 1),
                        None => format!("X{}: {q}\n", i + 1),
                    })
                    .collect()),
                Format::Dot => Err(no_dot("quantum-mutate")),
            }
        }
        Command::Pentagon { n } => {
            let n = truncation(*n)?;
            let holds = quantum::pentagon_holds(n);
            match format {
                Format::Json => Ok(json_out(&json!({ "holds": holds }))),
                Format::Table => Ok(flags_table(&[("N", n.to_string()), ("holds", holds.to_string())])),
                Format::Dot => Err(no_dot("pentagon")),
            }
        }
        Command::Dt { input, n, depth } => {
            let b = read_quiver(input)?;
            let n = truncation(*n)?;
            let found = quantum::combinatorial_dt(&b, n, *depth).map_err(domain)?;
            let value = match &found {
                Some(r) => json!({ "found": true, "sequence": r.sequence.to_one_based(), "series": SeriesJson::from_series(&r.series) }),
                None => json!({ "found": false }),
            };
            match format {
                Format::Json => Ok(json_out(&value)),
                Format::Table => Ok(match found {
                    Some(r) => series_table(&r.sequence, &SeriesJson::from_series(&r.series)),
                    None => "found: false\n".into(),
                }),
                Format::Dot => Err(no_dot("dt")),
            }
        }
        Command::Identity { input, seq, other, n } => {
            let b = read_quiver(input)?;
            let n = truncation(*n)?;
            let (i, j) = (sequence(seq, b.n())?, sequence(other, b.n())?);
            let report = quantum::verify_identity(&b, &i, &j, n).map_err(domain)?;
            let mut value = json!({
                "holds": report.holds,
                "permutation": report.permutation.iter().map(|p| p + 1).collect::<Vec<_>>(),
                "series": SeriesJson::from_series(&report.lhs),
            });
            if !report.holds {
                value["other_series"] = json!(SeriesJson::from_series(&report.rhs));
            }
            match format {
                Format::Json => Ok(json_out(&value)),
                Format::Table => Ok(flags_table(&[("holds", report.holds.to_string())])
                    + &series_table(&i, &SeriesJson::from_series(&report.lhs))),
                Format::Dot => Err(no_dot("identity")),
            }
        }
        Command::QpMutate { input, at } => {
            let mut qp = read_qp(input)?;
            for &k in at {
                if k == 0 || k > qp.vertices() {
                    return Err(domain(crate::qp::QpError::BadVertex(k)));
                }
                qp = mutate_qp(&qp, k - 1).map_err(domain)?;
            }
            Ok(match format {
                Format::Json => json_out(&QpJson::from_qp(&qp)),
                Format::Dot => qp_dot(&qp),
                Format::Table => format!("{qp}\n"),
            })
        }
        Command::Jacobian { input, n } => {
            let qp = read_qp(input)?;
            let n = n.unwrap_or(qp.truncation());
            if n == 0 {
                return Err(CliError::Usage("--N must be at least 1".into()));
            }
            let d = jacobian_dimension(&qp, n);
            match format {
                Format::Json => Ok(json_out(&json!({ "dimension": d.dimension, "saturated": d.saturated, "truncation": d.truncation }))),
                Format::Table => Ok(format!("dimension: {d}\n")),
                Format::Dot => Err(no_dot("jacobian")),
            }
        }
        Command::Serve { input, host, port, state_file } => {
            let session = match state_file.as_ref().filter(|p| p.exists()) {
                Some(p) => {
                    let text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
                    let snap: Snapshot =
                        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
                    Session::restore(&snap).map_err(domain)?
                }
                None => {
                    let input = input.as_deref().ok_or_else(|| CliError::Usage("serve needs an input seed or an existing --state-file".into()))?;
                    Session::new(read_seed(input)?)
                }
            };
            let addr: std::net::SocketAddr =
                format!("{host}:{port}").parse().map_err(|e| CliError::Usage(format!("--host/--port: {e}")))?;
            let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Usage(e.to_string()))?;
            runtime
                .block_on(server::serve(addr, AppState::new(session, state_file.clone())))
                .map_err(|e| CliError::Domain { name: "ServeError".into(), message: e.to_string() })?;
            Ok(String::new())
        }
    }
}

fn series_table(t: &MutationSequence, s: &SeriesJson) -> String {
    let mut out = format!("sequence: {}\nN: {}\n", t.to_one_based().iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","), s.order);
    for term in &s.terms {
        out.push_str(&format!("{:?}  {}\n", term.alpha, term.coeff));
    }
    out
}
