use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use unnet::coding::{decode_wb, reconstruct, share, Field, Share, DEFAULT_MODULUS};
use unnet::connectivity::{disjoint_paths, vertex_connectivity, ConnectivityError};
use unnet::construct::{join_k_connected, join_unns, maximal_unn_subgraph, JoinSpec};
use unnet::extend::{smallest_unn_extension, EdgeCosts, DEFAULT_BUDGET};
use unnet::graph::{Direction, Graph, Vertex};
use unnet::sim::{
    build_network, key_count_report, mpa_sign, mpa_verify, mpt_send, sweep, Adversary, Decision, Status,
    SweepParams, SweepRow, Unreachable,
};
use unnet::unn::{is_unn_distance, is_unn_naive, is_unn_naive_directed, UnnVerdict};

#[derive(Parser)]
#[command(name = "unnet", version, about = "Unique-neighborhood network toolkit")]
struct Cli {
    /// Output format; each subcommand accepts a subset.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the machine-readable result to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Dot,
}

/// `algebraic` is the exact row-distance matrix test.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Naive,
    Algebraic,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph is a UNN.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Exit with status 1 when the graph is not a UNN.
        #[arg(long)]
        require: bool,
    },
    /// Extract a UNN subgraph through a spanning tree.
    Extract { file: PathBuf },
    /// Add the cheapest edge set that makes the graph a UNN.
    Extend {
        file: PathBuf,
        /// Lines `<u> <v> <cost>`; unlisted pairs cost 1.
        #[arg(long)]
        costs: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Join two graphs with a set of connecting edges.
    Join {
        left: PathBuf,
        right: PathBuf,
        /// Comma-separated `left:right` vertex pairs.
        #[arg(long)]
        pairs: String,
        /// Require and preserve k-connectivity instead of the UNN property.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Vertex connectivity.
    Kappa { file: PathBuf },
    /// Vertex-disjoint paths between two vertices.
    Paths {
        file: PathBuf,
        #[arg(long)]
        from: Vertex,
        #[arg(long)]
        to: Vertex,
        #[arg(long)]
        k: usize,
    },
    /// Run one multipath transmission, optionally followed by authentication.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        from: Vertex,
        #[arg(long)]
        to: Vertex,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// e.g. `passive=1,2;active=3;offset=5;votes=flip`
        #[arg(long, default_value = "none")]
        adversary: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Provision keys only on the spanning tree of the extracted UNN.
        #[arg(long)]
        restrict_tree: bool,
        #[arg(long, default_value = "hello")]
        message: String,
        #[arg(long, default_value_t = DEFAULT_MODULUS)]
        p: u32,
        /// Also sign at `--from` for all keyed neighbors and verify at `--to`
        /// with this many confirming votes.
        #[arg(long)]
        verify_threshold: Option<usize>,
    },
    /// Success rates over ranges of (d, k, adversary size), as CSV.
    Sweep {
        file: PathBuf,
        #[arg(long)]
        from: Vertex,
        #[arg(long)]
        to: Vertex,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        adversary_sizes: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "hello")]
        message: String,
    },
    /// Split a secret into k shares, any d of which recover it.
    Share {
        #[arg(long)]
        secret: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_MODULUS)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recover a secret from a file of `x y` share lines.
    Reconstruct {
        file: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_MODULUS)]
        p: u32,
        /// Correct corrupted shares (Welch-Berlekamp) instead of
        /// interpolating the first d.
        #[arg(long)]
        correct: bool,
    },
}

/// Bad flags or flag combinations; exit status 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

fn allow_formats(format: Format, allowed: &[Format], command: &str) -> Result<()> {
    if allowed.contains(&format) {
        return Ok(());
    }
    let names: Vec<&str> = allowed.iter().map(|f| format_name(*f)).collect();
    usage(format!("`{command}` supports --format {}", names.join("|")))
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Text => "text",
        Format::Csv => "csv",
        Format::Dot => "dot",
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = read_text(path)?;
    Graph::parse_edge_list(&text).with_context(|| format!("in {}", path.display()))
}

fn field(p: u32) -> Result<Field> {
    Field::new(p).map_err(|e| Usage(e.to_string()).into())
}

/// Machine output goes to `--output` when given, else to standard out.
fn emit(output: &Option<PathBuf>, body: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, body).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn graph_document(g: &Graph, format: Format) -> String {
    match format {
        Format::Dot => format!("// unnet-dot v1\n{}", g.to_dot()),
        _ => format!("# unnet-edges v1\n{}", g.to_edge_list()),
    }
}

fn verdict_line(label: &str, v: &UnnVerdict) -> String {
    match v.witness {
        None => format!("{label}: yes"),
        Some((a, b)) => format!("{label}: no; witness {a},{b}"),
    }
}

fn join_list<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(sep)
    }
}

fn parse_pairs(s: &str) -> Result<Vec<(Vertex, Vertex)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t.trim().split_once(':').ok_or_else(|| Usage(format!("pair `{t}` is not `u:v`")))?;
            let a = a.parse().map_err(|_| Usage(format!("bad vertex in `{t}`")))?;
            let b = b.parse().map_err(|_| Usage(format!("bad vertex in `{t}`")))?;
            Ok((a, b))
        })
        .collect()
}

fn parse_shares(text: &str, field: Field) -> Result<Vec<Share>> {
    let mut shares = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line == "x,y" {
            continue;
        }
        let tokens: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        let [x, y] = tokens.as_slice() else {
            bail!("line {}: expected `<x> <y>`", idx + 1);
        };
        let x: u64 = x.parse().with_context(|| format!("line {}: bad x", idx + 1))?;
        let y: u64 = y.parse().with_context(|| format!("line {}: bad y", idx + 1))?;
        shares.push(Share { x: field.elem(x), y: field.elem(y) });
    }
    Ok(shares)
}

fn run(cli: Cli) -> Result<()> {
    let Cli { format, output, command } = cli;
    match command {
        Command::Analyze { file, method, require } => {
            allow_formats(format, &[Format::Text], "analyze")?;
            let g = read_graph(&file)?;
            let mut all_unn = true;
            if g.is_directed() {
                for (side, label) in [(Direction::Out, "UNN (out)"), (Direction::In, "UNN (in)")] {
                    let naive = is_unn_naive_directed(&g, side);
                    let algebraic = is_unn_distance(&g.adjacency_matrix(), side);
                    let v = match method {
                        Method::Naive => naive,
                        Method::Algebraic => algebraic,
                        Method::Both if naive == algebraic => naive,
                        Method::Both => bail!("naive and algebraic tests disagree on the {label} side"),
                    };
                    all_unn &= v.is_unn;
                    println!("{}", verdict_line(label, &v));
                }
            } else {
                let naive = is_unn_naive(&g)?;
                let algebraic = is_unn_distance(&g.adjacency_matrix(), Direction::Out);
                let v = match method {
                    Method::Naive => naive,
                    Method::Algebraic => algebraic,
                    Method::Both if naive == algebraic => naive,
                    Method::Both => bail!("naive and algebraic tests disagree"),
                };
                all_unn = v.is_unn;
                println!("{}", verdict_line("UNN", &v));
            }
            if require && !all_unn {
                bail!("graph is not a UNN");
            }
        }
        Command::Extract { file } => {
            allow_formats(format, &[Format::Text, Format::Dot], "extract")?;
            let g = read_graph(&file)?;
            let r = maximal_unn_subgraph(&g)?;
            println!("kept: {}", join_list(&r.kept_vertices, ","));
            println!("excluded: {}", join_list(&r.excluded, ","));
            println!("excluded with degree > 1: {}", join_list(&r.excluded_high_degree, ","));
            if output.is_some() {
                let mut h = Graph::new(g.n());
                for (u, v) in r.kept_edges() {
                    h.add_edge(u, v)?;
                }
                emit(&output, &graph_document(&h, format))?;
            }
        }
        Command::Extend { file, costs, budget } => {
            allow_formats(format, &[Format::Text, Format::Dot], "extend")?;
            if budget == 0 {
                return usage("--budget must be positive");
            }
            let g = read_graph(&file)?;
            let costs = match costs {
                Some(path) => EdgeCosts::parse(&read_text(&path)?).with_context(|| format!("in {}", path.display()))?,
                None => EdgeCosts::unit(),
            };
            let sol = smallest_unn_extension(&g, &costs, budget)?;
            println!("cost: {}", sol.cost);
            println!("added: {}", join_list(sol.added_edges.iter().map(|(u, v)| format!("{u}-{v}")), " "));
            println!("optimal: {}", if sol.optimal { "yes" } else { "no (budget exhausted)" });
            if output.is_some() {
                emit(&output, &graph_document(&sol.apply(&g), format))?;
            }
        }
        Command::Join { left, right, pairs, k } => {
            allow_formats(format, &[Format::Text, Format::Dot], "join")?;
            let pairs = parse_pairs(&pairs)?;
            if pairs.is_empty() {
                return usage("--pairs needs at least one pair");
            }
            let left = read_graph(&left)?;
            let right = read_graph(&right)?;
            let h = match k {
                Some(k) => join_k_connected(&left, &right, &pairs, k)?,
                None => join_unns(&JoinSpec { left, right, pairs })?,
            };
            println!("joined: {} vertices, {} edges", h.n(), h.edge_count());
            emit(&output, &graph_document(&h, format))?;
        }
        Command::Kappa { file } => {
            allow_formats(format, &[Format::Text], "kappa")?;
            let g = read_graph(&file)?;
            println!("{}", vertex_connectivity(&g)?);
        }
        Command::Paths { file, from, to, k } => {
            allow_formats(format, &[Format::Text, Format::Csv], "paths")?;
            if k == 0 {
                return usage("--k must be positive");
            }
            if from == to {
                return usage("--from and --to must differ");
            }
            let g = read_graph(&file)?;
            let paths = match disjoint_paths(&g, from, to, k) {
                Err(ConnectivityError::Infeasible { requested, max }) => {
                    bail!("only {max} vertex-disjoint paths exist between {from} and {to} (requested {requested})")
                }
                other => other?,
            };
            let body = match format {
                Format::Csv => {
                    let mut s = String::from("# unnet-paths v1\npath,vertices\n");
                    for (i, p) in paths.paths.iter().enumerate() {
                        s.push_str(&format!("{i},{}\n", join_list(p, " ")));
                    }
                    s
                }
                _ => paths.paths.iter().map(|p| join_list(p, " ") + "\n").collect(),
            };
            emit(&output, &body)?;
        }
        Command::Simulate { file, from, to, d, k, adversary, seed, restrict_tree, message, p, verify_threshold } => {
            allow_formats(format, &[Format::Text], "simulate")?;
            if from == to {
                return usage("--from and --to must differ");
            }
            if d == 0 || d > k {
                return usage("need 1 <= d <= k");
            }
            let adv: Adversary = adversary.parse().map_err(|e: unnet::sim::SimError| Usage(e.to_string()))?;
            let field = field(p)?;
            let g = read_graph(&file)?;
            let net = build_network(&g, seed, restrict_tree)?.with_field(field);
            let counts = key_count_report(&net);
            println!(
                "keys: {} provisioned, tree bound {}, pairwise bound {}",
                counts.provisioned, counts.tree_bound, counts.pairwise_bound
            );
            let r = mpt_send(&net, from, to, message.as_bytes(), d, k, &adv, seed)?;
            println!("status: {}", r.status.as_str());
            if let Some(bytes) = &r.delivered {
                println!("delivered: {}", String::from_utf8_lossy(bytes));
            }
            for (i, path) in r.paths_used.paths.iter().enumerate() {
                println!("path {i}: {}", join_list(path, " "));
            }
            println!("corrupted paths: {}", join_list(&r.corrupted_paths, ","));
            for (node, records) in &r.transcript {
                let seen: BTreeSet<usize> = records.iter().map(|rec| rec.path).collect();
                println!("node {node} observed {} shares on path {}", records.len(), join_list(&seen, ","));
            }
            if let Some(threshold) = verify_threshold {
                let keyed: Vec<Vertex> =
                    net.graph().neighbors(from).iter().copied().filter(|&i| net.has_key(from, i)).collect();
                if keyed.is_empty() {
                    bail!("{from} has no keyed neighbors to sign for");
                }
                let sig = mpa_sign(&net, from, message.as_bytes(), &keyed, seed)?;
                let auth = mpa_verify(&net, to, from, message.as_bytes(), &sig, threshold, &adv, Unreachable::Abstain)?;
                let decision = if auth.decision == Decision::Accept { "accept" } else { "reject" };
                println!("authentication: {decision} ({}/{} votes, threshold {})", auth.accepting(), auth.votes.len(), threshold);
                if let Some(w) = &auth.warning {
                    println!("warning: neighborhood of {} also belongs to {}", w.claimed, join_list(&w.twins, ","));
                }
            }
            if r.status == Status::RoutingFailure {
                eprintln!("note: graph cannot supply {k} vertex-disjoint paths");
            }
        }
        Command::Sweep { file, from, to, d, k, adversary_sizes, trials, seed, message } => {
            allow_formats(format, &[Format::Text, Format::Csv], "sweep")?;
            if from == to {
                return usage("--from and --to must differ");
            }
            if trials == 0 {
                return usage("--trials must be positive");
            }
            let g = read_graph(&file)?;
            let net = build_network(&g, seed, false)?;
            let params = SweepParams {
                from,
                to,
                ds: d,
                ks: k,
                adversary_sizes,
                trials,
                message: message.into_bytes(),
                seed,
            };
            let rows = sweep(&net, &params)?;
            let mut body = format!("# unnet-sweep v1\n{}\n", SweepRow::CSV_HEADER);
            for row in &rows {
                body.push_str(&row.to_csv());
                body.push('\n');
            }
            emit(&output, &body)?;
        }
        Command::Share { secret, d, k, p, seed } => {
            allow_formats(format, &[Format::Text, Format::Csv], "share")?;
            let field = field(p)?;
            if secret >= p {
                return usage(format!("secret must be below p = {p}"));
            }
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let sv = share(field.elem(u64::from(secret)), d, k, &mut rng).map_err(|e| Usage(e.to_string()))?;
            let mut body = match format {
                Format::Csv => String::from("# unnet-shares v1\nx,y\n"),
                _ => String::new(),
            };
            let sep = if format == Format::Csv { "," } else { " " };
            for s in &sv.shares {
                body.push_str(&format!("{}{sep}{}\n", s.x.value(), s.y.value()));
            }
            emit(&output, &body)?;
        }
        Command::Reconstruct { file, d, p, correct } => {
            allow_formats(format, &[Format::Text], "reconstruct")?;
            if d == 0 {
                return usage("--d must be positive");
            }
            let field = field(p)?;
            let shares = parse_shares(&read_text(&file)?, field)?;
            let secret = if correct {
                decode_wb(&shares, d)?
            } else {
                if shares.len() < d {
                    bail!("need at least {d} shares, found {}", shares.len());
                }
                reconstruct(&shares[..d], d)?
            };
            println!("{}", secret.value());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
