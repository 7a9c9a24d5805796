//! `planar-canon`: canonical codes, isomorphism, decomposition export,
//! generators and benchmarks for planar graphs.
//!
//! Exit status is 0 on success, 1 on domain errors (parse failures,
//! non-planar input) and 2 on usage errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use planar_canon::bench::{bench, bench_spec, to_csv};
use planar_canon::canon::graph_code;
use planar_canon::export::export_decomposition;
use planar_canon::generators::{generate, GenKind, GenSpec};
use planar_canon::iso::{is_isomorphic, wl1_histogram};
use planar_canon::{Error, Graph};

#[derive(Parser)]
#[command(
    name = "planar-canon",
    version,
    about = "Canonical codes and isomorphism for planar graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical code of every graph in the file.
    Canon { file: String },
    /// Compare the graphs of two files pairwise.
    Iso { file1: String, file2: String },
    /// Export the decomposition of every graph as JSON lines.
    Decompose {
        file: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate graphs.
    Gen {
        kind: GenArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
    },
    /// Print the stable 1-WL color histogram of every graph.
    Wl1 { file: String },
    /// Time decomposition and coding on random planar graphs; CSV output.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenArg {
    P3r,
    Planar,
    Tree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Json,
}

/// A domain error, reported on stderr with exit status 1. An empty
/// message means the details were already printed.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))
    }
}

/// One graph per non-empty line; a line starting with `{` is edge-list
/// JSON, anything else graph6.
fn read_graphs(path: &str) -> Result<Vec<Graph>, Failure> {
    let text = read_input(path)?;
    let mut graphs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line == ">>graph6<<" {
            continue;
        }
        let parsed = if line.starts_with('{') {
            Graph::from_json(line)
        } else {
            Graph::from_graph6(line)
        };
        graphs.push(parsed.map_err(|e| Failure(format!("{path}:{}: {e}", i + 1)))?);
    }
    Ok(graphs)
}

/// Runs `f` on every graph in parallel and writes results in input order.
/// Failed graphs are reported with their position; the rest still print.
fn for_each_graph<F>(path: &str, out: &mut dyn Write, f: F) -> Result<(), Failure>
where
    F: Fn(&Graph) -> Result<String, Error> + Sync,
{
    let graphs = read_graphs(path)?;
    let results: Vec<Result<String, Error>> = graphs.par_iter().map(&f).collect();
    let mut failed = None;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(line) => writeln!(out, "{line}").map_err(io_failure)?,
            Err(e) => {
                eprintln!("error: {path}: graph {}: {e}", i + 1);
                failed.get_or_insert(Failure(String::new()));
            }
        }
    }
    failed.map_or(Ok(()), Err)
}

fn io_failure(e: io::Error) -> Failure {
    Failure(format!("write failed: {e}"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match cli.command {
        Command::Canon { file } => {
            for_each_graph(&file, &mut out, |g| Ok(graph_code(g)?.to_string()))?
        }
        Command::Iso { file1, file2 } => {
            let (a, b) = (read_graphs(&file1)?, read_graphs(&file2)?);
            if a.len() != b.len() {
                return Err(Failure(format!(
                    "{file1} has {} graphs but {file2} has {}",
                    a.len(),
                    b.len()
                )));
            }
            let results: Vec<Result<bool, Error>> = a
                .par_iter()
                .zip(b.par_iter())
                .map(|(x, y)| is_isomorphic(x, y))
                .collect();
            for r in results {
                let same = r?;
                writeln!(
                    out,
                    "{}",
                    if same { "isomorphic" } else { "not isomorphic" }
                )
                .map_err(io_failure)?;
            }
        }
        Command::Decompose { file, out: target } => {
            let export = |g: &Graph| Ok(export_decomposition(g)?.to_json_line());
            match target {
                Some(path) => {
                    let f = fs::File::create(&path)
                        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    let mut w = io::BufWriter::new(f);
                    for_each_graph(&file, &mut w, export)?;
                    w.flush().map_err(io_failure)?;
                }
                None => for_each_graph(&file, &mut out, export)?,
            }
        }
        Command::Gen {
            kind,
            n,
            m,
            seed,
            count,
            format,
        } => {
            let spec = match kind {
                GenArg::P3r => {
                    if n.is_some_and(|n| n != 10) {
                        return Err(Failure("p3r graphs have exactly 10 nodes".into()));
                    }
                    GenSpec {
                        kind: GenKind::P3r,
                        n: 10,
                        m: 15,
                        seed,
                        count,
                    }
                }
                GenArg::Planar | GenArg::Tree => {
                    let Some(n) = n else {
                        Cli::command()
                            .error(
                                ErrorKind::MissingRequiredArgument,
                                "--n is required for this generator",
                            )
                            .exit();
                    };
                    let kind = if matches!(kind, GenArg::Planar) {
                        GenKind::RandomPlanar
                    } else {
                        GenKind::RandomTree
                    };
                    GenSpec {
                        kind,
                        n,
                        m: m.unwrap_or(bench_spec(n, seed).m),
                        seed,
                        count,
                    }
                }
            };
            let mut graphs = generate(&spec)?;
            if spec.kind == GenKind::P3r {
                graphs.truncate(count);
            }
            for g in graphs {
                let line = match format {
                    Format::Graph6 => g.to_graph6(),
                    Format::Json => g.to_json(),
                };
                writeln!(out, "{line}").map_err(io_failure)?;
            }
        }
        Command::Wl1 { file } => for_each_graph(&file, &mut out, |g| {
            let wl = wl1_histogram(g);
            Ok(serde_json::json!({ "rounds": wl.rounds, "histogram": wl.histogram }).to_string())
        })?,
        Command::Bench { sizes, seed } => {
            if sizes.contains(&0) {
                return Err(Failure("sizes must be positive".into()));
            }
            write!(out, "{}", to_csv(&bench(&sizes, seed)?)).map_err(io_failure)?;
        }
    }
    out.flush().map_err(io_failure)
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
    }
}
