//! `media-kit`: check, convert and enumerate media from the command line.
//!
//! Exit codes: 0 when the verdict holds, 1 when it fails (the witness is
//! printed), 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use media_core::fixtures::{self, Fixture, DEFAULT_SEED};
use media_core::graph::{circuits_upto, is_mediatic, is_minimal_circuit};
use media_core::io::{self, DocumentKind};
use media_core::medium::classify_circuit;
use media_core::{
    check_axioms_bounded, check_medium, dot, enumerate_family, family_to_medium, find_graph_iso, graph_to_medium,
    media_isomorphic, medium_to_graph, state_content, Error, Graph, Kind, Limits, Medium, StateId, TokenSystem,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "media-kit", version, about = "Token systems, media and mediatic graphs")]
struct Cli {
    /// Print Graphviz DOT instead of JSON where the output is a graph or a
    /// token system.
    #[arg(long, global = true)]
    dot: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph is mediatic or a token system is a medium.
    #[command(subcommand)]
    Check(Check),
    /// Convert between media and mediatic graphs.
    Convert { direction: Direction, file: PathBuf },
    /// Search for an isomorphism.
    Iso {
        what: IsoTarget,
        a: PathBuf,
        b: PathBuf,
        /// Largest graph the search accepts.
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Enumerate a family of relations on a small ground set.
    GenFamily(GenFamily),
    /// List the circuits of a graph or of the graph of a medium.
    Circuits {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Keep only circuits in which every two vertices are joined by a
        /// shortest segment.
        #[arg(long)]
        minimal_only: bool,
    },
    /// The content of a state of a medium.
    Content {
        file: PathBuf,
        #[arg(long)]
        state: String,
    },
    /// Export a graph or token system.
    #[command(subcommand)]
    Export(Export),
    /// Print a named test fixture.
    GenFixture {
        name: String,
        /// Seed for `random-pc`; rejected for every other fixture.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum Check {
    Graph {
        file: PathBuf,
    },
    Medium {
        file: PathBuf,
        /// Also run the bounded checker with this maximum message length.
        #[arg(long)]
        bounded: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Export {
    Dot { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    M2g,
    G2m,
}

#[derive(Clone, Copy, ValueEnum)]
enum IsoTarget {
    Graphs,
    Media,
}

#[derive(Args)]
struct GenFamily {
    #[arg(long)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "to_graph")]
    to_medium: bool,
    #[arg(long)]
    to_graph: bool,
}

enum Failure {
    /// A verdict that does not hold; the payload goes to standard out.
    Verdict(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<String, Failure>;

fn json(v: &impl serde::Serialize) -> Result<String, Failure> {
    Ok(io::to_json(v)?)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    io::graph_from_json(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_system(path: &Path) -> Result<TokenSystem, Failure> {
    io::system_from_json(&read(path)?).map_err(|e| in_file(path, e))
}

/// A medium, or a verdict failure carrying the axiom report.
fn medium(sys: TokenSystem, limits: &Limits) -> Result<Medium, Failure> {
    match Medium::with_limits(sys, limits) {
        Ok(m) => Ok(m),
        Err(Error::NotAMedium(report)) => Err(Failure::Verdict(json(&report)?)),
        Err(e) => Err(e.into()),
    }
}

fn graph_out(g: &Graph, as_dot: bool) -> CliResult {
    if as_dot {
        Ok(dot::graph_to_dot(g))
    } else {
        Ok(io::graph_to_json(g)?)
    }
}

fn system_out(sys: &TokenSystem, as_dot: bool) -> CliResult {
    if as_dot {
        Ok(dot::system_to_dot(sys))
    } else {
        Ok(io::system_to_json(sys)?)
    }
}

fn no_dot(as_dot: bool) -> Result<(), Failure> {
    if as_dot {
        Err(Failure::Usage(
            "--dot applies only to graph and token-system output".into(),
        ))
    } else {
        Ok(())
    }
}

fn verdict(holds: bool, payload: String) -> CliResult {
    if holds {
        Ok(payload)
    } else {
        Err(Failure::Verdict(payload))
    }
}

fn run(cli: Cli, limits: Limits) -> CliResult {
    let as_dot = cli.dot;
    match cli.command {
        Command::Check(Check::Graph { file }) => {
            no_dot(as_dot)?;
            let report = is_mediatic(&load_graph(&file)?);
            verdict(report.is_mediatic, json(&report)?)
        }
        Command::Check(Check::Medium { file, bounded }) => {
            no_dot(as_dot)?;
            let sys = load_system(&file)?;
            let report = check_medium(&sys, &limits)?;
            match bounded {
                None => verdict(report.is_medium, json(&report)?),
                Some(max_len) => {
                    let b = check_axioms_bounded(&sys, max_len, &limits)?;
                    let agree = b.is_medium == report.is_medium;
                    let out = json(&json!({ "agree": agree, "bounded": b, "exact": report }))?;
                    verdict(agree && report.is_medium, out)
                }
            }
        }
        Command::Convert { direction, file } => match direction {
            Direction::M2g => graph_out(&medium_to_graph(&medium(load_system(&file)?, &limits)?), as_dot),
            Direction::G2m => {
                let g = load_graph(&file)?;
                match graph_to_medium(&g) {
                    Ok(sys) => system_out(&sys, as_dot),
                    Err(Error::NotMediatic(report)) => Err(Failure::Verdict(json(&report)?)),
                    Err(e) => Err(e.into()),
                }
            }
        },
        Command::Iso {
            what,
            a,
            b,
            max_vertices,
        } => {
            no_dot(as_dot)?;
            let limits = Limits {
                iso_max_vertices: max_vertices.unwrap_or(limits.iso_max_vertices),
                ..limits
            };
            let found = match what {
                IsoTarget::Graphs => {
                    let (g, h) = (load_graph(&a)?, load_graph(&b)?);
                    find_graph_iso(&g, &h, &limits)?.map(|iso| json!({ "phi": iso.names(&g, &h) }))
                }
                IsoTarget::Media => {
                    let (m, m2) = (medium(load_system(&a)?, &limits)?, medium(load_system(&b)?, &limits)?);
                    media_isomorphic(&m, &m2, &limits)?.map(|iso| serde_json::to_value(iso.names(&m, &m2)).unwrap())
                }
            };
            match found {
                Some(v) => json(&v),
                None => Err(Failure::Verdict(json(&"non-isomorphic")?)),
            }
        }
        Command::GenFamily(args) => {
            if args.kind == Kind::Custom {
                return Err(Failure::Usage(
                    "custom families are read from files, not generated".into(),
                ));
            }
            let f = enumerate_family(args.kind, args.n)?;
            if !(args.to_medium || args.to_graph) {
                no_dot(as_dot)?;
                return json(&io::family_to_value(&f));
            }
            let sys = family_to_medium(&f)?;
            if args.to_graph {
                graph_out(&medium_to_graph(&medium(sys, &limits)?), as_dot)
            } else {
                system_out(&sys, as_dot)
            }
        }
        Command::Circuits {
            file,
            max_len,
            minimal_only,
        } => {
            no_dot(as_dot)?;
            circuits(&file, max_len, minimal_only, &limits)
        }
        Command::Content { file, state } => {
            no_dot(as_dot)?;
            let m = medium(load_system(&file)?, &limits)?;
            let s = m.state_id(&state)?;
            let content = state_content(&m, s)?;
            let tokens: Vec<&str> = content.tokens.iter().map(|&t| m.token_name(t)).collect();
            json(&json!({ "content": tokens, "state": state }))
        }
        Command::Export(Export::Dot { file }) => {
            let text = read(&file)?;
            match io::document_kind(&text).map_err(|e| in_file(&file, e))? {
                DocumentKind::Graph => Ok(dot::graph_to_dot(&load_graph(&file)?)),
                DocumentKind::TokenSystem => Ok(dot::system_to_dot(&load_system(&file)?)),
                DocumentKind::Family => Err(Failure::Usage(
                    "families export through gen-family --to-graph --dot".into(),
                )),
            }
        }
        Command::GenFixture { name, seed } => {
            if seed.is_some() && name != "random-pc" {
                return Err(Failure::Usage("--seed applies only to random-pc".into()));
            }
            match fixtures::by_name(&name, seed.unwrap_or(DEFAULT_SEED)) {
                Some(Fixture::Graph(g)) => graph_out(&g, as_dot),
                Some(Fixture::Medium(sys)) => system_out(&sys, as_dot),
                None => {
                    let known: Vec<&str> = fixtures::GRAPH_NAMES
                        .iter()
                        .chain(fixtures::MEDIUM_NAMES)
                        .copied()
                        .collect();
                    Err(Failure::Usage(format!(
                        "unknown fixture `{name}`; expected one of {}",
                        known.join(", ")
                    )))
                }
            }
        }
    }
}

/// Circuits of a graph file, or of the graph of a medium file with each
/// circuit lifted to a message and classified from its first vertex.
fn circuits(file: &Path, max_len: usize, minimal_only: bool, limits: &Limits) -> CliResult {
    let text = read(file)?;
    let m = match io::document_kind(&text).map_err(|e| in_file(file, e))? {
        DocumentKind::Graph => None,
        DocumentKind::TokenSystem => Some(medium(load_system(file)?, limits)?),
        DocumentKind::Family => return Err(Failure::Usage("expected a graph or a token system".into())),
    };
    let owned;
    let g = match &m {
        Some(m) => m.graph(),
        None => {
            owned = load_graph(file)?;
            &owned
        }
    };
    let mut out = Vec::new();
    for c in circuits_upto(g, max_len, limits)? {
        let minimal = is_minimal_circuit(g, &c)?;
        if minimal_only && !minimal {
            continue;
        }
        let mut entry = json!({ "length": c.len(), "minimal": minimal, "vertices": c.names(g) });
        if let Some(m) = &m {
            let msg = m.lift_walk(&c.closed_walk())?;
            let class = classify_circuit(m, StateId(c.vertices()[0]), &msg)?;
            entry["tokens"] = json!(m.token_names(msg.tokens()));
            entry["classification"] = serde_json::to_value(class).unwrap();
        }
        out.push(entry);
    }
    json(&Value::Array(out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli, Limits::from_env()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verdict(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
