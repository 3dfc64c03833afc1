use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use granlog::dsl::{parse_constraint, parse_schema};
use granlog::semantics::canonical_model;
use granlog::{rcc5_classify, Decision, Engine, Granule, ProofTree, SatResult, Schema};

#[derive(Parser)]
#[command(name = "granlog", version, about = "Subsumption and disjointness reasoning over granule schemas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProofFormat {
    Text,
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the schema entails a constraint (exit 0 yes, 1 no).
    Entail {
        file: PathBuf,
        constraint: String,
        #[arg(long, value_enum)]
        prove: Option<ProofFormat>,
        /// Write the proof rendering to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide satisfiability (exit 0 sat, 1 unsat).
    Sat {
        file: PathBuf,
        #[arg(long, value_enum)]
        prove: Option<ProofFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every entailed ground constraint.
    Closure { file: PathBuf },
    /// State vector and RCC5+ relations of a granule pair.
    Classify { file: PathBuf, g1: String, g2: String },
    /// Canonical model of the positive constraints, one pattern per line.
    Model { file: PathBuf },
    /// The schema graph.
    Graph {
        file: PathBuf,
        /// Graphviz output (the only format).
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<Schema, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_schema(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn granule(s: &Schema, name: &str) -> Result<Granule, String> {
    let g = Granule::from_name(name).map_err(|e| e.to_string())?;
    if s.contains_granule(&g) {
        Ok(g)
    } else {
        Err(format!("unknown granule `{name}`"))
    }
}

fn render(proof: &ProofTree, format: ProofFormat) -> (Value, String) {
    match format {
        ProofFormat::Json => {
            let v = proof.to_json();
            let text = serde_json::to_string_pretty(&v).expect("json") + "\n";
            (v, text)
        }
        ProofFormat::Text => {
            let t = proof.render_text();
            (Value::from(t.clone()), t)
        }
        ProofFormat::Dot => {
            let t = proof.render_dot();
            (Value::from(t.clone()), t)
        }
    }
}

/// Replaces the `proof` field according to the requested format and writes
/// the rendering to `out` if given.
fn attach_proof(
    mut v: Value,
    proof: Option<&ProofTree>,
    format: Option<ProofFormat>,
    out: Option<&Path>,
) -> Result<Value, String> {
    let field = match (proof, format) {
        (Some(p), Some(f)) => {
            let (value, text) = render(p, f);
            if let Some(path) = out {
                fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            value
        }
        _ => Value::Null,
    };
    v["proof"] = field;
    Ok(v)
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("json"));
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Entail { file, constraint, prove, out } => {
            let s = load(&file)?;
            let c = parse_constraint(&constraint, &s).map_err(|e| format!("query: {e}"))?;
            let engine = Engine::new(&s).map_err(|e| e.to_string())?;
            let d = engine.entails(&c).map_err(|e| e.to_string())?;
            let v = attach_proof(d.to_json(), d.proof(), prove, out.as_deref())?;
            emit(&v);
            Ok(match d {
                Decision::Entailed { .. } => ExitCode::SUCCESS,
                Decision::NotEntailed { .. } => ExitCode::from(1),
            })
        }
        Command::Sat { file, prove, out } => {
            let s = load(&file)?;
            let r = Engine::new(&s).map_err(|e| e.to_string())?.check_satisfiable();
            let proof = match &r {
                SatResult::Unsat { proof } => Some(proof),
                SatResult::Sat { .. } => None,
            };
            let v = attach_proof(r.to_json(), proof, prove, out.as_deref())?;
            emit(&v);
            Ok(if r.is_sat() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Closure { file } => {
            let s = load(&file)?;
            let cl = Engine::new(&s).and_then(|e| e.closure()).map_err(|e| e.to_string())?;
            let list: Vec<String> = cl.iter().map(|c| c.to_string()).collect();
            emit(&json!({ "closure": list }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { file, g1, g2 } => {
            let s = load(&file)?;
            let (a, b) = (granule(&s, &g1)?, granule(&s, &g2)?);
            let v = Engine::new(&s).and_then(|e| e.state_vector(&a, &b)).map_err(|e| e.to_string())?;
            let rels: Vec<&str> = rcc5_classify(&v).into_iter().map(|r| r.name()).collect();
            emit(&json!({ "vector": v.to_json(), "relations": rels }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Model { file } => {
            let s = load(&file)?;
            let m = canonical_model(&s.positive_part()).map_err(|e| e.to_string())?;
            print!("{}", m.dump());
            Ok(ExitCode::SUCCESS)
        }
        Command::Graph { file, dot: _, out } => {
            let s = load(&file)?;
            let text = granlog::SmasGraph::build(&s).to_dot();
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
