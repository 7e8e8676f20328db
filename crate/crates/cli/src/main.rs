mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "lpa", version, about = "Leavitt path algebras of small directed graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
pub struct GraphArg {
    /// Graph file (`vertices: ...` and `edge NAME: S -> R` lines).
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Whether every vertex has zero or at least two closed simple paths.
    CheckK(GraphArg),
    /// K0, K1 or K2 for one vertex.
    ClassifyVertex {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        vertex: String,
    },
    /// Hereditary saturated closure of a vertex set.
    Closure {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated vertex names; empty for the empty set.
        #[arg(long, default_value = "")]
        vertices: String,
    },
    /// All hereditary saturated sets.
    HsSets(GraphArg),
    /// Lattice of graded ideals.
    GradedLattice(GraphArg),
    /// Normal form of an element.
    Normalize {
        #[command(flatten)]
        graph: GraphArg,
        element: String,
    },
    /// Product of two elements.
    Mul {
        #[command(flatten)]
        graph: GraphArg,
        left: String,
        right: String,
    },
    /// Homogeneous components of an element.
    Grade {
        #[command(flatten)]
        graph: GraphArg,
        element: String,
    },
    /// Canonical generators of the ideal generated by elements or an ideal file.
    LambdaReduce {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        ideal: Option<PathBuf>,
        elements: Vec<String>,
    },
    /// Whether the first ideal is contained in the second.
    Contains {
        #[command(flatten)]
        graph: GraphArg,
        /// Two ideal files, smaller candidate first.
        #[arg(long, num_args = 1, required = true)]
        ideal: Vec<PathBuf>,
    },
    /// Multiply an element down to a multiple of a vertex.
    ExtractVertex {
        #[command(flatten)]
        graph: GraphArg,
        element: String,
    },
    /// A generator of a non-graded ideal, if the graph has one.
    NongradedWitness(GraphArg),
    /// Number of two-vertex graphs with a given edge count.
    Count2 {
        #[arg(long)]
        edges: u32,
        /// Also enumerate and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Two-vertex shapes with a given edge count.
    Enum2 {
        #[arg(long)]
        edges: u32,
    },
    /// Ideal lattice class of a two-vertex graph.
    Classify2(GraphArg),
}

/// Bad flags or flag combinations; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn run(cli: Cli) -> anyhow::Result<String> {
    use commands::*;
    let fmt = cli.format;
    match cli.command {
        Command::CheckK(g) => check_k(&g, fmt),
        Command::ClassifyVertex { graph, vertex } => classify_vertex(&graph, &vertex, fmt),
        Command::Closure { graph, vertices } => closure(&graph, &vertices, fmt),
        Command::HsSets(g) => hs_sets(&g, fmt),
        Command::GradedLattice(g) => graded_lattice(&g, fmt),
        Command::Normalize { graph, element } => normalize(&graph, &element, fmt),
        Command::Mul { graph, left, right } => mul(&graph, &left, &right, fmt),
        Command::Grade { graph, element } => grade(&graph, &element, fmt),
        Command::LambdaReduce { graph, ideal, elements } => lambda_reduce(&graph, ideal.as_deref(), &elements, fmt),
        Command::Contains { graph, ideal } => contains(&graph, &ideal, fmt),
        Command::ExtractVertex { graph, element } => extract_vertex(&graph, &element, fmt),
        Command::NongradedWitness(g) => nongraded_witness(&g, fmt),
        Command::Count2 { edges, verify } => count2(edges, verify, fmt),
        Command::Enum2 { edges } => enum2(edges, fmt),
        Command::Classify2(g) => classify2(&g, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
