use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use btsp::Fixture;
use btsp_cli::commands::{
    cmd_check, cmd_improve, cmd_recognize, cmd_reduce, cmd_render, cmd_solve, Algorithm, CmdError,
    CmdOutput,
};
use btsp_cli::instance::{load_graph, LoadedInstance};

/// Exact bipartite TSP toolkit for (relaxed) Van der Veen matrices.
#[derive(Parser)]
#[command(name = "btsp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// builtin instance: instance-a, instance-b, or fig4
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
    /// path to an instance JSON file
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Pyramidal,
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Van der Veen inequalities (or their relaxed family)
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// check only the parity-restricted relaxed family
        #[arg(long)]
        relaxed: bool,
        /// absolute slack tolerance (forced to 0 on exact-integer instances)
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Solve the bipartite TSP exactly
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "pyramidal")]
        algorithm: AlgorithmArg,
    },
    /// Find row/column renumberings bringing the instance into the solvable class
    Recognize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// write the relabeled instance to this path
        #[arg(long)]
        apply: Option<PathBuf>,
    },
    /// Build the hardness-reduction instance of a bipartite graph
    Reduce {
        /// path to a graph JSON file {"k": ..., "edges": [[i, j], ...]}
        #[arg(long)]
        input: PathBuf,
    },
    /// Transform a feasible tour into a pyramidal one
    Improve {
        #[command(flatten)]
        input: InputArgs,
        /// comma-separated city sequence, e.g. "1,4,3,6,5,2"
        #[arg(long)]
        tour: String,
    },
    /// Render a point instance (and optionally a tour) as SVG
    Render {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        tour: Option<String>,
        /// output SVG path
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_instance(args: &InputArgs) -> Result<LoadedInstance, CmdError> {
    match (&args.fixture, &args.input) {
        (Some(name), None) => Fixture::from_name(name)
            .map(LoadedInstance::from_fixture)
            .ok_or_else(|| {
                CmdError::Input(format!(
                    "unknown fixture '{}' (expected instance-a, instance-b, or fig4)",
                    name
                ))
            }),
        (None, Some(path)) => {
            let raw = fs::read_to_string(path)
                .map_err(|e| CmdError::Input(format!("cannot read {}: {}", path.display(), e)))?;
            LoadedInstance::from_file(&raw)
        }
        (None, None) => Err(CmdError::Input(
            "an instance is required: pass --fixture or --input".into(),
        )),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    }
}

fn run(cli: Cli) -> Result<CmdOutput, CmdError> {
    match cli.command {
        Command::Check {
            input,
            relaxed,
            tolerance,
        } => cmd_check(&load_instance(&input)?, relaxed, tolerance),
        Command::Solve { input, algorithm } => {
            let algorithm = match algorithm {
                AlgorithmArg::Pyramidal => Algorithm::Pyramidal,
                AlgorithmArg::Brute => Algorithm::Brute,
            };
            cmd_solve(&load_instance(&input)?, algorithm)
        }
        Command::Recognize {
            input,
            tolerance,
            apply,
        } => cmd_recognize(&load_instance(&input)?, tolerance, apply.as_deref()),
        Command::Reduce { input } => {
            let raw = fs::read_to_string(&input)
                .map_err(|e| CmdError::Input(format!("cannot read {}: {}", input.display(), e)))?;
            cmd_reduce(&load_graph(&raw)?)
        }
        Command::Improve { input, tour } => cmd_improve(&load_instance(&input)?, &tour),
        Command::Render { input, tour, out } => {
            cmd_render(&load_instance(&input)?, tour.as_deref(), &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{}", output.stdout);
            ExitCode::from(output.code as u8)
        }
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
