mod commands;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sigrep::generate::{GenerateError, DEFAULT_EXPONENT_BOUND};

/// Dyadic matroid generation and signed-graphic representation tools.
#[derive(Parser)]
#[command(name = "sigrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    /// The JSON graph format read by `flip`.
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the catalog of 3-connected dyadic matroids up to a size.
    Generate {
        #[arg(long, default_value_t = 10)]
        max_size: usize,
        #[arg(long, default_value_t = DEFAULT_EXPONENT_BOUND)]
        exponent_bound: u32,
        /// Skip the rerun at exponent bound + 1.
        #[arg(long)]
        no_bound_check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate and classify the signed-graphic representations of a matrix.
    Reps {
        matrix: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Tally catalog entries by how their representations are row-equivalent.
    Census {
        catalog: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a cylinder flip to a signed graph and check the matroid is unchanged.
    Flip {
        graph: PathBuf,
        /// `s1,s2,t1,t2`
        #[arg(long)]
        terminals: String,
        /// Edges of the side that is turned over; found automatically when omitted.
        #[arg(long)]
        h2: Option<String>,
        /// `label:end:role` for ends at coinciding terminals, e.g. `e3:0:S1`.
        #[arg(long = "role")]
        roles: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run randomized property suites.
    Verify {
        #[arg(value_enum, default_value_t = suites::Suite::All)]
        suite: suites::Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A check failed; maps to exit code 1.
#[derive(Debug)]
pub struct VerificationFailed(pub String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    let bound = err
        .chain()
        .any(|e| matches!(e.downcast_ref(), Some(GenerateError::CandidateBoundExceeded { .. })));
    if bound {
        3
    } else if err.chain().any(|e| e.downcast_ref::<VerificationFailed>().is_some()) {
        1
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate {
            max_size,
            exponent_bound,
            no_bound_check,
            out,
        } => commands::generate(max_size, exponent_bound, !no_bound_check, out.as_deref()),
        Command::Reps { matrix, out, format } => commands::reps(&matrix, &out, format),
        Command::Census { catalog, out } => commands::census(&catalog, out.as_deref()),
        Command::Flip {
            graph,
            terminals,
            h2,
            roles,
            out,
            format,
        } => commands::flip(&graph, &terminals, h2.as_deref(), &roles, out.as_deref(), format),
        Command::Verify { suite, seed } => suites::run(suite, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
