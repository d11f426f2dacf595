mod bench;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Solve horizontally parameterized polynomial systems with the SAGBI
/// homotopy.
#[derive(Debug, Parser)]
#[command(name = "sagbi", version)]
struct Cli {
    /// Worker threads for path tracking (all cores when unset).
    #[arg(long, global = true, env = "SAGBI_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON output to this file.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// Weight vector, comma separated (max convention).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weight: Option<Vec<i64>>,
    /// Negate the weight, for weights written in the min convention.
    #[arg(long)]
    negate_weight: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a system file.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
        /// Skip the comparison of the map degrees.
        #[arg(long)]
        no_degree_check: bool,
        /// Add the solutions in the base locus of each block.
        #[arg(long)]
        base_locus: bool,
        /// Solve a random slice first and move its coefficients to the target.
        #[arg(long)]
        vary_linear_part: bool,
        /// Track from the mixed cells of the leading-term system directly.
        #[arg(long)]
        one_step: bool,
        /// Use the given weight even if it fails the SAGBI check.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// List the solutions in text output.
        #[arg(long)]
        solutions: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Find a weight under which every block is a SAGBI basis.
    DetectWeight {
        file: PathBuf,
        /// Number of candidate weights to try.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Degrees of the parameterization and of its monomial degeneration.
    Degree {
        file: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Mixed volume of the equation supports.
    MixedVolume {
        file: PathBuf,
        /// Use the leading-term system instead of the target equations.
        #[arg(long)]
        leaders: bool,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write a system file for a standard family.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Solve the built-in example suite and compare the solution counts.
    Bench {
        /// Seeds per row.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        /// Only rows whose name contains one of these strings.
        #[arg(long)]
        only: Vec<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Re-check the residuals of a result file against its system file.
    Verify {
        system: PathBuf,
        result: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
enum GenFamily {
    /// Random complex slice of Gr(k, m) in its Plücker parameterization.
    Grassmannian {
        k: usize,
        m: usize,
        /// Integer coefficients in [-100, 100] instead of complex Gaussians.
        #[arg(long)]
        integer: bool,
    },
    /// N coupled resonators with restoring force of degree 2n-1.
    Resonator {
        #[arg(value_name = "N")]
        count: usize,
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = match cli.command {
        Command::Solve {
            file,
            weight,
            no_degree_check,
            base_locus,
            vary_linear_part,
            one_step,
            force,
            seed,
            solutions,
            out,
        } => commands::solve(
            &file,
            &weight,
            commands::SolveFlags { no_degree_check, base_locus, vary_linear_part, one_step, force, seed, solutions },
            &out,
        ),
        Command::DetectWeight { file, budget, out } => commands::detect(&file, budget, &out),
        Command::Degree { file, weight, seed, out } => commands::degree(&file, &weight, seed, &out),
        Command::MixedVolume { file, leaders, weight, seed, out } => {
            commands::mixed_volume(&file, leaders, &weight, seed, &out)
        }
        Command::Gen { family, seed, output } => match family {
            GenFamily::Grassmannian { k, m, integer } => commands::gen_grassmannian(k, m, integer, seed, output),
            GenFamily::Resonator { count, n } => commands::gen_resonator(count, n, seed, output),
        },
        Command::Bench { seeds, only, out } => bench::run(seeds, &only, &out),
        Command::Verify { system, result, tol } => commands::verify(&system, &result, tol),
    };
    match outcome {
        Ok(code) => code.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Completion status of a subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Warnings,
    Failed,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::Warnings => ExitCode::from(2),
            Status::Failed => ExitCode::from(1),
        }
    }
}
