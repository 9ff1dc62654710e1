use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gaingraph_cli::commands::{
    cmd_classify, cmd_equiv, cmd_gnrp, cmd_hermitian_k, cmd_spectrum, CliError, CommonOpts,
};
use gaingraph_cli::explore::{run_explore, ExploreMode, ExploreOpts};
use gaingraph_cli::format::{parse_digraph, parse_gain_graph, write_gain_graph};
use gaingraph_cli::report::Report;

/// Spectral and structural analysis of complex unit gain graphs.
#[derive(Parser)]
#[command(name = "gaingraph", version, about)]
struct Cli {
    /// Angle comparison tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Root vertex (1-based) for spanning-tree constructions.
    #[arg(long, global = true, default_value_t = 1)]
    root: usize,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum, spectral radius, bounds and characteristic polynomials
    /// of a gain graph file.
    Spectrum { file: PathBuf },
    /// Decide whether two gain graph files are switching equivalent.
    Equiv { first: PathBuf, second: PathBuf },
    /// Structural classification of the underlying graph.
    Classify { file: PathBuf },
    /// Rewrite the gains so every real part is nonnegative, staying in
    /// the same switching class. Writes the normalized graph next to the
    /// input unless --graph-out is given.
    Gnrp {
        file: PathBuf,
        /// Destination for the normalized gain graph file.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// k-generalized Hermitian adjacency analysis of a digraph file.
    HermitianK {
        file: PathBuf,
        /// Generalization index (1 gives the Hermitian adjacency matrix).
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Batch random exploration (modes: conjecture, conjecture-nonneg,
    /// hermitian-k, classes). Counterexample candidates, if any, are
    /// persisted beside the report.
    Explore {
        #[arg(long, default_value = "conjecture")]
        mode: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Generalization index for hermitian-k mode.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

fn read_gain_graph(path: &Path) -> Result<gaingraph::GainGraph, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_gain_graph(&text)?)
}

fn emit(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, report.render())?,
        None => print!("{}", report.render()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    if cli.root == 0 {
        return Err(CliError::Domain(gaingraph::GainGraphError::VertexOutOfRange(0, 0)));
    }
    let opts = CommonOpts {
        tolerance: cli.tolerance,
        root: cli.root - 1,
    };
    let report = match &cli.command {
        Command::Spectrum { file } => cmd_spectrum(&read_gain_graph(file)?, opts)?,
        Command::Equiv { first, second } => {
            let phi1 = read_gain_graph(first)?;
            let phi2 = read_gain_graph(second)?;
            cmd_equiv(&phi1, &phi2, opts)?
        }
        Command::Classify { file } => cmd_classify(&read_gain_graph(file)?, opts)?,
        Command::Gnrp { file, graph_out } => {
            let phi = read_gain_graph(file)?;
            let (report, normalized) = cmd_gnrp(&phi, opts)?;
            let dest = graph_out
                .clone()
                .unwrap_or_else(|| file.with_extension("gnrp.gg"));
            std::fs::write(&dest, write_gain_graph(&normalized))?;
            report
        }
        Command::HermitianK { file, k } => {
            let text = std::fs::read_to_string(file)?;
            let x = parse_digraph(&text)?;
            cmd_hermitian_k(&x, *k, opts)?
        }
        Command::Explore {
            mode,
            count,
            min_n,
            max_n,
            k,
        } => {
            let mode = ExploreMode::parse(mode).ok_or_else(|| {
                CliError::Domain(gaingraph::GainGraphError::StructureRule(format!(
                    "unknown explore mode '{mode}'"
                )))
            })?;
            let (report, candidates) = run_explore(ExploreOpts {
                mode,
                count: *count,
                min_n: *min_n,
                max_n: *max_n,
                seed: cli.seed,
                k: *k,
            })?;
            let base = cli
                .out
                .as_deref()
                .and_then(Path::parent)
                .unwrap_or_else(|| Path::new("."));
            for (name, content) in &candidates {
                std::fs::write(base.join(name), content)?;
            }
            report
        }
    };
    emit(&report, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
