use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "modelcat", version, about = "Model structures on finite lattices")]
pub struct Cli {
    /// Size parameter: the chain `[n]` has `n + 1` objects.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Largest number of non-identity comparable pairs the oracle will scan.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Dot,
    Tikz,
    Tsv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Count {
    Models,
    Premodels,
    Transfer,
    Saturated,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    /// The path NNENEEENENNNEE on `[6]`.
    #[value(name = "worked", alias = "fig3")]
    Worked,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a closed-form count.
    Count {
        #[arg(long, value_enum)]
        what: Count,
        /// Count on the grid `[grid] x [n]` instead of the chain (saturated only).
        #[arg(long)]
        grid: Option<usize>,
    },
    /// List every model structure on `[n]`.
    Enumerate,
    /// Check a model structure given as JSON (`-` reads standard input).
    Verify { input: PathBuf },
    /// Print the triangle of model structures by homotopy category size.
    Triangle,
    /// Lattice paths and endomorphisms attached to model structures.
    Bijection {
        /// Check that the correspondence is a bijection on `[n]`.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum)]
        example: Option<Example>,
    },
    /// Shortest localization words from the trivial structure.
    Localize {
        /// Model structure JSON to reach.
        #[arg(long, conflicts_with = "all")]
        target: Option<PathBuf>,
        /// Print a word for every structure on `[n]`.
        #[arg(long)]
        all: bool,
    },
    /// The localization graph on `[n]`.
    Graph {
        /// Draw the left Quillen relation instead of single localization steps.
        #[arg(long)]
        quillen: bool,
    },
    /// Write one diagram per structure into `--out`, or render a single JSON input.
    Export {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Label arrows with their cofibration and fibration membership.
        #[arg(long)]
        mark_classes: bool,
    },
    /// Brute-force scan of all triples of arrow sets, compared with the enumeration.
    Oracle {
        /// Scan the grid `[grid] x [n]` instead of the chain.
        #[arg(long)]
        grid: Option<usize>,
        /// Scan weak factorization systems instead of model structures.
        #[arg(long)]
        wfs: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut stdout = std::io::stdout().lock();
    match commands::run(&cli, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
