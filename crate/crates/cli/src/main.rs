mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Failure, Format};

#[derive(Parser, Debug)]
#[command(name = "torind", version, about = "Exact Tor-independence, resolution and amplitude-bound checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Debug, Clone)]
pub struct CommonOpts {
    /// Characteristic of the ground field (default 32003, or the value in the documents).
    #[arg(long = "char", global = true, value_name = "P")]
    pub p: Option<u32>,
    /// Homological cutoff D.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub cutoff: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Write the report here instead of stdout (atomically).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Koszul homology of a ring with its depth and embedding codepth.
    RingInfo { ring: PathBuf },
    /// Betti numbers of minimal free resolutions through the cutoff.
    Resolve { ring: PathBuf, modules: PathBuf },
    /// dim Tor_i(M, N) for 0 <= i <= cutoff, from both resolutions.
    Tor { ring: PathBuf, modules: PathBuf },
    /// Strong Tor-independence of a module sequence.
    Independence { ring: PathBuf, modules: PathBuf },
    /// Axioms and homology profiles of a DG algebra and optional DG modules.
    DgCheck { algebra: PathBuf, modules: Option<PathBuf> },
    /// The syzygy package of a DG module.
    Syzygy {
        algebra: PathBuf,
        module: PathBuf,
        /// Truncation degree r (default sup H(K)).
        #[arg(long = "r")]
        r: Option<i64>,
    },
    /// The bound n <= amp H(A) for DG modules.
    VerifyDg { algebra: PathBuf, modules: PathBuf },
    /// The bound n <= ecodepth R for modules over a monomial ring.
    Verify { ring: PathBuf, modules: PathBuf },
    /// One reduction by a free variable.
    Reduce {
        ring: PathBuf,
        modules: PathBuf,
        /// Variable index (default: the first free variable).
        #[arg(long)]
        var: Option<usize>,
    },
    /// Seeded search for strongly Tor-independent families.
    Search {
        ring: PathBuf,
        #[arg(long, default_value_t = 4)]
        dim_bound: usize,
        #[arg(long, default_value_t = 2)]
        family_size: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("TORIND_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| Failure::input(format!("TORIND_THREADS must be a positive integer, got {v:?}")))?;
    if n == 0 {
        return Err(Failure::input("TORIND_THREADS must be positive"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.common.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let result = init_threads().and_then(|()| commands::run(&cli.command, &cli.common));
    match result {
        Ok(report) => match output::emit(&report, format, cli.common.out.as_deref()) {
            Ok(()) => ExitCode::from(report.exit_code()),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
