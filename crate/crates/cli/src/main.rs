//! `partial-seeds`: command-line driver for the partial-seeds library.
//!
//! Exit codes: 0 ok, 2 input error, 3 resource cap, 4 theorem violation.

mod commands;
mod error;
mod report;

use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "partial-seeds", version, about = "Seeds, partial seed homomorphisms and their semigroups")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub caps: Caps,
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_parser = nonempty_path)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Caps {
    /// Maximum number of semigroup elements.
    #[arg(long, global = true, default_value = "50000")]
    pub cap: NonZeroUsize,
    /// Maximum mutation depth for cluster exploration.
    #[arg(long, global = true, default_value = "12")]
    pub depth: NonZeroUsize,
    /// Maximum number of terms in any polynomial.
    #[arg(long, global = true, default_value = "1000000")]
    pub max_terms: NonZeroUsize,
    /// Maximum number of seeds visited during cluster exploration.
    #[arg(long, global = true, default_value = "100000")]
    pub max_states: NonZeroUsize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

fn nonempty_path(s: &str) -> Result<PathBuf, String> {
    if s.is_empty() {
        Err("path must not be empty".into())
    } else {
        Ok(PathBuf::from(s))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a seed file describes a valid seed.
    Validate {
        #[arg(value_parser = nonempty_path)]
        seed: PathBuf,
    },
    /// Mutate along a sequence of exchangeable labels or indices.
    Mutate {
        #[arg(value_parser = nonempty_path)]
        seed: PathBuf,
        steps: Vec<String>,
    },
    /// Enumerate clusters reachable by mutation.
    Clusters {
        #[arg(value_parser = nonempty_path)]
        seed: PathBuf,
    },
    /// Check a partial seed homomorphism.
    HomCheck {
        #[arg(value_parser = nonempty_path)]
        seed: PathBuf,
        #[arg(value_parser = nonempty_path)]
        hom: PathBuf,
        /// Target seed; defaults to the source seed.
        #[arg(long, value_parser = nonempty_path)]
        target: Option<PathBuf>,
    },
    /// Compose `g ∘ f` for `f: SEED -> MIDDLE` and `g: MIDDLE -> TARGET`.
    Compose {
        #[arg(value_parser = nonempty_path)]
        seed: PathBuf,
        #[arg(value_parser = nonempty_path)]
        f: PathBuf,
        #[arg(value_parser = nonempty_path)]
        g: PathBuf,
        #[arg(long, value_parser = nonempty_path)]
        middle: Option<PathBuf>,
        #[arg(long, value_parser = nonempty_path)]
        target: Option<PathBuf>,
    },
    /// Enumerate the semigroup of partial seed endomorphisms.
    Endpar {
        #[arg(value_parser = nonempty_path)]
        seed: PathBuf,
        /// Also write the element list and product table here.
        #[arg(long, value_parser = nonempty_path)]
        save_table: Option<PathBuf>,
    },
    /// Green's relations with egg-box diagrams.
    Green {
        #[arg(value_parser = nonempty_path, required_unless_present = "table")]
        seed: Option<PathBuf>,
        /// Use a stored table instead of enumerating.
        #[arg(long, value_parser = nonempty_path, conflicts_with = "seed")]
        table: Option<PathBuf>,
    },
    /// Match sub-seed isomorphism classes with regular D-classes.
    Classify {
        #[arg(value_parser = nonempty_path, required_unless_present = "table")]
        seed: Option<PathBuf>,
        /// Use a stored table instead of enumerating.
        #[arg(long, value_parser = nonempty_path, conflicts_with = "seed")]
        table: Option<PathBuf>,
    },
    /// Seed of a triangulated surface with laminations.
    SurfaceSeed {
        #[arg(value_parser = nonempty_path)]
        surface: PathBuf,
    },
    /// Cut a surface along one diagonal.
    Cut {
        #[arg(value_parser = nonempty_path)]
        surface: PathBuf,
        diagonal: String,
        /// Keep the diagonal as a frozen lamination instead of deleting it.
        #[arg(long)]
        freeze: bool,
    },
    /// Cut along `I0` (frozen) and `I1` (deleted).
    Paunch {
        #[arg(value_parser = nonempty_path)]
        surface: PathBuf,
        #[arg(long, value_delimiter = ',')]
        i0: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        i1: Vec<String>,
    },
    /// Compare the seed of a paunched surface with the mixing sub-seed.
    CheckSur {
        #[arg(value_parser = nonempty_path)]
        surface: PathBuf,
        #[arg(long, value_delimiter = ',')]
        i0: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        i1: Vec<String>,
        /// Check every spec with `|I0 ∪ I1| <= max-cut`.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 2)]
        max_cut: usize,
    },
    /// Search for a combinatorial isomorphism between two surfaces.
    SurfaceIso {
        #[arg(value_parser = nonempty_path)]
        a: PathBuf,
        #[arg(value_parser = nonempty_path)]
        b: PathBuf,
    },
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match commands::run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
