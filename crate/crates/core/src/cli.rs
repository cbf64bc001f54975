//! Command-line interface. The process exit code reflects only whether the
//! command ran; verdicts are reported in the output.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::format::{parse_algebra, parse_gamma, parse_map};
use crate::lie::{Builtin, LieAlgebra};
use crate::report::{self, Render};
use crate::search::SearchConfig;

#[derive(Debug, Parser)]
#[command(
    name = "lieaff",
    version,
    about = "Flat torsion-free invariant connections on Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct AlgebraSource {
    /// Algebra file (JSON).
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub path: Option<PathBuf>,
    /// One of the built-in algebras instead of a file.
    #[arg(long, value_enum)]
    pub builtin: Option<BuiltinArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BuiltinArg {
    Abelian3,
    Heis3,
    Sol3,
    Sl2,
}

impl From<BuiltinArg> for Builtin {
    fn from(b: BuiltinArg) -> Self {
        match b {
            BuiltinArg::Abelian3 => Builtin::Abelian3,
            BuiltinArg::Heis3 => Builtin::Heis3,
            BuiltinArg::Sol3 => Builtin::Sol3,
            BuiltinArg::Sl2 => Builtin::Sl2,
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Number of multistart points.
    #[arg(long, default_value_t = SearchConfig::default().starts)]
    pub starts: usize,
    #[arg(long, default_value_t = SearchConfig::default().seed)]
    pub seed: u64,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            starts: self.starts,
            seed: self.seed,
            ..SearchConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural profile, existence decision and standard connections.
    Analyze {
        #[command(flatten)]
        source: AlgebraSource,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Flatness, torsion and projective flatness of a given connection.
    CheckConnection {
        path: PathBuf,
        /// Christoffel symbols file (JSON).
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Whether a map into aff(n) is an étale homomorphism.
    CheckEmbedding {
        path: PathBuf,
        /// Affine map file (JSON).
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Multistart numerical search with exact verification.
    Search {
        #[command(flatten)]
        source: AlgebraSource,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Decide all three-dimensional catalog algebras.
    ClassifyDim3 {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_algebra(path: &Path) -> Result<LieAlgebra> {
    parse_algebra(&read(path)?).with_context(|| format!("in {}", path.display()))
}

impl AlgebraSource {
    fn load(&self) -> Result<LieAlgebra> {
        match (&self.path, self.builtin) {
            (Some(p), None) => load_algebra(p),
            (None, Some(b)) => Ok(Builtin::from(b).algebra()),
            _ => bail!("give either an algebra file or --builtin"),
        }
    }
}

fn emit<T: Serialize + Render>(value: &T, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Text => value.render(),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            s
        }
    })
}

/// Executes a parsed command and returns what should be printed.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Analyze {
            source,
            search,
            format,
        } => emit(&report::analyze(&source.load()?, &search.config()), *format),
        Command::CheckConnection {
            path,
            gamma,
            format,
        } => {
            let g = Arc::new(load_algebra(path)?);
            let conn =
                parse_gamma(&read(gamma)?, g).with_context(|| format!("in {}", gamma.display()))?;
            emit(&report::check_connection(&conn), *format)
        }
        Command::CheckEmbedding { path, map, format } => {
            let g = Arc::new(load_algebra(path)?);
            let m = parse_map(&read(map)?, g).with_context(|| format!("in {}", map.display()))?;
            emit(&report::check_embedding(&m), *format)
        }
        Command::Search {
            source,
            search,
            format,
        } => emit(&report::search(&source.load()?, &search.config()), *format),
        Command::ClassifyDim3 { search, format } => {
            emit(&report::classify_dim3(&search.config()), *format)
        }
    }
}
