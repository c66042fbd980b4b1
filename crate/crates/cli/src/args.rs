use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectra_bounds::MatrixKind;

#[derive(Debug, Parser)]
#[command(
    name = "spectra-bounds",
    version,
    about = "Spectral-radius bounds for nonnegative matrices and graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate bounds for one matrix or graph and compare them with the oracle.
    Bound(BoundArgs),
    /// Check the bounds against the oracle on seeded random instances.
    Verify(VerifyArgs),
    /// Best upper-bound gap and lower-bound gap per exponent, for plotting.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Matrix,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideSpec {
    Upper,
    Lower,
    Both,
}

impl SideSpec {
    pub fn upper(self) -> bool {
        self != SideSpec::Lower
    }

    pub fn lower(self) -> bool {
        self != SideSpec::Upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Which ranks to evaluate upper bounds at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSpec {
    All,
    Best,
    List(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct KindList(pub Vec<MatrixKind>);

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaList(pub Vec<f64>);

#[derive(Debug, Clone, Args)]
pub struct Selection {
    /// Graph matrices: adj, q, dist, dq, a comma-separated list of those, or all.
    #[arg(long = "matrix", default_value = "all", value_parser = parse_kinds)]
    pub kinds: KindList,
    /// Comma-separated exponents for the graph scale vectors.
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_alphas)]
    pub alpha: AlphaList,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Power-iteration residual tolerance.
    #[arg(long, default_value_t = spectra_bounds::matrix::DEFAULT_TOL)]
    pub tol: f64,
    /// Power-iteration step limit.
    #[arg(long, default_value_t = spectra_bounds::matrix::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Matrix file or edge list; `-` reads standard input.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputKind::Graph)]
    pub kind: InputKind,
    #[command(flatten)]
    pub selection: Selection,
    /// all, best, or a comma-separated list of 1-based ranks.
    #[arg(long, default_value = "all", value_parser = parse_index)]
    pub index: IndexSpec,
    #[arg(long, value_enum, default_value_t = SideSpec::Both)]
    pub side: SideSpec,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Random connected graphs or random positive matrices with random scale vectors.
    #[arg(long, value_enum, default_value_t = InputKind::Graph)]
    pub kind: InputKind,
    #[command(flatten)]
    pub selection: Selection,
    /// Ranks larger than an instance's order are skipped.
    #[arg(long, default_value = "all", value_parser = parse_index)]
    pub index: IndexSpec,
    #[arg(long, value_enum, default_value_t = SideSpec::Both)]
    pub side: SideSpec,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Trial k uses seed `seed + k`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub min_n: usize,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Edge list; `-` reads standard input.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub selection: Selection,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

fn split_list(s: &str) -> Result<Vec<&str>, String> {
    let items: Vec<&str> = s.split(',').map(str::trim).collect();
    if items.iter().any(|t| t.is_empty()) {
        return Err(format!("malformed list {s:?}"));
    }
    Ok(items)
}

fn parse_kinds(s: &str) -> Result<KindList, String> {
    if s == "all" {
        return Ok(KindList(MatrixKind::ALL.to_vec()));
    }
    let mut kinds = split_list(s)?
        .into_iter()
        .map(str::parse)
        .collect::<Result<Vec<MatrixKind>, _>>()?;
    kinds.sort();
    kinds.dedup();
    Ok(KindList(kinds))
}

fn parse_alphas(s: &str) -> Result<AlphaList, String> {
    let mut alphas = Vec::new();
    for t in split_list(s)? {
        let a: f64 = t.parse().map_err(|_| format!("invalid exponent {t:?}"))?;
        if !a.is_finite() {
            return Err(format!("exponent {t:?} is not finite"));
        }
        alphas.push(a + 0.0);
    }
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    Ok(AlphaList(alphas))
}

fn parse_index(s: &str) -> Result<IndexSpec, String> {
    match s {
        "all" => Ok(IndexSpec::All),
        "best" => Ok(IndexSpec::Best),
        _ => {
            let mut ranks = Vec::new();
            for t in split_list(s)? {
                let i: usize = t.parse().map_err(|_| format!("invalid rank {t:?}"))?;
                if i == 0 {
                    return Err("ranks are 1-based".into());
                }
                ranks.push(i);
            }
            ranks.sort_unstable();
            ranks.dedup();
            Ok(IndexSpec::List(ranks))
        }
    }
}
