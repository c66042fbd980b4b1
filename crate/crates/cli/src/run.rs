use std::fmt;
use std::io::Read;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use spectra_bounds::matrix::{validate_irreducible, OracleConfig};
use spectra_bounds::random::{random_connected_graph, random_positive_matrix, random_scale_vector};
use spectra_bounds::{
    BoundEvaluator, BoundReport, BoundsError, Graph, GraphBounds, IrreducibleMatrix, MatrixError, MatrixKind,
    NonnegativeMatrix, ScaleVector, Side,
};

use crate::args::{BoundArgs, IndexSpec, InputKind, OracleArgs, Selection, SideSpec, SweepArgs, VerifyArgs};
use crate::output::{ResultRow, SweepRow, VerifyReport, Violation};

/// Failure classes with distinct exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or invalid input, bad options: exit code 1.
    Input(String),
    /// Oracle did not converge, or verify found a violation: exit code 2.
    Numeric(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Numeric(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Oracle(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<MatrixError> for Failure {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::NoConvergence { .. } => Failure::Numeric(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

pub type Outcome<T> = Result<T, Failure>;

fn read_input(path: &Path) -> Outcome<String> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load_graph(path: &Path) -> Outcome<Graph> {
    Graph::parse_edge_list(&read_input(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Outcome<IrreducibleMatrix> {
    let m = NonnegativeMatrix::parse(&read_input(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(validate_irreducible(m)?)
}

fn oracle_config(args: &OracleArgs) -> Outcome<OracleConfig> {
    if !(args.tol > 0.0 && args.tol.is_finite()) || args.max_iter == 0 {
        return Err(Failure::Input(format!(
            "oracle tolerance must be positive and max-iter at least 1 (got {}, {})",
            args.tol, args.max_iter
        )));
    }
    Ok(OracleConfig {
        tol: args.tol,
        max_iter: args.max_iter,
    })
}

/// Where upper and lower bounds for one (kind, alpha) come from.
enum Source<'a> {
    Matrix(BoundEvaluator<'a>),
    Graph(&'a GraphBounds<'a>, MatrixKind, f64),
}

impl Source<'_> {
    fn upper(&self, i: usize) -> Result<BoundReport, BoundsError> {
        match self {
            Source::Matrix(ev) => ev.upper(i),
            Source::Graph(gb, kind, alpha) => gb.upper(*kind, *alpha, i),
        }
    }

    fn best(&self) -> Result<BoundReport, BoundsError> {
        match self {
            Source::Matrix(ev) => ev.best_upper(),
            Source::Graph(gb, kind, alpha) => gb.best_upper(*kind, *alpha),
        }
    }

    fn lower(&self) -> Result<BoundReport, BoundsError> {
        match self {
            Source::Matrix(ev) => Ok(ev.lower()),
            Source::Graph(gb, kind, alpha) => gb.lower(*kind, *alpha),
        }
    }
}

/// Rows for one source. With `clip`, listed ranks beyond `n` are skipped
/// instead of rejected.
fn source_rows(
    label: &str,
    src: &Source<'_>,
    n: usize,
    rho: f64,
    index: &IndexSpec,
    side: SideSpec,
    clip: bool,
) -> Outcome<Vec<ResultRow>> {
    let mut rows = Vec::new();
    if side.upper() {
        match index {
            IndexSpec::Best => rows.push(ResultRow::new(label, rho, &src.best()?)),
            IndexSpec::All => {
                for i in 1..=n {
                    rows.push(ResultRow::new(label, rho, &src.upper(i)?));
                }
            }
            IndexSpec::List(ranks) => {
                for &i in ranks {
                    if i > n && clip {
                        continue;
                    }
                    rows.push(ResultRow::new(label, rho, &src.upper(i)?));
                }
            }
        }
    }
    if side.lower() {
        rows.push(ResultRow::new(label, rho, &src.lower()?));
    }
    Ok(rows)
}

fn kind_rank(label: &str) -> usize {
    MatrixKind::ALL
        .iter()
        .position(|k| k.as_str() == label)
        .unwrap_or(MatrixKind::ALL.len())
}

/// Kind, then alpha ascending, then rank ascending, upper before lower.
fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(|a, b| {
        kind_rank(&a.kind)
            .cmp(&kind_rank(&b.kind))
            .then(a.alpha.unwrap_or(0.0).total_cmp(&b.alpha.unwrap_or(0.0)))
            .then(a.i.cmp(&b.i))
            .then((a.side == Side::Lower).cmp(&(b.side == Side::Lower)))
    });
}

fn matrix_rows(
    m: &IrreducibleMatrix,
    c: ScaleVector,
    oracle: &OracleConfig,
    index: &IndexSpec,
    side: SideSpec,
    clip: bool,
) -> Outcome<Vec<ResultRow>> {
    let ev = BoundEvaluator::new(m, c, oracle)?;
    let rho = ev.rho();
    let mut rows = source_rows("matrix", &Source::Matrix(ev), m.dim(), rho, index, side, clip)?;
    sort_rows(&mut rows);
    Ok(rows)
}

fn graph_rows(
    gb: &GraphBounds<'_>,
    selection: &Selection,
    index: &IndexSpec,
    side: SideSpec,
    clip: bool,
) -> Outcome<Vec<ResultRow>> {
    let n = gb.graph().order();
    let per_kind: Vec<Outcome<Vec<ResultRow>>> = selection
        .kinds
        .0
        .par_iter()
        .map(|&kind| {
            let rho = gb.rho(kind)?;
            let mut rows = Vec::new();
            for &alpha in &selection.alpha.0 {
                let src = Source::Graph(gb, kind, alpha);
                rows.extend(source_rows(kind.as_str(), &src, n, rho, index, side, clip)?);
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_kind {
        rows.extend(r?);
    }
    sort_rows(&mut rows);
    Ok(rows)
}

pub fn bound(args: &BoundArgs) -> Outcome<Vec<ResultRow>> {
    let oracle = oracle_config(&args.oracle)?;
    match args.kind {
        InputKind::Matrix => {
            let m = load_matrix(&args.input)?;
            let c = ScaleVector::ones(m.dim());
            matrix_rows(&m, c, &oracle, &args.index, args.side, false)
        }
        InputKind::Graph => {
            let g = load_graph(&args.input)?;
            let gb = GraphBounds::with_oracle(&g, oracle);
            graph_rows(&gb, &args.selection, &args.index, args.side, false)
        }
    }
}

pub fn verify(args: &VerifyArgs) -> Outcome<VerifyReport> {
    let oracle = oracle_config(&args.oracle)?;
    if args.min_n < 2 || args.min_n > args.max_n {
        return Err(Failure::Input(format!(
            "need 2 <= min-n <= max-n (got {}, {})",
            args.min_n, args.max_n
        )));
    }
    let trials: Vec<Outcome<(usize, Vec<Violation>)>> = (0..args.trials)
        .into_par_iter()
        .map(|k| {
            let seed = args.seed.wrapping_add(k);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows = match args.kind {
                InputKind::Matrix => {
                    let n = rng.gen_range(args.min_n..=args.max_n);
                    let m = random_positive_matrix(&mut rng, n);
                    let c = random_scale_vector(&mut rng, n);
                    matrix_rows(&m, c, &oracle, &args.index, args.side, true)?
                }
                InputKind::Graph => {
                    let g = random_connected_graph(&mut rng, args.min_n, args.max_n);
                    let gb = GraphBounds::with_oracle(&g, oracle);
                    graph_rows(&gb, &args.selection, &args.index, args.side, true)?
                }
            };
            let checks = rows.len();
            let violations = rows
                .into_iter()
                .filter(ResultRow::violates)
                .map(|row| Violation { seed, row })
                .collect();
            Ok((checks, violations))
        })
        .collect();
    let mut checks = 0;
    let mut violations = Vec::new();
    for t in trials {
        let (c, v) = t?;
        checks += c;
        violations.extend(v);
    }
    Ok(VerifyReport {
        mode: match args.kind {
            InputKind::Matrix => "matrix",
            InputKind::Graph => "graph",
        },
        min_n: args.min_n,
        max_n: args.max_n,
        trials: args.trials,
        seed: args.seed,
        checks,
        violations,
    })
}

pub fn sweep(args: &SweepArgs) -> Outcome<Vec<SweepRow>> {
    let oracle = oracle_config(&args.oracle)?;
    let g = load_graph(&args.input)?;
    let gb = GraphBounds::with_oracle(&g, oracle);
    let per_kind: Vec<Outcome<Vec<SweepRow>>> = args
        .selection
        .kinds
        .0
        .par_iter()
        .map(|&kind| {
            let rho = gb.rho(kind)?;
            args.selection
                .alpha
                .0
                .iter()
                .map(|&alpha| {
                    let best = gb.best_upper(kind, alpha)?;
                    let lower = gb.lower(kind, alpha)?;
                    Ok(SweepRow {
                        kind: kind.as_str().to_string(),
                        alpha,
                        best_i: best.index_i,
                        upper: best.value,
                        lower: lower.value,
                        rho,
                        upper_gap: best.value - rho,
                        lower_gap: lower.value - rho,
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_kind {
        rows.extend(r?);
    }
    Ok(rows)
}
