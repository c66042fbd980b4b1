//! Dense nonnegative matrices, irreducibility checks and the spectral-radius oracle.
//!
//! The oracle is a shifted power iteration: for an irreducible nonnegative `A`
//! the matrix `A + I` is primitive, so iterating it from the all-ones vector
//! converges to the Perron vector. The shift is subtracted from the returned
//! estimate.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::MatrixError;

/// Default residual tolerance for [`spectral_radius`].
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration cap for [`spectral_radius`].
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Dense square matrix with entrywise nonnegative, finite entries (row-major).
#[derive(Debug, Clone, PartialEq)]
pub struct NonnegativeMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl NonnegativeMatrix {
    pub fn from_row_major(n: usize, entries: Vec<f64>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        if entries.len() != n * n {
            return Err(MatrixError::NotSquare {
                rows: n,
                cols: entries.len() / n,
            });
        }
        for (idx, &x) in entries.iter().enumerate() {
            if !x.is_finite() {
                return Err(MatrixError::NonFinite {
                    row: idx / n,
                    col: idx % n,
                });
            }
            if x < 0.0 {
                return Err(MatrixError::NegativeEntry {
                    row: idx / n,
                    col: idx % n,
                    value: x,
                });
            }
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(MatrixError::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_row_major(n, entries)
    }

    /// Builds `f(i, j)` for all `i, j < n`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self, MatrixError> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::from_row_major(n, entries)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.get(i, i))
    }

    /// `max_i a_ii`.
    pub fn diag_max(&self) -> f64 {
        self.diagonal().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `min_i a_ii`.
    pub fn diag_min(&self) -> f64 {
        self.diagonal().fold(f64::INFINITY, f64::min)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        self.rows()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is
    /// `a[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length must match dimension");
        let entries = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.get(perm[i], perm[j]))
            .collect();
        Self { n: self.n, entries }
    }

    /// Parses either the plain-text form (`n` then `n` rows) or the JSON form
    /// `{"n": .., "rows": [[..], ..]}`, chosen by the first non-blank character.
    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    pub fn parse_text(text: &str) -> Result<Self, MatrixError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(no, l)| (no + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first_no, first) = lines.next().ok_or(MatrixError::Empty)?;
        let n: usize = first.parse().map_err(|_| MatrixError::Parse {
            line: first_no,
            message: format!("expected dimension, found {first:?}"),
        })?;
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        let mut row_count = 0;
        for (no, line) in lines {
            if row_count == n {
                return Err(MatrixError::Parse {
                    line: no,
                    message: format!("more than {n} rows"),
                });
            }
            let before = entries.len();
            for tok in line.split_whitespace() {
                let x: f64 = tok.parse().map_err(|_| MatrixError::Parse {
                    line: no,
                    message: format!("invalid number {tok:?}"),
                })?;
                entries.push(x);
            }
            if entries.len() - before != n {
                return Err(MatrixError::Parse {
                    line: no,
                    message: format!("expected {n} entries, found {}", entries.len() - before),
                });
            }
            row_count += 1;
        }
        if row_count != n {
            return Err(MatrixError::NotSquare {
                rows: row_count,
                cols: n,
            });
        }
        Self::from_row_major(n, entries)
    }

    pub fn parse_json(text: &str) -> Result<Self, MatrixError> {
        let doc: MatrixDocument = serde_json::from_str(text).map_err(|e| MatrixError::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        if doc.rows.len() != doc.n {
            return Err(MatrixError::NotSquare {
                rows: doc.rows.len(),
                cols: doc.n,
            });
        }
        Self::from_rows(&doc.rows)
    }

    pub fn to_json(&self) -> String {
        let doc = MatrixDocument {
            n: self.n,
            rows: self.to_rows(),
        };
        serde_json::to_string(&doc).expect("matrix document serializes")
    }
}

impl fmt::Display for NonnegativeMatrix {
    /// Plain-text matrix file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for r in self.rows() {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixDocument {
    n: usize,
    rows: Vec<Vec<f64>>,
}

/// A nonnegative matrix whose support digraph is strongly connected.
#[derive(Debug, Clone, PartialEq)]
pub struct IrreducibleMatrix(NonnegativeMatrix);

impl IrreducibleMatrix {
    pub fn matrix(&self) -> &NonnegativeMatrix {
        &self.0
    }

    pub fn into_inner(self) -> NonnegativeMatrix {
        self.0
    }
}

impl Deref for IrreducibleMatrix {
    type Target = NonnegativeMatrix;

    fn deref(&self) -> &NonnegativeMatrix {
        &self.0
    }
}

impl TryFrom<NonnegativeMatrix> for IrreducibleMatrix {
    type Error = MatrixError;

    fn try_from(m: NonnegativeMatrix) -> Result<Self, MatrixError> {
        validate_irreducible(m)
    }
}

/// Strongly connected components of the support digraph (edge `k -> l` iff
/// `a_kl > 0`), by an iterative Tarjan traversal. Components come out in
/// reverse topological order, so the first one is a sink.
pub fn strongly_connected_components(m: &NonnegativeMatrix) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = m.dim();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|k| (0..n).filter(|&l| m.get(k, l) > 0.0).collect())
        .collect();

    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    // (vertex, position of the next successor to examine)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    components
}

/// True iff the support digraph has exactly one strongly connected component.
pub fn strongly_connected(m: &NonnegativeMatrix) -> bool {
    strongly_connected_components(m).len() == 1
}

/// Wraps `m` as irreducible, or reports a pair `(from, to)` (0-based) with no
/// directed path `from -> to`.
pub fn validate_irreducible(m: NonnegativeMatrix) -> Result<IrreducibleMatrix, MatrixError> {
    let comps = strongly_connected_components(&m);
    if comps.len() == 1 {
        return Ok(IrreducibleMatrix(m));
    }
    // The first component is a sink: nothing outside it is reachable from it.
    let sink = &comps[0];
    let from = sink[0];
    let to = (0..m.dim())
        .find(|v| sink.binary_search(v).is_err())
        .expect("more than one component");
    Err(MatrixError::Reducible { from, to })
}

/// Tolerance and iteration cap for the power-iteration oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Oracle output.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEstimate {
    pub rho: f64,
    /// `||A v - rho v||_inf` for the returned `perron_vector` (`||v||_inf = 1`).
    pub residual: f64,
    pub iterations: usize,
    pub perron_vector: Vec<f64>,
}

/// Spectral radius by power iteration on `A + I`, started from the all-ones
/// vector and normalized in the infinity norm.
pub fn spectral_radius(
    m: &IrreducibleMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralEstimate, MatrixError> {
    if tol.is_nan() || tol <= 0.0 || max_iter == 0 {
        return Err(MatrixError::InvalidOracleConfig { tol, max_iter });
    }
    let n = m.dim();
    let mut v = vec![1.0; n];
    let mut last_residual = f64::INFINITY;

    for it in 1..=max_iter {
        let av = m.mul_vec(&v);
        // Shifted image (A + I) v; its inf-norm minus one estimates rho.
        let norm = av.iter().zip(&v).map(|(a, x)| a + x).fold(0.0_f64, f64::max);
        let rho = norm - 1.0;
        let residual = av
            .iter()
            .zip(&v)
            .map(|(a, x)| (a - rho * x).abs())
            .fold(0.0_f64, f64::max);
        if residual <= tol {
            return Ok(SpectralEstimate {
                rho: rho.max(0.0),
                residual,
                iterations: it,
                perron_vector: v,
            });
        }
        last_residual = residual;
        for (x, a) in v.iter_mut().zip(&av) {
            *x = (*x + a) / norm;
        }
    }
    Err(MatrixError::NoConvergence {
        iterations: max_iter,
        last_residual,
    })
}

/// [`spectral_radius`] with an [`OracleConfig`].
pub fn spectral_radius_with(
    m: &IrreducibleMatrix,
    cfg: &OracleConfig,
) -> Result<SpectralEstimate, MatrixError> {
    spectral_radius(m, cfg.tol, cfg.max_iter)
}
