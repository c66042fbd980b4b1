//! Simple connected graphs, their four spectral matrices, BFS distances and
//! the generalized average degree / average transmission vectors.

use std::collections::{BTreeSet, VecDeque};

use crate::error::GraphError;
use crate::matrix::{validate_irreducible, IrreducibleMatrix, NonnegativeMatrix};

/// Simple, connected, undirected graph on `n >= 2` vertices.
///
/// Vertices are 0-based internally and 1-based in text formats and errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 0-based edges, rejecting loops, duplicates and
    /// disconnected inputs.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooFewVertices(n));
        }
        let mut seen = BTreeSet::new();
        let mut neighbors = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u + 1));
            }
            let (a, b) = (u.min(v), u.max(v));
            if !seen.insert((a, b)) {
                return Err(GraphError::DuplicateEdge(a + 1, b + 1));
            }
            neighbors[a].push(b);
            neighbors[b].push(a);
            list.push((a, b));
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        let g = Self {
            n,
            neighbors,
            edges: list,
        };
        let reach = g.bfs(0);
        if let Some(v) = reach.iter().position(|d| d.is_none()) {
            return Err(GraphError::DisconnectedGraph(v + 1));
        }
        Ok(g)
    }

    /// Parses the edge-list format: first non-comment line is `n`, then one
    /// `u v` pair (1-based) per line. Blank lines and lines starting with `#`
    /// are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(no, l)| (no + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first_no, first) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n: usize = first.parse().map_err(|_| GraphError::Parse {
            line: first_no,
            message: format!("expected vertex count, found {first:?}"),
        })?;
        if n < 2 {
            return Err(GraphError::TooFewVertices(n));
        }
        let mut edges = Vec::new();
        for (no, line) in lines {
            let mut toks = line.split_whitespace();
            let mut endpoint = || -> Result<usize, GraphError> {
                let tok = toks.next().ok_or_else(|| GraphError::Parse {
                    line: no,
                    message: "expected two vertex labels".into(),
                })?;
                tok.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: no,
                    message: format!("invalid vertex label {tok:?}"),
                })
            };
            let (u, v) = (endpoint()?, endpoint()?);
            if toks.next().is_some() {
                return Err(GraphError::Parse {
                    line: no,
                    message: "trailing tokens after edge".into(),
                });
            }
            if let Some(&w) = [u, v].iter().find(|&&w| w == 0 || w > n) {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
            edges.push((u - 1, v - 1));
        }
        Self::from_edges(n, edges)
    }

    /// Edge-list text accepted by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Self::path(n);
        }
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// `K_{1, n-1}` with the center at vertex 0.
    pub fn star(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (1..n).map(|v| (0, v)))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for &w in &self.neighbors[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn adjacency_matrix(&self) -> IrreducibleMatrix {
        irreducible(NonnegativeMatrix::from_fn(self.n, |i, j| {
            if self.is_adjacent(i, j) {
                1.0
            } else {
                0.0
            }
        }))
    }

    /// `Q = D + A`.
    pub fn signless_laplacian(&self) -> IrreducibleMatrix {
        irreducible(NonnegativeMatrix::from_fn(self.n, |i, j| {
            if i == j {
                self.neighbors[i].len() as f64
            } else if self.is_adjacent(i, j) {
                1.0
            } else {
                0.0
            }
        }))
    }

    /// All-pairs distances by one BFS per vertex.
    pub fn distance_data(&self) -> TransmissionData {
        let dist: Vec<Vec<usize>> = (0..self.n)
            .map(|s| {
                self.bfs(s)
                    .into_iter()
                    .map(|d| d.expect("graph is connected"))
                    .collect()
            })
            .collect();
        TransmissionData::from_distances(dist)
    }

    pub fn distance_matrix(&self) -> IrreducibleMatrix {
        self.distance_data().distance_matrix()
    }

    /// Transmission diagonal plus distance matrix.
    pub fn distance_signless_laplacian(&self) -> IrreducibleMatrix {
        self.distance_data().distance_signless_laplacian()
    }

    /// Generalized average degrees for exponent `alpha`.
    pub fn generalized_average_degree(&self, alpha: f64) -> DegreeData {
        let degrees = self.degrees();
        let powered: Vec<f64> = degrees.iter().map(|&d| power(d as f64, alpha)).collect();
        let alpha_avg = (0..self.n)
            .map(|i| {
                let s: f64 = self.neighbors[i].iter().map(|&j| powered[j]).sum();
                s / powered[i]
            })
            .collect();
        let off_max = self
            .edges
            .iter()
            .flat_map(|&(u, v)| [(u, v), (v, u)])
            .map(|(i, j)| powered[j] / powered[i])
            .fold(0.0, f64::max);
        DegreeData {
            max_degree: self.max_degree(),
            degrees,
            alpha,
            alpha_avg,
            off_max,
        }
    }

    pub fn generalized_average_transmission(&self, alpha: f64) -> AverageTransmission {
        self.distance_data().generalized_average(alpha)
    }
}

fn irreducible(m: Result<NonnegativeMatrix, crate::error::MatrixError>) -> IrreducibleMatrix {
    validate_irreducible(m.expect("graph matrices are nonnegative"))
        .expect("matrices of connected graphs are irreducible")
}

/// `base^alpha`, exactly 1 for `alpha = 0`.
pub(crate) fn power(base: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        1.0
    } else {
        base.powf(alpha)
    }
}

/// Degree sequence and the generalized average degree for one exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeData {
    pub degrees: Vec<usize>,
    /// Maximum degree.
    pub max_degree: usize,
    pub alpha: f64,
    /// `sum_{j ~ i} d_j^alpha / d_i^alpha`, per vertex.
    pub alpha_avg: Vec<f64>,
    /// `max_{i ~ j} d_j^alpha / d_i^alpha` over adjacent ordered pairs.
    pub off_max: f64,
}

/// Shortest-path distances, transmissions and diameter of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransmissionData {
    pub dist: Vec<Vec<usize>>,
    /// Row sums of `dist`.
    pub transmissions: Vec<usize>,
    pub diameter: usize,
}

impl TransmissionData {
    pub fn from_distances(dist: Vec<Vec<usize>>) -> Self {
        let transmissions = dist.iter().map(|r| r.iter().sum()).collect();
        let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
        Self {
            dist,
            transmissions,
            diameter,
        }
    }

    pub fn order(&self) -> usize {
        self.dist.len()
    }

    pub fn distance_matrix(&self) -> IrreducibleMatrix {
        irreducible(NonnegativeMatrix::from_fn(self.order(), |i, j| {
            self.dist[i][j] as f64
        }))
    }

    pub fn distance_signless_laplacian(&self) -> IrreducibleMatrix {
        irreducible(NonnegativeMatrix::from_fn(self.order(), |i, j| {
            if i == j {
                self.transmissions[i] as f64
            } else {
                self.dist[i][j] as f64
            }
        }))
    }

    /// Generalized average transmissions for exponent `alpha`, with the
    /// extremes of `d_ij T_j^alpha / T_i^alpha` over ordered pairs `i != j`.
    pub fn generalized_average(&self, alpha: f64) -> AverageTransmission {
        let n = self.order();
        let powered: Vec<f64> = self
            .transmissions
            .iter()
            .map(|&t| power(t as f64, alpha))
            .collect();
        let values = (0..n)
            .map(|i| {
                let s: f64 = (0..n).map(|j| self.dist[i][j] as f64 * powered[j]).sum();
                s / powered[i]
            })
            .collect();
        let (mut off_max, mut off_min) = (f64::NEG_INFINITY, f64::INFINITY);
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let x = self.dist[i][j] as f64 * powered[j] / powered[i];
                off_max = off_max.max(x);
                off_min = off_min.min(x);
            }
        }
        AverageTransmission {
            alpha,
            values,
            off_max,
            off_min,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AverageTransmission {
    pub alpha: f64,
    /// `sum_j d_ij T_j^alpha / T_i^alpha`, per vertex.
    pub values: Vec<f64>,
    pub off_max: f64,
    pub off_min: f64,
}
