//! Seeded random instances for property checks: connected `G(n, p)` graphs,
//! irreducible nonnegative matrices and positive scale vectors.

use rand::Rng;

use crate::bounds::ScaleVector;
use crate::graph::Graph;
use crate::matrix::{validate_irreducible, IrreducibleMatrix, NonnegativeMatrix};

/// Edge probabilities for [`random_connected_graph`] are drawn from this range.
pub const EDGE_PROBABILITY_RANGE: (f64, f64) = (0.3, 0.9);
/// Matrix entries are drawn from `[0, MAX_ENTRY]`.
pub const MAX_ENTRY: f64 = 10.0;

/// `G(n, p)` sample conditioned on connectivity by rejection.
pub fn gnp_connected<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    assert!(n >= 2, "graphs need at least 2 vertices");
    assert!(p > 0.0 && p <= 1.0, "edge probability must lie in (0, 1]");
    loop {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        if let Ok(g) = Graph::from_edges(n, edges) {
            return g;
        }
    }
}

/// Connected graph with `n` drawn from `min_n..=max_n` and `p` drawn from
/// [`EDGE_PROBABILITY_RANGE`].
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, min_n: usize, max_n: usize) -> Graph {
    let n = rng.gen_range(min_n.max(2)..=max_n.max(2));
    let p = rng.gen_range(EDGE_PROBABILITY_RANGE.0..=EDGE_PROBABILITY_RANGE.1);
    gnp_connected(rng, n, p)
}

/// Nonnegative matrix with diagonal entries in `[0, 10]` and off-diagonal
/// entries in `(0, 10]`, hence irreducible.
pub fn random_positive_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> IrreducibleMatrix {
    let m = NonnegativeMatrix::from_fn(n, |i, j| {
        let u: f64 = rng.gen();
        if i == j {
            MAX_ENTRY * u
        } else {
            MAX_ENTRY * (1.0 - u)
        }
    })
    .expect("entries are finite and nonnegative");
    validate_irreducible(m).expect("positive off-diagonal support is strongly connected")
}

/// Irreducible matrix with a sparse support: a random directed Hamiltonian
/// cycle plus each remaining entry kept with probability `density`.
pub fn random_sparse_irreducible<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> IrreducibleMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut next = vec![usize::MAX; n];
    for k in 0..n {
        next[perm[k]] = perm[(k + 1) % n];
    }
    let m = NonnegativeMatrix::from_fn(n, |i, j| {
        if n > 1 && next[i] == j {
            rng.gen_range(0.5..=MAX_ENTRY)
        } else if rng.gen_bool(density) {
            rng.gen_range(0.0..=MAX_ENTRY)
        } else {
            0.0
        }
    })
    .expect("entries are finite and nonnegative");
    validate_irreducible(m).expect("a Hamiltonian cycle makes the support strongly connected")
}

/// Scale vector with log-uniform components in `[0.1, 10]`.
pub fn random_scale_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ScaleVector {
    let c = (0..n).map(|_| 10f64.powf(rng.gen_range(-1.0..=1.0))).collect();
    ScaleVector::new(c).expect("powers of ten are positive")
}
