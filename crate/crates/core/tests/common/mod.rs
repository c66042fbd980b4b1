//! Independent oracles shared by the integration tests. Nothing here calls the
//! power iteration, the BFS or the generic bound evaluation.
#![allow(dead_code)]

use spectra_bounds::Graph;

/// Characteristic polynomial coefficients of `a` by Faddeev-LeVerrier:
/// `p(x) = x^n + c[1] x^(n-1) + ... + c[n]`, returned as `[1, c1, .., cn]`.
pub fn char_poly(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut coeffs = vec![1.0];
    // M_0 = 0, c_0 = 1; M_k = A M_{k-1} + c_{k-1} I; c_k = -tr(A M_k) / k
    let mut m = vec![vec![0.0; n]; n];
    for k in 1..=n {
        let prev = coeffs[k - 1];
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += prev;
        }
        m = next;
        let am = matmul(a, &m);
        let tr: f64 = (0..n).map(|i| am[i][i]).sum();
        coeffs.push(-tr / k as f64);
    }
    coeffs
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Largest real eigenvalue of a symmetric nonnegative matrix: scan the
/// characteristic polynomial downward from a Gershgorin upper bound until
/// the sign changes, then bisect the bracket.
pub fn largest_root_by_scan(a: &[Vec<f64>]) -> f64 {
    let coeffs = char_poly(a);
    let hi = a
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    let steps = 200_000;
    let h = 2.0 * hi / steps as f64;
    // p(hi) > 0 since every eigenvalue is below hi.
    let mut upper = hi;
    let mut lower = hi;
    for k in 1..=steps {
        let x = hi - h * k as f64;
        if horner(&coeffs, x) <= 0.0 {
            lower = x;
            break;
        }
        upper = x;
    }
    assert!(lower < upper, "no sign change found");
    for _ in 0..200 {
        let mid = 0.5 * (lower + upper);
        if mid <= lower || mid >= upper {
            break;
        }
        if horner(&coeffs, mid) > 0.0 {
            upper = mid;
        } else {
            lower = mid;
        }
    }
    0.5 * (lower + upper)
}

/// All-pairs distances by Floyd-Warshall over the edge list.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in edges {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Every connected labeled simple graph on `n` vertices.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges).ok()
        })
        .collect()
}

pub fn degrees_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let mut d = vec![0.0; n];
    for &(u, v) in edges {
        d[u] += 1.0;
        d[v] += 1.0;
    }
    d
}

pub fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

fn dev(seq: &[f64], i: usize) -> f64 {
    (0..i - 1).map(|k| seq[k] - seq[i - 1]).sum()
}

// The classical degree / transmission bounds, written out term by term.
// `d` and `tr` are sorted descending; `i` is 1-based.

pub fn degree_adjacency_upper(d: &[f64], i: usize) -> f64 {
    let di = d[i - 1];
    (di - 1.0 + ((di + 1.0).powi(2) + 4.0 * dev(d, i)).sqrt()) / 2.0
}

pub fn degree_signless_upper(d: &[f64], i: usize) -> f64 {
    let (d1, di) = (d[0], d[i - 1]);
    (d1 + 2.0 * di - 1.0 + ((2.0 * di - d1 + 1.0).powi(2) + 8.0 * dev(d, i)).sqrt()) / 2.0
}

pub fn transmission_distance_upper(tr: &[f64], diam: f64, i: usize) -> f64 {
    let ti = tr[i - 1];
    (ti - diam + ((ti + diam).powi(2) + 4.0 * diam * dev(tr, i)).sqrt()) / 2.0
}

pub fn transmission_dsl_upper(tr: &[f64], diam: f64, i: usize) -> f64 {
    let (t1, ti) = (tr[0], tr[i - 1]);
    (t1 + 2.0 * ti - diam + ((2.0 * ti - t1 + diam).powi(2) + 8.0 * diam * dev(tr, i)).sqrt()) / 2.0
}

pub fn transmission_distance_lower(tr: &[f64]) -> f64 {
    let n = tr.len();
    let tn = tr[n - 1];
    (tn - 1.0 + ((tn + 1.0).powi(2) + 4.0 * dev(tr, n)).sqrt()) / 2.0
}

pub fn transmission_dsl_lower(tr: &[f64]) -> f64 {
    let n = tr.len();
    let tn = tr[n - 1];
    (3.0 * tn - 1.0 + ((tn + 1.0).powi(2) + 8.0 * dev(tr, n)).sqrt()) / 2.0
}

/// Generic upper bound evaluated directly from matrix entries and `c`,
/// without the library's profile.
pub fn direct_upper(a: &[Vec<f64>], c: &[f64], i: usize) -> f64 {
    let n = a.len();
    let m: Vec<f64> = (0..n)
        .map(|r| (0..n).map(|j| a[r][j] * c[j]).sum::<f64>() / c[r])
        .collect();
    let m = sorted_desc(m);
    let big_m = (0..n).map(|k| a[k][k]).fold(f64::MIN, f64::max);
    let mut big_n = 0.0f64;
    for r in 0..n {
        for j in 0..n {
            if r != j {
                big_n = big_n.max(a[r][j] * c[j] / c[r]);
            }
        }
    }
    let mi = m[i - 1];
    (mi + big_m - big_n + ((mi - big_m + big_n).powi(2) + 4.0 * big_n * dev(&m, i)).sqrt()) / 2.0
}

/// Generic lower bound evaluated directly.
pub fn direct_lower(a: &[Vec<f64>], c: &[f64]) -> f64 {
    let n = a.len();
    let m: Vec<f64> = (0..n)
        .map(|r| (0..n).map(|j| a[r][j] * c[j]).sum::<f64>() / c[r])
        .collect();
    let m = sorted_desc(m);
    let s = (0..n).map(|k| a[k][k]).fold(f64::MAX, f64::min);
    let mut t = f64::MAX;
    for r in 0..n {
        for j in 0..n {
            if r != j {
                t = t.min(a[r][j] * c[j] / c[r]);
            }
        }
    }
    let mn = m[n - 1];
    (mn + s - t + ((mn - s + t).powi(2) + 4.0 * t * dev(&m, n)).sqrt()) / 2.0
}

pub fn within(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() <= rel * (1.0 + y.abs())
}
