//! Degree, betweenness, closeness and eigenvector centrality.

use log::warn;

use super::{CentralityVector, Measure};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Whether a betweenness pair {s, t} counts once or in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCounting {
    /// Each unordered pair counted once (the common convention).
    Unordered,
    /// Ordered (s, t) and (t, s) both counted: every score doubles.
    Ordered,
}

/// Graphs up to this size use the canonical accumulation: every
/// contribution is one exact integer path-count ratio, and sums run in
/// value order. The scores are then invariant under graph automorphisms
/// down to the last bit and coincide exactly with a literal
/// shortest-path enumeration. Larger graphs switch to the much faster
/// Brandes dependency recursion, still deterministic for a fixed
/// labeling but exact only to ordinary floating-point accuracy.
const CANONICAL_ACCUMULATION_MAX_NODES: usize = 256;

/// Degree divided by the number of possible neighbors, N - 1.
pub fn degree_centrality(g: &Graph) -> Result<CentralityVector> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "degree centrality needs at least 2 nodes, got {n}"
        )));
    }
    let scale = (n - 1) as f64;
    let scores = g.degree_vector().iter().map(|d| d / scale).collect();
    Ok(CentralityVector::new(Measure::Degree, scores))
}

/// Sum over node pairs of the fraction of shortest paths through each
/// node, accumulated per source. Unnormalized; pairs in other
/// components contribute nothing.
pub fn betweenness_centrality(g: &Graph, pairs: PairCounting) -> CentralityVector {
    let mut scores = if g.node_count() <= CANONICAL_ACCUMULATION_MAX_NODES {
        canonical_betweenness(g)
    } else {
        streaming_betweenness(g)
    };
    if pairs == PairCounting::Unordered {
        for s in &mut scores {
            *s /= 2.0;
        }
    }
    CentralityVector::new(Measure::Betweenness, scores)
        .with_param("pairs", if pairs == PairCounting::Ordered { "ordered" } else { "unordered" })
}

/// Sorts a contribution list and adds it up. Folding from +0.0 keeps
/// empty lists at plain zero, and equal-valued entries make the total
/// independent of how ties were ordered.
fn sorted_sum(terms: &mut [f64]) -> f64 {
    terms.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    terms.iter().fold(0.0, |acc, x| acc + x)
}

/// One term per (source, target) pair: sigma_sv * sigma_vt / sigma_st,
/// every count an exact integer from BFS. Per-source dependencies and
/// per-node totals are value-sorted sums, so two nodes that see the
/// same multiset of path-count ratios get bitwise identical scores.
fn canonical_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let counts: Vec<_> =
        g.nodes().map(|s| g.shortest_path_counts(s).expect("node exists")).collect();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); n];
    let mut terms: Vec<f64> = Vec::new();
    for s in 0..n {
        let from_s = &counts[s];
        for v in 0..n {
            if v == s || from_s.dist[v].is_none() {
                continue;
            }
            let d_sv = from_s.dist[v].unwrap();
            let from_v = &counts[v];
            terms.clear();
            for t in 0..n {
                if t == s || t == v {
                    continue;
                }
                let (Some(d_st), Some(d_vt)) = (from_s.dist[t], from_v.dist[t]) else {
                    continue;
                };
                if d_sv + d_vt == d_st {
                    let through = from_s.sigma[v] as f64 * from_v.sigma[t] as f64;
                    terms.push(through / from_s.sigma[t] as f64);
                }
            }
            columns[v].push(sorted_sum(&mut terms));
        }
    }
    columns.into_iter().map(|mut c| sorted_sum(&mut c)).collect()
}

/// Brandes dependency recursion with streaming addition into one
/// running total per node.
fn streaming_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut running = vec![0.0f64; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for s in 0..n {
        let pc = g.shortest_path_counts(s).expect("source node exists");
        // Successor lists of the shortest-path dag out of s.
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
        order.clear();
        order.extend(g.nodes().filter(|&v| pc.dist[v].is_some()));
        order.sort_unstable_by_key(|&v| (pc.dist[v], v));
        for &v in &order {
            let dv = pc.dist[v].unwrap();
            for &u in g.neighbors(v).unwrap() {
                if pc.dist[u] == Some(dv + 1) {
                    succs[v].push(u);
                }
            }
        }

        let mut delta = vec![0.0f64; n];
        let mut terms: Vec<f64> = Vec::new();
        for &v in order.iter().rev() {
            terms.clear();
            for &u in &succs[v] {
                terms.push(pc.sigma[v] as f64 / pc.sigma[u] as f64 * (1.0 + delta[u]));
            }
            delta[v] = sorted_sum(&mut terms);
            if v != s {
                running[v] += delta[v];
            }
        }
    }
    running
}

/// Mean hop distance from each node to the rest of its component, so a
/// LOWER score means a more central node. With `inverse` the reciprocal
/// is reported and higher means more central. Isolated nodes have no
/// defined mean; they score NaN and log a warning.
pub fn closeness_centrality(g: &Graph, inverse: bool) -> CentralityVector {
    let mut scores = Vec::with_capacity(g.node_count());
    for m in g.nodes() {
        let pc = g.shortest_path_counts(m).expect("node exists");
        let mut total: u64 = 0;
        let mut reached: u64 = 0;
        for d in pc.dist.iter().flatten() {
            total += *d as u64;
            reached += 1;
        }
        // `reached` counts m itself; an isolated node reaches only itself.
        if reached <= 1 {
            warn!("node {m} is isolated; its closeness is undefined");
            scores.push(f64::NAN);
        } else {
            let farness = total as f64 / (reached - 1) as f64;
            scores.push(if inverse { 1.0 / farness } else { farness });
        }
    }
    CentralityVector::new(Measure::Closeness, scores).with_param("inverse", inverse)
}

/// Dominant-eigenvector scores of the adjacency matrix: a node is
/// central when its neighbors are. Power iteration runs on A + I so the
/// iteration also settles on bipartite graphs (the shift reorders no
/// eigenvectors); the start vector is all ones. Scores come back
/// L2-normalized and nonnegative, with the adjacency eigenvalue
/// (Rayleigh quotient) and iteration count in `params`.
pub fn eigenvector_centrality(g: &Graph, tol: f64, max_iter: usize) -> Result<CentralityVector> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::InvalidParameter("graph has no nodes".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected(
            "eigenvector centrality needs a connected graph".into(),
        ));
    }

    let shifted = |x: &[f64]| {
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut acc = x[i];
            for &j in g.neighbors(i).unwrap() {
                acc += x[j];
            }
            y[i] = acc;
        }
        y
    };

    let norm = 1.0 / (n as f64).sqrt();
    let mut x = vec![norm; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        let mut y = shifted(&x);
        let len = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut y {
            *v /= len;
        }
        let diff = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        x = y;
        if diff < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            context: "eigenvector power iteration",
            max_iter,
        });
    }

    // Rayleigh quotient with respect to A itself; x is unit length.
    let mut lambda = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for &j in g.neighbors(i).unwrap() {
            row += x[j];
        }
        lambda += x[i] * row;
    }

    Ok(CentralityVector::new(Measure::Eigenvector, x)
        .with_param("lambda", lambda)
        .with_param("iterations", iterations)
        .with_param("tol", tol))
}
