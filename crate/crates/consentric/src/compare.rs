//! Cross-measure comparison tools: normalization, error metrics, the
//! depth-vs-accuracy profile of walk scores against eigenvector
//! centrality, rank agreement, and a consensus-scheme benchmark table.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::centrality::{
    cd_vector_all, eigenvector_centrality, CentralityVector, CumulativeParams, NeighborhoodMode,
};
use crate::consensus::{
    check_average_preservation, convergence_rate, directed_consensus_weights, max_degree_weights,
    metropolis_weights, run_consensus, vicsek_weights, Scheme, WeightMatrix,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Eigenvector settings used whenever the harness needs the reference
/// scores.
pub const EIGEN_TOL: f64 = 1e-12;
pub const EIGEN_MAX_ITER: usize = 100_000;

/// Depth of the walk scores that feed the centrality-driven weight rule.
pub const DIRECTED_SCORE_DEPTH: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    L2,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorNorm {
    Linf,
    L2,
}

fn scale_of(scores: &[f64], norm: Norm) -> Result<f64> {
    let s = match norm {
        Norm::L1 => scores.iter().map(|v| v.abs()).sum::<f64>(),
        Norm::L2 => scores.iter().map(|v| v * v).sum::<f64>().sqrt(),
        Norm::Max => scores.iter().fold(0.0f64, |a, v| a.max(v.abs())),
    };
    if s == 0.0 {
        return Err(Error::InvalidParameter(
            "an all-zero vector cannot be normalized".into(),
        ));
    }
    if !s.is_finite() {
        return Err(Error::Numerical {
            step: 0,
            msg: "scores are not finite; cannot normalize".into(),
        });
    }
    Ok(s)
}

/// Scaled copy with the chosen norm equal to 1. The measure tag and
/// existing parameters carry over, with the normalization recorded.
pub fn normalize(v: &CentralityVector, norm: Norm) -> Result<CentralityVector> {
    let s = scale_of(&v.scores, norm)?;
    let mut out = v.clone();
    for x in &mut out.scores {
        *x /= s;
    }
    Ok(out.with_param("normalization", serde_json::to_value(norm).unwrap()))
}

/// Distance between two score vectors after both are L2-normalized and
/// sign-aligned (b flips when the dot product is negative), so vectors
/// that differ only by scale or sign measure as identical.
pub fn measure_error(a: &CentralityVector, b: &CentralityVector, norm: ErrorNorm) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    aligned_error(&a.scores, &b.scores, norm)
}

fn aligned_error(a: &[f64], b: &[f64], norm: ErrorNorm) -> Result<f64> {
    let sa = scale_of(a, Norm::L2)?;
    let sb = scale_of(b, Norm::L2)?;
    let dot: f64 = a.iter().zip(b).map(|(x, y)| (x / sa) * (y / sb)).sum();
    let flip = if dot < 0.0 { -1.0 } else { 1.0 };
    let diffs = a.iter().zip(b).map(|(x, y)| x / sa - flip * y / sb);
    Ok(match norm {
        ErrorNorm::Linf => diffs.fold(0.0f64, |m, d| m.max(d.abs())),
        ErrorNorm::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
    })
}

/// Settings for [`convergence_profile`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileOptions {
    pub mode: NeighborhoodMode,
    /// Multiply by A + I instead of A in walk mode; on by default
    /// because plain adjacency products oscillate on bipartite graphs.
    pub lazy: bool,
    pub thresholds: Vec<f64>,
    pub error_norm: ErrorNorm,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            mode: NeighborhoodMode::Walk,
            lazy: true,
            thresholds: vec![0.01],
            error_norm: ErrorNorm::Linf,
        }
    }
}

/// How closely depth-n cumulative scores track eigenvector centrality,
/// for every depth up to some maximum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceProfile {
    pub graph_id: String,
    pub mode: NeighborhoodMode,
    pub lazy: bool,
    /// errors[k] is the error at depth k + 1.
    pub errors: Vec<f64>,
    /// For each threshold, the smallest depth whose error dips below
    /// it, if any did.
    pub first_n_below: Vec<(f64, Option<usize>)>,
}

impl ConvergenceProfile {
    pub fn error_at(&self, n: usize) -> Option<f64> {
        self.errors.get(n.checked_sub(1)?).copied()
    }

    /// `n,error` rows for the whole profile.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,error\n");
        for (k, e) in self.errors.iter().enumerate() {
            out.push_str(&format!("{},{e}\n", k + 1));
        }
        out
    }
}

/// Computes the error profile of depth-n cumulative scores against
/// eigenvector centrality for n = 1..=max_n. Walk mode advances one
/// adjacency product per depth and renormalizes as it goes, so deep
/// profiles stay finite; scores at each depth equal the raw recursion
/// up to scale.
pub fn convergence_profile(
    g: &Graph,
    graph_id: &str,
    max_n: usize,
    opts: &ProfileOptions,
) -> Result<ConvergenceProfile> {
    if max_n == 0 {
        return Err(Error::InvalidParameter("profile depth must be at least 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected(
            "the depth profile compares against eigenvector centrality, which needs a \
             connected graph"
                .into(),
        ));
    }
    let eig = eigenvector_centrality(g, EIGEN_TOL, EIGEN_MAX_ITER)?;

    let mut errors = Vec::with_capacity(max_n);
    match opts.mode {
        NeighborhoodMode::Walk => {
            let mut v = g.degree_vector();
            for _ in 1..=max_n {
                let mut next = vec![0.0; v.len()];
                for i in g.nodes() {
                    let mut acc = if opts.lazy { v[i] } else { 0.0 };
                    for &j in g.neighbors(i).unwrap() {
                        acc += v[j];
                    }
                    next[i] = acc;
                }
                let scale = scale_of(&next, Norm::L2)?;
                for x in &mut next {
                    *x /= scale;
                }
                errors.push(aligned_error(&next, &eig.scores, opts.error_norm)?);
                v = next;
            }
        }
        NeighborhoodMode::Tree => {
            for n in 1..=max_n {
                let scores = cd_vector_all(g, &CumulativeParams::tree(n))?;
                errors.push(aligned_error(&scores.scores, &eig.scores, opts.error_norm)?);
            }
        }
    }

    let first_n_below = opts
        .thresholds
        .iter()
        .map(|&t| (t, errors.iter().position(|&e| e < t).map(|k| k + 1)))
        .collect();
    Ok(ConvergenceProfile {
        graph_id: graph_id.to_string(),
        mode: opts.mode,
        lazy: opts.lazy,
        errors,
        first_n_below,
    })
}

/// Average rank of each entry, 1-based, with ties sharing the mean of
/// their positions.
fn average_ranks(v: &[f64]) -> Result<Vec<f64>> {
    if v.iter().any(|x| x.is_nan()) {
        return Err(Error::InvalidParameter(
            "rank correlation is undefined for NaN scores".into(),
        ));
    }
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_unstable_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap());
    let mut ranks = vec![0.0; v.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        let shared = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = shared;
        }
        i = j + 1;
    }
    Ok(ranks)
}

/// Spearman rank correlation in [-1, 1], with average ranks on ties.
/// A constant input has no defined ranking: the result is NaN and a
/// warning is logged.
pub fn rank_correlation(a: &CentralityVector, b: &CentralityVector) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    if a.len() < 2 {
        return Err(Error::InvalidParameter(
            "rank correlation needs at least two nodes".into(),
        ));
    }
    let ra = average_ranks(&a.scores)?;
    let rb = average_ranks(&b.scores)?;
    let n = ra.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (x, y) in ra.iter().zip(&rb) {
        cov += (x - mean) * (y - mean);
        var_a += (x - mean) * (x - mean);
        var_b += (y - mean) * (y - mean);
    }
    if var_a == 0.0 || var_b == 0.0 {
        warn!("rank correlation against a constant vector is undefined");
        return Ok(f64::NAN);
    }
    Ok(cov / (var_a * var_b).sqrt())
}

/// One benchmarked scheme: how the matrix mixed from `x0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub scheme: Scheme,
    pub iterations: usize,
    pub converged: bool,
    /// Second-largest eigenvalue modulus; smaller mixes faster.
    pub rate: f64,
    pub preserves_average: bool,
    /// Mean of the final state: the consensus value once converged.
    pub limit: f64,
    pub final_disagreement: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkTable {
    pub rows: Vec<BenchmarkRow>,
}

impl BenchmarkTable {
    pub fn row(&self, scheme: Scheme) -> Option<&BenchmarkRow> {
        self.rows.iter().find(|r| r.scheme == scheme)
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("scheme,iterations,converged,rate,preserves_average,limit,final_disagreement\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.scheme,
                r.iterations,
                r.converged,
                r.rate,
                r.preserves_average,
                r.limit,
                r.final_disagreement
            ));
        }
        out
    }
}

/// Builds the requested weight matrix for `g`. The centrality-driven
/// scheme scores nodes with depth-[`DIRECTED_SCORE_DEPTH`] lazy walk
/// sums.
pub fn weights_for_scheme(g: &Graph, scheme: Scheme) -> Result<WeightMatrix> {
    Ok(match scheme {
        Scheme::Vicsek => vicsek_weights(g),
        Scheme::Metropolis => metropolis_weights(g),
        Scheme::MaxDegree => max_degree_weights(g),
        Scheme::Directed => {
            let scores = cd_vector_all(g, &CumulativeParams::lazy_walk(DIRECTED_SCORE_DEPTH))?;
            directed_consensus_weights(g, &scores)?
        }
        Scheme::Identity => WeightMatrix::identity(g.node_count()),
    })
}

/// Runs every requested scheme from the same start vector and collects
/// iterations, spectral rate, averaging behavior and the reached limit
/// into one table.
pub fn benchmark_consensus(
    g: &Graph,
    schemes: &[Scheme],
    x0: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<BenchmarkTable> {
    if !g.is_connected() {
        return Err(Error::Disconnected("benchmarks compare consensus limits, so every \
             node must be able to reach every other"
            .into()));
    }
    let mut rows = Vec::with_capacity(schemes.len());
    for &scheme in schemes {
        let w = weights_for_scheme(g, scheme)?;
        let trace = run_consensus(&w, x0, tol, max_iter)?;
        rows.push(BenchmarkRow {
            scheme,
            iterations: trace.iterations,
            converged: trace.converged,
            rate: convergence_rate(&w)?,
            preserves_average: check_average_preservation(&w),
            limit: trace.limit(),
            final_disagreement: trace.final_disagreement(),
        });
    }
    Ok(BenchmarkTable { rows })
}
