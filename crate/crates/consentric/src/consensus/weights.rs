//! The four weight-design rules.

use super::{Scheme, WeightMatrix, STOCHASTIC_TOL};
use crate::centrality::CentralityVector;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Minimum self-weight the centrality-driven rule guarantees.
pub const DIRECTED_DIAGONAL_FLOOR: f64 = 0.05;

/// Each node splits its mass evenly over itself and its neighbors:
/// w_ij = 1/(1 + degree(i)). Row-stochastic by construction but not
/// column-stochastic in general, so the consensus limit drifts from
/// the initial average on irregular graphs.
pub fn vicsek_weights(g: &Graph) -> WeightMatrix {
    let n = g.node_count();
    let mut rows = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for i in g.nodes() {
        let share = 1.0 / (1.0 + g.degree(i).unwrap() as f64);
        rows.push(g.neighbors(i).unwrap().iter().map(|&j| (j, share)).collect());
        diag.push(share);
    }
    WeightMatrix::from_parts(Scheme::Vicsek, rows, diag).expect("rows sum to 1 by construction")
}

/// w_ij = 1/(1 + max(degree(i), degree(j))) off the diagonal, with the
/// diagonal taking the remainder. Symmetric, hence doubly stochastic:
/// the limit is the exact initial average.
pub fn metropolis_weights(g: &Graph) -> WeightMatrix {
    let n = g.node_count();
    let mut rows = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for i in g.nodes() {
        let di = g.degree(i).unwrap();
        let mut row = Vec::new();
        let mut sum = 0.0;
        for &j in g.neighbors(i).unwrap() {
            let w = 1.0 / (1.0 + di.max(g.degree(j).unwrap()) as f64);
            row.push((j, w));
            sum += w;
        }
        rows.push(row);
        diag.push(1.0 - sum);
    }
    WeightMatrix::from_parts(Scheme::Metropolis, rows, diag).expect("diagonal absorbs remainder")
}

/// w_ij = 1/N off the diagonal and 1 - degree(i)/N on it. Doubly
/// stochastic; an edgeless graph yields the identity.
pub fn max_degree_weights(g: &Graph) -> WeightMatrix {
    let n = g.node_count();
    let share = 1.0 / n as f64;
    let mut rows = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for i in g.nodes() {
        rows.push(g.neighbors(i).unwrap().iter().map(|&j| (j, share)).collect());
        diag.push(1.0 - g.degree(i).unwrap() as f64 * share);
    }
    WeightMatrix::from_parts(Scheme::MaxDegree, rows, diag).expect("degrees stay below n")
}

/// Asymmetric weights driven by a per-node score. Scores are first
/// rescaled to D in (0, 1] by dividing by the maximum; the raw pull of
/// node i on neighbor j is then
///
/// ```text
/// r_ij = 1 / (max(D_i, D_j) * (1 + D_i - D_j))
/// ```
///
/// so a low-scoring node weighs a high-scoring neighbor MORE than the
/// reverse: information flows outward from central nodes. Each row is
/// scaled so its off-diagonal mass stays at or below 1 minus
/// [`DIRECTED_DIAGONAL_FLOOR`], which keeps the matrix row-stochastic
/// with a strictly positive self-weight. Columns generally do not sum
/// to 1: this rule deliberately biases the limit.
pub fn directed_consensus_weights(g: &Graph, scores: &CentralityVector) -> Result<WeightMatrix> {
    let n = g.node_count();
    if scores.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: scores.len() });
    }
    let mut top = 0.0f64;
    for (m, &s) in scores.scores.iter().enumerate() {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "directed weights need strictly positive scores; node {m} has {s}"
            )));
        }
        top = top.max(s);
    }
    let d: Vec<f64> = scores.scores.iter().map(|s| s / top).collect();

    let mut rows = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for i in g.nodes() {
        let mut row: Vec<(usize, f64)> = g
            .neighbors(i)
            .unwrap()
            .iter()
            .map(|&j| {
                let r = 1.0 / (d[i].max(d[j]) * (1.0 + d[i] - d[j]));
                (j, r)
            })
            .collect();
        let raw_sum: f64 = row.iter().map(|&(_, r)| r).sum();
        let budget = 1.0 - DIRECTED_DIAGONAL_FLOOR;
        if raw_sum > budget {
            let mut scale = budget / raw_sum;
            // A couple of corrective passes absorb the rounding of the
            // scaled sum so the self-weight never dips under the floor.
            for _ in 0..4 {
                let sum: f64 = row.iter().map(|&(_, r)| r * scale).sum();
                if sum <= budget {
                    break;
                }
                scale *= budget / sum;
            }
            for entry in &mut row {
                entry.1 *= scale;
            }
        }
        let sum: f64 = row.iter().map(|&(_, w)| w).sum();
        diag.push(1.0 - sum);
        rows.push(row);
    }
    WeightMatrix::from_parts(Scheme::Directed, rows, diag)
}

/// True when every column sums to 1 within [`STOCHASTIC_TOL`]. Together
/// with row stochasticity this is the standard sufficient condition for
/// the consensus limit to equal the initial average.
pub fn check_average_preservation(w: &WeightMatrix) -> bool {
    w.col_sums().iter().all(|s| (s - 1.0).abs() <= STOCHASTIC_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::{cd_vector_all, CumulativeParams};
    use crate::graph::{complete, cycle, erdos_renyi, path, star};
    use approx::assert_abs_diff_eq;

    #[test]
    fn vicsek_path_rows() {
        let w = vicsek_weights(&path(3));
        assert_eq!(w.entry(0, 0), 0.5);
        assert_eq!(w.entry(0, 1), 0.5);
        assert_eq!(w.entry(0, 2), 0.0);
        assert_eq!(w.entry(1, 0), 1.0 / 3.0);
        assert_eq!(w.entry(1, 1), 1.0 / 3.0);
        assert_eq!(w.entry(1, 2), 1.0 / 3.0);
    }

    #[test]
    fn vicsek_columns_on_path_do_not_sum_to_one() {
        let w = vicsek_weights(&path(3));
        let cols = w.col_sums();
        assert_abs_diff_eq!(cols[0], 5.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cols[1], 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cols[2], 5.0 / 6.0, epsilon = 1e-15);
        assert!(!w.is_column_stochastic());
        assert!(!check_average_preservation(&w));
    }

    #[test]
    fn vicsek_on_regular_graph_is_doubly_stochastic() {
        let w = vicsek_weights(&complete(3));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(w.entry(i, j), 1.0 / 3.0);
            }
        }
        assert!(w.is_column_stochastic());
    }

    #[test]
    fn metropolis_path_values() {
        let w = metropolis_weights(&path(3));
        assert_abs_diff_eq!(w.entry(0, 1), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.entry(0, 0), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.entry(1, 1), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn metropolis_star_values() {
        let w = metropolis_weights(&star(4));
        assert_abs_diff_eq!(w.entry(0, 1), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(w.entry(0, 0), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(w.entry(1, 1), 0.75, epsilon = 1e-15);
    }

    #[test]
    fn metropolis_preserves_averaging_on_random_graphs() {
        for seed in 0..8 {
            let g = erdos_renyi(15, 0.3, seed).unwrap();
            let w = metropolis_weights(&g);
            assert!(check_average_preservation(&w), "seed {seed}");
        }
    }

    #[test]
    fn max_degree_path_values() {
        let w = max_degree_weights(&path(3));
        assert_abs_diff_eq!(w.entry(0, 1), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.entry(0, 0), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.entry(1, 1), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.entry(2, 2), 2.0 / 3.0, epsilon = 1e-15);
        assert!(check_average_preservation(&w));
    }

    #[test]
    fn max_degree_complete_is_uniform() {
        let w = max_degree_weights(&complete(4));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(w.entry(i, j), 0.25);
            }
        }
    }

    #[test]
    fn max_degree_edgeless_is_identity() {
        let g = crate::graph::Graph::from_edges(3, []).unwrap();
        let w = max_degree_weights(&g);
        for i in 0..3 {
            assert_eq!(w.entry(i, i), 1.0);
        }
    }

    #[test]
    fn directed_uniform_scores_give_uniform_rows() {
        let g = cycle(5);
        let scores = cd_vector_all(&g, &CumulativeParams::walk(1)).unwrap();
        let w = directed_consensus_weights(&g, &scores).unwrap();
        for i in 0..5 {
            // Uniform D = 1 means raw pull 1 per edge; two edges per
            // node saturate the off-diagonal budget of 0.95.
            assert_abs_diff_eq!(w.entry(i, (i + 1) % 5), 0.475, epsilon = 1e-12);
            assert_abs_diff_eq!(w.entry(i, i), 0.05, epsilon = 1e-12);
        }
    }

    #[test]
    fn directed_pull_favors_higher_scores() {
        use crate::centrality::Measure;
        let g = path(3);
        let scores = CentralityVector::new(Measure::Cd, vec![0.5, 1.0, 0.5]);
        let w = directed_consensus_weights(&g, &scores).unwrap();
        // Raw pulls: endpoint on center 1/(1 * 0.5) = 2, center on
        // endpoint 1/(1 * 1.5) = 2/3. Endpoint rows saturate.
        assert_abs_diff_eq!(w.entry(0, 1), 0.95, epsilon = 1e-12);
        assert_abs_diff_eq!(w.entry(0, 0), 0.05, epsilon = 1e-12);
        assert_abs_diff_eq!(w.entry(1, 0), 0.475, epsilon = 1e-12);
        assert_abs_diff_eq!(w.entry(1, 2), 0.475, epsilon = 1e-12);
        assert_abs_diff_eq!(w.entry(1, 1), 0.05, epsilon = 1e-12);
        assert!(w.entry(0, 1) > w.entry(1, 0), "low score listens more");
    }

    #[test]
    fn directed_rejects_bad_scores() {
        use crate::centrality::Measure;
        let g = path(3);
        let zero = CentralityVector::new(Measure::Cd, vec![1.0, 0.0, 1.0]);
        assert!(directed_consensus_weights(&g, &zero).is_err());
        let short = CentralityVector::new(Measure::Cd, vec![1.0, 1.0]);
        assert!(matches!(
            directed_consensus_weights(&g, &short),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn directed_diagonal_floor_holds_on_corpus() {
        for seed in 0..10 {
            let g = erdos_renyi(12, 0.35, seed).unwrap();
            if !g.is_connected() {
                continue;
            }
            let scores = cd_vector_all(&g, &CumulativeParams::lazy_walk(3)).unwrap();
            let w = directed_consensus_weights(&g, &scores).unwrap();
            for i in 0..w.n() {
                assert!(
                    w.diag(i) >= DIRECTED_DIAGONAL_FLOOR,
                    "seed {seed} node {i} diag {}",
                    w.diag(i)
                );
            }
        }
    }
}
