//! Distributed averaging: weight matrices, the synchronous iteration,
//! periodic gossip schedules and convergence diagnostics.
//!
//! A [`WeightMatrix`] is always row-stochastic with a sparsity pattern
//! inside the graph's adjacency plus the diagonal, so one update step
//! `x <- W x` replaces each state with a convex combination of itself
//! and its neighbors. Whether the common limit equals the initial
//! average depends on column sums; see
//! [`check_average_preservation`](weights::check_average_preservation).

mod rate;
mod run;
mod weights;

pub use rate::convergence_rate;
pub use run::{run_consensus, run_scheduled_consensus, schedule_from_weights};
pub use weights::{
    check_average_preservation, directed_consensus_weights, max_degree_weights,
    metropolis_weights, vicsek_weights,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which rule produced a weight matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Row i spreads mass 1/(1 + degree) over itself and each neighbor.
    Vicsek,
    /// Off-diagonal 1/(1 + max of the two degrees); doubly stochastic.
    Metropolis,
    /// Off-diagonal 1/N; doubly stochastic.
    MaxDegree,
    /// Asymmetric, centrality-driven rule; biases the limit toward
    /// high-scoring nodes.
    Directed,
    /// No mixing at all; a do-nothing baseline.
    Identity,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Vicsek,
        Scheme::Metropolis,
        Scheme::MaxDegree,
        Scheme::Directed,
        Scheme::Identity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Vicsek => "vicsek",
            Scheme::Metropolis => "metropolis",
            Scheme::MaxDegree => "max-degree",
            Scheme::Directed => "directed",
            Scheme::Identity => "identity",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scheme> {
        Scheme::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Scheme::ALL.iter().map(|c| c.name()).collect();
            Error::InvalidParameter(format!(
                "unknown weight scheme `{s}`; expected one of {}",
                names.join(", ")
            ))
        })
    }
}

/// Row and column sums may deviate from 1 by at most this much.
pub const STOCHASTIC_TOL: f64 = 1e-12;

/// Sparse row-stochastic update matrix. Off-diagonal entries live on
/// graph edges; every diagonal entry is stored explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    n: usize,
    /// Off-diagonal entries per row, sorted by column; zeros omitted.
    rows: Vec<Vec<(usize, f64)>>,
    diag: Vec<f64>,
    scheme: Scheme,
    column_stochastic: bool,
}

impl WeightMatrix {
    /// Validates and assembles a matrix: entries must lie in [0, 1] and
    /// every row must sum to 1 within [`STOCHASTIC_TOL`]. Explicit
    /// zero entries are dropped.
    pub fn from_parts(
        scheme: Scheme,
        rows: Vec<Vec<(usize, f64)>>,
        diag: Vec<f64>,
    ) -> Result<WeightMatrix> {
        let n = diag.len();
        if rows.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: rows.len() });
        }
        let mut clean = Vec::with_capacity(n);
        for (i, mut row) in rows.into_iter().enumerate() {
            row.retain(|&(_, w)| w != 0.0);
            row.sort_unstable_by_key(|&(j, _)| j);
            let mut sum = diag[i];
            let mut prev = None;
            for &(j, w) in &row {
                if j >= n || j == i || prev == Some(j) {
                    return Err(Error::InvalidParameter(format!(
                        "row {i} has an invalid or repeated column {j}"
                    )));
                }
                prev = Some(j);
                if !(0.0..=1.0).contains(&w) {
                    return Err(Error::InvalidParameter(format!(
                        "weight ({i}, {j}) = {w} lies outside [0, 1]"
                    )));
                }
                sum += w;
            }
            if !(-STOCHASTIC_TOL..=1.0 + STOCHASTIC_TOL).contains(&diag[i]) {
                return Err(Error::InvalidParameter(format!(
                    "diagonal entry {i} = {} lies outside [0, 1]",
                    diag[i]
                )));
            }
            if (sum - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::InvalidParameter(format!(
                    "row {i} sums to {sum}, not 1"
                )));
            }
            clean.push(row);
        }
        let mut w = WeightMatrix { n, rows: clean, diag, scheme, column_stochastic: false };
        w.column_stochastic = w
            .col_sums()
            .iter()
            .all(|s| (s - 1.0).abs() <= STOCHASTIC_TOL);
        Ok(w)
    }

    /// The do-nothing matrix: diagonal 1, no coupling.
    pub fn identity(n: usize) -> WeightMatrix {
        WeightMatrix {
            n,
            rows: vec![Vec::new(); n],
            diag: vec![1.0; n],
            scheme: Scheme::Identity,
            column_stochastic: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// True by construction; kept as a queryable flag for serialized
    /// metadata.
    pub fn is_row_stochastic(&self) -> bool {
        true
    }

    pub fn is_column_stochastic(&self) -> bool {
        self.column_stochastic
    }

    /// Off-diagonal entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn diag(&self, i: usize) -> f64 {
        self.diag[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.diag[i];
        }
        match self.rows[i].binary_search_by_key(&j, |&(c, _)| c) {
            Ok(pos) => self.rows[i][pos].1,
            Err(_) => 0.0,
        }
    }

    /// Row i of `W x`: the diagonal term first, then neighbor terms in
    /// column order. [`run_scheduled_consensus`] mirrors this exact
    /// order so a degenerate schedule reproduces the same bits.
    pub(crate) fn row_apply(&self, i: usize, x: &[f64]) -> f64 {
        let mut acc = self.diag[i] * x[i];
        for &(j, w) in &self.rows[i] {
            acc += w * x[j];
        }
        acc
    }

    /// One synchronous step `W x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row_apply(i, x)).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut sums = self.diag.clone();
        for row in &self.rows {
            for &(j, w) in row {
                sums[j] += w;
            }
        }
        sums
    }

    /// Copy with row `i`'s off-diagonal weights scaled by `factor` in
    /// (0, 1] and the diagonal absorbing the difference. Shrinking a
    /// row this way anchors that node: its state moves toward the
    /// neighbors `1/factor` times slower.
    pub fn damp_row(&self, i: usize, factor: f64) -> Result<WeightMatrix> {
        if i >= self.n {
            return Err(Error::UnknownNode { node: i, node_count: self.n });
        }
        if !(factor > 0.0 && factor <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "damping factor must lie in (0, 1], got {factor}"
            )));
        }
        let mut rows = self.rows.clone();
        let mut diag = self.diag.clone();
        let mut sum = 0.0;
        for entry in &mut rows[i] {
            entry.1 *= factor;
            sum += entry.1;
        }
        diag[i] = 1.0 - sum;
        WeightMatrix::from_parts(self.scheme, rows, diag)
    }

    /// All nonzero entries as `i j w` lines, row-major with the
    /// diagonal inline at its column position.
    pub fn to_triplet_string(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let mut wrote_diag = false;
            for &(j, w) in &self.rows[i] {
                if !wrote_diag && j > i && self.diag[i] != 0.0 {
                    out.push_str(&format!("{i} {i} {}\n", self.diag[i]));
                    wrote_diag = true;
                }
                out.push_str(&format!("{i} {j} {w}\n"));
            }
            if !wrote_diag && self.diag[i] != 0.0 {
                out.push_str(&format!("{i} {i} {}\n", self.diag[i]));
            }
        }
        out
    }

    /// Scheme and stochasticity metadata as a JSON header line.
    pub fn header_json(&self) -> String {
        let doc = serde_json::json!({
            "scheme": self.scheme,
            "n": self.n,
            "row_stochastic": self.is_row_stochastic(),
            "column_stochastic": self.column_stochastic,
        });
        let mut s = serde_json::to_string(&doc).expect("header serializes");
        s.push('\n');
        s
    }
}

/// Record of one consensus run: every visited state, the disagreement
/// (max minus min of the state) at each step, and how the run ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsensusTrace {
    /// states[t] is the state after t steps; states[0] is the input.
    pub states: Vec<Vec<f64>>,
    /// disagreements[t] matches states[t].
    pub disagreements: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub initial_average: f64,
}

impl ConsensusTrace {
    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trace holds at least the initial state")
    }

    pub fn final_disagreement(&self) -> f64 {
        *self.disagreements.last().expect("trace holds at least one step")
    }

    /// Mean of the final state; the consensus value once converged.
    pub fn limit(&self) -> f64 {
        let x = self.final_state();
        x.iter().sum::<f64>() / x.len() as f64
    }

    /// `t,node_0,...,node_{N-1},disagreement` rows. With `thin` > 1
    /// only every thin-th step is written; the first and last rows
    /// always appear.
    pub fn to_csv(&self, thin: usize) -> String {
        let thin = thin.max(1);
        let n = self.states.first().map_or(0, Vec::len);
        let mut out = String::from("t");
        for i in 0..n {
            out.push_str(&format!(",node_{i}"));
        }
        out.push_str(",disagreement\n");
        let last = self.states.len() - 1;
        for (t, state) in self.states.iter().enumerate() {
            if !t.is_multiple_of(thin) && t != last {
                continue;
            }
            out.push_str(&format!("{t}"));
            for v in state {
                out.push_str(&format!(",{v}"));
            }
            out.push_str(&format!(",{}\n", self.disagreements[t]));
        }
        out
    }
}

/// Periodic gossip timetable: the directed edge (i, j) is active in
/// round t when t is a multiple of its period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationSchedule {
    pub periods: BTreeMap<(usize, usize), u64>,
    /// Longest period: every edge fires at least once in any window of
    /// this many rounds.
    pub horizon: u64,
}

impl ActivationSchedule {
    pub fn is_active(&self, i: usize, j: usize, round: u64) -> bool {
        match self.periods.get(&(i, j)) {
            Some(&t) => round.is_multiple_of(t),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_parts_validates_rows() {
        let bad = WeightMatrix::from_parts(
            Scheme::Metropolis,
            vec![vec![(1, 0.6)], vec![(0, 0.5)]],
            vec![0.5, 0.5],
        );
        assert!(bad.is_err(), "row 0 sums to 1.1");
        let bad = WeightMatrix::from_parts(
            Scheme::Metropolis,
            vec![vec![(0, 0.5)], vec![(0, 0.5)]],
            vec![0.5, 0.5],
        );
        assert!(bad.is_err(), "self column in off-diagonal list");
    }

    #[test]
    fn zero_entries_are_dropped() {
        let w = WeightMatrix::from_parts(
            Scheme::Metropolis,
            vec![vec![(1, 0.5), (2, 0.0)], vec![(0, 0.5)], vec![]],
            vec![0.5, 0.5, 1.0],
        )
        .unwrap();
        assert_eq!(w.row(0), &[(1, 0.5)]);
        assert_eq!(w.entry(0, 2), 0.0);
    }

    #[test]
    fn identity_shape() {
        let w = WeightMatrix::identity(3);
        assert_eq!(w.entry(1, 1), 1.0);
        assert_eq!(w.entry(0, 1), 0.0);
        assert!(w.is_column_stochastic());
        assert_eq!(w.apply(&[1.0, 2.0, 3.0]), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn damp_row_keeps_stochasticity() {
        let w = WeightMatrix::from_parts(
            Scheme::Metropolis,
            vec![vec![(1, 0.5)], vec![(0, 0.5)]],
            vec![0.5, 0.5],
        )
        .unwrap();
        let d = w.damp_row(0, 0.1).unwrap();
        assert_eq!(d.entry(0, 1), 0.05);
        assert_eq!(d.diag(0), 0.95);
        assert_eq!(d.entry(1, 0), 0.5);
        assert!(d.damp_row(0, 0.0).is_err());
        assert!(d.damp_row(5, 0.5).is_err());
    }

    #[test]
    fn triplet_output_is_row_major() {
        let w = WeightMatrix::from_parts(
            Scheme::Vicsek,
            vec![vec![(1, 0.5)], vec![(0, 0.5)]],
            vec![0.5, 0.5],
        )
        .unwrap();
        assert_eq!(w.to_triplet_string(), "0 0 0.5\n0 1 0.5\n1 0 0.5\n1 1 0.5\n");
        let header: serde_json::Value = serde_json::from_str(&w.header_json()).unwrap();
        assert_eq!(header["scheme"], "vicsek");
        assert_eq!(header["row_stochastic"], true);
    }

    #[test]
    fn trace_csv_thinning() {
        let trace = ConsensusTrace {
            states: vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0], vec![4.0]],
            disagreements: vec![0.0; 5],
            iterations: 4,
            converged: false,
            initial_average: 0.0,
        };
        let csv = trace.to_csv(2);
        let ts: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(ts, vec!["0", "2", "4"]);
        let csv = trace.to_csv(3);
        let ts: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(ts, vec!["0", "3", "4"], "final row always present");
    }

    #[test]
    fn scheme_names_round_trip() {
        for c in Scheme::ALL {
            assert_eq!(c.name().parse::<Scheme>().unwrap(), c);
        }
        assert!("broadcast".parse::<Scheme>().is_err());
    }
}
