//! Per-node importance scores.
//!
//! [`classic`] holds the four standard measures (degree, betweenness,
//! closeness, eigenvector). [`cumulative`] holds the cumulative-degree
//! family, which grades a node by the degrees found in its widening
//! neighborhood and approximates eigenvector centrality as the depth
//! grows. Every measure returns a [`CentralityVector`] so downstream
//! code can treat scores uniformly.

mod classic;
mod cumulative;

pub use classic::{
    betweenness_centrality, closeness_centrality, degree_centrality, eigenvector_centrality,
    PairCounting,
};
pub use cumulative::{
    cd_vector_all, cumulative_degree, cumulative_degree_n, d2cd_vector_all, dcd_vector_all,
    discounted_cumulative_degree, full_tree_cumulative_degree, CumulativeParams, NeighborhoodMode,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifies which scoring rule produced a [`CentralityVector`].
///
/// The short variants name the cumulative family: `Cd` sums neighbor
/// degrees, `Cdn` extends the sum to depth n, `Dcd` covers the whole
/// reachable tree, and `D2cd` discounts each depth by a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Degree,
    Betweenness,
    Closeness,
    Eigenvector,
    Cd,
    Cdn,
    Dcd,
    D2cd,
}

impl Measure {
    pub const ALL: [Measure; 8] = [
        Measure::Degree,
        Measure::Betweenness,
        Measure::Closeness,
        Measure::Eigenvector,
        Measure::Cd,
        Measure::Cdn,
        Measure::Dcd,
        Measure::D2cd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Eigenvector => "eigenvector",
            Measure::Cd => "cd",
            Measure::Cdn => "cdn",
            Measure::Dcd => "dcd",
            Measure::D2cd => "d2cd",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Measure> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Measure::ALL.iter().map(|m| m.name()).collect();
                Error::InvalidParameter(format!(
                    "unknown measure `{s}`; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Scores for every node of a graph, tagged with the measure and the
/// parameters that produced them so any output is reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityVector {
    pub measure: Measure,
    pub params: BTreeMap<String, serde_json::Value>,
    /// One score per node, indexed by node id.
    pub scores: Vec<f64>,
}

impl CentralityVector {
    pub fn new(measure: Measure, scores: Vec<f64>) -> CentralityVector {
        CentralityVector { measure, params: BTreeMap::new(), scores }
    }

    /// Records a parameter; builder-style so constructors can chain.
    pub fn with_param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn param(&self, key: &str) -> Option<&serde_json::Value> {
        self.params.get(key)
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// Node with the highest score; ties resolve to the lowest id.
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, &s) in self.scores.iter().enumerate() {
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((i, s));
            }
        }
        best.map(|(i, _)| i)
    }

    /// `node,score` rows sorted by node id. Undefined scores print as
    /// `NaN`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,score\n");
        for (node, score) in self.scores.iter().enumerate() {
            out.push_str(&format!("{node},{score}\n"));
        }
        out
    }

    /// The full record as pretty JSON. Undefined scores become `null`.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("centrality vector serializes");
        s.push('\n');
        s
    }

    /// Just the measure name and parameters, for CSV sidecar files.
    pub fn params_json(&self) -> String {
        let doc = serde_json::json!({
            "measure": self.measure,
            "params": self.params,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("params serialize");
        s.push('\n');
        s
    }
}
