//! Cumulative-degree measures.
//!
//! The base score of a node sums the degrees of its neighbors. The
//! depth-n extension keeps accumulating degrees further out, in one of
//! two readings of "further out":
//!
//! * Walk mode multiplies the degree vector by the adjacency matrix n
//!   times, so revisits count. This is power iteration seeded with the
//!   degree vector, which is why deep walk scores line up with
//!   eigenvector centrality.
//! * Tree mode sums each node once at its BFS depth, so scores stay
//!   bounded by the component's total degree.
//!
//! The full-tree variant extends the tree sum to every reachable node,
//! and the discounted variant weights depth k by a coefficient.

use serde::{Deserialize, Serialize};

use super::{CentralityVector, Measure};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// How depth-n neighborhoods are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NeighborhoodMode {
    /// Repeated adjacency products; revisits count.
    Walk,
    /// BFS layers; each node counts once at its depth.
    Tree,
}

/// Settings shared by the cumulative family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulativeParams {
    /// Neighborhood depth n; must be at least 1.
    pub layer_n: usize,
    pub mode: NeighborhoodMode,
    /// Walk mode only: multiply by A + I instead of A, which damps the
    /// odd/even oscillation on bipartite graphs.
    pub lazy: bool,
    /// Depth coefficients for the discounted measure; entry k - 1
    /// weights depth k, so the length must equal `layer_n`.
    pub discounts: Vec<f64>,
    /// Tree modes only: also count the root's own degree (depth 0,
    /// weight 1).
    pub include_self: bool,
}

impl Default for CumulativeParams {
    fn default() -> Self {
        CumulativeParams {
            layer_n: 1,
            mode: NeighborhoodMode::Walk,
            lazy: false,
            discounts: Vec::new(),
            include_self: false,
        }
    }
}

impl CumulativeParams {
    pub fn walk(layer_n: usize) -> Self {
        CumulativeParams { layer_n, ..Default::default() }
    }

    pub fn lazy_walk(layer_n: usize) -> Self {
        CumulativeParams { layer_n, lazy: true, ..Default::default() }
    }

    pub fn tree(layer_n: usize) -> Self {
        CumulativeParams { layer_n, mode: NeighborhoodMode::Tree, ..Default::default() }
    }

    pub fn with_discounts(mut self, discounts: Vec<f64>) -> Self {
        self.discounts = discounts;
        self
    }

    pub fn with_include_self(mut self, include_self: bool) -> Self {
        self.include_self = include_self;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.layer_n == 0 {
            return Err(Error::InvalidParameter("layer depth must be at least 1".into()));
        }
        if self.lazy && self.mode == NeighborhoodMode::Tree {
            return Err(Error::InvalidParameter(
                "lazy accumulation applies to walk mode only".into(),
            ));
        }
        if self.include_self && self.mode == NeighborhoodMode::Walk {
            return Err(Error::InvalidParameter(
                "include_self applies to tree mode only".into(),
            ));
        }
        Ok(())
    }

    fn validate_discounts(&self) -> Result<()> {
        if self.discounts.is_empty() {
            return Err(Error::InvalidParameter("discount list must not be empty".into()));
        }
        if self.discounts.len() != self.layer_n {
            return Err(Error::InvalidParameter(format!(
                "need one discount per depth: {} depths but {} discounts",
                self.layer_n,
                self.discounts.len()
            )));
        }
        if let Some(bad) = self.discounts.iter().find(|d| !(**d >= 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "discounts must be nonnegative, got {bad}"
            )));
        }
        Ok(())
    }

    fn record_on(&self, v: CentralityVector) -> CentralityVector {
        let v = v
            .with_param("n", self.layer_n)
            .with_param("mode", serde_json::to_value(self.mode).unwrap())
            .with_param("lazy", self.lazy)
            .with_param("include_self", self.include_self);
        if self.discounts.is_empty() {
            v
        } else {
            v.with_param("discounts", self.discounts.clone())
        }
    }
}

/// One adjacency product, `y = A x`, or `y = (A + I) x` when `lazy`.
fn matvec(g: &Graph, x: &[f64], lazy: bool) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    for i in g.nodes() {
        let mut acc = if lazy { x[i] } else { 0.0 };
        for &j in g.neighbors(i).unwrap() {
            acc += x[j];
        }
        y[i] = acc;
    }
    y
}

fn tree_score(g: &Graph, m: usize, depth: usize, include_self: bool) -> Result<f64> {
    let layers = g.bfs_layers(m, Some(depth))?;
    let mut total = if include_self { g.degree(m)? as f64 } else { 0.0 };
    for layer in layers.layers.iter().skip(1) {
        for &v in layer {
            total += g.degree(v).unwrap() as f64;
        }
    }
    Ok(total)
}

/// Sum of the degrees of `m`'s neighbors.
pub fn cumulative_degree(g: &Graph, m: usize) -> Result<f64> {
    let mut total = 0.0;
    for &j in g.neighbors(m)? {
        total += g.degree(j).unwrap() as f64;
    }
    Ok(total)
}

/// Depth-n cumulative degree of a single node. Walk mode computes the
/// whole vector and indexes it, so the value is bitwise identical to
/// the matching entry of [`cd_vector_all`].
pub fn cumulative_degree_n(g: &Graph, m: usize, params: &CumulativeParams) -> Result<f64> {
    params.validate()?;
    if m >= g.node_count() {
        return Err(Error::UnknownNode { node: m, node_count: g.node_count() });
    }
    match params.mode {
        NeighborhoodMode::Walk => Ok(cd_vector_all(g, params)?.scores[m]),
        NeighborhoodMode::Tree => tree_score(g, m, params.layer_n, params.include_self),
    }
}

/// Cumulative degree over the entire reachable BFS tree of `m`. Only
/// tree mode is meaningful: summing over unbounded walks grows without
/// limit, so walk mode is rejected.
pub fn full_tree_cumulative_degree(g: &Graph, m: usize, params: &CumulativeParams) -> Result<f64> {
    if params.mode == NeighborhoodMode::Walk {
        return Err(Error::InvalidParameter(
            "the full-tree sum has no walk form: revisits make it grow without bound; \
             use tree mode, or a finite depth with cumulative_degree_n"
                .into(),
        ));
    }
    let depth = g.node_count().max(1);
    tree_score(g, m, depth, params.include_self)
}

/// Depth-discounted cumulative degree: depth k contributes its degree
/// sum scaled by `discounts[k - 1]`.
pub fn discounted_cumulative_degree(
    g: &Graph,
    m: usize,
    params: &CumulativeParams,
) -> Result<f64> {
    params.validate()?;
    params.validate_discounts()?;
    if m >= g.node_count() {
        return Err(Error::UnknownNode { node: m, node_count: g.node_count() });
    }
    match params.mode {
        NeighborhoodMode::Walk => Ok(d2cd_vector_all(g, params)?.scores[m]),
        NeighborhoodMode::Tree => {
            let layers = g.bfs_layers(m, Some(params.layer_n))?;
            let mut total = if params.include_self { g.degree(m)? as f64 } else { 0.0 };
            for (k, layer) in layers.layers.iter().enumerate().skip(1) {
                let mut level = 0.0;
                for &v in layer {
                    level += g.degree(v).unwrap() as f64;
                }
                total += params.discounts[k - 1] * level;
            }
            Ok(total)
        }
    }
}

/// Depth-n cumulative degrees for every node. Walk mode runs the
/// recursion "next vector = A times current" starting from the degree
/// vector, one product per depth; the n-th adjacency power is never
/// materialized. Raw walk scores grow roughly like (largest
/// eigenvalue)^n, so very deep profiles should renormalize per depth.
pub fn cd_vector_all(g: &Graph, params: &CumulativeParams) -> Result<CentralityVector> {
    params.validate()?;
    let scores = match params.mode {
        NeighborhoodMode::Walk => {
            let mut v = g.degree_vector();
            for _ in 0..params.layer_n {
                v = matvec(g, &v, params.lazy);
            }
            v
        }
        NeighborhoodMode::Tree => {
            let mut v = Vec::with_capacity(g.node_count());
            for m in g.nodes() {
                v.push(tree_score(g, m, params.layer_n, params.include_self)?);
            }
            v
        }
    };
    let plain_depth_one =
        params.layer_n == 1 && !params.lazy && !params.include_self && params.discounts.is_empty();
    let measure = if plain_depth_one { Measure::Cd } else { Measure::Cdn };
    Ok(params.record_on(CentralityVector::new(measure, scores)))
}

/// Full-tree cumulative degree for every node (tree mode only).
pub fn dcd_vector_all(g: &Graph, params: &CumulativeParams) -> Result<CentralityVector> {
    let mut scores = Vec::with_capacity(g.node_count());
    for m in g.nodes() {
        scores.push(full_tree_cumulative_degree(g, m, params)?);
    }
    Ok(params.record_on(CentralityVector::new(Measure::Dcd, scores)))
}

/// Discounted cumulative degree for every node.
pub fn d2cd_vector_all(g: &Graph, params: &CumulativeParams) -> Result<CentralityVector> {
    params.validate()?;
    params.validate_discounts()?;
    let scores = match params.mode {
        NeighborhoodMode::Walk => {
            let mut v = g.degree_vector();
            let mut acc = vec![0.0; g.node_count()];
            for k in 1..=params.layer_n {
                v = matvec(g, &v, params.lazy);
                let alpha = params.discounts[k - 1];
                for (a, value) in acc.iter_mut().zip(&v) {
                    *a += alpha * value;
                }
            }
            acc
        }
        NeighborhoodMode::Tree => {
            let mut v = Vec::with_capacity(g.node_count());
            for m in g.nodes() {
                v.push(discounted_cumulative_degree(g, m, params)?);
            }
            v
        }
    };
    Ok(params.record_on(CentralityVector::new(Measure::D2cd, scores)))
}
