//! Undirected simple graphs: adjacency storage, traversal primitives,
//! generators and edge-list I/O.
//!
//! Nodes are dense indices `0..n`. Edges are unordered pairs without
//! self-loops; an optional positive weight may be attached to each edge
//! (default 1). Graphs are immutable once constructed and safe to share
//! across threads.

mod generators;
mod io;

pub use generators::{bucky, complete, cycle, erdos_renyi, path, star, watts_strogatz};
pub use io::{load_edge_list, parse_edge_list, save_edge_list};

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Undirected simple graph with dense node ids `0..node_count()`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    /// Sorted neighbor list per node.
    adj: Vec<Vec<usize>>,
    /// Edge weights keyed by canonical `(min, max)` pairs. Empty for
    /// unweighted graphs; absent edges of a weighted graph default to 1.
    weights: BTreeMap<(usize, usize), f64>,
}

/// BFS tree of one root: nodes grouped by depth plus parent pointers.
///
/// `layers[0]` is the root alone; every node in `layers[k]` has its
/// parent in `layers[k - 1]`. Nodes outside the root's component (or
/// beyond the depth cutoff) appear in no layer and have no parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsLayers {
    pub root: usize,
    pub layers: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
}

impl BfsLayers {
    /// Depth of the deepest non-empty layer.
    pub fn depth(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }
}

/// Hop distances and shortest-path counts from a single source.
///
/// `dist[t]` is `None` for nodes unreachable from the source, in which
/// case `sigma[t]` is 0. `sigma[s] = 1` for the source itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCounts {
    pub dist: Vec<Option<usize>>,
    pub sigma: Vec<u64>,
}

impl Graph {
    /// Builds a graph from unweighted edges. Duplicate edges collapse;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, edges.into_iter().map(|(u, v)| (u, v, None)))
    }

    /// Builds a graph from weighted edges. Weights must be positive;
    /// on duplicate edges the first weight wins.
    pub fn from_weighted_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::build(n, edges.into_iter().map(|(u, v, w)| (u, v, Some(w))))
    }

    fn build<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: Iterator<Item = (usize, usize, Option<f64>)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut weights = BTreeMap::new();
        for (u, v, w) in edges {
            if u >= n {
                return Err(Error::UnknownNode { node: u, node_count: n });
            }
            if v >= n {
                return Err(Error::UnknownNode { node: v, node_count: n });
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at node {u}")));
            }
            let key = (u.min(v), u.max(v));
            if adj[u].contains(&v) {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
            if let Some(w) = w {
                if !(w > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "edge ({u}, {v}) has non-positive weight {w}"
                    )));
                }
                weights.insert(key, w);
            }
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph { adj, weights })
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    fn check_node(&self, m: usize) -> Result<()> {
        if m < self.adj.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode { node: m, node_count: self.adj.len() })
        }
    }

    /// Neighbor set of `m`, sorted ascending.
    pub fn neighbors(&self, m: usize) -> Result<&[usize]> {
        self.check_node(m)?;
        Ok(&self.adj[m])
    }

    /// Number of adjacencies of `m`.
    pub fn degree(&self, m: usize) -> Result<usize> {
        self.check_node(m)?;
        Ok(self.adj[m].len())
    }

    /// Degrees of all nodes as a vector indexed by node id.
    pub fn degree_vector(&self) -> Vec<f64> {
        self.adj.iter().map(|n| n.len() as f64).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Weight of edge `(u, v)`: `None` if the edge is absent, 1 if
    /// present but unvalued.
    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        if !self.has_edge(u, v) {
            return None;
        }
        Some(*self.weights.get(&(u.min(v), u.max(v))).unwrap_or(&1.0))
    }

    pub fn is_weighted(&self) -> bool {
        !self.weights.is_empty()
    }

    /// Edges as canonical `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.nodes() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// BFS tree from `root`, optionally truncated at `max_depth`.
    /// Neighbors are visited in ascending node-id order, so the tree is
    /// canonical for a given labeling.
    pub fn bfs_layers(&self, root: usize, max_depth: Option<usize>) -> Result<BfsLayers> {
        self.check_node(root)?;
        let n = self.adj.len();
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut layers = vec![vec![root]];
        let mut frontier = vec![root];
        while !frontier.is_empty() {
            let d = layers.len();
            if let Some(cap) = max_depth {
                if d > cap {
                    break;
                }
            }
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in &self.adj[u] {
                    if depth[v] == usize::MAX {
                        depth[v] = d;
                        parent[v] = Some(u);
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next.clone());
            frontier = next;
        }
        Ok(BfsLayers { root, layers, parent })
    }

    /// Hop distances and counts of distinct shortest paths from `s`.
    pub fn shortest_path_counts(&self, s: usize) -> Result<PathCounts> {
        self.check_node(s)?;
        let n = self.adj.len();
        let mut dist = vec![None; n];
        let mut sigma = vec![0u64; n];
        dist[s] = Some(0);
        sigma[s] = 1;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                match dist[v] {
                    None => {
                        dist[v] = Some(du + 1);
                        sigma[v] = sigma[u];
                        queue.push_back(v);
                    }
                    Some(dv) if dv == du + 1 => {
                        sigma[v] += sigma[u];
                    }
                    _ => {}
                }
            }
        }
        Ok(PathCounts { dist, sigma })
    }

    /// True iff a BFS from node 0 reaches every node. Empty graphs count
    /// as connected.
    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        let reached = self.component_of(0);
        reached.iter().filter(|&&r| r).count() == self.adj.len()
    }

    /// Membership mask of the connected component containing `seed`.
    pub fn component_of(&self, seed: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        if seed >= self.adj.len() {
            return seen;
        }
        seen[seed] = true;
        let mut queue = VecDeque::from([seed]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Induced subgraph on the nodes where `keep` is true, relabeled
    /// densely. Returns the subgraph and the old-id list indexed by new id.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let old_ids: Vec<usize> = self.nodes().filter(|&u| keep[u]).collect();
        let mut new_id = vec![usize::MAX; self.adj.len()];
        for (new, &old) in old_ids.iter().enumerate() {
            new_id[old] = new;
        }
        let mut adj = vec![Vec::new(); old_ids.len()];
        let mut weights = BTreeMap::new();
        for &u in &old_ids {
            for &v in &self.adj[u] {
                if keep[v] {
                    adj[new_id[u]].push(new_id[v]);
                }
            }
        }
        for (&(u, v), &w) in &self.weights {
            if keep[u] && keep[v] {
                let (a, b) = (new_id[u], new_id[v]);
                weights.insert((a.min(b), a.max(b)), w);
            }
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        (Graph { adj, weights }, old_ids)
    }

    /// Serializes to the edge-list text format (`u v [w]` lines, `u < v`,
    /// sorted). A leading `# nodes N` directive preserves isolated nodes.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = format!("# nodes {}\n", self.adj.len());
        for (u, v) in self.edges() {
            match self.weights.get(&(u, v)) {
                Some(w) => out.push_str(&format!("{u} {v} {w}\n")),
                None => out.push_str(&format!("{u} {v}\n")),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbors_on_path() {
        let g = path(3);
        assert_eq!(g.neighbors(1).unwrap(), &[0, 2]);
        assert_eq!(g.neighbors(0).unwrap(), &[1]);
    }

    #[test]
    fn neighbors_isolated_and_unknown() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(g.neighbors(2).unwrap().is_empty());
        assert!(matches!(g.neighbors(5), Err(Error::UnknownNode { node: 5, .. })));
    }

    #[test]
    fn neighbors_on_complete() {
        let g = complete(3);
        for m in g.nodes() {
            let mut expect: Vec<usize> = g.nodes().filter(|&v| v != m).collect();
            expect.sort_unstable();
            assert_eq!(g.neighbors(m).unwrap(), expect.as_slice());
        }
    }

    #[test]
    fn degree_on_star() {
        let g = star(4);
        assert_eq!(g.degree(0).unwrap(), 3);
        assert_eq!(g.degree(1).unwrap(), 1);
        assert_eq!(g.degree(3).unwrap(), 1);
    }

    #[test]
    fn self_loop_rejected() {
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn bfs_layers_path() {
        let g = path(3);
        let b = g.bfs_layers(0, None).unwrap();
        assert_eq!(b.layers, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(b.parent[2], Some(1));
        assert_eq!(b.parent[0], None);
    }

    #[test]
    fn bfs_layers_triangle() {
        let g = complete(3);
        let b = g.bfs_layers(0, None).unwrap();
        assert_eq!(b.layers, vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn bfs_layers_truncated() {
        let g = path(3);
        let b = g.bfs_layers(0, Some(1)).unwrap();
        assert_eq!(b.layers, vec![vec![0], vec![1]]);
        assert_eq!(b.depth(), 1);
    }

    #[test]
    fn path_counts_on_cycle() {
        // C4: both two-hop routes from 0 reach the opposite node.
        let g = cycle(4);
        let pc = g.shortest_path_counts(0).unwrap();
        assert_eq!(pc.sigma[2], 2);
        assert_eq!(pc.dist[2], Some(2));
    }

    #[test]
    fn path_counts_on_path() {
        let g = path(3);
        let pc = g.shortest_path_counts(0).unwrap();
        assert_eq!(pc.sigma[2], 1);
        assert_eq!(pc.dist[2], Some(2));
    }

    #[test]
    fn path_counts_disconnected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let pc = g.shortest_path_counts(0).unwrap();
        assert_eq!(pc.dist[2], None);
        assert_eq!(pc.sigma[2], 0);
    }

    #[test]
    fn connectivity() {
        assert!(path(3).is_connected());
        assert!(!Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(Graph::from_edges(1, []).unwrap().is_connected());
        assert!(Graph::from_edges(0, []).unwrap().is_connected());
    }

    #[test]
    fn bfs_depth_matches_distance() {
        let g = erdos_renyi(24, 0.15, 7).unwrap();
        for root in g.nodes() {
            let b = g.bfs_layers(root, None).unwrap();
            let pc = g.shortest_path_counts(root).unwrap();
            for (d, layer) in b.layers.iter().enumerate() {
                for &v in layer {
                    assert_eq!(pc.dist[v], Some(d));
                }
            }
        }
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = path(4);
        let keep = vec![true, false, true, true];
        let (sub, ids) = g.induced_subgraph(&keep);
        assert_eq!(ids, vec![0, 2, 3]);
        assert_eq!(sub.node_count(), 3);
        assert_eq!(sub.edges(), vec![(1, 2)]);
    }
}
