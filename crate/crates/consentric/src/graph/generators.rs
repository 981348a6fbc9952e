//! Deterministic graph constructors: canonical families, random models
//! and the 60-node fullerene.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use super::Graph;
use crate::error::{Error, Result};

/// All random generators draw from stream 1 of a seeded ChaCha8 cipher;
/// the stream index is part of the format, so a seed names the same
/// graph forever.
fn seeded_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

/// Path graph P_n: nodes `0..n` chained in index order.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Cycle graph C_n (`n >= 3`): the path plus the closing edge.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)).chain([(n - 1, 0)])).unwrap()
}

/// Complete graph K_n.
pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Star S_n: hub 0 joined to leaves `1..n`.
pub fn star(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (0, v))).unwrap()
}

/// Erdos-Renyi G(n, p): every unordered pair becomes an edge
/// independently with probability `p`. Identical seeds give identical
/// graphs on every platform.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Watts-Strogatz small world: ring lattice with `k / 2` neighbors per
/// side, then each clockwise lattice edge is rewired to a uniform random
/// endpoint with probability `beta`. `k` must be even and below `n`.
pub fn watts_strogatz(n: usize, k: usize, beta: f64, seed: u64) -> Result<Graph> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "ring degree must be even and positive, got {k}"
        )));
    }
    if k >= n {
        return Err(Error::InvalidParameter(format!(
            "ring degree {k} must be smaller than node count {n}"
        )));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParameter(format!(
            "rewiring probability must lie in [0, 1], got {beta}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for off in 1..=k / 2 {
            let v = (u + off) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    for off in 1..=k / 2 {
        for u in 0..n {
            let v = (u + off) % n;
            if !rng.gen_bool(beta) {
                continue;
            }
            if adj[u].len() == n - 1 {
                continue;
            }
            let w = loop {
                let cand = rng.gen_range(0..n);
                if cand != u && !adj[u].contains(&cand) {
                    break cand;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::from_edges(n, edges.collect::<Vec<_>>())
}

/// Truncated icosahedron (the fullerene C60): 60 nodes, 90 edges,
/// 3-regular. Built by cutting each corner of a regular icosahedron;
/// node `5 * v + i` is the cut point on the i-th edge around icosahedral
/// corner `v`, with edges ordered by angle so consecutive points share a
/// pentagon side.
pub fn bucky() -> Graph {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    // Twelve icosahedron corners: cyclic coordinate shifts of (0, ±1, ±phi).
    let mut corners = Vec::with_capacity(12);
    for &s1 in &[1.0, -1.0] {
        for &s2 in &[1.0, -1.0] {
            corners.push([0.0, s1, s2 * phi]);
            corners.push([s1, s2 * phi, 0.0]);
            corners.push([s2 * phi, 0.0, s1]);
        }
    }

    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let sub = |a: &[f64; 3], b: &[f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let cross = |a: &[f64; 3], b: &[f64; 3]| {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };

    // Icosahedron edges have squared length 4 in these coordinates.
    let adjacent = |u: usize, v: usize| {
        let d = sub(&corners[u], &corners[v]);
        (dot(&d, &d) - 4.0).abs() < 1e-9
    };

    // Around each corner, sort its five neighbors by angle in the
    // tangent plane so that successive ones bound a common triangle.
    let mut ring = Vec::with_capacity(12);
    for v in 0..12 {
        let nbrs: Vec<usize> = (0..12).filter(|&u| u != v && adjacent(u, v)).collect();
        debug_assert_eq!(nbrs.len(), 5);
        let axis = corners[v];
        let norm = dot(&axis, &axis).sqrt();
        let axis = [axis[0] / norm, axis[1] / norm, axis[2] / norm];
        let seed = sub(&corners[nbrs[0]], &corners[v]);
        let t1 = {
            let along = dot(&seed, &axis);
            let t = [
                seed[0] - along * axis[0],
                seed[1] - along * axis[1],
                seed[2] - along * axis[2],
            ];
            let n = dot(&t, &t).sqrt();
            [t[0] / n, t[1] / n, t[2] / n]
        };
        let t2 = cross(&axis, &t1);
        let mut ordered: Vec<(f64, usize)> = nbrs
            .iter()
            .map(|&u| {
                let d = sub(&corners[u], &corners[v]);
                (dot(&d, &t2).atan2(dot(&d, &t1)), u)
            })
            .collect();
        ordered.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        ring.push(ordered.into_iter().map(|(_, u)| u).collect::<Vec<_>>());
    }

    let slot = |v: usize, u: usize| 5 * v + ring[v].iter().position(|&x| x == u).unwrap();
    let mut edges = Vec::with_capacity(90);
    for (v, nbrs) in ring.iter().enumerate() {
        for (i, &u) in nbrs.iter().enumerate() {
            // Pentagon side between consecutive cut points of corner v.
            edges.push((5 * v + i, 5 * v + (i + 1) % 5));
            // Shortened icosahedron edge, added once per direction pair.
            if v < u {
                edges.push((slot(v, u), slot(u, v)));
            }
        }
    }
    Graph::from_edges(60, edges).unwrap()
}
