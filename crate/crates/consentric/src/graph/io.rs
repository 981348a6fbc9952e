//! Plain-text edge lists.
//!
//! One edge per line as `u v` or `u v w`, whitespace separated. Lines
//! that are blank or start with `#` are skipped, except that a leading
//! `# nodes N` directive fixes the node count so isolated nodes survive
//! a round trip. Without the directive, ids `0..max` are kept as-is when
//! densely used, otherwise ids are compacted in order of first mention.

use std::fs;
use std::path::Path;

use log::warn;

use super::Graph;
use crate::error::{Error, Result};

/// Reads an edge-list file. See the module docs for the format.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&fs::read_to_string(path)?)
}

/// Writes `graph` in the edge-list format with a `# nodes` directive.
pub fn save_edge_list(graph: &Graph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, graph.to_edge_list_string())?;
    Ok(())
}

/// Parses edge-list text. Errors carry 1-based line numbers.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut raw: Vec<(usize, usize, Option<f64>, usize)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            let mut words = rest.split_whitespace();
            if words.next() == Some("nodes") {
                let count = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse {
                        line: lineno,
                        msg: "expected `# nodes N` with a non-negative integer".into(),
                    })?;
                if declared.replace(count).is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "duplicate `# nodes` directive".into(),
                    });
                }
            }
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected `u v` or `u v w`, found {} fields", fields.len()),
            });
        }
        let parse_id = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("`{s}` is not a non-negative integer node id"),
            })
        };
        let u = parse_id(fields[0])?;
        let v = parse_id(fields[1])?;
        let w = match fields.get(2) {
            Some(s) => Some(s.parse::<f64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("`{s}` is not a numeric edge weight"),
            })?),
            None => None,
        };
        raw.push((u, v, w, lineno));
    }

    let (n, map) = match declared {
        Some(n) => {
            for &(u, v, _, lineno) in &raw {
                let bad = if u >= n { Some(u) } else if v >= n { Some(v) } else { None };
                if let Some(id) = bad {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("node id {id} exceeds declared count {n}"),
                    });
                }
            }
            (n, None)
        }
        None => {
            let mut seen: Vec<usize> = Vec::new();
            for &(u, v, _, _) in &raw {
                for id in [u, v] {
                    if !seen.contains(&id) {
                        seen.push(id);
                    }
                }
            }
            let max = seen.iter().copied().max().map_or(0, |m| m + 1);
            if seen.len() == max {
                (max, None)
            } else {
                warn!(
                    "edge list uses {} of ids 0..{}; compacting in first-seen order",
                    seen.len(),
                    max
                );
                (seen.len(), Some(seen))
            }
        }
    };

    let remap = |id: usize| match &map {
        Some(seen) => seen.iter().position(|&x| x == id).unwrap(),
        None => id,
    };
    if raw.iter().any(|&(_, _, w, _)| w.is_some()) {
        Graph::from_weighted_edges(
            n,
            raw.iter().map(|&(u, v, w, _)| (remap(u), remap(v), w.unwrap_or(1.0))),
        )
    } else {
        Graph::from_edges(n, raw.iter().map(|&(u, v, _, _)| (remap(u), remap(v))))
    }
}
