//! Named graph families with fixed vertex numbering.
//!
//! | family | numbering |
//! |---|---|
//! | `cycle:k` | `v_i ~ v_{i+1 mod k}` |
//! | `path:k` | `v_i ~ v_{i+1}` |
//! | `complete:k` | `0..k` |
//! | `kbip:m,n` | left part `0..m`, right part `m..m+n` |
//! | `hypercube:d` | bit strings, adjacent when they differ in one bit |
//! | `bn:n` | `a_i = i`, `b_j = n + j`, `a_i ~ b_j` iff `i != j` |
//! | `bhat:n` | `bn:n` plus `a = 2n` (adjacent to every `b_j`) and `b = 2n + 1` (adjacent to every `a_i` and to `a`) |
//! | `grid:RxC` | row-major, `r * C + c` |
//! | `tree:p1,p2,...` | vertex 0 is the root, vertex `i` has parent `p_i` |

use super::{Graph, GraphError, Vertex};

fn invalid(spec: &str, msg: impl Into<String>) -> GraphError {
    GraphError::InvalidGenerator(spec.to_string(), msg.into())
}

pub fn cycle(k: usize) -> Result<Graph, GraphError> {
    if k < 3 {
        return Err(invalid(&format!("cycle:{k}"), "a cycle needs at least 3 vertices"));
    }
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::new(k, &edges)
}

pub fn path(k: usize) -> Result<Graph, GraphError> {
    if k < 1 {
        return Err(invalid("path:0", "a path needs at least 1 vertex"));
    }
    let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    Graph::new(k, &edges)
}

pub fn complete(k: usize) -> Result<Graph, GraphError> {
    if k < 1 {
        return Err(invalid("complete:0", "need at least 1 vertex"));
    }
    let edges: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    Graph::new(k, &edges)
}

pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
    if m < 1 || n < 1 {
        return Err(invalid(&format!("kbip:{m},{n}"), "both parts must be nonempty"));
    }
    let edges: Vec<_> = (0..m).flat_map(|a| (0..n).map(move |b| (a, m + b))).collect();
    Graph::new(m + n, &edges)
}

pub fn hypercube(d: u32) -> Result<Graph, GraphError> {
    if !(1..=16).contains(&d) {
        return Err(invalid(&format!("hypercube:{d}"), "dimension must be in 1..=16"));
    }
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))).filter(|&(v, w)| v < w))
        .collect();
    Graph::new(n, &edges)
}

fn bn_edges(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, n + j)))
        .collect()
}

/// `K_{n,n}` minus a perfect matching.
pub fn bn(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid(&format!("bn:{n}"), "n must be at least 3"));
    }
    Graph::new(2 * n, &bn_edges(n))
}

pub fn bhat(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid(&format!("bhat:{n}"), "n must be at least 3"));
    }
    let (a, b) = (2 * n, 2 * n + 1);
    let mut edges = bn_edges(n);
    edges.extend((0..n).map(|j| (a, n + j)));
    edges.extend((0..n).map(|i| (i, b)));
    edges.push((a, b));
    Graph::new(2 * n + 2, &edges)
}

pub fn grid(rows: usize, cols: usize) -> Result<Graph, GraphError> {
    if rows < 1 || cols < 1 {
        return Err(invalid(&format!("grid:{rows}x{cols}"), "dimensions must be positive"));
    }
    let at = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((at(r, c), at(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, &edges)
}

/// Tree from a parent list; exactly one entry (the root) is `None`.
pub fn tree_from_parents(parents: &[Option<Vertex>]) -> Result<Graph, GraphError> {
    let n = parents.len();
    if parents.iter().filter(|p| p.is_none()).count() != 1 {
        return Err(invalid("tree", "exactly one root expected"));
    }
    let edges: Vec<_> = parents
        .iter()
        .enumerate()
        .filter_map(|(v, p)| p.map(|p| (p, v)))
        .collect();
    // n - 1 edges plus connectivity (checked by Graph::new) forces a tree
    Graph::new(n, &edges)
}

fn parse_usize(spec: &str, s: &str) -> Result<usize, GraphError> {
    s.trim()
        .parse()
        .map_err(|_| invalid(spec, format!("`{s}` is not a nonnegative integer")))
}

/// Parses a generator spec string such as `cycle:6`, `kbip:2,3`, `grid:3x4`
/// or `tree:0,0,1` (parents of vertices `1..`).
pub fn from_spec(spec: &str) -> Result<Graph, GraphError> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| invalid(spec, "expected `kind:parameters`"))?;
    let num = |s: &str| parse_usize(spec, s);
    match kind {
        "cycle" => cycle(num(arg)?),
        "path" => path(num(arg)?),
        "complete" => complete(num(arg)?),
        "kbip" => {
            let (m, n) = arg.split_once(',').ok_or_else(|| invalid(spec, "expected `kbip:m,n`"))?;
            complete_bipartite(num(m)?, num(n)?)
        }
        "hypercube" => {
            let d = num(arg)?;
            hypercube(u32::try_from(d).map_err(|_| invalid(spec, "dimension too large"))?)
        }
        "bn" => bn(num(arg)?),
        "bhat" => bhat(num(arg)?),
        "grid" => {
            let (r, c) = arg.split_once('x').ok_or_else(|| invalid(spec, "expected `grid:RxC`"))?;
            grid(num(r)?, num(c)?)
        }
        "tree" => {
            let mut parents = vec![None];
            if !arg.trim().is_empty() {
                for p in arg.split(',') {
                    parents.push(Some(num(p)?));
                }
            }
            tree_from_parents(&parents)
        }
        _ => Err(invalid(spec, format!("unknown family `{kind}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(bn(3).unwrap().edge_count(), 6);
        let bh = bhat(3).unwrap();
        assert_eq!(bh.vertex_count(), 8);
        assert_eq!(bh.neighbors(6), &[3, 4, 5, 7]);
        assert_eq!(hypercube(1).unwrap().edges(), vec![(0, 1)]);
        assert_eq!(grid(2, 3).unwrap().edge_count(), 7);
    }

    #[test]
    fn spec_strings() {
        assert_eq!(from_spec("kbip:2,3").unwrap(), complete_bipartite(2, 3).unwrap());
        assert_eq!(from_spec("tree:0,0,1").unwrap().edges(), vec![(0, 1), (0, 2), (1, 3)]);
        assert_eq!(from_spec("tree:").unwrap().vertex_count(), 1);
        assert!(from_spec("bn:2").is_err());
        assert!(from_spec("wheel:5").is_err());
        assert!(from_spec("cycle").is_err());
        assert!(from_spec("tree:0,5").is_err());
    }
}
