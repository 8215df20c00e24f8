//! Exact perfect `b`-matching by backtracking.
//!
//! A perfect `b`-matching is a multiset of edges covering every vertex `v`
//! exactly `b(v)` times. An optional loop at one vertex covers it twice.
//! The search always settles the vertex with the least slack first and
//! distributes its whole demand over its neighbours before recursing, so
//! every multiset is visited at most once. Failed residual demand vectors
//! are memoized.

use std::collections::HashSet;

use crate::graph::{SimpleGraph, Vertex};

/// Edge multiset as `(a, b, multiplicity)` with `a <= b`, sorted.
pub type EdgeMultiset = Vec<(Vertex, Vertex, u32)>;

struct Search<'a> {
    graph: &'a SimpleGraph,
    loop_at: Option<Vertex>,
    failed: HashSet<Vec<u32>>,
    chosen: Vec<(Vertex, Vertex, u32)>,
}

impl Search<'_> {
    /// Demand that the neighbours of `v` can still absorb.
    fn supply(&self, r: &[u32], v: Vertex) -> u64 {
        self.graph.neighbors(v).iter().map(|&w| r[w] as u64).sum()
    }

    /// `None` when some vertex cannot be satisfied; otherwise the vertex
    /// to branch on (least slack, then smallest index), or `Some(None)`
    /// when nothing is left.
    fn pick(&self, r: &[u32]) -> Option<Option<Vertex>> {
        let mut best: Option<(i64, Vertex)> = None;
        for v in (0..r.len()).filter(|&v| r[v] > 0) {
            let supply = self.supply(r, v) as i64;
            let need = if self.loop_at == Some(v) { (r[v] % 2) as i64 } else { r[v] as i64 };
            let slack = supply - need;
            if slack < 0 {
                return None;
            }
            if best.is_none_or(|(s, _)| slack < s) {
                best = Some((slack, v));
            }
        }
        Some(best.map(|(_, v)| v))
    }

    fn solve(&mut self, r: &mut Vec<u32>) -> bool {
        let v = match self.pick(r) {
            None => return false,
            Some(None) => return true,
            Some(Some(v)) => v,
        };
        if self.failed.contains(r) {
            return false;
        }
        let neighbors: Vec<Vertex> = self.graph.neighbors(v).iter().copied().filter(|&w| r[w] > 0).collect();
        let max_loop = if self.loop_at == Some(v) { r[v] / 2 } else { 0 };
        for l in (0..=max_loop).rev() {
            let rest = r[v] - 2 * l;
            r[v] = 0;
            if l > 0 {
                self.chosen.push((v, v, l));
            }
            if self.distribute(r, &neighbors, 0, rest, v) {
                return true;
            }
            if l > 0 {
                self.chosen.pop();
            }
            r[v] = rest + 2 * l;
        }
        self.failed.insert(r.clone());
        false
    }

    /// Assigns `left` units of `v` to `neighbors[i..]`, then recurses.
    fn distribute(&mut self, r: &mut Vec<u32>, neighbors: &[Vertex], i: usize, left: u32, v: Vertex) -> bool {
        if left == 0 {
            return self.solve(r);
        }
        if i == neighbors.len() {
            return false;
        }
        let capacity: u32 = neighbors[i..].iter().map(|&w| r[w]).sum();
        if capacity < left {
            return false;
        }
        let w = neighbors[i];
        let hi = left.min(r[w]);
        // larger shares first: finds witnesses faster on dense demand
        for k in (0..=hi).rev() {
            r[w] -= k;
            if k > 0 {
                self.chosen.push((v.min(w), v.max(w), k));
            }
            let ok = self.distribute(r, neighbors, i + 1, left - k, v);
            if ok {
                return true;
            }
            if k > 0 {
                self.chosen.pop();
            }
            r[w] += k;
        }
        false
    }
}

/// Perfect `demand`-matching of `graph`, where `loop_at` (if any) carries a
/// loop. Returns the edge multiset or `None`.
pub fn perfect_b_matching(graph: &SimpleGraph, loop_at: Option<Vertex>, demand: &[u32]) -> Option<EdgeMultiset> {
    assert_eq!(demand.len(), graph.vertex_count());
    let total: u64 = demand.iter().map(|&k| k as u64).sum();
    if total % 2 == 1 {
        return None;
    }
    let mut search = Search { graph, loop_at, failed: HashSet::new(), chosen: Vec::new() };
    let mut r = demand.to_vec();
    if !search.solve(&mut r) {
        return None;
    }
    Some(normalize(search.chosen))
}

/// Merges repeated edges and sorts.
pub fn normalize(mut edges: Vec<(Vertex, Vertex, u32)>) -> EdgeMultiset {
    for e in &mut edges {
        if e.0 > e.1 {
            std::mem::swap(&mut e.0, &mut e.1);
        }
    }
    edges.sort_unstable();
    let mut out: EdgeMultiset = Vec::new();
    for (a, b, k) in edges {
        match out.last_mut() {
            Some(last) if last.0 == a && last.1 == b => last.2 += k,
            _ => out.push((a, b, k)),
        }
    }
    out
}

/// How many times each vertex is covered; a loop covers its vertex twice.
pub fn coverage(n: usize, edges: &[(Vertex, Vertex, u32)]) -> Vec<u32> {
    let mut c = vec![0; n];
    for &(a, b, k) in edges {
        c[a] += k;
        c[b] += k;
    }
    c
}
