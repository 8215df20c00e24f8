//! Connected simple graphs with cached all-pairs distances, and the metric
//! primitives built on them: intervals, balls, half-balls, gates and
//! quasi-medians.

mod simple;
mod vertex_set;

pub mod generators;
pub mod io;

use std::collections::VecDeque;

use thiserror::Error;

pub use simple::SimpleGraph;
pub use vertex_set::VertexSet;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(Vertex, Vertex),
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("stable-set enumeration exceeded the cap of {cap} sets")]
    StableSetCap { cap: usize },
    #[error("invalid generator `{0}`: {1}")]
    InvalidGenerator(String, String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Immutable connected simple graph with a precomputed distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    topo: SimpleGraph,
    dist: Vec<u32>,
}

impl Graph {
    /// Validates the edge list and runs a BFS from every vertex.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        Self::from_simple(SimpleGraph::new(n, edges)?)
    }

    pub fn from_simple(topo: SimpleGraph) -> Result<Self, GraphError> {
        let n = topo.vertex_count();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut dist = vec![u32::MAX; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let dv = row[v];
                for &w in topo.neighbors(v) {
                    if row[w] == u32::MAX {
                        row[w] = dv + 1;
                        queue.push_back(w);
                    }
                }
            }
            if let Some(t) = row.iter().position(|&d| d == u32::MAX) {
                return Err(GraphError::Disconnected(s, t));
            }
        }
        Ok(Graph { topo, dist })
    }

    pub fn vertex_count(&self) -> usize {
        self.topo.vertex_count()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn topology(&self) -> &SimpleGraph {
        &self.topo
    }

    #[inline]
    pub fn d(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.vertex_count() + v]
    }

    /// Distance row of `u`.
    pub fn distances_from(&self, u: Vertex) -> &[u32] {
        let n = self.vertex_count();
        &self.dist[u * n..(u + 1) * n]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.topo.neighbors(v)
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.d(u, v) == 1
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.topo.edges()
    }

    pub fn edge_count(&self) -> usize {
        self.topo.edge_count()
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// `w` lies on a shortest `(u, v)`-path.
    #[inline]
    pub fn between(&self, u: Vertex, w: Vertex, v: Vertex) -> bool {
        self.d(u, w) + self.d(w, v) == self.d(u, v)
    }

    pub fn interval(&self, u: Vertex, v: Vertex) -> VertexSet {
        VertexSet::from_vertices(self.vertex_count(), self.vertices().filter(|&w| self.between(u, w, v)))
    }

    pub fn interval_interior(&self, u: Vertex, v: Vertex) -> VertexSet {
        let mut s = self.interval(u, v);
        s.remove(u);
        s.remove(v);
        s
    }

    pub fn ball(&self, v: Vertex, radius: u32) -> VertexSet {
        let row = self.distances_from(v);
        VertexSet::from_vertices(self.vertex_count(), self.vertices().filter(|&x| row[x] <= radius))
    }

    /// Two-colouring with vertex 0 coloured `0`, or an odd closed walk
    /// (returned as a cycle through a non-bipartite edge) when none exists.
    pub fn bipartition(&self) -> Result<Vec<u8>, Vec<Vertex>> {
        let row = self.distances_from(0);
        for (u, v) in self.edges() {
            if row[u] == row[v] {
                return Err(self.odd_cycle_through(u, v));
            }
        }
        Ok(row.iter().map(|&d| (d % 2) as u8).collect())
    }

    fn odd_cycle_through(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        // u and v are equidistant from 0: walk both back to their meeting point.
        let step = |x: Vertex| {
            *self
                .neighbors(x)
                .iter()
                .find(|&&y| self.d(0, y) + 1 == self.d(0, x))
                .expect("non-root vertex has a parent")
        };
        let (mut a, mut b) = (vec![u], vec![v]);
        while a.last() != b.last() {
            let (x, y) = (*a.last().unwrap(), *b.last().unwrap());
            a.push(step(x));
            b.push(step(y));
        }
        b.pop();
        b.reverse();
        a.extend(b);
        a
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_ok()
    }

    /// `B_r(v)` intersected with one colour class (`0` is the class of vertex 0).
    pub fn half_ball(&self, v: Vertex, radius: u32, class: u8) -> Result<VertexSet, GraphError> {
        let colors = self.bipartition().map_err(|_| GraphError::NotBipartite)?;
        let mut s = self.ball(v, radius);
        for x in self.vertices().filter(|&x| colors[x] != class) {
            s.remove(x);
        }
        Ok(s)
    }

    pub fn distance_to_set(&self, x: Vertex, set: &VertexSet) -> Option<u32> {
        set.iter().map(|y| self.d(x, y)).min()
    }

    /// The vertex of `set` lying in `I(x, y)` for every `y` in `set`, if any.
    /// For `x` inside the set the gate is `x` itself.
    pub fn gate(&self, x: Vertex, set: &VertexSet) -> Result<Option<Vertex>, GraphError> {
        let dmin = self.distance_to_set(x, set).ok_or(GraphError::EmptySet)?;
        // a gate is necessarily a closest vertex
        let found = set
            .iter()
            .filter(|&g| self.d(x, g) == dmin)
            .find(|&g| set.iter().all(|y| self.between(x, g, y)));
        Ok(found)
    }

    pub fn is_gated(&self, set: &VertexSet) -> Result<bool, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptySet);
        }
        for x in self.vertices().filter(|&x| !set.contains(x)) {
            if self.gate(x, set)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `I(vi, vj) ∩ I(vi, vk) = {vi}` for every choice of `i`.
    pub fn is_metric_triangle(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        let corner_ok = |p: Vertex, q: Vertex, r: Vertex| {
            self.vertices()
                .all(|w| w == p || !(self.between(p, w, q) && self.between(p, w, r)))
        };
        corner_ok(a, b, c) && corner_ok(b, a, c) && corner_ok(c, a, b)
    }

    /// Quasi-median `(v1, v2, v3)` of `(x, y, z)`: the lexicographically
    /// smallest metric triangle satisfying
    /// `d(x,y) = d(x,v1) + d(v1,v2) + d(v2,y)` and its two rotations.
    pub fn quasi_median(&self, x: Vertex, y: Vertex, z: Vertex) -> (Vertex, Vertex, Vertex) {
        let cand = |p: Vertex, q: Vertex, r: Vertex| -> Vec<Vertex> {
            self.vertices()
                .filter(|&w| self.between(p, w, q) && self.between(p, w, r))
                .collect()
        };
        let (c1, c2, c3) = (cand(x, y, z), cand(y, x, z), cand(z, x, y));
        for &v1 in &c1 {
            for &v2 in &c2 {
                if self.d(x, y) != self.d(x, v1) + self.d(v1, v2) + self.d(v2, y) {
                    continue;
                }
                for &v3 in &c3 {
                    if self.d(y, z) == self.d(y, v2) + self.d(v2, v3) + self.d(v3, z)
                        && self.d(z, x) == self.d(z, v3) + self.d(v3, v1) + self.d(v1, x)
                        && self.is_metric_triangle(v1, v2, v3)
                    {
                        return (v1, v2, v3);
                    }
                }
            }
        }
        unreachable!("every triple of a connected graph has a quasi-median")
    }

    /// Whether `set` induces a connected subgraph of the `p`-th power.
    pub fn is_connected_in_power(&self, set: &VertexSet, p: u32) -> bool {
        let members = set.to_vec();
        let Some(&start) = members.first() else {
            return true;
        };
        let mut seen = VertexSet::singleton(self.vertex_count(), start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &members {
                if !seen.contains(w) && self.d(v, w) <= p {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == members.len()
    }

    /// Subgraph induced by `set`, with the local-to-global vertex map.
    /// Fails if the induced subgraph is disconnected.
    pub fn induced(&self, set: &VertexSet) -> Result<(Graph, Vec<Vertex>), GraphError> {
        let map = set.to_vec();
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| set.contains(a) && set.contains(b))
            .map(|(a, b)| (local[a], local[b]))
            .collect();
        Ok((Graph::new(map.len(), &edges)?, map))
    }
}
