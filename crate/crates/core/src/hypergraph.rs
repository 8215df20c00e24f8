//! Hypergraphs, duals, clique hypergraphs and incidence graphs, and the
//! bipartite Helly graphs built from them that fail the (double-)pairing
//! property.
//!
//! Text format: a header `n k`, then `k` lines, each listing the points of
//! one hyperedge.

use std::ops::Range;

use serde::Serialize;
use thiserror::Error;

use crate::classify::helly_triple_violation;
use crate::exec::Exec;
use crate::graph::io::{content_lines, parse_numbers};
use crate::graph::{Graph, GraphError, SimpleGraph, Vertex, VertexSet};
use crate::lp::rat;
use crate::pairing::fractional::fractional_perfect_b_matching;
use crate::pairing::matching::perfect_b_matching;
use crate::profile::Profile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("hyperedge {0} is empty")]
    EmptyEdge(usize),
    #[error("point {point} out of range for a ground set of size {n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("point {0} lies in no hyperedge")]
    IsolatedPoint(usize),
    #[error("construction self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    ground: usize,
    /// Each hyperedge sorted and deduplicated.
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(ground: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let mut out = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge(i));
            }
            if let Some(&p) = e.iter().find(|&&p| p >= ground) {
                return Err(HypergraphError::PointOutOfRange { point: p, n: ground });
            }
            out.push(e);
        }
        Ok(Hypergraph { ground, edges: out })
    }

    pub fn parse(text: &str) -> Result<Self, HypergraphError> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or(GraphError::Parse { line: 1, msg: "missing `n k` header".into() })?;
        let [n, k] = parse_numbers(hl, header)?[..] else {
            return Err(GraphError::Parse { line: hl, msg: "header must be `n k`".into() }.into());
        };
        let mut edges = Vec::new();
        for (ln, l) in lines {
            edges.push(parse_numbers(ln, l)?);
        }
        if edges.len() != k {
            return Err(GraphError::Parse { line: hl, msg: format!("header announces {k} hyperedges, found {}", edges.len()) }.into());
        }
        Self::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.ground, self.edges.len());
        for e in &self.edges {
            let row: Vec<String> = e.iter().map(ToString::to_string).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_duplicate_edges(&self) -> bool {
        let mut e = self.edges.clone();
        e.sort();
        e.windows(2).any(|w| w[0] == w[1])
    }

    fn edge_sets(&self) -> Vec<VertexSet> {
        self.edges.iter().map(|e| VertexSet::from_vertices(self.ground, e.iter().copied())).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HellyReport {
    pub helly: bool,
    /// Indices of a pairwise intersecting subfamily with empty intersection.
    pub witness: Option<Vec<usize>>,
    /// Points whose pairs select the witness.
    pub triple: Option<[usize; 3]>,
}

/// Berge's triple criterion.
pub fn is_helly_hypergraph(h: &Hypergraph, exec: Exec) -> HellyReport {
    match helly_triple_violation(h.ground, &h.edge_sets(), exec) {
        None => HellyReport { helly: true, witness: None, triple: None },
        Some((t, family)) => HellyReport { helly: false, witness: Some(family), triple: Some(t) },
    }
}

/// Every pairwise intersecting subfamily, tested directly. Exponential in
/// the number of hyperedges; returns the first failing subfamily in
/// increasing bitmask order.
pub fn helly_brute_force(h: &Hypergraph) -> Option<Vec<usize>> {
    let sets = h.edge_sets();
    let k = sets.len();
    assert!(k <= 24, "brute force is limited to 24 hyperedges");
    (1u32..1 << k).find_map(|mask| {
        let members: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let pairwise = members.iter().enumerate().all(|(i, &a)| members[i + 1..].iter().all(|&b| sets[a].intersects(&sets[b])));
        if !pairwise {
            return None;
        }
        let mut common = VertexSet::full(h.ground);
        for &i in &members {
            common.intersect_with(&sets[i]);
        }
        common.is_empty().then_some(members)
    })
}

/// `H*`: ground set = hyperedges of `H`; one hyperedge `S_x` per point `x`.
pub fn dual_hypergraph(h: &Hypergraph) -> Result<Hypergraph, HypergraphError> {
    let mut s = vec![Vec::new(); h.ground];
    for (j, e) in h.edges.iter().enumerate() {
        for &x in e {
            s[x].push(j);
        }
    }
    if let Some(x) = s.iter().position(Vec::is_empty) {
        return Err(HypergraphError::IsolatedPoint(x));
    }
    Hypergraph::new(h.edges.len(), s)
}

/// Maximal cliques of `g` as hyperedges.
pub fn clique_hypergraph(g: &SimpleGraph) -> Hypergraph {
    let mut cliques = g.maximal_cliques();
    for c in &mut cliques {
        c.sort_unstable();
    }
    cliques.sort();
    Hypergraph::new(g.vertex_count(), cliques).expect("cliques are nonempty and in range")
}

/// Vertex numbering of an incidence graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceLayout {
    pub hub: Vertex,
    /// `v`-vertex of point `x` is `points.start + x`.
    pub points: Range<Vertex>,
    /// `h`-vertex of hyperedge `j` is `edges.start + j`.
    pub edges: Range<Vertex>,
}

impl IncidenceLayout {
    pub fn for_hypergraph(h: &Hypergraph) -> Self {
        let p = 1 + h.ground;
        IncidenceLayout { hub: 0, points: 1..p, edges: p..p + h.edge_count() }
    }

    pub fn point(&self, x: usize) -> Vertex {
        self.points.start + x
    }

    pub fn edge(&self, j: usize) -> Vertex {
        self.edges.start + j
    }

    /// `u`, `v<x>` or `h<j>`.
    pub fn label(&self, v: Vertex) -> String {
        if v == self.hub {
            "u".into()
        } else if self.points.contains(&v) {
            format!("v{}", v - self.points.start)
        } else {
            format!("h{}", v - self.edges.start)
        }
    }
}

/// `R(H)`: a hub adjacent to every point, and one vertex per hyperedge
/// adjacent to its points.
pub fn incidence_graph(h: &Hypergraph) -> Result<(Graph, IncidenceLayout), HypergraphError> {
    let lay = IncidenceLayout::for_hypergraph(h);
    let mut e: Vec<(Vertex, Vertex)> = (0..h.ground).map(|x| (lay.hub, lay.point(x))).collect();
    for (j, he) in h.edges.iter().enumerate() {
        e.extend(he.iter().map(|&x| (lay.point(x), lay.edge(j))));
    }
    let n = lay.edges.end;
    Ok((Graph::new(n, &e)?, lay))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterexampleKind {
    /// `C` = two disjoint triangles.
    Pairing,
    /// `C` = `K4` on `a,b,c,d` plus `x, y` adjacent only to `a`.
    DoublePairing,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub kind: CounterexampleKind,
    /// Half the number of vertices of `C`.
    pub m: usize,
    #[serde(skip)]
    pub c: SimpleGraph,
    /// `(C(B))*` with `B` the complement of `C`.
    pub hypergraph: Hypergraph,
    pub layout: IncidenceLayout,
    #[serde(skip)]
    pub graph: Graph,
    /// One copy of each `h`-vertex.
    pub profile: Profile,
}

pub fn base_graph(kind: CounterexampleKind) -> SimpleGraph {
    let e: &[(Vertex, Vertex)] = match kind {
        CounterexampleKind::Pairing => &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
        CounterexampleKind::DoublePairing => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5)],
    };
    SimpleGraph::new(6, e).expect("fixed edge list")
}

/// `R = R((C(B))*)` with `B` the complement of `C`, and
/// `π = (v_{H(b)} : b ∈ V(B))`.
pub fn build_counterexample(kind: CounterexampleKind) -> Result<Counterexample, HypergraphError> {
    let c = base_graph(kind);
    let n = c.vertex_count();
    let m = n / 2;
    let check = |ok: bool, what: &str| if ok { Ok(()) } else { Err(HypergraphError::SelfCheck(what.into())) };
    check(n % 2 == 0, "C must have an even number of vertices")?;
    check(c.stability_number() <= m, "C has a stable set larger than m")?;
    check(c.min_degree() >= 1, "C has an isolated vertex")?;
    match kind {
        CounterexampleKind::Pairing => {
            check(perfect_b_matching(&c, None, &vec![1; n]).is_none(), "C has a perfect matching")?;
        }
        CounterexampleKind::DoublePairing => {
            let out = fractional_perfect_b_matching(&c, None, &vec![rat(1); n], 1 << 16)?;
            check(!out.is_feasible(), "C has a fractional perfect matching")?;
        }
    }
    let b = c.complement();
    let hypergraph = dual_hypergraph(&clique_hypergraph(&b))?;
    let (graph, layout) = incidence_graph(&hypergraph)?;
    let profile = Profile::from_vertices(graph.vertex_count(), layout.edges.clone());
    Ok(Counterexample { kind, m, c, hypergraph, layout, graph, profile })
}
