//! Benzenoid systems built from hexagonal cells, their three edge classes,
//! and the isometric embedding into a product of three trees.
//!
//! Cells use axial coordinates `(q, r)`. Graph vertices are points of the
//! triangular lattice in the basis `e1 = (1, 0)`, `e2 = (1/2, √3/2)`; the
//! cell `(q, r)` is centred at `(q − r, q + 2r)` and its corners sit at the
//! six unit offsets below, listed counter-clockwise. An edge with direction
//! `±(1,0)`, `±(0,1)` or `±(−1,1)` has class 1, 2 or 3.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::median::{median_set, total_distances};
use crate::profile::{BudgetError, ProfileBudget};
use crate::tally::CountCheck;

pub type Cell = (i32, i32);
type Point = (i32, i32);

const CORNERS: [Point; 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
const CELL_STEPS: [Cell; 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenzenoidError {
    #[error("no cells")]
    Empty,
    #[error("cell ({0}, {1}) listed twice")]
    DuplicateCell(i32, i32),
    #[error("cell ({0}, {1}) is not connected to cell ({2}, {3})")]
    Disconnected(i32, i32, i32, i32),
    #[error("{holes} hole(s); cell ({q}, {r}) is enclosed but missing")]
    Hole { holes: i64, q: i32, r: i32 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("embedding self-check failed: {0}")]
    Embedding(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Budget(#[from] BudgetError),
}

fn center(c: Cell) -> Point {
    (c.0 - c.1, c.0 + 2 * c.1)
}

fn class_of_step(dx: i32, dy: i32) -> u8 {
    match (dx.abs(), dy.abs(), dx + dy) {
        (1, 0, _) => 1,
        (0, 1, _) => 2,
        (1, 1, 0) => 3,
        _ => unreachable!("not a lattice edge"),
    }
}

#[derive(Debug, Clone)]
pub struct Benzenoid {
    cells: Vec<Cell>,
    points: Vec<Point>,
    graph: Graph,
    /// Class of each edge of `graph.edges()`, same order.
    classes: Vec<u8>,
    /// Vertices of each cell, counter-clockwise from the `(1, 0)` corner.
    hexagons: Vec<[Vertex; 6]>,
}

pub fn parse_cells(text: &str) -> Result<Vec<Cell>, BenzenoidError> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let nums: Vec<i32> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| BenzenoidError::Parse { line: i + 1, msg: format!("`{t}` is not an integer") }))
            .collect::<Result<_, _>>()?;
        let [q, r] = nums[..] else {
            return Err(BenzenoidError::Parse { line: i + 1, msg: "expected `q r`".into() });
        };
        out.push((q, r));
    }
    Ok(out)
}

pub fn write_cells(cells: &[Cell]) -> String {
    cells.iter().map(|(q, r)| format!("{q} {r}\n")).collect()
}

/// Validates the cell set and builds the plane graph.
pub fn build_benzenoid(cells: &[Cell]) -> Result<Benzenoid, BenzenoidError> {
    let first = *cells.first().ok_or(BenzenoidError::Empty)?;
    let mut set = HashSet::new();
    for &c in cells {
        if !set.insert(c) {
            return Err(BenzenoidError::DuplicateCell(c.0, c.1));
        }
    }
    let mut seen = HashSet::from([first]);
    let mut queue = VecDeque::from([first]);
    while let Some((q, r)) = queue.pop_front() {
        for (dq, dr) in CELL_STEPS {
            let n = (q + dq, r + dr);
            if set.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    if let Some(&c) = cells.iter().find(|c| !seen.contains(c)) {
        return Err(BenzenoidError::Disconnected(c.0, c.1, first.0, first.1));
    }

    let corner_points = |c: Cell| CORNERS.map(|(dx, dy)| (center(c).0 + dx, center(c).1 + dy));
    let points: Vec<Point> = cells.iter().flat_map(|&c| corner_points(c)).collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<Point, Vertex> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let hexagons: Vec<[Vertex; 6]> = cells.iter().map(|&c| corner_points(c).map(|p| index[&p])).collect();
    let mut edges = BTreeSet::new();
    for h in &hexagons {
        for k in 0..6 {
            let (a, b) = (h[k], h[(k + 1) % 6]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let (v, e, f) = (points.len() as i64, edges.len() as i64, cells.len() as i64 + 1);
    let holes = 2 - (v - e + f);
    if holes != 0 {
        let (q, r) = enclosed_cell(&set).expect("Euler count reports a hole");
        return Err(BenzenoidError::Hole { holes, q, r });
    }
    let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
    let graph = Graph::new(points.len(), &edges)?;
    let classes = graph
        .edges()
        .iter()
        .map(|&(a, b)| class_of_step(points[b].0 - points[a].0, points[b].1 - points[a].1))
        .collect();
    Ok(Benzenoid { cells: cells.to_vec(), points, graph, classes, hexagons })
}

/// First missing cell (in sorted order) not reachable from outside the
/// bounding box through missing cells.
fn enclosed_cell(set: &HashSet<Cell>) -> Option<Cell> {
    let qs = set.iter().map(|c| c.0);
    let rs = set.iter().map(|c| c.1);
    let (q0, q1) = (qs.clone().min()? - 1, qs.max()? + 1);
    let (r0, r1) = (rs.clone().min()? - 1, rs.max()? + 1);
    let inside = |c: Cell| (q0..=q1).contains(&c.0) && (r0..=r1).contains(&c.1);
    let mut outside = HashSet::from([(q0, r0)]);
    let mut queue = VecDeque::from([(q0, r0)]);
    while let Some((q, r)) = queue.pop_front() {
        for (dq, dr) in CELL_STEPS {
            let n = (q + dq, r + dr);
            if inside(n) && !set.contains(&n) && outside.insert(n) {
                queue.push_back(n);
            }
        }
    }
    let mut missing: Vec<Cell> = (q0..=q1)
        .flat_map(|q| (r0..=r1).map(move |r| (q, r)))
        .filter(|c| !set.contains(c) && !outside.contains(c))
        .collect();
    missing.sort();
    missing.first().copied()
}

impl Benzenoid {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Lattice coordinates of each vertex.
    pub fn points(&self) -> &[(i32, i32)] {
        &self.points
    }

    /// `(u, v, class)` for every edge, `u < v`, sorted.
    pub fn classified_edges(&self) -> Vec<(Vertex, Vertex, u8)> {
        self.graph.edges().into_iter().zip(&self.classes).map(|((a, b), &c)| (a, b, c)).collect()
    }

    pub fn class_of(&self, a: Vertex, b: Vertex) -> Option<u8> {
        self.graph.is_adjacent(a, b).then(|| {
            class_of_step(self.points[b].0 - self.points[a].0, self.points[b].1 - self.points[a].1)
        })
    }

    /// Inner faces as cyclic vertex sequences.
    pub fn hexagons(&self) -> &[[Vertex; 6]] {
        &self.hexagons
    }

    /// Paths `a–b–c–d` of length 3 using all three classes that do not
    /// lie on one hexagon; each path listed once, with `a < d`.
    pub fn incomplete_hexagons(&self) -> Vec<[Vertex; 4]> {
        let g = &self.graph;
        let cell_sets: Vec<VertexSet> =
            self.hexagons.iter().map(|h| VertexSet::from_vertices(g.vertex_count(), h.iter().copied())).collect();
        let mut out = Vec::new();
        for a in g.vertices() {
            for &b in g.neighbors(a) {
                for &c in g.neighbors(b).iter().filter(|&&c| c != a) {
                    for &d in g.neighbors(c).iter().filter(|&&d| d != b && d != a && d > a) {
                        let cls = [self.class_of(a, b), self.class_of(b, c), self.class_of(c, d)];
                        if cls[0] == cls[2] {
                            continue;
                        }
                        let on_face = cell_sets.iter().any(|s| [a, b, c, d].iter().all(|&v| s.contains(v)));
                        if !on_face {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeEmbedding {
    /// `T₁, T₂, T₃` as edge lists over component ids.
    pub trees: [Vec<(usize, usize)>; 3],
    pub tree_sizes: [usize; 3],
    /// `φ(v)`: the component of `v` in each `G − Eᵢ`.
    pub phi: Vec<[usize; 3]>,
    pub pairs_checked: u64,
}

/// Components of `G − Eᵢ` as tree vertices, joined by the edges of `Eᵢ`.
/// Verifies that each `Tᵢ` is a tree and that `φ` is an isometry.
pub fn tree_embedding(b: &Benzenoid) -> Result<TreeEmbedding, BenzenoidError> {
    let g = b.graph();
    let n = g.vertex_count();
    let edges = b.classified_edges();
    let mut trees: [Vec<(usize, usize)>; 3] = Default::default();
    let mut sizes = [0; 3];
    let mut phi = vec![[0usize; 3]; n];
    let mut tree_graphs = Vec::new();
    for i in 0..3 {
        let class = i as u8 + 1;
        let kept: Vec<(Vertex, Vertex)> = edges.iter().filter(|e| e.2 != class).map(|e| (e.0, e.1)).collect();
        let comps = crate::graph::SimpleGraph::new(n, &kept)?.components();
        for (id, comp) in comps.iter().enumerate() {
            for &v in comp {
                phi[v][i] = id;
            }
        }
        let t: BTreeSet<(usize, usize)> = edges
            .iter()
            .filter(|e| e.2 == class)
            .map(|e| {
                let (x, y) = (phi[e.0][i], phi[e.1][i]);
                (x.min(y), x.max(y))
            })
            .collect();
        let t: Vec<(usize, usize)> = t.into_iter().collect();
        if t.iter().any(|e| e.0 == e.1) {
            return Err(BenzenoidError::Embedding(format!("class {class} edge inside a component")));
        }
        if t.len() + 1 != comps.len() {
            return Err(BenzenoidError::Embedding(format!("T{class} has {} nodes and {} edges", comps.len(), t.len())));
        }
        let tg = Graph::new(comps.len(), &t).map_err(|e| BenzenoidError::Embedding(format!("T{class}: {e}")))?;
        sizes[i] = comps.len();
        trees[i] = t;
        tree_graphs.push(tg);
    }
    let mut distinct = HashSet::new();
    if let Some(v) = (0..n).find(|&v| !distinct.insert(phi[v])) {
        return Err(BenzenoidError::Embedding(format!("phi is not injective at vertex {v}")));
    }
    let mut pairs = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            pairs += 1;
            let sum: u32 = (0..3).map(|i| tree_graphs[i].d(phi[u][i], phi[v][i])).sum();
            if sum != g.d(u, v) {
                return Err(BenzenoidError::Embedding(format!("d({u},{v}) = {} but tree distance sum is {sum}", g.d(u, v))));
            }
        }
    }
    Ok(TreeEmbedding { trees, tree_sizes: sizes, phi, pairs_checked: pairs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenzenoidReport {
    pub hexagons: usize,
    pub incomplete_hexagons: usize,
    /// Every hexagon and incomplete hexagon is gated; witness is its vertex list.
    pub gated: CountCheck<Vec<Vertex>>,
    /// `C ⊆ I(x, x̄)` with `x̄` opposite the gate of `x` in `C`; witness `(x, hexagon index)`.
    pub opposite_interval: CountCheck<(Vertex, usize)>,
    /// A vertex `z` with gate `w` in `C` has `w ∈ I(u, z)` for `u ∈ C`
    /// at distance 2 from `w`; witness `(z, u, hexagon index)`.
    pub gate_interval: CountCheck<(Vertex, Vertex, usize)>,
    /// 2-pairs where some profile's `F` is not pseudopeakless lie on a
    /// common hexagon; witness the pair.
    pub peakless_pairs: CountCheck<(Vertex, Vertex)>,
    /// `Med(π)` is connected in `G²`; witness the profile text.
    pub g2_connected_medians: CountCheck<String>,
    pub profiles_checked: usize,
    pub scope: &'static str,
}

impl BenzenoidReport {
    pub fn passed(&self) -> bool {
        self.gated.passed()
            && self.opposite_interval.passed()
            && self.gate_interval.passed()
            && self.peakless_pairs.passed()
            && self.g2_connected_medians.passed()
    }
}

/// 2-pairs `(u, v)` at which `f` breaks the local peakless condition.
fn pseudopeakless_failures(g: &Graph, f: &[u64]) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for u in g.vertices() {
        for v in u + 1..g.vertex_count() {
            if g.d(u, v) != 2 {
                continue;
            }
            let hi = f[u].max(f[v]);
            let ok = g.interval_interior(u, v).iter().any(|w| f[w] < hi || (f[w] == f[u] && f[w] == f[v]));
            if !ok {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn verify_benzenoid_lemmas(b: &Benzenoid, budget: &ProfileBudget) -> Result<BenzenoidReport, BenzenoidError> {
    let g = b.graph();
    let n = g.vertex_count();
    let exec: Exec = budget.exec;
    let hex_sets: Vec<VertexSet> = b.hexagons().iter().map(|h| VertexSet::from_vertices(n, h.iter().copied())).collect();
    let incomplete = b.incomplete_hexagons();

    let mut shapes: Vec<Vec<Vertex>> = b.hexagons().iter().map(|h| h.to_vec()).collect();
    shapes.extend(incomplete.iter().map(|p| p.to_vec()));
    let gated = CountCheck::from_results(exec.map(&shapes, |s| {
        let set = VertexSet::from_vertices(n, s.iter().copied());
        (!g.is_gated(&set).expect("nonempty")).then(|| s.clone())
    }));

    let pairs: Vec<(Vertex, usize)> = g.vertices().flat_map(|x| (0..hex_sets.len()).map(move |c| (x, c))).collect();
    let opposite_interval = CountCheck::from_results(exec.map(&pairs, |&(x, c)| {
        let h = &b.hexagons()[c];
        let gate = g.gate(x, &hex_sets[c]).expect("nonempty")?;
        let k = h.iter().position(|&v| v == gate).expect("gate lies on the hexagon");
        let opposite = h[(k + 3) % 6];
        (!hex_sets[c].is_subset(&g.interval(x, opposite))).then_some((x, c))
    }));

    let gate_interval = CountCheck::from_results(
        exec.map(&pairs, |&(z, c)| {
            if hex_sets[c].contains(z) {
                return vec![];
            }
            let Some(w) = g.gate(z, &hex_sets[c]).expect("nonempty") else {
                return vec![Some((z, z, c))];
            };
            hex_sets[c]
                .iter()
                .filter(|&u| g.d(u, w) == 2)
                .map(|u| (!g.between(u, w, z)).then_some((z, u, c)))
                .collect()
        })
        .into_iter()
        .flatten()
        .collect(),
    );

    let profiles = budget.enumerate(n)?;
    let per_profile = exec.map(&profiles, |p| {
        let f = total_distances(g, p);
        let bad_pairs = pseudopeakless_failures(g, &f);
        let med_ok = g.is_connected_in_power(&median_set(g, p), 2);
        (bad_pairs, (!med_ok).then(|| p.to_string()))
    });
    let mut failing_pairs: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut med_results = Vec::with_capacity(profiles.len());
    for (bad, med) in per_profile {
        failing_pairs.extend(bad);
        med_results.push(med);
    }
    let peakless_pairs = CountCheck::from_results(
        failing_pairs
            .into_iter()
            .map(|(u, v)| (!hex_sets.iter().any(|s| s.contains(u) && s.contains(v))).then_some((u, v)))
            .collect(),
    );

    Ok(BenzenoidReport {
        hexagons: b.hexagons().len(),
        incomplete_hexagons: incomplete.len(),
        gated,
        opposite_interval,
        gate_interval,
        peakless_pairs,
        g2_connected_medians: CountCheck::from_results(med_results),
        profiles_checked: profiles.len(),
        scope: "verified within budget",
    })
}
