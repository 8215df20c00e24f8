use super::{GraphError, Vertex};

/// Undirected simple graph without distance data. May be disconnected.
///
/// Used for the auxiliary constructions (complements, clique hypergraphs,
/// auxiliary and local graphs) where connectivity is not guaranteed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(SimpleGraph { adj })
    }

    /// Builds from a symmetric adjacency predicate over `0..n`.
    pub fn from_fn(n: usize, adjacent: impl Fn(Vertex, Vertex) -> bool) -> Self {
        let mut adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        SimpleGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> SimpleGraph {
        let n = self.vertex_count();
        SimpleGraph::from_fn(n, |u, v| !self.has_edge(u, v))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Maximal cliques by Bron–Kerbosch with pivoting. Each clique is sorted
    /// and the list is in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        let mut r = Vec::new();
        self.bron_kerbosch(&mut r, (0..n).collect(), Vec::new(), &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<Vertex>,
        p: Vec<Vertex>,
        mut x: Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| self.has_edge(u, v)).count())
            .expect("p is nonempty");
        let mut p_rest = p.clone();
        for v in p.into_iter().filter(|&v| !self.has_edge(pivot, v)) {
            let np = p_rest.iter().copied().filter(|&w| self.has_edge(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| self.has_edge(v, w)).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p_rest.retain(|&w| w != v);
            x.push(v);
        }
    }

    /// Maximal stable sets, i.e. maximal cliques of the complement.
    pub fn maximal_stable_sets(&self) -> Vec<Vec<Vertex>> {
        self.complement().maximal_cliques()
    }

    /// Size of a largest stable set.
    pub fn stability_number(&self) -> usize {
        self.maximal_stable_sets().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// All nonempty stable sets drawn from `allowed` vertices, in
    /// lexicographic order of their sorted member lists.
    ///
    /// Fails with [`GraphError::StableSetCap`] once more than `cap` sets have
    /// been produced.
    pub fn stable_sets(&self, allowed: &[bool], cap: usize) -> Result<Vec<Vec<Vertex>>, GraphError> {
        let n = self.vertex_count();
        debug_assert_eq!(allowed.len(), n);
        let mut out = Vec::new();
        let mut current = Vec::new();
        let mut blocked = vec![0u32; n];
        self.extend_stable(0, allowed, &mut blocked, &mut current, &mut out, cap)?;
        Ok(out)
    }

    fn extend_stable(
        &self,
        from: Vertex,
        allowed: &[bool],
        blocked: &mut [u32],
        current: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
        cap: usize,
    ) -> Result<(), GraphError> {
        for v in from..self.vertex_count() {
            if !allowed[v] || blocked[v] > 0 {
                continue;
            }
            current.push(v);
            if out.len() >= cap {
                return Err(GraphError::StableSetCap { cap });
            }
            out.push(current.clone());
            for &w in &self.adj[v] {
                blocked[w] += 1;
            }
            self.extend_stable(v + 1, allowed, blocked, current, out, cap)?;
            for &w in &self.adj[v] {
                blocked[w] -= 1;
            }
            current.pop();
        }
        Ok(())
    }

    /// Stable `set` that no allowed vertex `v` outside `set ∪ N(set)` with
    /// `N(v) ⊆ N(set)` can join. Hall-type deficiencies `w(S) − w(N(S))`
    /// with `w ≥ 0` only grow under such extensions, so these sets suffice.
    pub fn is_closed_stable(&self, set: &[Vertex], allowed: &[bool]) -> bool {
        let nb = self.neighborhood(set);
        let mut inside = vec![false; self.vertex_count()];
        for &v in &nb {
            inside[v] = true;
        }
        (0..self.vertex_count()).all(|v| {
            !allowed[v] || inside[v] || set.contains(&v) || !self.adj[v].iter().all(|&w| inside[w])
        })
    }

    /// Open neighbourhood of a set.
    pub fn neighborhood(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut mark = vec![false; self.vertex_count()];
        for &v in set {
            for &w in &self.adj[v] {
                mark[w] = true;
            }
        }
        mark.iter().enumerate().filter(|(_, &m)| m).map(|(v, _)| v).collect()
    }

    pub fn is_stable(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !self.has_edge(a, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::new(n, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(SimpleGraph::new(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            SimpleGraph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            SimpleGraph::new(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn cliques_of_c5_are_its_edges() {
        let c5 = cycle(5);
        let cl = c5.maximal_cliques();
        assert_eq!(cl, vec![vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]);
    }

    #[test]
    fn stable_sets_of_path() {
        let p = SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = p.stable_sets(&[true; 3], 100).unwrap();
        assert_eq!(s, vec![vec![0], vec![0, 2], vec![1], vec![2]]);
        assert!(p.stable_sets(&[true; 3], 3).is_err());
        assert_eq!(p.maximal_stable_sets(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn isolated_vertex_is_its_own_clique() {
        let g = SimpleGraph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(g.maximal_cliques(), vec![vec![0, 1], vec![2]]);
        assert_eq!(g.components().len(), 2);
    }
}
