use serde::Serialize;

use crate::graph::{Graph, SimpleGraph, Vertex};

/// `A_u`: `v ~ w` iff `u ∈ I(v, w)`. The base vertex `u` is adjacent to
/// every other vertex and carries the only loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    base: Vertex,
    graph: SimpleGraph,
}

impl AuxiliaryGraph {
    pub fn new(g: &Graph, u: Vertex) -> Self {
        let graph = SimpleGraph::from_fn(g.vertex_count(), |v, w| g.between(v, u, w));
        AuxiliaryGraph { base: u, graph }
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    /// Loop-free part.
    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn has_edge(&self, v: Vertex, w: Vertex) -> bool {
        if v == w {
            v == self.base
        } else {
            self.graph.has_edge(v, w)
        }
    }

    /// All edges including the loop `(u, u)`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut e = self.graph.edges();
        let at = e.partition_point(|&p| p < (self.base, self.base));
        e.insert(at, (self.base, self.base));
        e
    }
}

impl Serialize for AuxiliaryGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AuxiliaryGraph", 2)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("edges", &self.edges())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn path_through_center() {
        let p = path(3).unwrap();
        let a = AuxiliaryGraph::new(&p, 1);
        assert_eq!(a.edges(), vec![(0, 1), (0, 2), (1, 1), (1, 2)]);
        assert!(a.has_edge(1, 1) && !a.has_edge(0, 0));
    }

    #[test]
    fn complete_graph_is_a_star() {
        let a = AuxiliaryGraph::new(&complete(3).unwrap(), 0);
        assert_eq!(a.edges(), vec![(0, 0), (0, 1), (0, 2)]);
    }

    #[test]
    fn hexagon_at_v0() {
        let a = AuxiliaryGraph::new(&cycle(6).unwrap(), 0);
        assert_eq!(
            a.edges(),
            vec![(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 4), (1, 5), (2, 5)]
        );
    }
}
