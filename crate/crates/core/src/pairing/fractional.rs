//! Fractional perfect `b`-matchings, decided by an exact LP. Infeasibility
//! is certified by a disabling stable set `S` with `b(S) > b(N(S))`.

use num_traits::{Signed, Zero};

use crate::graph::{GraphError, SimpleGraph, Vertex};
use crate::lp::{LpOutcome, Rational, RationalLinearSystem, Relation};

#[derive(Debug, Clone, PartialEq)]
pub enum FractionalOutcome {
    /// Edge weights, loop included as `(v, v)`, covering `b` exactly.
    Feasible(Vec<((Vertex, Vertex), Rational)>),
    Infeasible { disabling: Vec<Vertex> },
}

impl FractionalOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FractionalOutcome::Feasible(_))
    }
}

pub const DEFAULT_STABLE_SET_CAP: usize = 1 << 20;

/// Decides whether `graph` (plus an optional loop at `loop_at`, which
/// counts twice) has a fractional perfect `b`-matching.
pub fn fractional_perfect_b_matching(
    graph: &SimpleGraph,
    loop_at: Option<Vertex>,
    b: &[Rational],
    stable_cap: usize,
) -> Result<FractionalOutcome, GraphError> {
    let n = graph.vertex_count();
    assert_eq!(b.len(), n);
    assert!(b.iter().all(|x| !x.is_negative()), "weights must be nonnegative");
    let support: Vec<bool> = b.iter().map(|x| x.is_positive()).collect();
    // edges outside the support must carry zero weight, so drop them
    let mut edges: Vec<(Vertex, Vertex)> =
        graph.edges().into_iter().filter(|&(v, w)| support[v] && support[w]).collect();
    if let Some(u) = loop_at.filter(|&u| support[u]) {
        edges.push((u, u));
    }
    edges.sort_unstable();
    let mut sys = RationalLinearSystem::new(edges.len());
    for v in (0..n).filter(|&v| support[v]) {
        let terms: Vec<(usize, i64)> = edges
            .iter()
            .enumerate()
            .filter_map(|(i, &(a, c))| match (a == v, c == v) {
                (true, true) => Some((i, 2)),
                (true, false) | (false, true) => Some((i, 1)),
                _ => None,
            })
            .collect();
        let mut coeffs = vec![Rational::zero(); edges.len()];
        for (i, k) in terms {
            coeffs[i] = crate::lp::rat(k);
        }
        sys.add(coeffs, Relation::Eq, b[v].clone());
    }
    match sys.solve() {
        LpOutcome::Optimal { point, .. } => Ok(FractionalOutcome::Feasible(
            edges.into_iter().zip(point).filter(|(_, x)| !x.is_zero()).collect(),
        )),
        LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
        LpOutcome::Infeasible => {
            let mut allowed = support.clone();
            if let Some(u) = loop_at {
                allowed[u] = false;
            }
            let disabling = graph
                .stable_sets(&allowed, stable_cap)?
                .into_iter()
                .find(|s| {
                    let inside: Rational = s.iter().map(|&v| b[v].clone()).sum();
                    let around: Rational = graph.neighborhood(s).iter().map(|&v| b[v].clone()).sum();
                    inside > around
                })
                .expect("an infeasible fractional b-matching has a disabling stable set");
            Ok(FractionalOutcome::Infeasible { disabling })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::rat;

    #[test]
    fn zero_weights_are_trivially_feasible() {
        let g = SimpleGraph::new(3, &[(0, 1)]).unwrap();
        let out = fractional_perfect_b_matching(&g, None, &[rat(0), rat(0), rat(0)], 100).unwrap();
        assert_eq!(out, FractionalOutcome::Feasible(vec![]));
    }

    #[test]
    fn star_with_loop_is_blocked_by_its_leaves() {
        // auxiliary graph of K3 at vertex 0
        let g = SimpleGraph::new(3, &[(0, 1), (0, 2)]).unwrap();
        let out = fractional_perfect_b_matching(&g, Some(0), &[rat(2), rat(2), rat(2)], 100).unwrap();
        assert_eq!(out, FractionalOutcome::Infeasible { disabling: vec![1, 2] });
    }

    #[test]
    fn odd_triangle_is_fractionally_perfect() {
        let g = SimpleGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let out = fractional_perfect_b_matching(&g, None, &[rat(1), rat(1), rat(1)], 100).unwrap();
        let FractionalOutcome::Feasible(x) = out else { panic!() };
        let half = Rational::new(1.into(), 2.into());
        assert!(x.iter().all(|(_, w)| *w == half));
    }
}
