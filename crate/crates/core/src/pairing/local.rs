//! Local graphs `B_u` and the matching-stable-set property.
//!
//! A graph has the property for a profile `π` if (1) some vertex `z` has
//! `π(z) > π(N(z))`, or (2) some maximal stable set `S` has
//! `π(S) > π(N(S))`, or (3) there is a perfect `π`-matching.

use num_traits::Zero;
use serde::Serialize;

use super::matching::perfect_b_matching;
use super::polytope::scaled_profile;
use super::PairingError;
use crate::exec::Exec;
use crate::graph::{Graph, SimpleGraph, Vertex, VertexSet};
use crate::lp::{LpOutcome, Rational, RationalLinearSystem, Relation};
use crate::profile::{Profile, ProfileBudget};

/// `B_u`: the ball of radius 2 around `u`, with `v ~ v'` iff `u ∈ I(v, v')`.
#[derive(Debug, Clone)]
pub struct LocalGraph {
    pub center: Vertex,
    /// Local index to vertex of the host graph.
    pub map: Vec<Vertex>,
    pub graph: Graph,
}

impl LocalGraph {
    pub fn local_center(&self) -> Vertex {
        self.map.binary_search(&self.center).expect("center lies in its ball")
    }

    pub fn to_host(&self, local: &[Vertex]) -> Vec<Vertex> {
        local.iter().map(|&v| self.map[v]).collect()
    }
}

pub fn local_graph(g: &Graph, u: Vertex) -> LocalGraph {
    let map = g.ball(u, 2).to_vec();
    let topo = SimpleGraph::from_fn(map.len(), |i, j| g.between(map[i], u, map[j]));
    // u is adjacent to every other vertex, so B_u is connected
    let graph = Graph::from_simple(topo).expect("local graph is connected");
    LocalGraph { center: u, map, graph }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Single,
    Double,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalWitness {
    /// Stable set `S` with `π(S) > π(N(S))`.
    pub stable_set: Vec<Vertex>,
    pub profile: Profile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingStableSetReport {
    pub variant: Variant,
    pub holds: bool,
    /// `"exact"` or `"verified within budget"`.
    pub scope: &'static str,
    pub witness: Option<LocalWitness>,
}

fn sum(b: &[Rational], vs: &[Vertex]) -> Rational {
    vs.iter().fold(Rational::zero(), |acc, &v| acc + &b[v])
}

/// Conditions (1) and (2) both fail and there is no perfect `π`-matching.
pub fn violates(g: &SimpleGraph, maximal: &[Vec<Vertex>], pi: &Profile) -> bool {
    let w = |vs: &[Vertex]| vs.iter().map(|&v| pi.get(v) as u64).sum::<u64>();
    let beats = |s: &[Vertex]| w(s) > w(&g.neighborhood(s));
    let one = (0..g.vertex_count()).any(|z| beats(&[z]));
    let two = maximal.iter().any(|s| beats(s));
    !one && !two && pi.is_even() && perfect_b_matching(g, None, pi.counts()).is_none()
}

/// Exact for `Double`: for each closed stable set `S`, tests feasibility of
/// `{b(S) − b(N(S)) ≥ 1, b(S') ≤ b(N(S')) for maximal S', b(z) ≤ b(N(z)), b ≥ 0}`.
/// `Single` runs an exhaustive search over even profiles within `budget`.
pub fn matching_stable_set_check(
    b_u: &Graph,
    variant: Variant,
    budget: &ProfileBudget,
    stable_cap: usize,
) -> Result<MatchingStableSetReport, PairingError> {
    let g = b_u.topology();
    let n = g.vertex_count();
    let maximal = g.maximal_stable_sets();
    match variant {
        Variant::Double => {
            let all = vec![true; n];
            let stables: Vec<Vec<Vertex>> =
                g.stable_sets(&all, stable_cap)?.into_iter().filter(|s| g.is_closed_stable(s, &all)).collect();
            let mut base = RationalLinearSystem::new(n);
            let hall = |s: &[Vertex]| {
                let mut c = vec![0i64; n];
                for &v in s {
                    c[v] += 1;
                }
                for v in g.neighborhood(s) {
                    c[v] -= 1;
                }
                c.into_iter().enumerate().filter(|t| t.1 != 0).collect::<Vec<_>>()
            };
            for s in &maximal {
                base.add_terms(&hall(s), Relation::Le, 0);
            }
            for z in 0..n {
                base.add_terms(&hall(&[z]), Relation::Le, 0);
            }
            let found = budget.exec.find_first(stables.len(), |i| {
                let mut sys = base.clone();
                sys.add_terms(&hall(&stables[i]), Relation::Ge, 1);
                match sys.solve() {
                    LpOutcome::Infeasible => None,
                    out => Some(out.point().expect("feasible outcome has a point").to_vec()),
                }
            });
            let witness = match found {
                None => None,
                Some((i, point)) => {
                    debug_assert!(sum(&point, &stables[i]) > sum(&point, &g.neighborhood(&stables[i])));
                    Some(LocalWitness { stable_set: stables[i].clone(), profile: scaled_profile(&point)? })
                }
            };
            Ok(MatchingStableSetReport { variant, holds: witness.is_none(), scope: "exact", witness })
        }
        Variant::Single => {
            let profiles: Vec<Profile> = budget.enumerate(n)?.into_iter().filter(Profile::is_even).collect();
            let found = budget.exec.find_first(profiles.len(), |i| violates(g, &maximal, &profiles[i]).then_some(()));
            let witness = found.map(|(i, _)| {
                let pi = &profiles[i];
                let stable_set = disabling_stable_set(g, pi, stable_cap).unwrap_or_default();
                LocalWitness { stable_set, profile: pi.clone() }
            });
            Ok(MatchingStableSetReport { variant, holds: witness.is_none(), scope: "verified within budget", witness })
        }
    }
}

fn disabling_stable_set(g: &SimpleGraph, pi: &Profile, cap: usize) -> Option<Vec<Vertex>> {
    let w = |vs: &[Vertex]| vs.iter().map(|&v| pi.get(v) as u64).sum::<u64>();
    g.stable_sets(&vec![true; g.vertex_count()], cap)
        .ok()?
        .into_iter()
        .find(|s| w(s) > w(&g.neighborhood(s)))
}

/// Double variant on every local graph of `g`; the first failing center, if any.
pub fn all_local_graphs_pass(g: &Graph, stable_cap: usize, exec: Exec) -> Result<Option<Vertex>, PairingError> {
    let budget = ProfileBudget::new(0, 0).with_exec(exec);
    for u in g.vertices() {
        let b = local_graph(g, u);
        if !matching_stable_set_check(&b.graph, Variant::Double, &budget, stable_cap)?.holds {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// Vertex set of `B_u` in the host graph.
pub fn local_ball(g: &Graph, u: Vertex) -> VertexSet {
    g.ball(u, 2)
}
