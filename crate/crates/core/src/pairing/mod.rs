//! Pairings of even profiles, perfect pairings via the auxiliary graph
//! `A_u`, fractional `b`-matchings, the `Me(u)`/`Ma(u)` polytope procedure
//! and local-graph checks.

mod auxiliary;
pub mod fractional;
pub mod local;
pub mod matching;
pub mod polytope;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::lp::Rational;
use crate::median::{median_set, total_distances};
use crate::profile::{BudgetError, Profile, ProfileBudget};

pub use auxiliary::AuxiliaryGraph;
pub use fractional::{FractionalOutcome, DEFAULT_STABLE_SET_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("profile total {0} is odd")]
    OddProfile(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error("scaled witness multiplicity does not fit in u32")]
    Overflow,
}

/// Multiset of unordered vertex pairs; `{a, a}` is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pairing {
    /// `(a, b, multiplicity)` with `a <= b`, sorted, no repeats.
    pairs: Vec<(Vertex, Vertex, u32)>,
}

impl Pairing {
    pub fn new(pairs: Vec<(Vertex, Vertex, u32)>) -> Self {
        Pairing { pairs: matching::normalize(pairs.into_iter().filter(|p| p.2 > 0).collect()) }
    }

    pub fn from_pairs(pairs: &[(Vertex, Vertex)]) -> Self {
        Self::new(pairs.iter().map(|&(a, b)| (a, b, 1)).collect())
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex, u32)] {
        &self.pairs
    }

    /// Pairs repeated by multiplicity.
    pub fn expanded(&self) -> Vec<(Vertex, Vertex)> {
        self.pairs
            .iter()
            .flat_map(|&(a, b, k)| std::iter::repeat_n((a, b), k as usize))
            .collect()
    }

    pub fn pair_count(&self) -> u64 {
        self.pairs.iter().map(|p| p.2 as u64).sum()
    }

    /// The profile this pairing partitions.
    pub fn covers(&self, n: usize) -> Profile {
        Profile::from_counts(matching::coverage(n, &self.pairs))
    }

    /// `D_π(P) = Σ d(a, b)`.
    pub fn cost(&self, g: &Graph) -> u64 {
        self.pairs.iter().map(|&(a, b, k)| k as u64 * g.d(a, b) as u64).sum()
    }

    /// `v` lies in `I(a, b)` for every pair.
    pub fn all_intervals_contain(&self, g: &Graph, v: Vertex) -> bool {
        self.pairs.iter().all(|&(a, b, _)| g.between(a, v, b))
    }
}

impl Serialize for Pairing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.expanded().into_iter().map(|(a, b)| [a, b]))
    }
}

pub fn pairing_cost(g: &Graph, p: &Pairing) -> u64 {
    p.cost(g)
}

fn require_even(pi: &Profile) -> Result<(), PairingError> {
    if pi.is_even() {
        Ok(())
    } else {
        Err(PairingError::OddProfile(pi.total()))
    }
}

/// Maximum of `D_π` over all pairings, by branch and bound: pair the
/// smallest remaining vertex with each candidate partner, pruning with the
/// weak-duality bound `D <= min_v F`.
pub fn maximum_pairing(g: &Graph, pi: &Profile) -> Result<(Pairing, u64), PairingError> {
    require_even(pi)?;
    struct Bb<'a> {
        g: &'a Graph,
        best: Option<(Vec<(Vertex, Vertex)>, u64)>,
        ceiling: u64,
    }
    impl Bb<'_> {
        fn go(&mut self, r: &mut Profile, cur: &mut Vec<(Vertex, Vertex)>, cost: u64) {
            if self.best.as_ref().is_some_and(|b| b.1 == self.ceiling) {
                return;
            }
            let Some(a) = r.support().first().copied() else {
                if self.best.as_ref().is_none_or(|b| cost > b.1) {
                    self.best = Some((cur.clone(), cost));
                }
                return;
            };
            let bound = total_distances(self.g, r).into_iter().min().unwrap_or(0);
            if self.best.as_ref().is_some_and(|b| cost + bound <= b.1) {
                return;
            }
            let mut partners: Vec<Vertex> = r.support().into_iter().filter(|&w| w != a || r.get(a) >= 2).collect();
            // far partners first
            partners.sort_by_key(|&w| std::cmp::Reverse(self.g.d(a, w)));
            for w in partners {
                let mut next = r.clone();
                next.remove(a, 1);
                next.remove(w, 1);
                cur.push((a, w));
                self.go(&mut next, cur, cost + self.g.d(a, w) as u64);
                cur.pop();
            }
        }
    }
    let ceiling = total_distances(g, pi).into_iter().min().unwrap_or(0);
    let mut bb = Bb { g, best: None, ceiling };
    bb.go(&mut pi.clone(), &mut Vec::new(), 0);
    let (pairs, cost) = bb.best.expect("an even profile has at least one pairing");
    Ok((Pairing::from_pairs(&pairs), cost))
}

/// Perfect `π`-matching of `A_u`: each vertex `v` in exactly `π(v)` edges,
/// the loop at `u` counting twice.
pub fn has_perfect_pi_matching(a: &AuxiliaryGraph, pi: &Profile) -> Option<Pairing> {
    matching::perfect_b_matching(a.graph(), Some(a.base()), pi.counts()).map(Pairing::new)
}

/// A perfect pairing of `π` together with the median `u` certifying it
/// (`D_π(P) = F_π(u)`), or `None`. Uses the smallest median: if any vertex
/// certifies a perfect pairing, every median lies in all pair intervals.
pub fn has_perfect_pairing(g: &Graph, pi: &Profile) -> Result<Option<(Pairing, Vertex)>, PairingError> {
    require_even(pi)?;
    let u = median_set(g, pi).first().expect("median set is nonempty");
    let a = AuxiliaryGraph::new(g, u);
    Ok(has_perfect_pi_matching(&a, pi).map(|p| (p, u)))
}

/// Fractional perfect `b`-matching of `A_u`.
pub fn has_fractional_perfect_b_matching(
    a: &AuxiliaryGraph,
    b: &[Rational],
    stable_cap: usize,
) -> Result<FractionalOutcome, GraphError> {
    fractional::fractional_perfect_b_matching(a.graph(), Some(a.base()), b, stable_cap)
}

/// First even profile within `budget` (in enumeration order) without a
/// perfect pairing.
pub fn pairing_property_bounded_search(g: &Graph, budget: &ProfileBudget) -> Result<Option<Profile>, PairingError> {
    let profiles: Vec<Profile> = budget.enumerate(g.vertex_count())?.into_iter().filter(|p| p.is_even()).collect();
    let found = budget.exec.find_first(profiles.len(), |i| {
        let ok = has_perfect_pairing(g, &profiles[i]).expect("profile is even").is_some();
        (!ok).then_some(())
    });
    Ok(found.map(|(i, _)| profiles[i].clone()))
}
