//! The polytopes `Me(u)` (weights making `u` a median) and `Ma(u)`
//! (weights admitting a fractional perfect matching of `A_u`), and the exact
//! search for points of `Me(u) \ Ma(u)`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{AuxiliaryGraph, PairingError};
use crate::exec::Exec;
use crate::graph::{Graph, Vertex};
use crate::lp::{self, LpOutcome, Rational, RationalLinearSystem, Relation};
use crate::profile::Profile;

/// `Σ_w b(w)(d(v,w) − d(u,w)) ≥ 0` for every `v ≠ u`, over variables
/// `b(0..n)`.
pub fn me_polytope(g: &Graph, u: Vertex) -> RationalLinearSystem {
    let n = g.vertex_count();
    let mut sys = RationalLinearSystem::new(n);
    for v in g.vertices().filter(|&v| v != u) {
        let terms: Vec<(usize, i64)> =
            g.vertices().map(|w| (w, g.d(v, w) as i64 - g.d(u, w) as i64)).filter(|t| t.1 != 0).collect();
        sys.add_terms(&terms, Relation::Ge, 0);
    }
    sys
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolytopeOptions {
    pub stable_cap: usize,
    pub exec: Exec,
}

impl Default for PolytopeOptions {
    fn default() -> Self {
        PolytopeOptions { stable_cap: super::DEFAULT_STABLE_SET_CAP, exec: Exec::default() }
    }
}

/// A point of `Me(u)` outside `Ma(u)`, normalised to total weight 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaViolation {
    pub base: Vertex,
    pub stable_set: Vec<Vertex>,
    /// `N(S)` in `A_u`; always contains the base.
    pub neighborhood: Vec<Vertex>,
    #[serde(serialize_with = "ser_rationals")]
    pub point: Vec<Rational>,
    /// Optimum of `b(N(S)) − b(S)`, negative.
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

fn ser_rationals<S: serde::Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// For every closed stable set `S` of `A_u` (the base excluded), minimise
/// `b(N(S)) − b(S)` over `Me(u) ∩ {Σ b = 1}`. Returns the first `S` with a
/// negative optimum.
pub fn ma_violation_search(g: &Graph, u: Vertex, opts: PolytopeOptions) -> Result<Option<MaViolation>, PairingError> {
    let n = g.vertex_count();
    let a = AuxiliaryGraph::new(g, u);
    let mut allowed = vec![true; n];
    allowed[u] = false;
    let stables: Vec<Vec<Vertex>> = a
        .graph()
        .stable_sets(&allowed, opts.stable_cap)?
        .into_iter()
        .filter(|s| a.graph().is_closed_stable(s, &allowed))
        .collect();
    let mut base = me_polytope(g, u);
    base.add_terms(&(0..n).map(|v| (v, 1)).collect::<Vec<_>>(), Relation::Eq, 1);
    let found = opts.exec.find_first(stables.len(), |i| {
        let s = &stables[i];
        let nb = a.graph().neighborhood(s);
        let mut obj = vec![0i64; n];
        for &v in &nb {
            obj[v] += 1;
        }
        for &v in s {
            obj[v] -= 1;
        }
        let mut sys = base.clone();
        sys.set_objective_terms(&obj.iter().copied().enumerate().filter(|t| t.1 != 0).collect::<Vec<_>>());
        match sys.solve() {
            LpOutcome::Optimal { point, value } if value.is_negative() => Some(MaViolation {
                base: u,
                stable_set: s.clone(),
                neighborhood: nb,
                point,
                value,
            }),
            LpOutcome::Optimal { .. } => None,
            // Σb = 1 and b ≥ 0 bound the region; u itself is always feasible
            LpOutcome::Infeasible | LpOutcome::Unbounded { .. } => unreachable!("Me(u) slice is a nonempty polytope"),
        }
    });
    Ok(found.map(|(_, v)| v))
}

/// Failure of the double-pairing property: the violation and the scaled
/// even integral profile `π` whose double `π²` has no perfect pairing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoublePairingWitness {
    pub violation: MaViolation,
    pub profile: Profile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoublePairingReport {
    pub holds: bool,
    pub vertices_checked: usize,
    pub witness: Option<DoublePairingWitness>,
}

/// `Ma(u) = Me(u)` for every `u`, checked exactly vertex by vertex.
pub fn double_pairing_property(g: &Graph, opts: PolytopeOptions) -> Result<DoublePairingReport, PairingError> {
    for u in g.vertices() {
        if let Some(violation) = ma_violation_search(g, u, opts)? {
            let profile = scaled_profile(&violation.point)?;
            return Ok(DoublePairingReport { holds: false, vertices_checked: u + 1, witness: Some(DoublePairingWitness { violation, profile }) });
        }
    }
    Ok(DoublePairingReport { holds: true, vertices_checked: g.vertex_count(), witness: None })
}

/// Rational weights times twice the LCM of their denominators.
pub(crate) fn scaled_profile(point: &[Rational]) -> Result<Profile, PairingError> {
    let ints = lp::scale_to_even_integers(point);
    let counts = ints
        .iter()
        .map(|k: &BigInt| k.to_u32().ok_or(PairingError::Overflow))
        .collect::<Result<Vec<u32>, _>>()?;
    Ok(Profile::from_counts(counts))
}

/// The point satisfies every `Me(u)` inequality.
pub fn in_me(g: &Graph, u: Vertex, b: &[Rational]) -> bool {
    me_polytope(g, u).is_satisfied_by(b) && b.iter().all(|x| !x.is_negative())
}

/// Every stable set `S` of `A_u` (base excluded) has `b(S) ≤ b(N(S))`.
pub fn in_ma(g: &Graph, u: Vertex, b: &[Rational], stable_cap: usize) -> Result<bool, PairingError> {
    let a = AuxiliaryGraph::new(g, u);
    let mut allowed = vec![true; g.vertex_count()];
    allowed[u] = false;
    let sum = |vs: &[Vertex]| vs.iter().map(|&v| b[v].clone()).fold(Rational::zero(), |x, y| x + y);
    Ok(a
        .graph()
        .stable_sets(&allowed, stable_cap)?
        .iter()
        .all(|s| sum(s) <= sum(&a.graph().neighborhood(s))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::lp::rat;
    use crate::median::median_set;
    use crate::pairing::has_perfect_pairing;

    fn seq() -> PolytopeOptions {
        PolytopeOptions { exec: Exec::Sequential, ..Default::default() }
    }

    #[test]
    fn me_contains_exactly_median_weights() {
        let p = path(3).unwrap();
        let sys = me_polytope(&p, 1);
        assert!(sys.is_satisfied_by(&[rat(1), rat(0), rat(1)]));
        assert!(!sys.is_satisfied_by(&[rat(2), rat(0), rat(1)]));
        let pi = Profile::from_counts(vec![2, 0, 1]);
        assert!(!median_set(&p, &pi).contains(1));
    }

    #[test]
    fn trees_and_small_graphs_have_no_violation() {
        for g in [path(3).unwrap(), complete(2).unwrap(), tree_from_parents(&[None, Some(0), Some(0), Some(1), Some(1)]).unwrap()] {
            for u in g.vertices() {
                assert_eq!(ma_violation_search(&g, u, seq()).unwrap(), None);
            }
        }
        assert!(double_pairing_property(&complete_bipartite(2, 3).unwrap(), seq()).unwrap().holds);
    }

    #[test]
    fn triangle_violation_scales_to_unpairable_double() {
        // K3: A_u is a star with a loop, and the two leaves are stable
        let k3 = complete(3).unwrap();
        let r = double_pairing_property(&k3, seq()).unwrap();
        let w = r.witness.expect("K3 lacks the double-pairing property");
        assert_eq!(w.violation.stable_set, vec![1, 2]);
        assert!(in_me(&k3, 0, &w.violation.point));
        assert!(!in_ma(&k3, 0, &w.violation.point, 1000).unwrap());
        assert!(w.profile.is_even());
        assert_eq!(has_perfect_pairing(&k3, &w.profile).unwrap(), None);
    }
}
