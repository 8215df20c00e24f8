//! Total-distance functions, median sets and bounded verification of
//! (`G^p`-)connected medians.

use serde::Serialize;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::profile::{BudgetError, Profile, ProfileBudget};

/// `F_π(v) = Σ_x π(x) d(v, x)`.
pub fn total_distance(g: &Graph, pi: &Profile, v: Vertex) -> u64 {
    let row = g.distances_from(v);
    pi.counts().iter().zip(row).map(|(&k, &d)| k as u64 * d as u64).sum()
}

/// `F_π` evaluated at every vertex.
pub fn total_distances(g: &Graph, pi: &Profile) -> Vec<u64> {
    let support = pi.canonical();
    g.vertices()
        .map(|v| support.iter().map(|&(x, k)| k as u64 * g.d(v, x) as u64).sum())
        .collect()
}

/// Vertices minimizing `F_π`. The empty profile has `F ≡ 0`, so every
/// vertex is a median.
pub fn median_set(g: &Graph, pi: &Profile) -> VertexSet {
    minima(&total_distances(g, pi))
}

pub(crate) fn minima(f: &[u64]) -> VertexSet {
    let best = f.iter().copied().min().unwrap_or(0);
    VertexSet::from_vertices(f.len(), (0..f.len()).filter(|&v| f[v] == best))
}

/// `F_π(v) <= F_π(w)` for every `w` with `d(v, w) <= p`.
pub fn is_local_median(g: &Graph, pi: &Profile, v: Vertex, p: u32) -> bool {
    let fv = total_distance(g, pi, v);
    g.vertices().filter(|&w| g.d(v, w) <= p).all(|w| fv <= total_distance(g, pi, w))
}

/// Verdicts of the three equivalent conditions for a single profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileVerdict {
    pub profile: Profile,
    /// Every local minimum of `F_π` in `G^p` is global.
    pub unimodal: bool,
    /// `Med(π)` induces a connected subgraph of `G^p`.
    pub connected: bool,
    /// Locally `p`-weakly peakless.
    pub peakless: bool,
}

impl ProfileVerdict {
    pub fn all_hold(&self) -> bool {
        self.unimodal && self.connected && self.peakless
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectedMediansReport {
    pub power: u32,
    pub max_support: usize,
    pub max_mult: u32,
    pub profiles_checked: usize,
    /// Profiles where some verdict is false, in enumeration order.
    pub failures: Vec<ProfileVerdict>,
    /// Number of failing profiles whose three verdicts are not all equal.
    pub disagreements: usize,
    /// Always `"verified within budget"`: no claim is made beyond the
    /// enumerated profiles.
    pub scope: &'static str,
}

impl ConnectedMediansReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Locally `p`-weakly peakless: for all `u, v` with `p+1 <= d(u,v) <= 2p`
/// some `w` in the interior of `I(u,v)` has `f(w) < max(f(u), f(v))` or
/// `f(u) = f(w) = f(v)`.
pub fn is_locally_weakly_peakless(g: &Graph, f: &[u64], p: u32) -> bool {
    peakless_violation(g, f, p).is_none()
}

/// First pair `(u, v)`, `u < v`, violating local `p`-weak peaklessness.
pub fn peakless_violation(g: &Graph, f: &[u64], p: u32) -> Option<(Vertex, Vertex)> {
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            let d = g.d(u, v);
            if d < p + 1 || d > 2 * p {
                continue;
            }
            let hi = f[u].max(f[v]);
            let ok = g
                .interval_interior(u, v)
                .iter()
                .any(|w| f[w] < hi || (f[u] == f[w] && f[w] == f[v]));
            if !ok {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn is_unimodal(g: &Graph, f: &[u64], p: u32) -> bool {
    let best = f.iter().copied().min().unwrap_or(0);
    g.vertices().all(|v| {
        let local = g.vertices().filter(|&w| g.d(v, w) <= p).all(|w| f[v] <= f[w]);
        !local || f[v] == best
    })
}

pub fn verdict(g: &Graph, pi: &Profile, p: u32) -> ProfileVerdict {
    let f = total_distances(g, pi);
    ProfileVerdict {
        profile: pi.clone(),
        unimodal: is_unimodal(g, &f, p),
        connected: g.is_connected_in_power(&minima(&f), p),
        peakless: is_locally_weakly_peakless(g, &f, p),
    }
}

/// Exhaustively checks every profile within `budget` for unimodality on
/// `G^p`, `G^p`-connectivity of the median set and local `p`-weak
/// peaklessness.
pub fn check_unimodal_equals_connected(
    g: &Graph,
    p: u32,
    budget: &ProfileBudget,
) -> Result<ConnectedMediansReport, BudgetError> {
    assert!(p >= 1, "power must be positive");
    let profiles = budget.enumerate(g.vertex_count())?;
    let verdicts = budget.exec.map(&profiles, |pi| verdict(g, pi, p));
    let failures: Vec<ProfileVerdict> = verdicts.into_iter().filter(|v| !v.all_hold()).collect();
    let disagreements = failures
        .iter()
        .filter(|v| !(v.unimodal == v.connected && v.connected == v.peakless))
        .count();
    Ok(ConnectedMediansReport {
        power: p,
        max_support: budget.max_support,
        max_mult: budget.max_mult,
        profiles_checked: profiles.len(),
        failures,
        disagreements,
        scope: "verified within budget",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::graph::generators::*;

    #[test]
    fn spot_values() {
        let c6 = cycle(6).unwrap();
        let pi = Profile::from_vertices(6, [0, 2, 4]);
        // d(v1, v4) = 3
        assert_eq!(total_distance(&c6, &pi, 1), 1 + 1 + 3);
        assert_eq!(median_set(&c6, &pi).to_vec(), vec![0, 2, 4]);
        assert!(is_local_median(&c6, &pi, 0, 2));
        // F(v1) = 5 > F(v0) = 4
        assert!(!is_local_median(&c6, &pi, 1, 1));
        let k3 = complete(3).unwrap();
        assert_eq!(total_distance(&k3, &Profile::from_vertices(3, [0, 0, 1, 1, 2, 2]), 0), 4);
        assert_eq!(median_set(&k3, &Profile::empty(3)).len(), 3);
    }

    #[test]
    fn pair_median_is_interval() {
        let q3 = hypercube(3).unwrap();
        for (u, v) in [(0, 7), (1, 2), (3, 3)] {
            assert_eq!(median_set(&q3, &Profile::from_vertices(8, [u, v])), q3.interval(u, v));
        }
    }

    #[test]
    fn cycle_medians_connected_in_square() {
        let c6 = cycle(6).unwrap();
        let budget = ProfileBudget::new(3, 2).with_exec(Exec::Sequential);
        let r = check_unimodal_equals_connected(&c6, 2, &budget).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        // at p = 1 the median set {0, 2, 4} of (0, 2, 4) is disconnected
        let r1 = check_unimodal_equals_connected(&c6, 1, &budget).unwrap();
        assert!(!r1.passed());
    }
}
