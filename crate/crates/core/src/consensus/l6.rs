//! `L₆`: an ABC-function on the hexagon `C₆` (vertices `0..6` in cyclic
//! order) that differs from the median function.
//!
//! Antipodal pairs cancel: `π°ᵢ = πᵢ − min(πᵢ, πᵢ₊₃)`. When `π°` is positive
//! on all of `i, i+2, i+4`, `L₆` returns the first vertex of that class
//! with the largest reduced multiplicity; otherwise it returns `Med(π)`.

use serde::Serialize;

use super::axioms::{check_axiom, Axiom, AxiomReport};
use super::{compare_functions, tabulate_median, ConsensusError, Divergence, TabulatedConsensus, DEFAULT_TABLE_CAP};
use crate::exec::Exec;
use crate::graph::generators::cycle;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::median::median_set;
use crate::profile::Profile;
use crate::tally::CountCheck;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct C6Profile {
    pub counts: [u32; 6],
}

impl C6Profile {
    pub fn new(counts: [u32; 6]) -> Self {
        C6Profile { counts }
    }

    pub fn from_profile(p: &Profile) -> Result<Self, ConsensusError> {
        let c: [u32; 6] = p.counts().try_into().map_err(|_| ConsensusError::NotHexagon(p.universe()))?;
        Ok(C6Profile { counts: c })
    }

    pub fn to_profile(self) -> Profile {
        Profile::from_counts(self.counts.to_vec())
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn reduced(&self) -> C6Profile {
        let c = &self.counts;
        C6Profile { counts: std::array::from_fn(|i| c[i] - c[i].min(c[(i + 3) % 6])) }
    }

    pub fn concat(&self, other: &C6Profile) -> C6Profile {
        C6Profile { counts: std::array::from_fn(|i| self.counts[i] + other.counts[i]) }
    }

    /// Parity class `i ∈ {0, 1}` with `π°ᵢ, π°ᵢ₊₂, π°ᵢ₊₄ > 0`.
    pub fn alternate_class(&self) -> Option<usize> {
        let r = self.reduced().counts;
        (0..2).find(|&i| r[i] > 0 && r[i + 2] > 0 && r[i + 4] > 0)
    }

    pub fn is_alternate(&self) -> bool {
        self.alternate_class().is_some()
    }
}

pub fn hexagon() -> Graph {
    cycle(6).expect("6-cycle")
}

pub fn l6_eval(pi: &C6Profile) -> Result<VertexSet, ConsensusError> {
    if pi.is_empty() {
        return Err(ConsensusError::EmptyProfile);
    }
    Ok(l6_on(&hexagon(), pi))
}

fn l6_on(c6: &Graph, pi: &C6Profile) -> VertexSet {
    match pi.alternate_class() {
        Some(i) => {
            let r = pi.reduced().counts;
            let top = [i, i + 2, i + 4].into_iter().map(|j| r[j]).max().expect("three entries");
            let pick = [i, i + 2, i + 4].into_iter().find(|&j| r[j] == top).expect("maximum is attained");
            VertexSet::singleton(6, pick)
        }
        None => median_set(c6, &pi.to_profile()),
    }
}

pub fn tabulate_l6(max_len: usize, exec: Exec) -> Result<TabulatedConsensus, ConsensusError> {
    let c6 = hexagon();
    TabulatedConsensus::tabulate(&c6, max_len, DEFAULT_TABLE_CAP, exec, |p| {
        l6_on(&c6, &C6Profile::from_profile(p).expect("hexagon profile"))
    })
}

/// Value any ABC-function must take on a nonempty non-alternate reduced
/// profile, read off the case analysis for supports inside three
/// consecutive vertices `j, j+1, j+2`. `None` for alternate or empty input.
pub fn case_table_value(reduced: &C6Profile) -> Option<VertexSet> {
    let r = reduced.counts;
    if reduced.is_empty() || reduced.is_alternate() || (0..3).any(|i| r[i] > 0 && r[i + 3] > 0) {
        return None;
    }
    let j = (0..6).find(|&j| (3..6).all(|k| r[(j + k) % 6] == 0))?;
    let (mut a, b, mut c) = (r[j], r[(j + 1) % 6], r[(j + 2) % 6]);
    // position t in the window j, j+1, j+2; reflect so that a >= c
    let flip = a < c;
    if flip {
        std::mem::swap(&mut a, &mut c);
    }
    let at = |t: usize| -> Vertex { (j + if flip { 2 - t } else { t }) % 6 };
    let set = |ts: &[usize]| VertexSet::from_vertices(6, ts.iter().map(|&t| at(t)));
    Some(if a == c {
        if b == 0 {
            set(&[0, 1, 2])
        } else {
            set(&[1])
        }
    } else {
        let a1 = a - c;
        match a1.cmp(&b) {
            std::cmp::Ordering::Equal => set(&[0, 1]),
            std::cmp::Ordering::Less => set(&[1]),
            std::cmp::Ordering::Greater => set(&[0]),
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct L6Report {
    pub max_len: usize,
    pub entries: usize,
    pub axioms: Vec<AxiomReport>,
    /// `(πρ)° = (π°ρ°)°` over pairs with `|π| + |ρ| ≤ max_len`.
    pub reduction_identity: CountCheck<(Profile, Profile)>,
    /// `L₆ = Med` whenever `π°` is not alternate.
    pub non_alternate_is_median: CountCheck<Profile>,
    /// `L₆` agrees with the case table on nonempty non-alternate `π°`.
    pub case_table: CountCheck<Profile>,
    pub divergences: usize,
    pub first_divergence: Option<Divergence>,
    pub scope: &'static str,
}

impl L6Report {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.holds)
            && self.reduction_identity.passed()
            && self.non_alternate_is_median.passed()
            && self.case_table.passed()
            && self.divergences > 0
    }
}

pub fn verify_l6_is_abc(max_len: usize, exec: Exec) -> Result<L6Report, ConsensusError> {
    let l6 = tabulate_l6(max_len, exec)?;
    let med = tabulate_median(l6.graph(), max_len, DEFAULT_TABLE_CAP, exec)?;
    let mut axioms = vec![check_axiom(&l6, Axiom::A, exec)?];
    if max_len >= 2 {
        axioms.push(check_axiom(&l6, Axiom::B, exec)?);
        axioms.push(check_axiom(&l6, Axiom::C, exec)?);
    }
    let hex: Vec<C6Profile> =
        l6.entries().map(|(p, _)| C6Profile::from_profile(p).expect("hexagon profile")).collect();

    let pairs: Vec<(usize, usize)> = (0..hex.len())
        .flat_map(|i| (i..hex.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| hex[i].counts.iter().sum::<u32>() + hex[j].counts.iter().sum::<u32>() <= max_len as u32)
        .collect();
    let reduction_identity = CountCheck::from_results(exec.map(&pairs, |&(i, j)| {
        let lhs = hex[i].concat(&hex[j]).reduced();
        let rhs = hex[i].reduced().concat(&hex[j].reduced()).reduced();
        (lhs != rhs).then(|| (hex[i].to_profile(), hex[j].to_profile()))
    }));

    let non_alt: Vec<usize> = (0..hex.len()).filter(|&i| !hex[i].is_alternate()).collect();
    let non_alternate_is_median = CountCheck::from_results(exec.map(&non_alt, |&i| {
        let p = l6.key(i);
        (l6.value(i) != med.get(p).expect("same domain")).then(|| p.clone())
    }));
    let case_table = CountCheck::from_results(
        exec.map(&non_alt, |&i| {
            let expected = case_table_value(&hex[i].reduced())?;
            Some((*l6.value(i) != expected).then(|| l6.key(i).clone()))
        })
        .into_iter()
        .flatten()
        .collect(),
    );

    let div = compare_functions(&l6, &med)?;
    Ok(L6Report {
        max_len,
        entries: l6.len(),
        axioms,
        reduction_identity,
        non_alternate_is_median,
        case_table,
        divergences: div.len(),
        first_divergence: div.into_iter().next(),
        scope: "within budget",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hx(vs: &[Vertex]) -> C6Profile {
        let mut c = [0; 6];
        for &v in vs {
            c[v] += 1;
        }
        C6Profile::new(c)
    }

    #[test]
    fn alternating_triple_picks_first() {
        assert_eq!(l6_eval(&hx(&[0, 2, 4])).unwrap().to_vec(), vec![0]);
        assert_eq!(l6_eval(&hx(&[0, 2, 4, 4])).unwrap().to_vec(), vec![4]);
        assert_eq!(l6_eval(&hx(&[1, 3, 5])).unwrap().to_vec(), vec![1]);
        assert!(matches!(l6_eval(&C6Profile::default()), Err(ConsensusError::EmptyProfile)));
    }

    #[test]
    fn antipodes_and_small_profiles() {
        assert_eq!(l6_eval(&hx(&[0, 3])).unwrap().len(), 6);
        assert_eq!(l6_eval(&hx(&[1, 1, 2])).unwrap().to_vec(), vec![1]);
        assert_eq!(l6_eval(&hx(&[0, 2])).unwrap().to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn reduction_spot_case() {
        let s = hx(&[0]).concat(&hx(&[3]));
        assert!(s.reduced().is_empty());
        assert_eq!(hx(&[0]).reduced().concat(&hx(&[3]).reduced()).reduced(), s.reduced());
    }

    #[test]
    fn case_table_examples() {
        let v = |vs: &[Vertex]| case_table_value(&hx(vs).reduced()).unwrap().to_vec();
        assert_eq!(v(&[4]), vec![4]);
        assert_eq!(v(&[5, 0]), vec![0, 5]);
        assert_eq!(v(&[5, 5, 0]), vec![5]);
        assert_eq!(v(&[4, 0]), vec![0, 4, 5]);
        assert_eq!(v(&[4, 0, 5]), vec![5]);
        assert_eq!(v(&[0, 0, 1, 2]), vec![0, 1]);
        assert_eq!(case_table_value(&hx(&[0, 2, 4])), None);
    }

    #[test]
    fn short_verification() {
        let r = verify_l6_is_abc(4, Exec::Sequential).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.first_divergence.unwrap().profile.to_sequence(), vec![0, 2, 4]);
    }
}
