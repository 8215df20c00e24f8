use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{ConsensusError, TabulatedConsensus};
use crate::exec::Exec;
use crate::graph::{Vertex, VertexSet};
use crate::profile::Profile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Anonymity.
    A,
    /// Betweenness: `L(u, v) = I(u, v)`.
    B,
    /// Consistency: `L(π) ∩ L(ρ) ≠ ∅ ⇒ L(πρ) = L(π) ∩ L(ρ)`.
    C,
    /// `L(u, v, w) = {u, v, w}` on triangles.
    T,
    /// On triangles, one of `u, v, w` in `L(u, v, w)` forces all three.
    TMinus,
    /// `{u, v, w} ⊆ L(u, v, w)` on equilateral metric triangles of size 2.
    T2,
    /// As `T⁻`, on equilateral metric triangles of size `k`.
    E(u32),
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::A => f.write_str("A"),
            Axiom::B => f.write_str("B"),
            Axiom::C => f.write_str("C"),
            Axiom::T => f.write_str("T"),
            Axiom::TMinus => f.write_str("T-"),
            Axiom::T2 => f.write_str("T2"),
            Axiom::E(k) => write!(f, "E{k}"),
        }
    }
}

impl FromStr for Axiom {
    type Err = ConsensusError;

    /// `A`, `B`, `C`, `T`, `T-`, `T2` or `E<k>` with `k >= 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "A" => Axiom::A,
            "B" => Axiom::B,
            "C" => Axiom::C,
            "T" => Axiom::T,
            "T-" => Axiom::TMinus,
            "T2" => Axiom::T2,
            _ => match s.strip_prefix('E').and_then(|k| k.parse::<u32>().ok()) {
                Some(k) if k >= 1 => Axiom::E(k),
                _ => return Err(ConsensusError::UnknownAxiom(s.into())),
            },
        })
    }
}

impl Serialize for Axiom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomWitness {
    Betweenness { u: Vertex, v: Vertex, value: VertexSet, interval: VertexSet },
    Consistency { pi: Profile, rho: Profile, joint: VertexSet, meet: VertexSet },
    Triangle { u: Vertex, v: Vertex, w: Vertex, value: VertexSet },
    /// `x' ∈ L(π, x)` but not `x' ∈ L(π, x') ⊆ L(π, x)`.
    Xinl { pi: Profile, x: Vertex, x_prime: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    /// Instances examined (pairs for B, profile pairs for C, triangles ...).
    pub checked: u64,
    pub witness: Option<AxiomWitness>,
    pub max_len: usize,
    pub scope: &'static str,
}

fn needs(t: &TabulatedConsensus, axiom: Axiom, len: usize) -> Result<(), ConsensusError> {
    if t.max_len() < len {
        return Err(ConsensusError::TooShort { axiom: axiom.to_string(), needed: len, max: t.max_len() });
    }
    Ok(())
}

/// First violation in canonical order, if any.
pub fn check_axiom(t: &TabulatedConsensus, axiom: Axiom, exec: Exec) -> Result<AxiomReport, ConsensusError> {
    let g = t.graph();
    let n = g.vertex_count();
    let report = |checked: u64, witness: Option<AxiomWitness>| AxiomReport {
        axiom,
        holds: witness.is_none(),
        checked,
        witness,
        max_len: t.max_len(),
        scope: "within budget",
    };
    match axiom {
        // keyed on multisets: every ordering of a profile reads the same row
        Axiom::A => Ok(report(t.len() as u64, None)),
        Axiom::B => {
            needs(t, axiom, 2)?;
            let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
            let w = exec.find_first(pairs.len(), |i| {
                let (u, v) = pairs[i];
                let value = t.at(&[u, v]);
                let interval = g.interval(u, v);
                (*value != interval).then(|| AxiomWitness::Betweenness { u, v, value: value.clone(), interval })
            });
            Ok(report(pairs.len() as u64, w.map(|x| x.1)))
        }
        Axiom::C => {
            needs(t, axiom, 2)?;
            let len = |i: usize| t.key(i).total() as usize;
            let w = exec.find_first(t.len(), |i| {
                (i..t.len()).filter(|&j| len(i) + len(j) <= t.max_len()).find_map(|j| {
                    let meet = t.value(i).intersection(t.value(j));
                    if meet.is_empty() {
                        return None;
                    }
                    let joint = t.get(&t.key(i).concat(t.key(j))).expect("concatenation fits in the table");
                    (*joint != meet).then(|| AxiomWitness::Consistency {
                        pi: t.key(i).clone(),
                        rho: t.key(j).clone(),
                        joint: joint.clone(),
                        meet,
                    })
                })
            });
            let mut by_len = vec![0u64; t.max_len() + 1];
            for (p, _) in t.entries() {
                by_len[p.total() as usize] += 1;
            }
            let mut checked = 0u64;
            for a in 1..=t.max_len() {
                for b in a..=t.max_len() - a {
                    checked += if a == b { by_len[a] * (by_len[a] + 1) / 2 } else { by_len[a] * by_len[b] };
                }
            }
            Ok(report(checked, w.map(|x| x.1)))
        }
        Axiom::T | Axiom::TMinus | Axiom::T2 | Axiom::E(_) => {
            needs(t, axiom, 3)?;
            let size = match axiom {
                Axiom::T | Axiom::TMinus => 1,
                Axiom::T2 => 2,
                Axiom::E(k) => k,
                _ => unreachable!(),
            };
            let triples: Vec<[Vertex; 3]> = (0..n)
                .flat_map(|u| (u + 1..n).flat_map(move |v| (v + 1..n).map(move |w| [u, v, w])))
                .filter(|&[u, v, w]| {
                    g.d(u, v) == size && g.d(v, w) == size && g.d(u, w) == size && g.is_metric_triangle(u, v, w)
                })
                .collect();
            let w = exec.find_first(triples.len(), |i| {
                let [u, v, w] = triples[i];
                let value = t.at(&[u, v, w]);
                let all = VertexSet::from_vertices(n, [u, v, w]);
                let ok = match axiom {
                    Axiom::T => *value == all,
                    Axiom::T2 => all.is_subset(value),
                    _ => !value.intersects(&all) || all.is_subset(value),
                };
                (!ok).then(|| AxiomWitness::Triangle { u, v, w, value: value.clone() })
            });
            Ok(report(triples.len() as u64, w.map(|x| x.1)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XinlReport {
    pub holds: bool,
    pub checked: u64,
    pub witness: Option<AxiomWitness>,
}

/// `x' ∈ L(π, x) ⇒ x' ∈ L(π, x') ⊆ L(π, x)` for every nonempty `π` with
/// `|π| < max_len`.
pub fn check_xinl(t: &TabulatedConsensus, exec: Exec) -> XinlReport {
    let n = t.graph().vertex_count();
    let short: Vec<usize> = (0..t.len()).filter(|&i| (t.key(i).total() as usize) < t.max_len()).collect();
    let extend = |p: &Profile, x: Vertex| {
        let mut q = p.clone();
        q.add(x, 1);
        q
    };
    let results = exec.map(&short, |&i| {
        let pi = t.key(i);
        let mut checked = 0u64;
        for x in 0..n {
            let lx = t.get(&extend(pi, x)).expect("within bound");
            for xp in lx.iter() {
                checked += 1;
                let lxp = t.get(&extend(pi, xp)).expect("within bound");
                if !lxp.contains(xp) || !lxp.is_subset(lx) {
                    return (checked, Some(AxiomWitness::Xinl { pi: pi.clone(), x, x_prime: xp }));
                }
            }
        }
        (checked, None)
    });
    let checked = results.iter().map(|r| r.0).sum();
    let witness = results.into_iter().find_map(|r| r.1);
    XinlReport { holds: witness.is_none(), checked, witness }
}
