//! Consensus functions tabulated on all profiles up to a length bound, the
//! axioms they are checked against, and the alternative function `L₆` on
//! the hexagon.
//!
//! Table text format: one line per profile, `profile | vertex-set`, where
//! the profile uses `v:k` tokens and the set lists vertices separated by
//! spaces.

pub mod axioms;
pub mod l6;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::graph::io::content_lines;
use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::median::median_set;
use crate::profile::Profile;

pub use axioms::{check_axiom, check_xinl, Axiom, AxiomReport, AxiomWitness};
pub use l6::{l6_eval, verify_l6_is_abc, C6Profile, L6Report};

pub const DEFAULT_TABLE_CAP: u128 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsensusError {
    #[error("table would hold {count} profiles, above the cap of {cap}")]
    Cap { count: u128, cap: u128 },
    #[error("axiom {axiom} needs profiles of length {needed}, the table stops at {max}")]
    TooShort { axiom: String, needed: usize, max: usize },
    #[error("tables differ in graph or length bound")]
    DomainMismatch,
    #[error("profile is empty")]
    EmptyProfile,
    #[error("a hexagon profile has 6 entries, got {0}")]
    NotHexagon(usize),
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Number of nonempty multisets of size at most `max_len` over `n` points.
pub fn profile_count(n: usize, max_len: usize) -> u128 {
    // C(n + L, L) - 1
    let mut c = 1u128;
    for i in 1..=max_len as u128 {
        c = c * (n as u128 + i) / i;
    }
    c - 1
}

/// All nonempty profiles of length at most `max_len`, by length and then
/// by sorted vertex sequence.
pub fn canonical_profiles(n: usize, max_len: usize, cap: u128) -> Result<Vec<Profile>, ConsensusError> {
    let count = profile_count(n, max_len);
    if count > cap {
        return Err(ConsensusError::Cap { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    for len in 1..=max_len {
        let mut seq = vec![0; len];
        loop {
            out.push(Profile::from_vertices(n, seq.iter().copied()));
            // next non-decreasing sequence
            let Some(i) = (0..len).rev().find(|&i| seq[i] + 1 < n) else { break };
            let v = seq[i] + 1;
            for x in &mut seq[i..] {
                *x = v;
            }
        }
    }
    Ok(out)
}

/// A consensus function given by its values on every profile of length
/// `1..=max_len`.
#[derive(Debug, Clone)]
pub struct TabulatedConsensus {
    graph: Graph,
    max_len: usize,
    keys: Vec<Profile>,
    values: Vec<VertexSet>,
    index: HashMap<Profile, usize>,
}

impl TabulatedConsensus {
    pub fn tabulate<F>(g: &Graph, max_len: usize, cap: u128, exec: Exec, f: F) -> Result<Self, ConsensusError>
    where
        F: Fn(&Profile) -> VertexSet + Sync + Send,
    {
        let keys = canonical_profiles(g.vertex_count(), max_len, cap)?;
        let values = exec.map(&keys, f);
        Ok(Self::from_parts(g.clone(), max_len, keys, values))
    }

    fn from_parts(graph: Graph, max_len: usize, keys: Vec<Profile>, values: Vec<VertexSet>) -> Self {
        let index = keys.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        TabulatedConsensus { graph, max_len, keys, values, index }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn get(&self, p: &Profile) -> Option<&VertexSet> {
        self.index.get(p).map(|&i| &self.values[i])
    }

    /// Value on the profile listing `vs`; panics when it is not tabulated.
    pub fn at(&self, vs: &[Vertex]) -> &VertexSet {
        let p = Profile::from_vertices(self.graph.vertex_count(), vs.iter().copied());
        self.get(&p).unwrap_or_else(|| panic!("profile {p} is not in the table"))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Profile, &VertexSet)> {
        self.keys.iter().zip(&self.values)
    }

    pub(crate) fn key(&self, i: usize) -> &Profile {
        &self.keys[i]
    }

    pub(crate) fn value(&self, i: usize) -> &VertexSet {
        &self.values[i]
    }

    /// Replaces one value; used to fabricate violations.
    pub fn with_value(mut self, p: &Profile, value: VertexSet) -> Self {
        let i = self.index[p];
        self.values[i] = value;
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (p, v) in self.entries() {
            let set: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{p} | {}\n", set.join(" ")));
        }
        s
    }

    /// Reads a table over `g`. The length bound is the longest profile
    /// present; every shorter canonical profile must appear exactly once.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, ConsensusError> {
        let n = g.vertex_count();
        let mut rows: HashMap<Profile, VertexSet> = HashMap::new();
        let mut max_len = 0;
        for (line, l) in content_lines(text) {
            let bad = |msg: String| ConsensusError::Parse { line, msg };
            let (p, v) = l.split_once('|').ok_or_else(|| bad("expected `profile | vertex-set`".into()))?;
            let p = Profile::parse(p, n).map_err(|e| bad(e.to_string()))?;
            if p.is_empty() {
                return Err(bad("empty profile".into()));
            }
            let mut set = VertexSet::empty(n);
            for t in v.split_whitespace() {
                let x: Vertex = t.parse().map_err(|_| bad(format!("bad vertex `{t}`")))?;
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n }.into());
                }
                set.insert(x);
            }
            if set.is_empty() {
                return Err(bad(format!("empty value for {p}")));
            }
            max_len = max_len.max(p.total() as usize);
            if rows.insert(p.clone(), set).is_some() {
                return Err(bad(format!("duplicate row for {p}")));
            }
        }
        let keys = canonical_profiles(n, max_len, DEFAULT_TABLE_CAP)?;
        if keys.len() != rows.len() {
            let missing = keys.iter().find(|k| !rows.contains_key(k)).expect("some profile is missing");
            return Err(ConsensusError::Parse { line: 0, msg: format!("no row for {missing}") });
        }
        let values = keys.iter().map(|k| rows.remove(k).expect("checked above")).collect();
        Ok(Self::from_parts(g.clone(), max_len, keys, values))
    }
}

pub fn tabulate_median(g: &Graph, max_len: usize, cap: u128, exec: Exec) -> Result<TabulatedConsensus, ConsensusError> {
    TabulatedConsensus::tabulate(g, max_len, cap, exec, |p| median_set(g, p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub profile: Profile,
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Profiles where the two tables disagree, in canonical order.
pub fn compare_functions(a: &TabulatedConsensus, b: &TabulatedConsensus) -> Result<Vec<Divergence>, ConsensusError> {
    if a.graph != b.graph || a.max_len != b.max_len {
        return Err(ConsensusError::DomainMismatch);
    }
    Ok(a.entries()
        .zip(b.entries())
        .filter(|((_, x), (_, y))| x != y)
        .map(|((p, x), (_, y))| Divergence { profile: p.clone(), left: x.clone(), right: y.clone() })
        .collect())
}
