//! Profiles: finite multisets of vertices, stored as dense multiplicity
//! vectors. Text form is a whitespace-separated list of `v` or `v:k` tokens.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exec::Exec;
use crate::graph::{GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    counts: Vec<u32>,
}

impl Profile {
    pub fn empty(n: usize) -> Self {
        Profile { counts: vec![0; n] }
    }

    /// Each occurrence of a vertex adds one to its multiplicity.
    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(n: usize, it: I) -> Self {
        let mut p = Self::empty(n);
        for v in it {
            p.counts[v] += 1;
        }
        p
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        Profile { counts }
    }

    pub fn from_pairs(n: usize, pairs: &[(Vertex, u32)]) -> Self {
        let mut p = Self::empty(n);
        for &(v, k) in pairs {
            p.counts[v] += k;
        }
        p
    }

    pub fn universe(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> u32 {
        self.counts[v]
    }

    pub fn add(&mut self, v: Vertex, k: u32) {
        self.counts[v] += k;
    }

    /// Panics if `v` has fewer than `k` occurrences.
    pub fn remove(&mut self, v: Vertex, k: u32) {
        self.counts[v] = self.counts[v].checked_sub(k).expect("multiplicity underflow");
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&k| k as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&k| k == 0)
    }

    pub fn is_even(&self) -> bool {
        self.total() % 2 == 0
    }

    pub fn support(&self) -> Vec<Vertex> {
        (0..self.counts.len()).filter(|&v| self.counts[v] > 0).collect()
    }

    /// Sorted `(vertex, multiplicity)` list without zero entries.
    pub fn canonical(&self) -> Vec<(Vertex, u32)> {
        self.support().into_iter().map(|v| (v, self.counts[v])).collect()
    }

    /// Vertices repeated by multiplicity, in increasing order.
    pub fn to_sequence(&self) -> Vec<Vertex> {
        self.canonical()
            .into_iter()
            .flat_map(|(v, k)| std::iter::repeat_n(v, k as usize))
            .collect()
    }

    /// `π^k`: every multiplicity multiplied by `k`.
    pub fn power(&self, k: u32) -> Profile {
        Profile { counts: self.counts.iter().map(|&c| c * k).collect() }
    }

    /// Concatenation `πρ`.
    pub fn concat(&self, other: &Profile) -> Profile {
        debug_assert_eq!(self.universe(), other.universe());
        Profile { counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect() }
    }

    pub fn parse(text: &str, n: usize) -> Result<Profile, GraphError> {
        let mut p = Profile::empty(n);
        if text.trim() == "-" {
            return Ok(p);
        }
        for tok in text.split_whitespace() {
            let bad = |msg: String| GraphError::Parse { line: 1, msg };
            let (v, k) = match tok.split_once(':') {
                Some((v, k)) => (v, k.parse::<u32>().map_err(|_| bad(format!("bad multiplicity in `{tok}`")))?),
                None => (tok, 1),
            };
            let v: Vertex = v.parse().map_err(|_| bad(format!("bad vertex in `{tok}`")))?;
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            p.counts[v] += k;
        }
        Ok(p)
    }
}

/// `v:k` tokens separated by spaces; the empty profile prints as `-`.
impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if c.is_empty() {
            return f.write_str("-");
        }
        for (i, (v, k)) in c.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}:{k}")?;
        }
        Ok(())
    }
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("enumeration would produce {count} profiles, above the cap of {cap}")]
pub struct BudgetError {
    pub count: u128,
    pub cap: u128,
}

/// Bounds for exhaustive profile enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileBudget {
    pub max_support: usize,
    pub max_mult: u32,
    /// Refuse to enumerate more than this many profiles.
    pub cap: u128,
    pub exec: Exec,
}

impl ProfileBudget {
    pub fn new(max_support: usize, max_mult: u32) -> Self {
        ProfileBudget { max_support, max_mult, cap: 2_000_000, exec: Exec::default() }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// Number of nonempty profiles on `n` vertices within the budget.
    pub fn count(&self, n: usize) -> u128 {
        let mut total = 0u128;
        let mut binom = 1u128;
        for s in 1..=self.max_support.min(n) {
            binom = binom * (n - s + 1) as u128 / s as u128;
            total = total.saturating_add(binom.saturating_mul((self.max_mult as u128).saturating_pow(s as u32)));
        }
        total
    }

    /// All nonempty profiles with support size `<= max_support` and
    /// multiplicities in `1..=max_mult`, ordered by support size, then
    /// support (lexicographic), then multiplicities (lexicographic).
    pub fn enumerate(&self, n: usize) -> Result<Vec<Profile>, BudgetError> {
        let count = self.count(n);
        if count > self.cap {
            return Err(BudgetError { count, cap: self.cap });
        }
        let mut out = Vec::with_capacity(count as usize);
        for s in 1..=self.max_support.min(n) {
            let mut support: Vec<Vertex> = (0..s).collect();
            loop {
                let mut mult = vec![1u32; s];
                loop {
                    out.push(Profile::from_pairs(
                        n,
                        &support.iter().copied().zip(mult.iter().copied()).collect::<Vec<_>>(),
                    ));
                    if !odometer(&mut mult, self.max_mult) {
                        break;
                    }
                }
                if !next_combination(&mut support, n) {
                    break;
                }
            }
        }
        Ok(out)
    }
}

/// Lexicographic increment of a vector over `1..=max`; `false` on wrap.
fn odometer(digits: &mut [u32], max: u32) -> bool {
    for i in (0..digits.len()).rev() {
        if digits[i] < max {
            digits[i] += 1;
            for d in &mut digits[i + 1..] {
                *d = 1;
            }
            return true;
        }
    }
    false
}

/// Next `k`-subset of `0..n` in lexicographic order; `false` after the last.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let p = Profile::parse("2 0:3 2 5", 6).unwrap();
        assert_eq!(p.canonical(), vec![(0, 3), (2, 2), (5, 1)]);
        assert_eq!(p.to_string(), "0:3 2:2 5:1");
        assert_eq!(Profile::parse(&p.to_string(), 6).unwrap(), p);
        assert_eq!(p.total(), 6);
        assert_eq!(Profile::empty(3).to_string(), "-");
        assert!(Profile::parse("7", 6).is_err());
        assert!(Profile::parse("1:x", 6).is_err());
    }

    #[test]
    fn enumeration_order_and_count() {
        let b = ProfileBudget::new(2, 2);
        let all = b.enumerate(3).unwrap();
        assert_eq!(all.len() as u128, b.count(3));
        assert_eq!(all.len(), 3 * 2 + 3 * 4);
        let shown: Vec<String> = all.iter().take(8).map(|p| p.to_string()).collect();
        assert_eq!(shown, ["0:1", "0:2", "1:1", "1:2", "2:1", "2:2", "0:1 1:1", "0:1 1:2"]);
        let tight = ProfileBudget { cap: 5, ..b };
        assert_eq!(tight.enumerate(3), Err(BudgetError { count: 18, cap: 5 }));
    }

    #[test]
    fn powers_and_concatenation() {
        let p = Profile::from_vertices(4, [0, 1, 1]);
        assert_eq!(p.power(2).counts(), &[2, 4, 0, 0]);
        assert_eq!(p.concat(&Profile::from_vertices(4, [3])).to_sequence(), vec![0, 1, 1, 3]);
    }
}
