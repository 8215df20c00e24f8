//! Exact linear programming over the rationals.
//!
//! Two-phase dense tableau simplex with Bland's rule. All variables are
//! implicitly nonnegative. Sizes here are tiny (tens of variables), so the
//! dense tableau and big-integer arithmetic are affordable and keep every
//! verdict exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().zip(point).map(|(a, x)| a * x).sum()
    }

    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        let l = self.lhs(point);
        match self.relation {
            Relation::Le => l <= self.rhs,
            Relation::Ge => l >= self.rhs,
            Relation::Eq => l == self.rhs,
        }
    }
}

/// Linear constraints over nonnegative rational variables, with an optional
/// objective to minimize.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RationalLinearSystem {
    num_vars: usize,
    constraints: Vec<Constraint>,
    objective: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { point: Vec<Rational>, value: Rational },
    Infeasible,
    /// The objective decreases without bound; `point` is a feasible vertex.
    Unbounded { point: Vec<Rational> },
}

impl LpOutcome {
    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point } => Some(point),
            LpOutcome::Infeasible => None,
        }
    }
}

impl RationalLinearSystem {
    pub fn new(num_vars: usize) -> Self {
        RationalLinearSystem { num_vars, constraints: Vec::new(), objective: None }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> Option<&[Rational]> {
        self.objective.as_deref()
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "coefficient vector has wrong length");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Adds `Σ coeff * x_var  (relation)  rhs` from sparse integer terms.
    pub fn add_terms(&mut self, terms: &[(usize, i64)], relation: Relation, rhs: i64) {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for &(v, a) in terms {
            coeffs[v] += rat(a);
        }
        self.add(coeffs, relation, rat(rhs));
    }

    pub fn set_objective(&mut self, coeffs: Vec<Rational>) {
        assert_eq!(coeffs.len(), self.num_vars, "objective has wrong length");
        self.objective = Some(coeffs);
    }

    pub fn set_objective_terms(&mut self, terms: &[(usize, i64)]) {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for &(v, a) in terms {
            coeffs[v] += rat(a);
        }
        self.set_objective(coeffs);
    }

    /// Nonnegativity plus every constraint.
    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars
            && point.iter().all(|x| !x.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied_by(point))
    }

    pub fn objective_value(&self, point: &[Rational]) -> Rational {
        match &self.objective {
            Some(c) => c.iter().zip(point).map(|(a, x)| a * x).sum(),
            None => Rational::zero(),
        }
    }

    pub fn solve(&self) -> LpOutcome {
        Simplex::build(self).run(self)
    }
}

/// Dense tableau in equality form. Columns are original variables, then
/// slack/surplus columns, then artificial columns; the last entry of each
/// row is the right-hand side.
struct Simplex {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
    first_artificial: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Simplex {
    fn build(sys: &RationalLinearSystem) -> Simplex {
        let n = sys.num_vars;
        // flip rows so every right-hand side is nonnegative
        let normalized: Vec<(Vec<Rational>, Relation, Rational)> = sys
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|a| -a).collect(), rel, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let slacks = normalized.iter().filter(|c| c.1 != Relation::Eq).count();
        let artificials = normalized.iter().filter(|c| c.1 != Relation::Le).count();
        let cols = n + slacks + artificials;
        let first_artificial = n + slacks;
        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut s, mut a) = (n, first_artificial);
        for (coeffs, rel, rhs) in normalized {
            let mut row = coeffs;
            row.resize(cols + 1, Rational::zero());
            row[cols] = rhs;
            match rel {
                Relation::Le => {
                    row[s] = Rational::one();
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = -Rational::one();
                    s += 1;
                    row[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
            }
            rows.push(row);
        }
        Simplex { rows, basis, cols, first_artificial }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost` over columns `< limit` using Bland's rule.
    fn optimize(&mut self, cost: &[Rational], limit: usize) -> Step {
        loop {
            let mut entering = None;
            for j in 0..limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (r, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        reduced -= &cost[self.basis[r]] * &row[j];
                    }
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[j];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, j),
                None => return Step::Unbounded,
            }
        }
    }

    fn point(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rows[r][self.cols].clone();
            }
        }
        x
    }

    fn run(mut self, sys: &RationalLinearSystem) -> LpOutcome {
        let n = sys.num_vars;
        if self.first_artificial < self.cols {
            let mut cost = vec![Rational::zero(); self.cols];
            for c in cost.iter_mut().skip(self.first_artificial) {
                *c = Rational::one();
            }
            self.optimize(&cost, self.cols);
            let infeasibility: Rational = self
                .basis
                .iter()
                .enumerate()
                .filter(|(_, &b)| b >= self.first_artificial)
                .map(|(r, _)| self.rows[r][self.cols].clone())
                .sum();
            if infeasibility.is_positive() {
                return LpOutcome::Infeasible;
            }
            // drive zero-valued artificials out of the basis; drop redundant rows
            let mut r = 0;
            while r < self.rows.len() {
                if self.basis[r] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                        Some(j) => self.pivot(r, j),
                        None => {
                            self.rows.remove(r);
                            self.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
        }
        let mut cost = vec![Rational::zero(); self.cols];
        if let Some(c) = &sys.objective {
            cost[..n].clone_from_slice(c);
        }
        match self.optimize(&cost, self.first_artificial) {
            Step::Optimal => {
                let point = self.point(n);
                let value = sys.objective_value(&point);
                LpOutcome::Optimal { point, value }
            }
            Step::Unbounded => LpOutcome::Unbounded { point: self.point(n) },
        }
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator(xs: &[Rational]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Multiplies by twice the common denominator, giving even nonnegative
/// integers.
pub fn scale_to_even_integers(xs: &[Rational]) -> Vec<BigInt> {
    let k: BigInt = common_denominator(xs) * BigInt::from(2);
    xs.iter().map(|x| (x * Rational::from_integer(k.clone())).to_integer()).collect()
}

/// Decimal `p` or `p/q` strings.
pub fn to_strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6
        let mut s = RationalLinearSystem::new(2);
        s.add_terms(&[(0, 1), (1, 2)], Relation::Le, 4);
        s.add_terms(&[(0, 3), (1, 1)], Relation::Le, 6);
        s.set_objective_terms(&[(0, -1), (1, -1)]);
        match s.solve() {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(point, vec![q(8, 5), q(6, 5)]);
                assert_eq!(value, q(-14, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equalities_and_infeasibility() {
        let mut s = RationalLinearSystem::new(3);
        s.add_terms(&[(0, 1), (1, 1), (2, 1)], Relation::Eq, 1);
        s.add_terms(&[(0, 1), (1, -1)], Relation::Ge, 0);
        s.set_objective_terms(&[(2, 1), (0, -1)]);
        let out = s.solve();
        assert!(s.is_satisfied_by(out.point().unwrap()));
        assert_eq!(out, LpOutcome::Optimal { point: vec![rat(1), rat(0), rat(0)], value: rat(-1) });

        let mut t = RationalLinearSystem::new(2);
        t.add_terms(&[(0, 1), (1, 1)], Relation::Le, 1);
        t.add_terms(&[(0, 1)], Relation::Ge, 2);
        assert_eq!(t.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_and_redundant_rows() {
        let mut s = RationalLinearSystem::new(2);
        s.add_terms(&[(0, 1), (1, -1)], Relation::Eq, 0);
        s.add_terms(&[(0, 2), (1, -2)], Relation::Eq, 0);
        s.set_objective_terms(&[(0, -1)]);
        assert!(matches!(s.solve(), LpOutcome::Unbounded { .. }));
        // negative right-hand side is normalized
        let mut t = RationalLinearSystem::new(1);
        t.add_terms(&[(0, -1)], Relation::Le, -3);
        t.set_objective_terms(&[(0, 1)]);
        assert_eq!(t.solve(), LpOutcome::Optimal { point: vec![rat(3)], value: rat(3) });
    }

    #[test]
    fn scaling() {
        let xs = [q(1, 3), q(1, 2), rat(0)];
        assert_eq!(common_denominator(&xs), BigInt::from(6));
        assert_eq!(scale_to_even_integers(&xs), vec![BigInt::from(4), BigInt::from(6), BigInt::from(0)]);
    }
}
