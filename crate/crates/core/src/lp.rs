//! Dense-tableau primal simplex over exact rationals.
//!
//! Solves `min c^T x  s.t.  A x >= b,  x >= 0` with a two-phase method and
//! Bland's rule for both the entering and the leaving variable, so every run
//! terminates and identical inputs give identical outputs. Duals are read
//! off the reduced costs of the surplus columns.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{dot, format_rat, serde_rat, Rat};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub num_vars: usize,
    /// Minimized.
    pub objective: Vec<Rat>,
    /// Each row reads `rows[i] . x >= rhs[i]`.
    pub rows: Vec<Vec<Rat>>,
    pub rhs: Vec<Rat>,
}

impl LpProblem {
    pub fn new(objective: Vec<Rat>, rows: Vec<Vec<Rat>>, rhs: Vec<Rat>) -> Result<Self> {
        let p = LpProblem {
            num_vars: objective.len(),
            objective,
            rows,
            rhs,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.objective.len() != self.num_vars {
            return Err(Error::Dimension(format!(
                "objective has {} entries for {} variables",
                self.objective.len(),
                self.num_vars
            )));
        }
        if self.rhs.len() != self.rows.len() {
            return Err(Error::Dimension(format!(
                "{} right-hand sides for {} constraints",
                self.rhs.len(),
                self.rows.len()
            )));
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() != self.num_vars) {
            return Err(Error::Dimension(format!(
                "constraint {i} has {} coefficients for {} variables",
                self.rows[i].len(),
                self.num_vars
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    pub status: LpStatus,
    #[serde(with = "serde_rat::vec")]
    pub primal: Vec<Rat>,
    /// One multiplier per constraint.
    #[serde(with = "serde_rat::vec")]
    pub dual: Vec<Rat>,
    #[serde(with = "serde_rat")]
    pub objective: Rat,
}

impl LpSolution {
    fn empty(status: LpStatus) -> Self {
        LpSolution {
            status,
            primal: Vec::new(),
            dual: Vec::new(),
            objective: Rat::zero(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn into_optimal(self) -> Result<Self> {
        match self.status {
            LpStatus::Optimal => Ok(self),
            LpStatus::Infeasible => Err(Error::LpStatus("infeasible".into())),
            LpStatus::Unbounded => Err(Error::LpStatus("unbounded".into())),
        }
    }
}

struct Tableau {
    m: usize,
    /// The final entry of every row is the right-hand side.
    rows: Vec<Vec<Rat>>,
    /// Reduced costs; last entry holds minus the current objective.
    cost: Vec<Rat>,
    basis: Vec<usize>,
    /// Artificial columns never enter the basis.
    artificial: Vec<bool>,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    fn set_costs(&mut self, c: &[Rat]) {
        let w = self.width();
        let mut cost: Vec<Rat> = c.to_vec();
        cost.push(Rat::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                if !row[j].is_zero() {
                    cost[j] -= cb * &row[j];
                }
            }
        }
        self.cost = cost;
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x /= &p;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (x, y) in self.cost.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Bland's rule over the non-artificial columns.
    fn run(&mut self) -> Outcome {
        let w = self.width();
        loop {
            let entering = (0..w).find(|&j| !self.artificial[j] && self.cost[j].is_negative());
            let Some(col) = entering else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.m {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][w] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, col),
                None => return Outcome::Unbounded,
            }
        }
    }

    /// Appends a column before the right-hand side.
    fn push_column(&mut self, entries: Vec<Rat>, reduced_cost: Rat, artificial: bool) {
        let w = self.width();
        for (row, x) in self.rows.iter_mut().zip(entries) {
            row.insert(w, x);
        }
        self.cost.insert(w, reduced_cost);
        self.artificial.push(artificial);
    }
}

/// Solves `p` exactly. When optimal, the primal is a basic feasible solution
/// and the dual certifies optimality with equal objective.
pub fn solve(p: &LpProblem) -> Result<LpSolution> {
    Ok(ColumnLp::new(p)?.solution())
}

/// An LP that can grow by columns after it has been solved. Each new column
/// is priced into the current optimal tableau and the simplex continues from
/// that basis, so the result is deterministic in the sequence of additions.
pub struct ColumnLp {
    t: Tableau,
    status: LpStatus,
    rhs: Vec<Rat>,
    objective: Vec<Rat>,
    /// Tableau column of each structural variable.
    vars: Vec<usize>,
    /// Tableau column of each surplus variable.
    surplus: Vec<usize>,
    /// Column that started as the unit vector of each row.
    unit: Vec<usize>,
    /// Rows with non-positive right-hand side were negated.
    negated: Vec<bool>,
    /// Phase-two cost of every tableau column.
    costs: Vec<Rat>,
}

impl ColumnLp {
    pub fn new(p: &LpProblem) -> Result<Self> {
        p.validate()?;
        let n = p.num_vars;
        let m = p.num_constraints();

        let negated: Vec<bool> = p.rhs.iter().map(|b| !b.is_positive()).collect();
        let k = negated.iter().filter(|&&neg| !neg).count();
        let width = n + m + k;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_art = n + m;
        for i in 0..m {
            let mut row = vec![Rat::zero(); width + 1];
            if negated[i] {
                for (x, a) in row[..n].iter_mut().zip(&p.rows[i]) {
                    *x = -a;
                }
                row[n + i] = Rat::from_integer(1.into());
                row[width] = -&p.rhs[i];
                basis.push(n + i);
            } else {
                row[..n].clone_from_slice(&p.rows[i]);
                row[n + i] = -Rat::from_integer(1.into());
                row[next_art] = Rat::from_integer(1.into());
                row[width] = p.rhs[i].clone();
                basis.push(next_art);
                next_art += 1;
            }
            rows.push(row);
        }
        let mut artificial = vec![false; n + m];
        artificial.resize(width, true);
        let unit = basis.clone();
        let mut t = Tableau {
            m,
            rows,
            cost: vec![Rat::zero(); width + 1],
            basis,
            artificial,
        };
        let mut costs = p.objective.clone();
        costs.resize(width, Rat::zero());
        let status = Self::optimize(&mut t, k > 0, &costs);
        Ok(ColumnLp {
            t,
            status,
            rhs: p.rhs.clone(),
            objective: p.objective.clone(),
            vars: (0..n).collect(),
            surplus: (n..n + m).collect(),
            unit,
            negated,
            costs,
        })
    }

    fn optimize(t: &mut Tableau, phase1: bool, costs: &[Rat]) -> LpStatus {
        let width = t.width();
        if phase1 {
            let art: Vec<Rat> = t
                .artificial
                .iter()
                .map(|&a| {
                    if a {
                        Rat::from_integer(1.into())
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            t.set_costs(&art);
            // Phase 1 is bounded below by zero.
            t.run();
            if !t.cost[width].is_zero() {
                return LpStatus::Infeasible;
            }
            for r in 0..t.m {
                if !t.artificial[t.basis[r]] {
                    continue;
                }
                if let Some(col) = (0..width).find(|&j| !t.artificial[j] && !t.rows[r][j].is_zero())
                {
                    t.pivot(r, col);
                }
                // Otherwise the row is redundant and its artificial stays at zero.
            }
        }
        t.set_costs(costs);
        match t.run() {
            Outcome::Optimal => LpStatus::Optimal,
            Outcome::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn status(&self) -> LpStatus {
        self.status
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// Adds a variable with the given cost and constraint coefficients and
    /// re-optimizes. Only an optimal LP can grow.
    pub fn add_column(&mut self, cost: Rat, column: &[Rat]) -> Result<LpSolution> {
        if self.status != LpStatus::Optimal {
            return Err(Error::LpStatus(format!(
                "cannot add a column to a {:?} problem",
                self.status
            )));
        }
        if column.len() != self.t.m {
            return Err(Error::Dimension(format!(
                "column has {} entries for {} constraints",
                column.len(),
                self.t.m
            )));
        }
        let start: Vec<Rat> = column
            .iter()
            .zip(&self.negated)
            .map(|(a, &neg)| if neg { -a } else { a.clone() })
            .collect();
        let entries: Vec<Rat> = self
            .t
            .rows
            .iter()
            .map(|row| {
                self.unit
                    .iter()
                    .zip(&start)
                    .filter(|(_, a)| !a.is_zero())
                    .fold(Rat::zero(), |acc, (&u, a)| acc + &row[u] * a)
            })
            .collect();
        let mut reduced = cost.clone();
        for (x, &b) in entries.iter().zip(&self.t.basis) {
            if !x.is_zero() {
                reduced -= &self.costs[b] * x;
            }
        }
        self.vars.push(self.t.width());
        self.costs.push(cost.clone());
        self.objective.push(cost);
        self.t.push_column(entries, reduced, false);
        if let Outcome::Unbounded = self.t.run() {
            self.status = LpStatus::Unbounded;
        }
        Ok(self.solution())
    }

    pub fn solution(&self) -> LpSolution {
        if self.status != LpStatus::Optimal {
            return LpSolution::empty(self.status);
        }
        let w = self.t.width();
        let mut value = vec![Rat::zero(); w];
        for (r, &b) in self.t.basis.iter().enumerate() {
            value[b] = self.t.rows[r][w].clone();
        }
        let primal: Vec<Rat> = self.vars.iter().map(|&j| value[j].clone()).collect();
        let dual: Vec<Rat> = self
            .surplus
            .iter()
            .map(|&j| self.t.cost[j].clone())
            .collect();
        let objective = dot(&self.objective, &primal);
        debug_assert_eq!(objective, dot(&self.rhs, &dual));
        LpSolution {
            status: LpStatus::Optimal,
            primal,
            dual,
            objective,
        }
    }
}

/// Re-checks an optimal solution using only rational arithmetic: primal and
/// dual feasibility, both objectives, and complementary slackness.
pub fn check_certificate(p: &LpProblem, s: &LpSolution) -> Report {
    let mut report = Report::new();
    let dims_ok =
        p.validate().is_ok() && s.primal.len() == p.num_vars && s.dual.len() == p.num_constraints();
    report.record(
        "dimensions",
        if dims_ok {
            Ok(())
        } else {
            Err(format!(
                "primal has {} entries, dual {}; problem has {} variables, {} constraints",
                s.primal.len(),
                s.dual.len(),
                p.num_vars,
                p.num_constraints()
            ))
        },
    );
    report.record(
        "status",
        if s.is_optimal() {
            Ok(())
        } else {
            Err(format!("status is {:?}", s.status))
        },
    );
    if !dims_ok {
        return report;
    }

    let activity: Vec<Rat> = p.rows.iter().map(|r| dot(r, &s.primal)).collect();
    report.record("primal_feasibility", {
        if let Some(j) = s.primal.iter().position(|x| x.is_negative()) {
            Err(format!("x{j} = {} < 0", format_rat(&s.primal[j])))
        } else if let Some(i) = (0..p.num_constraints()).find(|&i| activity[i] < p.rhs[i]) {
            Err(format!(
                "constraint {i}: {} < {}",
                format_rat(&activity[i]),
                format_rat(&p.rhs[i])
            ))
        } else {
            Ok(())
        }
    });

    let reduced: Vec<Rat> = (0..p.num_vars)
        .map(|j| {
            let col: Rat = p
                .rows
                .iter()
                .zip(&s.dual)
                .fold(Rat::zero(), |acc, (r, y)| acc + &r[j] * y);
            &p.objective[j] - col
        })
        .collect();
    report.record("dual_feasibility", {
        if let Some(i) = s.dual.iter().position(|y| y.is_negative()) {
            Err(format!("y{i} = {} < 0", format_rat(&s.dual[i])))
        } else if let Some(j) = reduced.iter().position(|d| d.is_negative()) {
            Err(format!(
                "column {j}: reduced cost {} < 0",
                format_rat(&reduced[j])
            ))
        } else {
            Ok(())
        }
    });

    let primal_obj = dot(&p.objective, &s.primal);
    let dual_obj = dot(&p.rhs, &s.dual);
    report.record(
        "objective_equality",
        if primal_obj == s.objective && dual_obj == s.objective {
            Ok(())
        } else {
            Err(format!(
                "stated {}, primal {}, dual {}",
                format_rat(&s.objective),
                format_rat(&primal_obj),
                format_rat(&dual_obj)
            ))
        },
    );

    report.record("complementary_slackness", {
        let row_gap =
            (0..p.num_constraints()).find(|&i| !s.dual[i].is_zero() && activity[i] != p.rhs[i]);
        let col_gap = (0..p.num_vars).find(|&j| !s.primal[j].is_zero() && !reduced[j].is_zero());
        match (row_gap, col_gap) {
            (Some(i), _) => Err(format!("constraint {i} has positive dual but slack")),
            (_, Some(j)) => Err(format!("x{j} positive with nonzero reduced cost")),
            _ => Ok(()),
        }
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, int, rat};

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn k3_problem() -> LpProblem {
        LpProblem::new(
            ints(&[1, 1, 1]),
            vec![ints(&[1, 1, 0]), ints(&[1, 0, 1]), ints(&[0, 1, 1])],
            ints(&[1, 1, 1]),
        )
        .unwrap()
    }

    #[test]
    fn single_bound() {
        let p = LpProblem::new(ints(&[1]), vec![ints(&[1])], ints(&[1])).unwrap();
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.primal, ints(&[1]));
        assert_eq!(s.objective, int(1));
    }

    #[test]
    fn single_edge_is_integral_extreme_point() {
        let p = LpProblem::new(ints(&[1, 1]), vec![ints(&[1, 1])], ints(&[1])).unwrap();
        let s = solve(&p).unwrap();
        assert_eq!(s.objective, int(1));
        assert!(s.primal == ints(&[1, 0]) || s.primal == ints(&[0, 1]));
    }

    #[test]
    fn triangle_lp() {
        let p = k3_problem();
        let s = solve(&p).unwrap();
        assert_eq!(s.objective, rat(3, 2));
        assert_eq!(s.primal, vec![half(), half(), half()]);
        assert_eq!(s.dual, vec![half(), half(), half()]);
        assert!(check_certificate(&p, &s).all_passed());
    }

    #[test]
    fn unbounded_and_infeasible() {
        let p = LpProblem::new(ints(&[-1]), vec![ints(&[1])], ints(&[0])).unwrap();
        assert_eq!(solve(&p).unwrap().status, LpStatus::Unbounded);
        // x >= 2 and -x >= -1
        let p = LpProblem::new(ints(&[1]), vec![ints(&[1]), ints(&[-1])], ints(&[2, -1])).unwrap();
        assert_eq!(solve(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(
            LpProblem::new(ints(&[1, 1]), vec![ints(&[1])], ints(&[1])),
            Err(Error::Dimension(_))
        ));
        let p = LpProblem {
            num_vars: 1,
            objective: ints(&[1]),
            rows: vec![ints(&[1])],
            rhs: vec![],
        };
        assert!(matches!(solve(&p), Err(Error::Dimension(_))));
    }

    #[test]
    fn certificate_rejects_tampering() {
        let p = k3_problem();
        let s = solve(&p).unwrap();
        let mut bad = s.clone();
        bad.primal[2] = rat(1, 4);
        let r = check_certificate(&p, &bad);
        let c = r.get("primal_feasibility").unwrap();
        assert!(!c.passed);
        // constraint 1 is x0 + x2 >= 1, the first violated in row order
        assert!(c.detail.contains("constraint 1"), "{}", c.detail);
        assert!(r.passed("dual_feasibility"));

        let mut bad = s.clone();
        bad.objective = int(2);
        let r = check_certificate(&p, &bad);
        assert!(!r.passed("objective_equality"));
        assert!(r.passed("primal_feasibility"));
    }

    #[test]
    fn degenerate_instance_terminates() {
        // Beale-style degenerate LP, written as >= constraints
        let p = LpProblem::new(
            vec![rat(-3, 4), int(150), rat(-1, 50), int(6)],
            vec![
                vec![rat(-1, 4), int(60), rat(1, 25), int(-9)],
                vec![rat(-1, 2), int(90), rat(1, 50), int(-3)],
                vec![int(0), int(0), int(-1), int(0)],
            ],
            vec![int(0), int(0), int(-1)],
        )
        .unwrap();
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective, rat(-1, 20));
        assert!(check_certificate(&p, &s).all_passed());
    }

    #[test]
    fn redundant_equal_rows() {
        let p = LpProblem::new(
            ints(&[1, 2]),
            vec![ints(&[1, 1]), ints(&[1, 1]), ints(&[2, 2])],
            ints(&[1, 1, 2]),
        )
        .unwrap();
        let s = solve(&p).unwrap();
        assert_eq!(s.objective, int(1));
        assert!(check_certificate(&p, &s).all_passed());
    }

    #[test]
    fn added_columns_match_a_fresh_solve() {
        // covering LP of C5 by edges, then adding the independent sets
        let mut p = LpProblem::new(
            ints(&[1; 5]),
            (0..5)
                .map(|v| (0..5).map(|c| int(i64::from(c == v))).collect())
                .collect(),
            ints(&[1; 5]),
        )
        .unwrap();
        let mut lp = ColumnLp::new(&p).unwrap();
        for pair in [[0, 2], [1, 3], [2, 4], [0, 3], [1, 4]] {
            let col: Vec<Rat> = (0..5).map(|v| int(i64::from(pair.contains(&v)))).collect();
            let grown = lp.add_column(int(1), &col).unwrap();
            p.num_vars += 1;
            p.objective.push(int(1));
            for (row, a) in p.rows.iter_mut().zip(&col) {
                row.push(a.clone());
            }
            let fresh = solve(&p).unwrap();
            assert_eq!(grown.objective, fresh.objective);
            assert!(check_certificate(&p, &grown).all_passed());
        }
        assert_eq!(lp.num_vars(), 10);
        assert_eq!(lp.solution().objective, rat(5, 2));
    }

    #[test]
    fn growing_requires_an_optimal_problem() {
        let p = LpProblem::new(ints(&[1]), vec![ints(&[-1])], ints(&[1])).unwrap();
        let mut lp = ColumnLp::new(&p).unwrap();
        assert_eq!(lp.status(), LpStatus::Infeasible);
        assert!(matches!(
            lp.add_column(int(1), &ints(&[1])),
            Err(Error::LpStatus(_))
        ));
        let mut ok = ColumnLp::new(&k3_problem()).unwrap();
        assert!(matches!(
            ok.add_column(int(1), &ints(&[1])),
            Err(Error::Dimension(_))
        ));
    }
}
