//! Fractional chromatic number by column generation over independent sets.
//!
//! The restricted master is `min sum y_U  s.t.  sum_{U ∋ v} y_U >= 1`, and
//! its duals `z` price new columns through a maximum weight independent set
//! search. Generation stops once the heaviest independent set under `z`
//! weighs at most 1, which is exactly dual feasibility of `z` for the full
//! program.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::lp::{self, ColumnLp, LpProblem, LpSolution};
use crate::rational::{self, Rat};

pub const DEFAULT_ORACLE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalColoring {
    /// Independent sets with positive weight.
    pub classes: Vec<(VertexSet, Rat)>,
    pub value: Rat,
}

impl FractionalColoring {
    /// Total weight of the classes containing `v`.
    pub fn coverage(&self, v: usize) -> Rat {
        rational::sum(
            self.classes
                .iter()
                .filter(|(u, _)| u.contains(v))
                .map(|(_, y)| y),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWeights {
    pub z: Vec<Rat>,
    pub value: Rat,
}

/// Solves the master LP over `columns` and returns the optimal coloring and
/// vertex duals.
fn solve_master(n: usize, columns: &[VertexSet]) -> Result<(FractionalColoring, DualWeights)> {
    let rows = (0..n)
        .map(|v| {
            columns
                .iter()
                .map(|c| rational::int(i64::from(c.contains(v))))
                .collect()
        })
        .collect();
    let p = LpProblem::new(vec![Rat::one(); columns.len()], rows, vec![Rat::one(); n])?;
    Ok(coloring_from(columns, lp::solve(&p)?.into_optimal()?))
}

fn coloring_from(columns: &[VertexSet], sol: LpSolution) -> (FractionalColoring, DualWeights) {
    let classes = columns
        .iter()
        .zip(&sol.primal)
        .filter(|(_, y)| y.is_positive())
        .map(|(c, y)| (c.clone(), y.clone()))
        .collect();
    debug_assert_eq!(sol.objective, rational::sum(&sol.dual));
    (
        FractionalColoring {
            classes,
            value: sol.objective.clone(),
        },
        DualWeights {
            z: sol.dual,
            value: sol.objective,
        },
    )
}

/// Exact fractional chromatic number with an optimal primal and dual.
///
/// Column generation: the master starts from singletons and the greedy
/// coloring classes, and each round adds the maximalized pricing column
/// until no independent set has dual weight above one.
pub fn solve_chi_f(g: &Graph) -> Result<(FractionalColoring, DualWeights)> {
    let n = g.n();
    let mut columns: Vec<VertexSet> = (0..n).map(|v| VertexSet::new(vec![v])).collect();
    for class in g.greedy_coloring() {
        if !columns.contains(&class) {
            columns.push(class);
        }
    }
    let rows = (0..n)
        .map(|v| {
            columns
                .iter()
                .map(|c| rational::int(i64::from(c.contains(v))))
                .collect()
        })
        .collect();
    let master = LpProblem::new(vec![Rat::one(); columns.len()], rows, vec![Rat::one(); n])?;
    let mut lp = ColumnLp::new(&master)?;
    let mut sol = lp.solution().into_optimal()?;
    loop {
        let (set, weight) = price_column(g, &sol.dual);
        if weight <= Rat::one() {
            return Ok(coloring_from(&columns, sol));
        }
        let col = maximalize(g, &set);
        if columns.contains(&col) {
            return Err(Error::Invariant(format!(
                "pricing returned existing column {:?} with weight {}",
                col.as_slice(),
                rational::format_rat(&weight)
            )));
        }
        let entries: Vec<Rat> = (0..n)
            .map(|v| rational::int(i64::from(col.contains(v))))
            .collect();
        sol = lp.add_column(Rat::one(), &entries)?.into_optimal()?;
        columns.push(col);
    }
}

/// Extends `s` to a maximal independent set, adding vertices in index order.
pub fn maximalize(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut blocked = vec![false; g.n()];
    let mut members = s.as_slice().to_vec();
    for &v in s.as_slice() {
        blocked[v] = true;
        for &w in g.neighbors(v) {
            blocked[w] = true;
        }
    }
    for v in 0..g.n() {
        if !blocked[v] {
            members.push(v);
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    VertexSet::new(members)
}

/// Maximum weight independent set under `z >= 0`.
///
/// Only positive-weight vertices are considered. The optimum weight is found
/// by branch and bound (vertices in decreasing weight order, index
/// tie-break, bounded by the weight still available). The returned set is
/// the lexicographically smallest sorted vertex list among maximizers
/// supported on positive weights, built one vertex at a time: the next
/// member is the smallest vertex whose inclusion still reaches the optimum.
pub fn price_column(g: &Graph, z: &[Rat]) -> (VertexSet, Rat) {
    let positive: Vec<usize> = (0..g.n()).filter(|&v| z[v].is_positive()).collect();
    let mut search = Pricing::new(g, z);
    let best = search.max_weight(&positive);
    let mut chosen: Vec<usize> = Vec::new();
    let mut weight = Rat::zero();
    while weight < best {
        let after = chosen.last().map_or(0, |&v| v + 1);
        let mut next = None;
        for &v in positive.iter().filter(|&&v| v >= after) {
            if search.blocked[v] != 0 {
                continue;
            }
            search.toggle(v, true);
            let rest: Vec<usize> = positive
                .iter()
                .copied()
                .filter(|&w| w > v && search.blocked[w] == 0)
                .collect();
            let reach = &weight + &z[v] + search.max_weight(&rest);
            search.toggle(v, false);
            if reach == best {
                next = Some(v);
                break;
            }
        }
        let next = next.expect("some extension attains the optimum");
        search.toggle(next, true);
        weight += &z[next];
        chosen.push(next);
    }
    (VertexSet::new(chosen), best)
}

struct Pricing<'a> {
    g: &'a Graph,
    z: &'a [Rat],
    /// Number of chosen vertices equal or adjacent to each vertex.
    blocked: Vec<u32>,
    order: Vec<usize>,
    best: Rat,
}

impl<'a> Pricing<'a> {
    fn new(g: &'a Graph, z: &'a [Rat]) -> Self {
        Pricing {
            g,
            z,
            blocked: vec![0; g.n()],
            order: Vec::new(),
            best: Rat::zero(),
        }
    }

    /// Heaviest independent set within `candidates` that avoids the
    /// currently blocked vertices.
    fn max_weight(&mut self, candidates: &[usize]) -> Rat {
        let mut order: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&v| self.blocked[v] == 0)
            .collect();
        order.sort_by(|&a, &b| self.z[b].cmp(&self.z[a]).then(a.cmp(&b)));
        let saved_order = std::mem::replace(&mut self.order, order);
        let saved_best = std::mem::replace(&mut self.best, Rat::zero());
        self.descend(0, Rat::zero());
        self.order = saved_order;
        std::mem::replace(&mut self.best, saved_best)
    }

    fn descend(&mut self, i: usize, weight: Rat) {
        if weight > self.best {
            self.best = weight.clone();
        }
        if i == self.order.len() {
            return;
        }
        let bound = self.order[i..]
            .iter()
            .filter(|&&v| self.blocked[v] == 0)
            .fold(weight.clone(), |acc, &v| acc + &self.z[v]);
        if bound <= self.best {
            return;
        }
        let v = self.order[i];
        if self.blocked[v] == 0 {
            self.toggle(v, true);
            self.descend(i + 1, &weight + &self.z[v]);
            self.toggle(v, false);
        }
        self.descend(i + 1, weight);
    }

    fn toggle(&mut self, v: usize, on: bool) {
        let g = self.g;
        for w in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            if on {
                self.blocked[w] += 1;
            } else {
                self.blocked[w] -= 1;
            }
        }
    }
}

/// All maximal independent sets (Bron–Kerbosch with pivoting on the
/// complement graph), each sorted, in discovery order.
pub fn maximal_independent_sets(g: &Graph, limit: usize) -> Result<Vec<VertexSet>> {
    let limit = limit.min(64);
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    let n = g.n();
    // non-neighbours (excluding self) form the complement adjacency
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let comp: Vec<u64> = (0..n)
        .map(|v| {
            let nb = g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w);
            full & !nb & !(1u64 << v)
        })
        .collect();
    let mut out = Vec::new();
    if n > 0 {
        bron_kerbosch(&comp, 0, full, 0, &mut out);
    }
    Ok(out
        .into_iter()
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect())
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pu = p | x;
    let pivot = (0..adj.len())
        .filter(|&u| pu >> u & 1 == 1)
        .max_by_key(|&u| ((p & adj[u]).count_ones(), std::cmp::Reverse(u)))
        .expect("p | x is nonempty");
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1u64 << v);
        x |= 1u64 << v;
    }
}

/// The fractional coloring LP solved over every maximal independent set.
pub fn chi_f_bruteforce(g: &Graph, limit: usize) -> Result<(FractionalColoring, DualWeights)> {
    let mut sets = maximal_independent_sets(g, limit)?;
    sets.sort();
    solve_master(g.n(), &sets)
}

/// Maximum weight of an independent set by full enumeration of the maximal
/// ones (valid for nonnegative weights).
pub fn max_independent_weight_enumerated(g: &Graph, z: &[Rat], limit: usize) -> Result<Rat> {
    Ok(maximal_independent_sets(g, limit)?
        .iter()
        .map(|s| rational::sum(s.iter().map(|v| &z[v])))
        .max()
        .unwrap_or_else(Rat::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, kneser, mycielskian};
    use crate::rational::{half, int, rat};

    /// Every independent set by subset enumeration.
    fn all_independent_sets(g: &Graph) -> Vec<VertexSet> {
        (0u32..1 << g.n())
            .map(|m| {
                (0..g.n())
                    .filter(|v| m >> v & 1 == 1)
                    .collect::<VertexSet>()
            })
            .filter(|s| g.is_independent(s))
            .collect()
    }

    #[test]
    fn pricing_examples() {
        let k3 = complete(3).unwrap();
        assert_eq!(
            price_column(&k3, &[int(1), int(1), int(1)]),
            (VertexSet::new(vec![0]), int(1))
        );

        let c5 = cycle(5).unwrap();
        let sets = all_independent_sets(&c5);
        assert_eq!(sets.len(), 11);
        let z = vec![half(); 5];
        let best = sets
            .iter()
            .map(|s| rational::sum(s.iter().map(|v| &z[v])))
            .max()
            .unwrap();
        assert_eq!(best, int(1));
        assert_eq!(price_column(&c5, &z), (VertexSet::new(vec![0, 2]), int(1)));

        let (s, w) = price_column(&c5, &vec![int(0); 5]);
        assert!(s.is_empty());
        assert_eq!(w, int(0));
    }

    #[test]
    fn pricing_matches_enumeration() {
        let g = mycielskian(&cycle(5).unwrap());
        let sets = all_independent_sets(&g);
        for seed in 0..20i64 {
            let z: Vec<Rat> = (0..g.n() as i64)
                .map(|v| rat((v * 7 + seed * 3) % 5, 1 + seed % 3))
                .collect();
            let (s, w) = price_column(&g, &z);
            assert!(g.is_independent(&s));
            let weight = |s: &VertexSet| rational::sum(s.iter().map(|v| &z[v]));
            assert_eq!(weight(&s), w);
            let best = sets.iter().map(weight).max().unwrap();
            assert_eq!(w, best);
            let lexmin = sets
                .iter()
                .filter(|u| weight(u) == best && u.iter().all(|v| z[v].is_positive()))
                .min()
                .unwrap();
            assert_eq!(&s, lexmin);
        }
    }

    #[test]
    fn mis_enumeration() {
        assert_eq!(
            maximal_independent_sets(&cycle(5).unwrap(), 20)
                .unwrap()
                .len(),
            5
        );
        assert_eq!(
            maximal_independent_sets(&complete(4).unwrap(), 20)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            maximal_independent_sets(&Graph::edgeless(3), 20)
                .unwrap()
                .len(),
            1
        );
        assert!(maximal_independent_sets(&Graph::edgeless(0), 20)
            .unwrap()
            .is_empty());
        assert!(matches!(
            maximal_independent_sets(&cycle(25).unwrap(), 20),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn known_values() {
        let (col, dual) = solve_chi_f(&complete(3).unwrap()).unwrap();
        assert_eq!(col.value, int(3));
        assert_eq!(dual.z, vec![int(1); 3]);
        assert_eq!(col.classes.len(), 3);
        assert!(col
            .classes
            .iter()
            .all(|(u, y)| u.len() == 1 && *y == int(1)));

        let (col, dual) = solve_chi_f(&cycle(5).unwrap()).unwrap();
        assert_eq!(col.value, rat(5, 2));
        assert_eq!(dual.z, vec![half(); 5]);

        assert_eq!(solve_chi_f(&complete(2).unwrap()).unwrap().0.value, int(2));
        assert_eq!(
            solve_chi_f(&kneser(5, 2).unwrap()).unwrap().0.value,
            rat(5, 2)
        );
        assert_eq!(
            solve_chi_f(&complete_bipartite(2, 3).unwrap())
                .unwrap()
                .0
                .value,
            int(2)
        );
    }

    #[test]
    fn bruteforce_values() {
        assert_eq!(
            chi_f_bruteforce(&complete(3).unwrap(), 20).unwrap().0.value,
            int(3)
        );
        assert_eq!(
            chi_f_bruteforce(&cycle(5).unwrap(), 20).unwrap().0.value,
            rat(5, 2)
        );
        assert_eq!(
            chi_f_bruteforce(&cycle(7).unwrap(), 20).unwrap().0.value,
            rat(7, 3)
        );
    }

    #[test]
    fn edgeless_and_empty() {
        let (col, dual) = solve_chi_f(&Graph::edgeless(4)).unwrap();
        assert_eq!(col.value, int(1));
        assert_eq!(col.classes, vec![(VertexSet::all(4), int(1))]);
        assert_eq!(rational::sum(&dual.z), int(1));
        let (col, _) = solve_chi_f(&Graph::edgeless(0)).unwrap();
        assert_eq!(col.value, int(0));
        assert!(col.classes.is_empty());
    }

    #[test]
    fn invariants_of_solution() {
        let g = mycielskian(&cycle(5).unwrap());
        let (col, dual) = solve_chi_f(&g).unwrap();
        assert_eq!(col.value, rat(29, 10));
        assert_eq!(col.value, rational::sum(col.classes.iter().map(|(_, y)| y)));
        assert_eq!(dual.value, rational::sum(&dual.z));
        for (u, _) in &col.classes {
            assert!(g.is_independent(u));
        }
        for v in 0..g.n() {
            assert!(col.coverage(v) >= int(1));
        }
        assert!(price_column(&g, &dual.z).1 <= int(1));
        assert_eq!(
            max_independent_weight_enumerated(&g, &dual.z, 20).unwrap(),
            price_column(&g, &dual.z).1
        );
    }

    #[test]
    fn maximalize_extends() {
        let c5 = cycle(5).unwrap();
        assert_eq!(
            maximalize(&c5, &VertexSet::new(vec![1])),
            VertexSet::new(vec![1, 3])
        );
        assert_eq!(
            maximalize(&c5, &VertexSet::empty()),
            VertexSet::new(vec![0, 2])
        );
    }
}
