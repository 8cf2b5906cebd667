//! Exact vertex cover LP and IP.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Graph, VertexSet};
use crate::lp::{self, LpProblem};
use crate::rational::{self, half, is_half_integral, Rat};

pub const DEFAULT_EXACT_LIMIT: usize = 40;

/// Nonnegative per-vertex costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostVector(Vec<Rat>);

impl CostVector {
    pub fn new(values: Vec<Rat>) -> Result<Self> {
        rational::check_nonneg(&values)?;
        Ok(CostVector(values))
    }

    /// Skips the sign check; for certificates read back for verification.
    pub(crate) fn new_unchecked(values: Vec<Rat>) -> Self {
        CostVector(values)
    }

    pub fn unit(n: usize) -> Self {
        CostVector(vec![Rat::one(); n])
    }

    pub fn values(&self) -> &[Rat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn cost_of(&self, s: &VertexSet) -> Rat {
        rational::sum(s.iter().map(|v| &self.0[v]))
    }

    fn check_len(&self, g: &Graph) -> Result<()> {
        if self.0.len() != g.n() {
            return Err(Error::Dimension(format!(
                "cost vector has {} entries for {} vertices",
                self.0.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// An optimal half-integral point of the vertex cover polytope with its
/// partition into the zero, half and one levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfIntegralVC {
    pub x: Vec<Rat>,
    pub objective: Rat,
    pub v0: VertexSet,
    pub v_half: VertexSet,
    pub v1: VertexSet,
}

impl HalfIntegralVC {
    /// Validates half-integrality and edge feasibility of `x`, then fills in
    /// the objective and the partition.
    pub fn from_point(g: &Graph, c: &CostVector, x: Vec<Rat>) -> Result<Self> {
        if x.len() != g.n() {
            return Err(Error::Dimension(format!(
                "point has {} entries for {} vertices",
                x.len(),
                g.n()
            )));
        }
        let (v0, v_half, v1) = nt_partition(&x)?;
        if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| &x[u] + &x[v] < Rat::one()) {
            return Err(Error::Invariant(format!(
                "edge ({u}, {v}) is not covered by x"
            )));
        }
        let objective = rational::dot(c.values(), &x);
        Ok(HalfIntegralVC {
            x,
            objective,
            v0,
            v_half,
            v1,
        })
    }

    /// Vertices with `x_v >= 1/2`; always a vertex cover.
    pub fn rounded_cover(&self) -> VertexSet {
        self.v_half.union(&self.v1)
    }
}

/// Splits `x` into `x_v = 0`, `x_v = 1/2` and `x_v = 1`.
pub fn nt_partition(x: &[Rat]) -> Result<(VertexSet, VertexSet, VertexSet)> {
    let (mut v0, mut vh, mut v1) = (Vec::new(), Vec::new(), Vec::new());
    for (v, xv) in x.iter().enumerate() {
        if xv.is_zero() {
            v0.push(v);
        } else if xv.is_one() {
            v1.push(v);
        } else if *xv == half() {
            vh.push(v);
        } else {
            return Err(Error::Invariant(format!(
                "x_{v} = {} is not in {{0, 1/2, 1}}",
                rational::format_rat(xv)
            )));
        }
    }
    Ok((VertexSet::new(v0), VertexSet::new(vh), VertexSet::new(v1)))
}

pub fn vc_lp_problem(g: &Graph, c: &CostVector) -> LpProblem {
    let rows = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![Rat::zero(); g.n()];
            row[u] = Rat::one();
            row[v] = Rat::one();
            row
        })
        .collect();
    LpProblem {
        num_vars: g.n(),
        objective: c.values().to_vec(),
        rows,
        rhs: vec![Rat::one(); g.m()],
    }
}

/// Optimal extreme point of the VC LP via the simplex kernel, together with
/// an optimal dual (one weight per edge, in `g.edges()` order).
pub fn solve_vc_lp_with_dual(g: &Graph, c: &CostVector) -> Result<(HalfIntegralVC, Vec<Rat>)> {
    c.check_len(g)?;
    let sol = lp::solve(&vc_lp_problem(g, c))?.into_optimal()?;
    if let Some(v) = sol.primal.iter().position(|x| !is_half_integral(x)) {
        return Err(Error::Invariant(format!(
            "simplex returned non-half-integral x_{v} = {}",
            rational::format_rat(&sol.primal[v])
        )));
    }
    let hvc = HalfIntegralVC::from_point(g, c, sol.primal)?;
    debug_assert_eq!(hvc.objective, sol.objective);
    Ok((hvc, sol.dual))
}

pub fn solve_vc_lp(g: &Graph, c: &CostVector) -> Result<HalfIntegralVC> {
    solve_vc_lp_with_dual(g, c).map(|(x, _)| x)
}

/// VC LP through the bipartite double cover: each vertex `v` becomes `v'`
/// and `v''`, each edge `{u, v}` becomes `{u', v''}` and `{v', u''}`. A
/// minimum weight cover of the double is found by min cut and folded back
/// with `x_v = (x_v' + x_v'') / 2`.
pub fn solve_vc_lp_bipartite_double(g: &Graph, c: &CostVector) -> Result<HalfIntegralVC> {
    c.check_len(g)?;
    let n = g.n();
    let (source, sink) = (2 * n, 2 * n + 1);
    let big = rational::sum(c.values()) + Rat::one();
    let mut net = FlowNetwork::new(2 * n + 2);
    for v in 0..n {
        net.add_arc(source, v, c.values()[v].clone());
        net.add_arc(n + v, sink, c.values()[v].clone());
    }
    for &(u, v) in g.edges() {
        net.add_arc(u, n + v, big.clone());
        net.add_arc(v, n + u, big.clone());
    }
    net.max_flow(source, sink);
    let reach = net.source_side(source);
    let mut x: Vec<Rat> = (0..n)
        .map(|v| {
            let left = !reach[v] as i64;
            let right = reach[n + v] as i64;
            rational::rat(left + right, 2)
        })
        .collect();
    round_bipartite_halves(g, &mut x);
    HalfIntegralVC::from_point(g, c, x)
}

/// On every bipartite component of `G[V_1/2]`, moves the side holding the
/// component's lowest vertex to 1 and the other side to 0. Both roundings
/// are feasible and average to `x`, so an optimal `x` stays optimal.
fn round_bipartite_halves(g: &Graph, x: &mut [Rat]) {
    let halves: VertexSet = (0..g.n()).filter(|&v| x[v] == half()).collect();
    let (h, map) = g.induced_subgraph(&halves);
    let mut comp = vec![usize::MAX; h.n()];
    for s in 0..h.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut members = vec![s];
        comp[s] = s;
        let mut i = 0;
        while i < members.len() {
            for &w in h.neighbors(members[i]) {
                if comp[w] == usize::MAX {
                    comp[w] = s;
                    members.push(w);
                }
            }
            i += 1;
        }
        let (sub, sub_map) = h.induced_subgraph(&VertexSet::new(members));
        if let Some(colors) = sub.two_coloring() {
            // two_coloring gives the lowest vertex color 0
            for (i, &hv) in sub_map.iter().enumerate() {
                x[map[hv]] = if colors[i] == 0 {
                    Rat::one()
                } else {
                    Rat::zero()
                };
            }
        }
    }
}

/// Minimum cost vertex cover by branch and bound.
///
/// Branches on the lowest endpoint of the lowest uncovered edge, trying
/// "include" before "exclude" (which forces all neighbours in). Nodes are
/// pruned with the LP value of the residual graph.
pub fn min_vc_exact(g: &Graph, c: &CostVector, limit: usize) -> Result<(VertexSet, Rat)> {
    c.check_len(g)?;
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    let incumbent = solve_vc_lp_bipartite_double(g, c)?.rounded_cover();
    let mut search = CoverSearch {
        g,
        c: c.values(),
        state: vec![Decision::Open; g.n()],
        best_cost: c.cost_of(&incumbent),
        best: incumbent,
    };
    search.branch(Rat::zero());
    Ok((search.best, search.best_cost))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Decision {
    Open,
    In,
    Out,
}

struct CoverSearch<'a> {
    g: &'a Graph,
    c: &'a [Rat],
    state: Vec<Decision>,
    best: VertexSet,
    best_cost: Rat,
}

impl CoverSearch<'_> {
    fn branch(&mut self, cost: Rat) {
        if cost >= self.best_cost {
            return;
        }
        let open = |v: usize| self.state[v] == Decision::Open;
        let Some(&(u, _)) = self.g.edges().iter().find(|&&(a, b)| open(a) && open(b)) else {
            self.best_cost = cost;
            self.best = (0..self.g.n())
                .filter(|&v| self.state[v] == Decision::In)
                .collect();
            return;
        };
        if &cost + self.residual_lp() >= self.best_cost {
            return;
        }

        self.state[u] = Decision::In;
        self.branch(&cost + &self.c[u]);

        self.state[u] = Decision::Out;
        let forced: Vec<usize> = self
            .g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| self.state[w] == Decision::Open)
            .collect();
        let mut next = cost;
        for &w in &forced {
            self.state[w] = Decision::In;
            next += &self.c[w];
        }
        self.branch(next);
        for &w in &forced {
            self.state[w] = Decision::Open;
        }
        self.state[u] = Decision::Open;
    }

    fn residual_lp(&self) -> Rat {
        let open: VertexSet = (0..self.g.n())
            .filter(|&v| self.state[v] == Decision::Open)
            .collect();
        let (h, map) = self.g.induced_subgraph(&open);
        let costs = CostVector(map.iter().map(|&v| self.c[v].clone()).collect());
        solve_vc_lp_bipartite_double(&h, &costs)
            .expect("residual instance is well formed")
            .objective
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};
    use crate::rational::{int, rat};

    /// Minimum of c.x over all x in {0, 1/2, 1}^n satisfying the edge constraints.
    fn half_integral_oracle(g: &Graph, c: &[Rat]) -> Rat {
        let levels = [int(0), half(), int(1)];
        let n = g.n();
        let mut best: Option<Rat> = None;
        for code in 0..3usize.pow(n as u32) {
            let mut x = Vec::with_capacity(n);
            let mut k = code;
            for _ in 0..n {
                x.push(levels[k % 3].clone());
                k /= 3;
            }
            if g.edges().iter().all(|&(u, v)| &x[u] + &x[v] >= int(1)) {
                let val = rational::dot(c, &x);
                if best.as_ref().is_none_or(|b| val < *b) {
                    best = Some(val);
                }
            }
        }
        best.unwrap()
    }

    fn subset_oracle(g: &Graph, c: &[Rat]) -> Rat {
        (0u32..1 << g.n())
            .map(|mask| {
                (0..g.n())
                    .filter(|v| mask >> v & 1 == 1)
                    .collect::<VertexSet>()
            })
            .filter(|s| g.is_vertex_cover(s))
            .map(|s| rational::sum(s.iter().map(|v| &c[v])))
            .min()
            .unwrap()
    }

    fn costs(v: &[i64]) -> CostVector {
        CostVector::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = complete(2).unwrap();
        let x = solve_vc_lp(&g, &CostVector::unit(2)).unwrap();
        assert_eq!(x.objective, int(1));
        assert!(x.v_half.is_empty());
        assert_eq!((x.v0.len(), x.v1.len()), (1, 1));
    }

    #[test]
    fn triangle_and_c5() {
        let k3 = complete(3).unwrap();
        assert_eq!(
            half_integral_oracle(&k3, CostVector::unit(3).values()),
            rat(3, 2)
        );
        let x = solve_vc_lp(&k3, &CostVector::unit(3)).unwrap();
        assert_eq!(x.x, vec![half(); 3]);
        assert_eq!(x.objective, rat(3, 2));

        let c5 = cycle(5).unwrap();
        assert_eq!(
            half_integral_oracle(&c5, CostVector::unit(5).values()),
            rat(5, 2)
        );
        let x = solve_vc_lp(&c5, &CostVector::unit(5)).unwrap();
        assert_eq!(x.x, vec![half(); 5]);
        assert_eq!(x.objective, rat(5, 2));
        assert_eq!(
            nt_partition(&x.x).unwrap(),
            (VertexSet::empty(), VertexSet::all(5), VertexSet::empty())
        );
    }

    #[test]
    fn triangle_with_free_vertex() {
        let k3 = complete(3).unwrap();
        let c = costs(&[0, 1, 1]);
        // oracle: the cover {0, 1} costs 1, and so does (1, 1/2, 1/2)
        assert_eq!(half_integral_oracle(&k3, c.values()), int(1));
        let x = solve_vc_lp(&k3, &c).unwrap();
        assert_eq!(x.objective, int(1));
        let (v0, vh, v1) = nt_partition(&x.x).unwrap();
        assert_eq!((&v0, &vh, &v1), (&x.v0, &x.v_half, &x.v1));
        for v in 0..3 {
            let level = if v0.contains(v) {
                int(0)
            } else if v1.contains(v) {
                int(1)
            } else {
                half()
            };
            assert_eq!(x.x[v], level);
        }
        let dbl = solve_vc_lp_bipartite_double(&k3, &c).unwrap();
        assert_eq!(dbl.objective, int(1));
    }

    #[test]
    fn doubling_path() {
        let k3 = complete(3).unwrap();
        assert_eq!(
            solve_vc_lp_bipartite_double(&k3, &CostVector::unit(3))
                .unwrap()
                .objective,
            rat(3, 2)
        );
        let c4 = cycle(4).unwrap();
        let x = solve_vc_lp_bipartite_double(&c4, &CostVector::unit(4)).unwrap();
        assert_eq!(x.objective, int(2));
        assert!(x.v_half.is_empty());
        assert_eq!(subset_oracle(&c4, CostVector::unit(4).values()), int(2));

        let lone = Graph::edgeless(1);
        let x = solve_vc_lp_bipartite_double(&lone, &costs(&[7])).unwrap();
        assert_eq!((x.x.clone(), x.objective), (vec![int(0)], int(0)));
    }

    #[test]
    fn exact_cover() {
        let k3 = complete(3).unwrap();
        assert_eq!(subset_oracle(&k3, CostVector::unit(3).values()), int(2));
        assert_eq!(
            min_vc_exact(&k3, &CostVector::unit(3), 40).unwrap().1,
            int(2)
        );

        let c5 = cycle(5).unwrap();
        assert_eq!(subset_oracle(&c5, CostVector::unit(5).values()), int(3));
        let (s, cost) = min_vc_exact(&c5, &CostVector::unit(5), 40).unwrap();
        assert_eq!(cost, int(3));
        assert!(c5.is_vertex_cover(&s));

        let (s, cost) = min_vc_exact(&Graph::edgeless(4), &costs(&[1, 2, 3, 4]), 40).unwrap();
        assert!(s.is_empty());
        assert_eq!(cost, int(0));

        let c = costs(&[5, 1, 1, 1, 1, 1, 4]);
        let g = cycle(7).unwrap();
        let (s, cost) = min_vc_exact(&g, &c, 40).unwrap();
        assert_eq!(cost, subset_oracle(&g, c.values()));
        assert_eq!(c.cost_of(&s), cost);
    }

    #[test]
    fn errors() {
        let k3 = complete(3).unwrap();
        assert!(matches!(
            solve_vc_lp(&k3, &CostVector::unit(2)),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            CostVector::new(vec![int(1), int(-1)]),
            Err(Error::NegativeCost { vertex: 1, .. })
        ));
        assert!(matches!(
            min_vc_exact(&cycle(6).unwrap(), &CostVector::unit(6), 5),
            Err(Error::TooLarge { n: 6, limit: 5 })
        ));
        assert!(matches!(
            nt_partition(&[rat(1, 3)]),
            Err(Error::Invariant(_))
        ));
        assert!(HalfIntegralVC::from_point(
            &k3,
            &CostVector::unit(3),
            vec![int(1), int(0), int(0)]
        )
        .is_err());
    }
}
