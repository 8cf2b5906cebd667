//! Integrality gap `rho(G) = 2 - 2/chi_f(G)` with certificates for both
//! directions.
//!
//! Lower bound: with costs `c = z*` (an optimal fractional-coloring dual)
//! the all-halves point costs `chi_f/2`, while every cover costs at least
//! `chi_f - 1` because its complement is independent.
//!
//! Upper bound: for an optimal half-integral `x*`, each class `U` of an
//! optimal fractional coloring of `H = G[V_1/2]` yields the cover
//! `(V_1/2 \ U) ∪ V_1`. Weighting these covers by `y_U / chi_f(H)` gives a
//! convex combination dominated by `rho * x*`, so the scaled point lies in
//! the (upward closed) cover polytope.

use num_traits::{One, Signed, Zero};

use crate::chromatic::{self, FractionalColoring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::{self, format_rat, half, int, Rat};
use crate::report::Report;
use crate::vc::{self, CostVector, HalfIntegralVC};

/// Everything needed to re-check `ratio = rho` without a solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCertificate {
    pub graph: Graph,
    pub chi_f: Rat,
    pub rho: Rat,
    pub worst_cost: CostVector,
    pub lp_value: Rat,
    /// Optimal LP dual under `worst_cost`, one weight per edge of `graph`.
    pub lp_dual: Vec<Rat>,
    pub ip_value: Rat,
    /// A cover attaining `ip_value`.
    pub ip_cover: VertexSet,
    pub ratio: Rat,
    pub x_star: HalfIntegralVC,
    /// Optimal fractional coloring of `G[V_1/2]`, in the vertex labels of `G`.
    pub h_coloring: FractionalColoring,
    pub covers: Vec<(VertexSet, Rat)>,
}

/// Convex decomposition of the scaled LP point into vertex covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub h_coloring: FractionalColoring,
    pub covers: Vec<(VertexSet, Rat)>,
}

fn gap_from_chi_f(chi_f: &Rat) -> Rat {
    int(2) - int(2) / chi_f
}

pub fn integrality_gap(g: &Graph) -> Result<Rat> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let (coloring, _) = chromatic::solve_chi_f(g)?;
    Ok(gap_from_chi_f(&coloring.value))
}

/// IP/LP ratio for one cost vector.
pub fn empirical_ratio(g: &Graph, c: &CostVector, exact_limit: usize) -> Result<Rat> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let lp = vc::solve_vc_lp(g, c)?.objective;
    let (_, ip) = vc::min_vc_exact(g, c, exact_limit)?;
    if lp.is_zero() {
        return Err(Error::ZeroLpValue {
            ip: format_rat(&ip),
        });
    }
    Ok(ip / lp)
}

/// Splits `x` into covers `(V_1/2 \ U) ∪ V_1` weighted by `y_U / chi_f(H)`.
pub fn decompose_upper(g: &Graph, x: &HalfIntegralVC) -> Result<Decomposition> {
    let (v0, v_half, v1) = vc::nt_partition(&x.x)?;
    if (&v0, &v_half, &v1) != (&x.v0, &x.v_half, &x.v1) {
        return Err(Error::Invariant("stored partition disagrees with x".into()));
    }
    if v_half.is_empty() {
        return Ok(Decomposition {
            h_coloring: FractionalColoring {
                classes: Vec::new(),
                value: Rat::zero(),
            },
            covers: vec![(v1, Rat::one())],
        });
    }
    let (h, map) = g.induced_subgraph(&v_half);
    let (h_col, _) = chromatic::solve_chi_f(&h)?;
    let classes: Vec<(VertexSet, Rat)> = h_col
        .classes
        .iter()
        .map(|(u, y)| (u.iter().map(|i| map[i]).collect::<VertexSet>(), y.clone()))
        .collect();
    let covers: Vec<(VertexSet, Rat)> = classes
        .iter()
        .map(|(u, y)| (v_half.difference(u).union(&v1), y / &h_col.value))
        .collect();

    let total = rational::sum(covers.iter().map(|(_, l)| l));
    if !total.is_one() {
        return Err(Error::Invariant(format!(
            "weights sum to {}",
            format_rat(&total)
        )));
    }
    // (2 - 2/chi_f(H)) x* already dominates the combination on V_1/2; V_1
    // needs a factor of at least one.
    let factor = gap_from_chi_f(&h_col.value).max(Rat::one());
    if let Some(v) = first_domination_failure(g.n(), &factor, &x.x, &covers) {
        return Err(Error::Invariant(format!("domination fails at vertex {v}")));
    }
    Ok(Decomposition {
        h_coloring: FractionalColoring {
            classes,
            value: h_col.value,
        },
        covers,
    })
}

fn combination(n: usize, covers: &[(VertexSet, Rat)]) -> Vec<Rat> {
    let mut point = vec![Rat::zero(); n];
    for (s, l) in covers {
        for v in s.iter() {
            point[v] += l;
        }
    }
    point
}

fn first_domination_failure(
    n: usize,
    factor: &Rat,
    x: &[Rat],
    covers: &[(VertexSet, Rat)],
) -> Option<usize> {
    let point = combination(n, covers);
    (0..n).find(|&v| factor * &x[v] < point[v])
}

/// Builds the full certificate: worst-case costs from the coloring dual,
/// exact LP and IP values under them, and the cover decomposition of the LP
/// optimum.
pub fn worst_case_certificate(g: &Graph, exact_limit: usize) -> Result<GapCertificate> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    if g.n() > exact_limit {
        return Err(Error::TooLarge {
            n: g.n(),
            limit: exact_limit,
        });
    }
    let (coloring, duals) = chromatic::solve_chi_f(g)?;
    let chi_f = coloring.value;
    let worst_cost = CostVector::new(duals.z)?;
    let (x_star, lp_dual) = vc::solve_vc_lp_with_dual(g, &worst_cost)?;
    let (ip_cover, ip_value) = vc::min_vc_exact(g, &worst_cost, exact_limit)?;
    let lp_value = x_star.objective.clone();
    if lp_value.is_zero() {
        return Err(Error::ZeroLpValue {
            ip: format_rat(&ip_value),
        });
    }
    let decomposition = decompose_upper(g, &x_star)?;
    Ok(GapCertificate {
        graph: g.clone(),
        rho: gap_from_chi_f(&chi_f),
        ratio: &ip_value / &lp_value,
        chi_f,
        worst_cost,
        lp_value,
        lp_dual,
        ip_value,
        ip_cover,
        x_star,
        h_coloring: decomposition.h_coloring,
        covers: decomposition.covers,
    })
}

/// Re-derives every claim of `cert` from the graph with rational arithmetic
/// only. With `oracle_limit`, additionally recomputes `chi_f`, `chi_f(H)`,
/// the IP optimum and the dual feasibility of the costs by enumerating
/// maximal independent sets.
pub fn verify_certificate(g: &Graph, cert: &GapCertificate, oracle_limit: Option<usize>) -> Report {
    let mut r = Report::new();
    let n = g.n();
    let ok_if = |cond: bool, msg: String| if cond { Ok(()) } else { Err(msg) };
    let set_ok = |s: &VertexSet| s.as_slice().last().is_none_or(|&v| v < n);

    r.record(
        "graph_matches",
        ok_if(
            cert.graph == *g,
            "certificate was issued for a different graph".into(),
        ),
    );
    r.record(
        "edges_nonempty",
        ok_if(g.m() > 0, "graph has no edges".into()),
    );
    r.record(
        "rho_formula",
        ok_if(
            cert.chi_f.is_positive() && cert.rho == gap_from_chi_f(&cert.chi_f),
            format!(
                "rho {} != 2 - 2/{}",
                format_rat(&cert.rho),
                format_rat(&cert.chi_f)
            ),
        ),
    );

    let c = cert.worst_cost.values();
    let cost_ok = c.len() == n && c.iter().all(|v| !v.is_negative());
    r.record(
        "worst_cost_valid",
        ok_if(
            cost_ok,
            format!("{} entries for {n} vertices, or a negative entry", c.len()),
        ),
    );
    r.record(
        "worst_cost_total",
        ok_if(
            rational::sum(c) == cert.chi_f,
            format!(
                "costs sum to {}, chi_f is {}",
                format_rat(&rational::sum(c)),
                format_rat(&cert.chi_f)
            ),
        ),
    );

    let x = &cert.x_star.x;
    let x_ok = x.len() == n;
    r.record("x_star_half_integral", {
        if !x_ok {
            Err(format!("x* has {} entries for {n} vertices", x.len()))
        } else {
            match x.iter().position(|v| !rational::is_half_integral(v)) {
                Some(v) => Err(format!("x*_{v} = {}", format_rat(&x[v]))),
                None => Ok(()),
            }
        }
    });
    let part = vc::nt_partition(x).ok().filter(|_| x_ok);
    r.record(
        "x_star_partition",
        ok_if(
            part.as_ref().is_some_and(|(a, b, c)| {
                (a, b, c) == (&cert.x_star.v0, &cert.x_star.v_half, &cert.x_star.v1)
            }),
            "v0 / v_half / v1 do not match x*".into(),
        ),
    );
    r.record("x_star_feasible", {
        if !x_ok {
            Err("x* has the wrong length".into())
        } else {
            match g.edges().iter().find(|&&(u, v)| &x[u] + &x[v] < Rat::one()) {
                Some(&(u, v)) => Err(format!("edge ({u}, {v}) has x_u + x_v < 1")),
                None => Ok(()),
            }
        }
    });
    r.record("x_star_objective", {
        let val = if x_ok && cost_ok {
            rational::dot(c, x)
        } else {
            Rat::zero()
        };
        ok_if(
            x_ok && cost_ok && val == cert.lp_value && cert.x_star.objective == cert.lp_value,
            format!(
                "c.x* = {}, lp_value = {}",
                format_rat(&val),
                format_rat(&cert.lp_value)
            ),
        )
    });

    r.record("lp_dual_feasible", {
        let w = &cert.lp_dual;
        if w.len() != g.m() {
            Err(format!("{} edge weights for {} edges", w.len(), g.m()))
        } else if let Some(e) = w.iter().position(|v| v.is_negative()) {
            Err(format!("edge weight {e} is negative"))
        } else if !cost_ok {
            Err("cost vector invalid".into())
        } else {
            let mut load = vec![Rat::zero(); n];
            for (&(u, v), we) in g.edges().iter().zip(w) {
                load[u] += we;
                load[v] += we;
            }
            match (0..n).find(|&v| load[v] > c[v]) {
                Some(v) => Err(format!(
                    "vertex {v} carries {} > cost {}",
                    format_rat(&load[v]),
                    format_rat(&c[v])
                )),
                None => Ok(()),
            }
        }
    });
    r.record(
        "lp_dual_value",
        ok_if(
            rational::sum(&cert.lp_dual) == cert.lp_value,
            format!(
                "edge weights sum to {}",
                format_rat(&rational::sum(&cert.lp_dual))
            ),
        ),
    );

    r.record("ip_cover", {
        if !set_ok(&cert.ip_cover) {
            Err("ip cover names a vertex out of range".into())
        } else if let Some((u, v)) = g.first_uncovered_edge(&cert.ip_cover) {
            Err(format!("edge ({u}, {v}) uncovered"))
        } else if !cost_ok || cert.worst_cost.cost_of(&cert.ip_cover) != cert.ip_value {
            Err("ip cover cost differs from ip_value".into())
        } else {
            Ok(())
        }
    });

    r.record(
        "ratio_value",
        ok_if(
            cert.lp_value.is_positive() && cert.ratio == &cert.ip_value / &cert.lp_value,
            format!("ratio {} != ip / lp", format_rat(&cert.ratio)),
        ),
    );
    r.record(
        "ratio_equals_rho",
        ok_if(
            cert.ratio == cert.rho,
            format!(
                "ratio {} != rho {}",
                format_rat(&cert.ratio),
                format_rat(&cert.rho)
            ),
        ),
    );
    r.record(
        "lp_at_most_half_chi_f",
        ok_if(
            cert.lp_value <= &cert.chi_f * half(),
            format!("lp {} > chi_f/2", format_rat(&cert.lp_value)),
        ),
    );
    r.record(
        "ip_at_least_chi_f_minus_one",
        ok_if(
            cert.ip_value >= &cert.chi_f - Rat::one(),
            format!("ip {} < chi_f - 1", format_rat(&cert.ip_value)),
        ),
    );

    let v_half = &cert.x_star.v_half;
    let v1 = &cert.x_star.v1;
    let h = &cert.h_coloring;
    r.record("h_coloring_classes", {
        let bad = h.classes.iter().position(|(u, y)| {
            !set_ok(u) || !u.is_subset(v_half) || !g.is_independent(u) || !y.is_positive()
        });
        match bad {
            Some(i) => Err(format!(
                "class {i} is not a positively weighted independent subset of V_1/2"
            )),
            None => Ok(()),
        }
    });
    r.record("h_coloring_coverage", {
        match v_half.iter().find(|&v| h.coverage(v) < Rat::one()) {
            Some(v) => Err(format!(
                "vertex {v} covered with weight {}",
                format_rat(&h.coverage(v))
            )),
            None => Ok(()),
        }
    });
    r.record(
        "h_coloring_value",
        ok_if(
            h.value == rational::sum(h.classes.iter().map(|(_, y)| y)),
            format!("value {} is not the class total", format_rat(&h.value)),
        ),
    );
    r.record(
        "chi_f_h_at_most_chi_f",
        ok_if(
            h.value <= cert.chi_f,
            format!(
                "chi_f(H) = {} > chi_f(G) = {}",
                format_rat(&h.value),
                format_rat(&cert.chi_f)
            ),
        ),
    );

    r.record("covers_match_classes", {
        if v_half.is_empty() {
            ok_if(
                cert.covers.len() == 1 && cert.covers[0] == (v1.clone(), Rat::one()),
                "with V_1/2 empty the only cover must be V_1 with weight 1".into(),
            )
        } else if cert.covers.len() != h.classes.len() || !h.value.is_positive() {
            Err(format!(
                "{} covers for {} classes",
                cert.covers.len(),
                h.classes.len()
            ))
        } else {
            let bad = h
                .classes
                .iter()
                .zip(&cert.covers)
                .position(|((u, y), (s, l))| {
                    *s != v_half.difference(u).union(v1) || *l != y / &h.value
                });
            match bad {
                Some(i) => Err(format!(
                    "cover {i} is not (V_1/2 \\ U) ∪ V_1 with weight y_U / chi_f(H)"
                )),
                None => Ok(()),
            }
        }
    });
    r.record("covers_are_vertex_covers", {
        let mut res = Ok(());
        for (i, (s, _)) in cert.covers.iter().enumerate() {
            if !set_ok(s) {
                res = Err(format!("cover {i} names a vertex out of range"));
                break;
            }
            if let Some((u, v)) = g.first_uncovered_edge(s) {
                res = Err(format!("cover {i} misses edge ({u}, {v})"));
                break;
            }
        }
        res
    });
    let total = rational::sum(cert.covers.iter().map(|(_, l)| l));
    let convex = total.is_one() && cert.covers.iter().all(|(_, l)| !l.is_negative());
    r.record(
        "lambda_convex",
        ok_if(
            convex,
            format!(
                "weights sum to {} or include a negative",
                format_rat(&total)
            ),
        ),
    );
    let dominated = x_ok
        && cert.covers.iter().all(|(s, _)| set_ok(s))
        && first_domination_failure(n, &cert.rho, x, &cert.covers).is_none();
    r.record("domination", {
        if dominated {
            Ok(())
        } else if x_ok && cert.covers.iter().all(|(s, _)| set_ok(s)) {
            let v = first_domination_failure(n, &cert.rho, x, &cert.covers).unwrap();
            let point = combination(n, &cert.covers);
            Err(format!(
                "vertex {v}: rho * x = {} < {}",
                format_rat(&(&cert.rho * &x[v])),
                format_rat(&point[v])
            ))
        } else {
            Err("x* or a cover is malformed".into())
        }
    });
    r.record(
        "scaled_point_in_cover_polytope",
        ok_if(
            dominated && convex && r.passed("covers_are_vertex_covers"),
            "rho * x* does not dominate a convex combination of covers".into(),
        ),
    );

    if let Some(limit) = oracle_limit {
        verify_with_oracle(g, cert, limit, &mut r);
    }
    r
}

fn verify_with_oracle(g: &Graph, cert: &GapCertificate, limit: usize, r: &mut Report) {
    r.record(
        "oracle_chi_f",
        match chromatic::chi_f_bruteforce(g, limit) {
            Ok((col, _)) if col.value == cert.chi_f => Ok(()),
            Ok((col, _)) => Err(format!("enumeration gives {}", format_rat(&col.value))),
            Err(e) => Err(e.to_string()),
        },
    );
    let c = cert.worst_cost.values();
    if c.len() != g.n() {
        r.record(
            "oracle_costs_dual_feasible",
            Err("cost vector has the wrong length".into()),
        );
        return;
    }
    r.record(
        "oracle_costs_dual_feasible",
        match chromatic::max_independent_weight_enumerated(g, c, limit) {
            Ok(w) if w <= Rat::one() => Ok(()),
            Ok(w) => Err(format!("an independent set weighs {}", format_rat(&w))),
            Err(e) => Err(e.to_string()),
        },
    );
    // min cover cost = total cost - max independent weight
    r.record(
        "oracle_ip_value",
        match chromatic::max_independent_weight_enumerated(g, c, limit) {
            Ok(w) if rational::sum(c) - &w == cert.ip_value => Ok(()),
            Ok(w) => Err(format!(
                "enumeration gives {}",
                format_rat(&(rational::sum(c) - w))
            )),
            Err(e) => Err(e.to_string()),
        },
    );
    let (h, _) = g.induced_subgraph(&cert.x_star.v_half);
    r.record(
        "oracle_chi_f_h",
        match chromatic::chi_f_bruteforce(&h, limit) {
            Ok((col, _)) if col.value == cert.h_coloring.value => Ok(()),
            Ok((col, _)) => Err(format!("enumeration gives {}", format_rat(&col.value))),
            Err(e) => Err(e.to_string()),
        },
    );
}
