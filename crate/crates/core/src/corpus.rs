//! Named test graphs and seeded random instances.

use rand::Rng;

use crate::graph::{self, Graph};
use crate::rational::{rat, Rat};
use crate::vc::CostVector;

/// Complete graphs, cycles, complete bipartite graphs, Petersen, and the
/// Mycielskians of `K_2` and `C_5`, with display names.
pub fn standard_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push((format!("K{n}"), graph::complete(n).unwrap()));
    }
    for n in 3..=11 {
        out.push((format!("C{n}"), graph::cycle(n).unwrap()));
    }
    for a in 1..=4 {
        for b in a..=4 {
            out.push((
                format!("K{a},{b}"),
                graph::complete_bipartite(a, b).unwrap(),
            ));
        }
    }
    out.push(("Petersen".into(), graph::kneser(5, 2).unwrap()));
    out.push((
        "M(K2)".into(),
        graph::mycielskian(&graph::complete(2).unwrap()),
    ));
    out.push((
        "Grotzsch".into(),
        graph::mycielskian(&graph::cycle(5).unwrap()),
    ));
    out
}

fn wheel(rim: usize) -> Graph {
    let edges = (0..rim).flat_map(|i| [(i, (i + 1) % rim), (i, rim)]);
    Graph::new(rim + 1, edges).unwrap()
}

/// Generalized Petersen graph `GP(n, k)`: outer cycle `0..n`, inner star
/// polygon `n..2n`.
fn generalized_petersen(n: usize, k: usize) -> Graph {
    let edges = (0..n).flat_map(|i| [(i, (i + 1) % n), (i, n + i), (n + i, n + (i + k) % n)]);
    Graph::new(2 * n, edges).unwrap()
}

fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let low = 6 + i;
        let low_next = 6 + (i + 1) % 5;
        edges.extend([
            (0, up),
            (up, up_next),
            (low, low_next),
            (up, low),
            (up, low_next),
            (low, 11),
        ]);
    }
    Graph::new(12, edges).unwrap()
}

fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, edges).unwrap()
}

/// Ten small planar graphs, including the icosahedron where the planar
/// bound is tight.
pub fn planar_corpus() -> Vec<(String, Graph)> {
    let prism = Graph::new(
        6,
        [
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap();
    let octahedron = Graph::new(
        6,
        (0..6)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .filter(|&(u, v)| v != u + 3),
    )
    .unwrap();
    let cube = Graph::new(
        8,
        (0..8usize)
            .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
            .filter(|&(u, v)| u < v),
    )
    .unwrap();
    vec![
        ("K4".into(), graph::complete(4).unwrap()),
        ("W5".into(), wheel(5)),
        ("W7".into(), wheel(7)),
        ("octahedron".into(), octahedron),
        ("prism".into(), prism),
        ("icosahedron".into(), icosahedron()),
        ("cube".into(), cube),
        ("dodecahedron".into(), generalized_petersen(10, 2)),
        ("C7".into(), graph::cycle(7).unwrap()),
        ("grid3x3".into(), grid(3, 3)),
    ]
}

/// Numerators uniform in `0..=20`, denominators from `{1, 2, 3, 4}`.
pub fn random_costs<R: Rng>(rng: &mut R, n: usize) -> CostVector {
    let values: Vec<Rat> = (0..n)
        .map(|_| rat(rng.gen_range(0..=20), rng.gen_range(1..=4)))
        .collect();
    CostVector::new(values).expect("nonnegative by construction")
}

/// `G(n, 1/2)` conditioned on at least one edge (for `n >= 2`).
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    loop {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        if !edges.is_empty() || n < 2 {
            return Graph::new(n, edges).unwrap();
        }
    }
}

/// Random bipartite graph: a random side per vertex, cross pairs kept with
/// probability 1/2, at least one edge.
pub fn random_bipartite<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 2);
    loop {
        let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| side[u] != side[v])
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        if !edges.is_empty() {
            return Graph::new(n, edges).unwrap();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        let c = standard_corpus();
        assert_eq!(c.len(), 7 + 9 + 10 + 3);
        let p = planar_corpus();
        assert_eq!(p.len(), 10);
        for (name, g) in &p {
            // Euler bound for simple planar graphs
            assert!(g.m() <= 3 * g.n() - 6, "{name}");
        }
        let ico = &p[5].1;
        assert_eq!((ico.n(), ico.m()), (12, 30));
        assert!((0..12).all(|v| ico.degree(v) == 5));
        let dodec = &p[7].1;
        assert_eq!((dodec.n(), dodec.m()), (20, 30));
        assert!(p[6].1.is_bipartite());
    }
}
