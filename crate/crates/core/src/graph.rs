//! Simple undirected graphs on dense vertex indices `0..n`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Sorted, deduplicated list of vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn all(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Membership mask of length `n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.0 {
            m[v] = true;
        }
        m
    }

    /// `V \ self` for a graph on `n` vertices.
    pub fn complement(&self, n: usize) -> VertexSet {
        let m = self.mask(n);
        VertexSet((0..n).filter(|&v| !m[v]).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(
            self.0
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    fn check(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::Dimension(format!(
                "vertex {v} out of range for graph on {n} vertices"
            ))),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Pairs are normalized to `(min, max)`
    /// and duplicates collapse; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Dimension(format!(
                    "edge ({u}, {v}) out of range for graph on {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        self.first_edge_inside(s).is_none()
    }

    /// Lowest edge with both endpoints in `s`, if any.
    pub fn first_edge_inside(&self, s: &VertexSet) -> Option<(usize, usize)> {
        let m = s.mask(self.n);
        self.edges.iter().copied().find(|&(u, v)| m[u] && m[v])
    }

    pub fn is_vertex_cover(&self, s: &VertexSet) -> bool {
        self.first_uncovered_edge(s).is_none()
    }

    /// Lowest edge with no endpoint in `s`, if any.
    pub fn first_uncovered_edge(&self, s: &VertexSet) -> Option<(usize, usize)> {
        let m = s.mask(self.n);
        self.edges.iter().copied().find(|&(u, v)| !m[u] && !m[v])
    }

    /// A proper 2-coloring by BFS layering, or `None` if an odd cycle exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// The subgraph induced by `s`, relabelled to `0..|s|`. The returned
    /// mapping sends each new index to its original vertex.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let g = Graph::new(map.len(), edges).expect("induced edges are valid");
        (g, map)
    }

    pub fn validate_set(&self, s: &VertexSet) -> Result<()> {
        s.check(self.n)
    }

    /// Greedy coloring in index order; returns the color classes.
    pub fn greedy_coloring(&self) -> Vec<VertexSet> {
        let mut color = vec![usize::MAX; self.n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            let mut used = vec![false; classes.len() + 1];
            for &w in &self.adj[v] {
                if color[w] != usize::MAX {
                    used[color[w]] = true;
                }
            }
            let c = used.iter().position(|&u| !u).unwrap();
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(v);
            color[v] = c;
        }
        classes.into_iter().map(VertexSet).collect()
    }

    /// DIMACS edge format, 1-indexed.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// One line per vertex: `v: n1 n2 ...`.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.n {
            let _ = write!(out, "{v}:");
            for w in &self.adj[v] {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        out
    }
}

/// Parses the DIMACS edge format (`c` comments, one `p edge n m` header,
/// `e u v` lines with 1-based endpoints).
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if n.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                if fields.len() != 4 || !matches!(fields[1], "edge" | "col") {
                    return Err(err(format!(
                        "malformed header {line:?}, expected `p edge n m`"
                    )));
                }
                let nv = fields[2]
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad vertex count {:?}", fields[2])))?;
                fields[3]
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad edge count {:?}", fields[3])))?;
                n = Some(nv);
            }
            "e" => {
                let nv = n.ok_or_else(|| err("edge line before the `p edge` header".into()))?;
                if fields.len() != 3 {
                    return Err(err(format!("malformed edge line {line:?}")));
                }
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields[1..]) {
                    let x = f
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad vertex index {f:?}")))?;
                    if x == 0 || x > nv {
                        return Err(err(format!("vertex {x} out of range 1..{nv}")));
                    }
                    *slot = x - 1;
                }
                if ends[0] == ends[1] {
                    return Err(err(format!("self-loop at vertex {}", ends[0] + 1)));
                }
                edges.push((ends[0], ends[1]));
            }
            other => return Err(err(format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing `p edge n m` header".into(),
    })?;
    Graph::new(n, edges)
}

/// Graph families whose fractional chromatic numbers are known in closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    MycielskianOf(Box<Family>),
    Kneser(usize, usize),
}

impl Family {
    /// Parses tokens such as `cycle 5`, `kneser 5 2` or `mycielski cycle 5`.
    pub fn parse(tokens: &[String]) -> Result<Family> {
        let (fam, rest) = Self::parse_prefix(tokens)?;
        if !rest.is_empty() {
            return Err(Error::Param {
                family: tokens[0].clone(),
                msg: format!("unexpected trailing parameters {rest:?}"),
            });
        }
        Ok(fam)
    }

    fn parse_prefix(tokens: &[String]) -> Result<(Family, &[String])> {
        let name = tokens.first().ok_or_else(|| Error::Param {
            family: String::new(),
            msg: "missing family name".into(),
        })?;
        let arity = match name.as_str() {
            "complete" | "cycle" => 1,
            "complete_bipartite" | "kneser" => 2,
            "mycielski" | "mycielskian_of" => {
                let (inner, rest) = Self::parse_prefix(&tokens[1..])?;
                return Ok((Family::MycielskianOf(Box::new(inner)), rest));
            }
            other => {
                return Err(Error::Param {
                    family: other.into(),
                    msg: "unknown family (expected complete, cycle, complete_bipartite, kneser, mycielski)".into(),
                })
            }
        };
        if tokens.len() < 1 + arity {
            return Err(Error::Param {
                family: name.clone(),
                msg: format!("expected {arity} integer parameter(s)"),
            });
        }
        let mut p = Vec::with_capacity(arity);
        for t in &tokens[1..=arity] {
            p.push(t.parse::<usize>().map_err(|_| Error::Param {
                family: name.clone(),
                msg: format!("bad integer {t:?}"),
            })?);
        }
        let fam = match name.as_str() {
            "complete" => Family::Complete(p[0]),
            "cycle" => Family::Cycle(p[0]),
            "complete_bipartite" => Family::CompleteBipartite(p[0], p[1]),
            _ => Family::Kneser(p[0], p[1]),
        };
        Ok((fam, &tokens[1 + arity..]))
    }

    pub fn generate(&self) -> Result<Graph> {
        match *self {
            Family::Complete(n) => complete(n),
            Family::Cycle(n) => cycle(n),
            Family::CompleteBipartite(a, b) => complete_bipartite(a, b),
            Family::MycielskianOf(ref inner) => Ok(mycielskian(&inner.generate()?)),
            Family::Kneser(n, k) => kneser(n, k),
        }
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Param {
            family: "complete".into(),
            msg: "need n >= 1".into(),
        });
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Param {
            family: "cycle".into(),
            msg: format!("need n >= 3, got {n}"),
        });
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::Param {
            family: "complete_bipartite".into(),
            msg: "both parts must be nonempty".into(),
        });
    }
    Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// Mycielski construction: originals `0..n`, shadows `n..2n`, apex `2n`.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::with_capacity(3 * g.m() + n);
    for &(u, v) in g.edges() {
        edges.push((u, v));
        edges.push((u, n + v));
        edges.push((v, n + u));
    }
    edges.extend((0..n).map(|i| (n + i, 2 * n)));
    Graph::new(2 * n + 1, edges).expect("mycielskian edges are valid")
}

/// Kneser graph `K(n, k)`: vertices are the k-subsets of `0..n` in
/// lexicographic order, adjacent when disjoint.
pub fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(Error::Param {
            family: "kneser".into(),
            msg: format!("need k >= 1 and n >= 2k, got n={n} k={k}"),
        });
    }
    let subsets = k_subsets(n, k);
    let masks: Vec<u64> = subsets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &i| m | 1 << i))
        .collect();
    let mut edges = Vec::new();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if masks[i] & masks[j] == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(masks.len(), edges)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    assert!(n <= 64, "kneser ground set limited to 64 elements");
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::new(v.to_vec())
    }

    #[test]
    fn dimacs_examples() {
        let g = parse_dimacs("p edge 2 1\ne 1 2").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);

        let g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3").unwrap();
        assert_eq!(g, complete(3).unwrap());

        let e = parse_dimacs("p edge 3 1\ne 1 4").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(e.to_string().contains("out of range"));
    }

    #[test]
    fn dimacs_errors_and_duplicates() {
        let g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.m(), 1);
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 2 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("e 1 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge x 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("c nothing"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 1\np edge 2 1"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn families() {
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.n(), c5.m()), (5, 5));
        let k3 = complete(3).unwrap();
        assert_eq!((k3.n(), k3.m()), (3, 3));
        assert!(cycle(2).is_err());
        assert!(kneser(3, 2).is_err());
        assert!(complete_bipartite(0, 3).is_err());

        let pet = kneser(5, 2).unwrap();
        // brute-force count: pairs of disjoint 2-subsets of a 5-set
        let subsets = k_subsets(5, 2);
        let mut disjoint = 0;
        for i in 0..subsets.len() {
            for j in i + 1..subsets.len() {
                if subsets[i].iter().all(|x| !subsets[j].contains(x)) {
                    disjoint += 1;
                }
            }
        }
        assert_eq!((pet.n(), pet.m()), (10, disjoint));
        assert_eq!(disjoint, 15);
        assert!(pet.neighbors(0).len() == 3);
    }

    #[test]
    fn mycielskian_of_k2_is_c5_shaped() {
        let m = mycielskian(&complete(2).unwrap());
        assert_eq!((m.n(), m.m()), (5, 5));
        assert!((0..5).all(|v| m.degree(v) == 2));
        assert!(!m.is_bipartite());
        let grotzsch = mycielskian(&cycle(5).unwrap());
        assert_eq!((grotzsch.n(), grotzsch.m()), (11, 20));
    }

    #[test]
    fn family_tokens() {
        let toks = |s: &str| s.split_whitespace().map(String::from).collect::<Vec<_>>();
        assert_eq!(Family::parse(&toks("cycle 7")).unwrap(), Family::Cycle(7));
        assert_eq!(
            Family::parse(&toks("mycielski mycielski complete 2")).unwrap(),
            Family::MycielskianOf(Box::new(Family::MycielskianOf(Box::new(Family::Complete(
                2
            )))))
        );
        assert!(Family::parse(&toks("cycle")).is_err());
        assert!(Family::parse(&toks("cycle 5 6")).is_err());
        assert!(Family::parse(&toks("wheel 5")).is_err());
        assert!(Family::parse(&toks("cycle 2")).unwrap().generate().is_err());
    }

    #[test]
    fn predicates() {
        let c5 = cycle(5).unwrap();
        assert!(c5.is_independent(&vs(&[0, 2])));
        assert!(!c5.is_independent(&vs(&[0, 1])));
        assert!(c5.is_independent(&VertexSet::empty()));

        let k3 = complete(3).unwrap();
        assert!(k3.is_vertex_cover(&vs(&[0, 1])));
        assert!(!k3.is_vertex_cover(&vs(&[0])));
        assert_eq!(k3.first_uncovered_edge(&vs(&[0])), Some((1, 2)));
        assert!(Graph::edgeless(4).is_vertex_cover(&VertexSet::empty()));

        assert!(cycle(4).unwrap().is_bipartite());
        assert!(!c5.is_bipartite());
        assert!(Graph::edgeless(3).is_bipartite());
    }

    #[test]
    fn induced() {
        let (h, map) = complete(3).unwrap().induced_subgraph(&vs(&[0, 1]));
        assert_eq!((h.n(), h.edges()), (2, &[(0, 1)][..]));
        assert_eq!(map, vec![0, 1]);

        let (p3, _) = cycle(5).unwrap().induced_subgraph(&vs(&[0, 1, 2]));
        assert_eq!(p3.edges(), &[(0, 1), (1, 2)]);

        let c5 = cycle(5).unwrap();
        let (copy, map) = c5.induced_subgraph(&VertexSet::all(5));
        assert_eq!(copy, c5);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);

        let (h, map) = c5.induced_subgraph(&vs(&[1, 3, 4]));
        assert_eq!(map, vec![1, 3, 4]);
        assert_eq!(h.edges(), &[(1, 2)]);
    }

    #[test]
    fn writers() {
        let g = cycle(3).unwrap();
        assert_eq!(g.to_dimacs(), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
        assert_eq!(g.to_adjacency_text(), "0: 1 2\n1: 0 2\n2: 0 1\n");
        assert_eq!(parse_dimacs(&g.to_dimacs()).unwrap(), g);
    }

    #[test]
    fn greedy_classes_partition() {
        let g = mycielskian(&cycle(5).unwrap());
        let classes = g.greedy_coloring();
        let total: usize = classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, g.n());
        assert!(classes.iter().all(|c| g.is_independent(c)));
    }

    #[test]
    fn new_rejects_bad_edges() {
        assert!(matches!(
            Graph::new(2, [(0, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(Graph::new(2, [(0, 2)]).is_err());
        assert!(VertexSet::new(vec![3]).check(3).is_err());
    }
}
