//! Edmonds–Karp maximum flow over rational capacities.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::rational::Rat;

struct Arc {
    to: usize,
    cap: Rat,
}

pub struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    /// Adds `from -> to` with capacity `cap` and its zero-capacity reverse.
    /// Returns the arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: Rat) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc {
            to: from,
            cap: Rat::zero(),
        });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    /// Flow currently routed through arc `id`.
    #[cfg(test)]
    pub fn flow(&self, id: usize) -> &Rat {
        &self.arcs[id ^ 1].cap
    }

    /// Shortest augmenting paths in BFS order. Returns the flow value.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> Rat {
        let mut total = Rat::zero();
        loop {
            let mut via = vec![usize::MAX; self.out.len()];
            let mut seen = vec![false; self.out.len()];
            seen[source] = true;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for &a in &self.out[u] {
                    let arc = &self.arcs[a];
                    if !seen[arc.to] && arc.cap.is_positive() {
                        seen[arc.to] = true;
                        via[arc.to] = a;
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[sink] {
                return total;
            }
            let mut bottleneck: Option<Rat> = None;
            let mut v = sink;
            while v != source {
                let a = via[v];
                let cap = &self.arcs[a].cap;
                if bottleneck.as_ref().is_none_or(|b| cap < b) {
                    bottleneck = Some(cap.clone());
                }
                v = self.arcs[a ^ 1].to;
            }
            let b = bottleneck.expect("path has at least one arc");
            let mut v = sink;
            while v != source {
                let a = via[v];
                self.arcs[a].cap -= &b;
                self.arcs[a ^ 1].cap += &b;
                v = self.arcs[a ^ 1].to;
            }
            total += b;
        }
    }

    /// Nodes reachable from `source` in the residual network.
    pub fn source_side(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if !seen[arc.to] && arc.cap.is_positive() {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn small_network() {
        // s=0, t=3; classic diamond with a cross arc
        let mut f = FlowNetwork::new(4);
        f.add_arc(0, 1, int(3));
        f.add_arc(0, 2, rat(5, 2));
        f.add_arc(1, 2, int(1));
        f.add_arc(1, 3, int(2));
        let last = f.add_arc(2, 3, int(3));
        assert_eq!(f.max_flow(0, 3), int(5));
        assert_eq!(*f.flow(last), int(3));
        let side = f.source_side(0);
        assert!(side[0] && !side[3]);
    }
}
