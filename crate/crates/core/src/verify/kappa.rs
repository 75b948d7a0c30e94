//! Exact vertex connectivity by unit-capacity max-flow on the node-split
//! network.
//!
//! Node `v` becomes `v_in = 2v` and `v_out = 2v + 1` joined by a unit arc;
//! each undirected edge `{u, v}` becomes `u_out -> v_in` and `v_out -> u_in`
//! with capacity large enough that a minimum cut never uses them.

use std::collections::VecDeque;

use crate::graph::{Graph, NodeId};

struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<u32>,
    initial: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let big = n as u32 + 1;
        let mut net = SplitNetwork {
            head: Vec::with_capacity(4 * (n + 2 * g.link_count())),
            cap: Vec::new(),
            initial: Vec::new(),
            out: vec![Vec::new(); 2 * n],
        };
        for v in 0..n {
            net.arc(2 * v, 2 * v + 1, 1);
        }
        for (u, v) in g.edges() {
            net.arc(2 * u.0 + 1, 2 * v.0, big);
            net.arc(2 * v.0 + 1, 2 * u.0, big);
        }
        net.initial = net.cap.clone();
        net
    }

    fn arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    fn reset(&mut self) {
        self.cap.copy_from_slice(&self.initial);
    }

    /// Number of internally vertex-disjoint `s`-`t` paths, stopping once
    /// `limit` paths have been found.
    fn local_connectivity(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.reset();
        let (source, sink) = (2 * s + 1, 2 * t);
        let mut parent = vec![usize::MAX; self.out.len()];
        let mut flow = 0;
        while flow < limit {
            parent.fill(usize::MAX);
            parent[source] = usize::MAX - 1;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(x) = queue.pop_front() {
                for &a in &self.out[x] {
                    let y = self.head[a];
                    if self.cap[a] > 0 && parent[y] == usize::MAX {
                        parent[y] = a;
                        if y == sink {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if parent[sink] == usize::MAX {
                break;
            }
            let mut y = sink;
            while y != source {
                let a = parent[y];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Vertices whose split arc crosses the residual cut after a max-flow
    /// from `s`.
    fn cut_vertices(&self, s: usize) -> Vec<NodeId> {
        let mut seen = vec![false; self.out.len()];
        let mut queue = VecDeque::from([2 * s + 1]);
        seen[2 * s + 1] = true;
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.out.len() / 2)
            .filter(|&v| seen[2 * v] && !seen[2 * v + 1])
            .map(NodeId)
            .collect()
    }
}

/// Node connectivity and one minimum vertex cut (absent for complete
/// graphs and graphs with fewer than two nodes).
///
/// Schedule: fix a minimum-degree vertex `s`; take the minimum local
/// connectivity from `s` to every non-neighbour, then over every
/// non-adjacent pair of neighbours of `s`.
pub fn connectivity_with_cut(g: &Graph) -> (usize, Option<Vec<NodeId>>) {
    let n = g.node_count();
    if n < 2 {
        return (0, None);
    }
    if !super::is_connected(g, &[]) {
        return (0, Some(Vec::new()));
    }
    if g.is_complete() {
        return (n - 1, None);
    }
    let (s, delta) = g.min_degree().expect("non-empty graph");
    let mut best = delta;
    let mut cut: Vec<NodeId> = g.adj(s.0).iter().copied().collect();
    let mut net = SplitNetwork::new(g);

    for t in g.nodes() {
        if t == s || g.has_edge(s, t) {
            continue;
        }
        let k = net.local_connectivity(s.0, t.0, best);
        if k < best {
            best = k;
            cut = net.cut_vertices(s.0);
        }
    }
    let nbrs: Vec<NodeId> = g.adj(s.0).iter().copied().collect();
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if g.has_edge(x, y) {
                continue;
            }
            let k = net.local_connectivity(x.0, y.0, best);
            if k < best {
                best = k;
                cut = net.cut_vertices(x.0);
            }
        }
    }
    cut.sort();
    (best, Some(cut))
}
