//! Append-only simple undirected graphs and ring orders.
//!
//! A [`Graph`] never loses nodes or edges once they are added; failure
//! analysis works on masks over a borrowed graph instead of mutating it.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node identifier, assigned in arrival order and never reused.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for NodeId {
    fn from(v: usize) -> Self {
        NodeId(v)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Orders an unordered pair as `(min, max)`.
#[inline]
pub(crate) fn canonical(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph with an append-only edge set.
///
/// Edges are kept both as a canonical `(u, v)` set with `u < v` (for
/// deterministic export order) and as per-node adjacency sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<NodeId>>,
    edges: BTreeSet<(NodeId, NodeId)>,
}

impl Graph {
    /// Graph with `n` isolated nodes.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from an edge list, rejecting invalid or duplicate edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if !g.add_edge(NodeId(u), NodeId(v))? {
                return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of links `L`.
    pub fn link_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        (0..self.adj.len()).map(NodeId)
    }

    /// Edges in canonical order: `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().copied()
    }

    /// Appends a node and returns its identifier.
    pub fn add_node(&mut self) -> NodeId {
        self.adj.push(BTreeSet::new());
        NodeId(self.adj.len() - 1)
    }

    /// Adds the edge `{u, v}`. Returns `false` when it was already present.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::invalid(format!("self-loop at node {u}")));
        }
        if !self.edges.insert(canonical(u, v)) {
            return Ok(false);
        }
        self.adj[u.0].insert(v);
        self.adj[v.0].insert(u);
        Ok(true)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj.get(u.0).is_some_and(|s| s.contains(&v))
    }

    pub fn degree(&self, u: NodeId) -> Result<usize> {
        self.check(u)?;
        Ok(self.adj[u.0].len())
    }

    pub fn neighbors(&self, u: NodeId) -> Result<&BTreeSet<NodeId>> {
        self.check(u)?;
        Ok(&self.adj[u.0])
    }

    /// Neighbour set without a range check; `u` must be a valid node.
    pub(crate) fn adj(&self, u: usize) -> &BTreeSet<NodeId> {
        &self.adj[u]
    }

    pub fn min_degree(&self) -> Option<(NodeId, usize)> {
        self.adj
            .iter()
            .enumerate()
            .map(|(i, s)| (NodeId(i), s.len()))
            .min_by_key(|&(u, d)| (d, u))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.node_count();
        self.link_count() == n * n.saturating_sub(1) / 2
    }

    /// True when every node and edge of `self` is present in `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.node_count() <= other.node_count() && self.edges.is_subset(&other.edges)
    }

    fn check(&self, u: NodeId) -> Result<()> {
        if u.0 < self.adj.len() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "node {u} out of range for graph with {} nodes",
                self.adj.len()
            )))
        }
    }
}

/// Cyclic order over a set of nodes (the "imaginary cycle").
///
/// The ring is stored clockwise; it need not be a subgraph of the network.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingOrder {
    order: Vec<NodeId>,
}

impl RingOrder {
    pub fn new(order: Vec<NodeId>) -> Result<Self> {
        let unique: BTreeSet<_> = order.iter().collect();
        if unique.len() != order.len() {
            return Err(Error::invalid("ring members must be distinct"));
        }
        Ok(RingOrder { order })
    }

    /// Ring `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Self {
        RingOrder {
            order: (0..n).map(NodeId).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn members(&self) -> &[NodeId] {
        &self.order
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.order.contains(&u)
    }

    pub fn position(&self, u: NodeId) -> Option<usize> {
        self.order.iter().position(|&x| x == u)
    }

    /// Member at `pos` taken modulo the ring size.
    pub fn at(&self, pos: usize) -> NodeId {
        self.order[pos % self.order.len()]
    }

    /// Appends to an empty ring, or inserts `new` immediately clockwise of `after`.
    pub fn insert_after(&mut self, new: NodeId, after: NodeId) -> Result<()> {
        if self.contains(new) {
            return Err(Error::invalid(format!("node {new} is already in the ring")));
        }
        let pos = self
            .position(after)
            .ok_or_else(|| Error::invalid(format!("node {after} is not a ring member")))?;
        self.order.insert(pos + 1, new);
        Ok(())
    }

    /// Starts a ring with its first member.
    pub fn push_first(&mut self, u: NodeId) -> Result<()> {
        if !self.order.is_empty() {
            return Err(Error::invalid("ring is not empty"));
        }
        self.order.push(u);
        Ok(())
    }

    /// Minimum hop count between two members along the cycle.
    pub fn distance(&self, u: NodeId, v: NodeId) -> Option<usize> {
        let (a, b) = (self.position(u)?, self.position(v)?);
        let d = a.abs_diff(b);
        Some(d.min(self.order.len() - d))
    }

    /// Members at ring distance `1..=h` from `u`, nearest first, clockwise
    /// before counter-clockwise at equal distance.
    pub fn neighbors_within(&self, u: NodeId, h: usize) -> Result<Vec<NodeId>> {
        let pos = self
            .position(u)
            .ok_or_else(|| Error::invalid(format!("node {u} is not a ring member")))?;
        Ok(self.neighbors_within_pos(pos, h))
    }

    pub(crate) fn neighbors_within_pos(&self, pos: usize, h: usize) -> Vec<NodeId> {
        let r = self.order.len();
        let reach = h.min(r / 2);
        let mut out = Vec::with_capacity(2 * reach);
        for d in 1..=reach {
            let cw = self.order[(pos + d) % r];
            let ccw = self.order[(pos + r - d) % r];
            out.push(cw);
            if ccw != cw {
                out.push(ccw);
            }
        }
        out
    }
}
