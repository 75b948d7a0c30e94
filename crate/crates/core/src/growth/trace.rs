use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// One growth step. Step 0 is the seed and lists every seed node and link.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub step: usize,
    /// Node count after the step.
    pub n: usize,
    pub nf: usize,
    pub added_nodes: Vec<NodeId>,
    /// New links as `(smaller, larger)` pairs, in the order they were formed.
    pub added_edges: Vec<(NodeId, NodeId)>,
    /// Link count after the step.
    pub links: usize,
    /// Link bound at `n`, `null` when the policy has none.
    #[serde(default)]
    pub bound: Option<f64>,
}

impl TraceEvent {
    /// True when no bound is known or the link count respects it.
    pub fn within_bound(&self) -> bool {
        self.bound.is_none_or(|b| self.links as f64 <= b + 1e-9)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GrowthTrace {
    pub events: Vec<TraceEvent>,
}

impl GrowthTrace {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn last(&self) -> Option<&TraceEvent> {
        self.events.last()
    }

    /// Rebuilds the graph event by event. Fails, naming the 1-based event,
    /// when node ids skip, a link repeats or dangles, or a recorded count
    /// disagrees with the replay.
    pub fn replay(&self) -> Result<Graph> {
        let mut g = Graph::new(0);
        for (i, ev) in self.events.iter().enumerate() {
            let line = i + 1;
            let fail = |message: String| Error::Trace { line, message };
            if ev.step != i {
                return Err(fail(format!("expected step {i}, found {}", ev.step)));
            }
            for &u in &ev.added_nodes {
                if u.index() != g.node_count() {
                    return Err(fail(format!(
                        "node {u} added out of order, expected {}",
                        g.node_count()
                    )));
                }
                g.add_node();
            }
            for &(u, v) in &ev.added_edges {
                match g.add_edge(u, v) {
                    Ok(true) => {}
                    Ok(false) => return Err(fail(format!("link {u}-{v} added twice"))),
                    Err(e) => return Err(fail(format!("link {u}-{v}: {e}"))),
                }
            }
            if ev.n != g.node_count() {
                return Err(fail(format!(
                    "n = {} but replay has {} nodes",
                    ev.n,
                    g.node_count()
                )));
            }
            if ev.links != g.link_count() {
                return Err(fail(format!(
                    "links = {} but replay has {}",
                    ev.links,
                    g.link_count()
                )));
            }
        }
        Ok(g)
    }
}
