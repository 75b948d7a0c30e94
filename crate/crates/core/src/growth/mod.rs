//! Online builders for growing networks under the rule that a link, once
//! formed, is never removed.
//!
//! Every builder keeps one or more ring orders over its nodes and wires new
//! arrivals by ring distance. Each step is logged as a [`TraceEvent`]; the
//! resulting [`GrowthTrace`] replays to the exact final graph.

mod policy;
mod trace;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::circulant_on_ring;
use crate::error::{Error, Result};
use crate::graph::{canonical, Graph, NodeId, RingOrder};

pub use policy::RobustnessPolicy;
pub use trace::{GrowthTrace, TraceEvent};

/// Where a new node enters its ring.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum InsertionStrategy {
    /// Immediately clockwise of the node most recently inserted in that ring.
    #[default]
    Latest,
    /// After a uniformly chosen member, reproducible from the seed.
    Random(u64),
}

#[derive(Clone, Debug)]
struct RingSlot {
    order: RingOrder,
    last: Option<NodeId>,
    /// Highest reconciliation demand applied so far.
    demand: usize,
}

impl RingSlot {
    fn empty() -> Self {
        RingSlot {
            order: RingOrder::default(),
            last: None,
            demand: 0,
        }
    }
}

/// Single-owner growth state machine for one [`RobustnessPolicy`].
#[derive(Clone, Debug)]
pub struct GrowthBuilder {
    policy: RobustnessPolicy,
    strategy: InsertionStrategy,
    rng: ChaCha8Rng,
    graph: Graph,
    rings: Vec<RingSlot>,
    step: usize,
    nf: usize,
    pending: Vec<(NodeId, NodeId)>,
    trace: GrowthTrace,
}

/// Adds every missing link a ring needs to be robust to `demand` failures
/// on its own: neighbours within `(demand+1)/2` hops for odd demand; for
/// even demand neighbours within `demand/2` hops plus long links (every
/// diametric pair on an even ring, and on an odd ring a clockwise link
/// `(r-1)/2` away for each member that has none in either direction).
///
/// Idempotent. Returns the links added, in order.
pub fn reconcile_ring(graph: &mut Graph, ring: &RingOrder, demand: usize) -> Result<Vec<(NodeId, NodeId)>> {
    let mut added = Vec::new();
    if demand == 0 || ring.len() < 2 {
        return Ok(added);
    }
    let reach = if demand % 2 == 1 {
        demand.div_ceil(2)
    } else {
        demand / 2
    };
    for pos in 0..ring.len() {
        let u = ring.at(pos);
        for v in ring.neighbors_within_pos(pos, reach) {
            if graph.add_edge(u, v)? {
                added.push(canonical(u, v));
            }
        }
    }
    if demand.is_multiple_of(2) {
        added.extend(long_link_pass(graph, ring)?);
    }
    Ok(added)
}

fn long_link_pass(graph: &mut Graph, ring: &RingOrder) -> Result<Vec<(NodeId, NodeId)>> {
    let r = ring.len();
    let mut added = Vec::new();
    if r.is_multiple_of(2) {
        for pos in 0..r / 2 {
            let (u, v) = (ring.at(pos), ring.at(pos + r / 2));
            if graph.add_edge(u, v)? {
                added.push(canonical(u, v));
            }
        }
    } else {
        let d = (r - 1) / 2;
        for pos in 0..r {
            let u = ring.at(pos);
            let (cw, ccw) = (ring.at(pos + d), ring.at(pos + r - d));
            if graph.has_edge(u, cw) || graph.has_edge(u, ccw) {
                continue;
            }
            graph.add_edge(u, cw)?;
            added.push(canonical(u, cw));
        }
    }
    Ok(added)
}

/// True when the circulant build for `nf`, laid on some rotation of `ring`,
/// is contained in `g`. Rotations only matter for the odd-ring sweep.
pub fn contains_static_circulant(g: &Graph, ring: &RingOrder, nf: usize) -> bool {
    let members = ring.members();
    (0..members.len().max(1)).any(|shift| {
        let mut rotated = members[shift.min(members.len())..].to_vec();
        rotated.extend_from_slice(&members[..shift.min(members.len())]);
        circulant_on_ring(&rotated, nf)
            .into_iter()
            .all(|(u, v)| g.has_edge(u, v))
    })
}

/// `1 - L / (N(N-1)/2)`: the fraction of possible links left unused.
pub fn savings_ratio(g: &Graph) -> f64 {
    let n = g.node_count() as f64;
    if n < 2.0 {
        return 0.0;
    }
    1.0 - g.link_count() as f64 / (n * (n - 1.0) / 2.0)
}

impl GrowthBuilder {
    /// Seeds a builder with `seed_n` nodes (see [`RobustnessPolicy::min_seed`]).
    pub fn new(policy: RobustnessPolicy, seed_n: usize, strategy: InsertionStrategy) -> Result<Self> {
        policy.validate()?;
        let seed = match strategy {
            InsertionStrategy::Latest => 0,
            InsertionStrategy::Random(s) => s,
        };
        let mut b = GrowthBuilder {
            rings: vec![RingSlot::empty(); policy.ring_count()],
            policy,
            strategy,
            rng: ChaCha8Rng::seed_from_u64(seed),
            graph: Graph::new(0),
            step: 0,
            nf: 0,
            pending: Vec::new(),
            trace: GrowthTrace::default(),
        };
        b.seed(seed_n)?;
        Ok(b)
    }

    /// Seeds with the policy's smallest admissible size.
    pub fn with_min_seed(policy: RobustnessPolicy, strategy: InsertionStrategy) -> Result<Self> {
        let n = policy.min_seed();
        GrowthBuilder::new(policy, n, strategy)
    }

    fn seed(&mut self, seed_n: usize) -> Result<()> {
        let bad = |why: String| Err(Error::invalid(why));
        match self.policy.clone() {
            RobustnessPolicy::FixedNf { .. } | RobustnessPolicy::VariableNf { .. } => {
                let nf = self.policy.nf_at(seed_n, 0);
                if seed_n < nf + 2 {
                    return bad(format!(
                        "seed needs at least N_f + 2 = {} nodes, got {seed_n}",
                        nf + 2
                    ));
                }
                self.graph = Graph::new(seed_n);
                let ring = RingOrder::identity(seed_n);
                for (u, v) in circulant_on_ring(ring.members(), nf) {
                    self.link(u, v)?;
                }
                self.rings[0] = RingSlot {
                    order: ring,
                    last: Some(NodeId(seed_n - 1)),
                    demand: nf,
                };
                self.nf = nf;
            }
            RobustnessPolicy::Fraction2f { .. } | RobustnessPolicy::Fraction2mf { .. } => {
                let r = self.rings.len();
                if seed_n == 0 || !seed_n.is_multiple_of(r) {
                    return bad(format!(
                        "seed size must be a positive multiple of {r}, got {seed_n}"
                    ));
                }
                for layer in 0..seed_n / r {
                    let fresh: Vec<NodeId> = (0..r).map(|i| self.insert_latest(i)).collect::<Result<_>>()?;
                    if layer == 0 {
                        // the first layer is one node per ring, wired completely
                        for (i, &u) in fresh.iter().enumerate() {
                            for &v in &fresh[i + 1..] {
                                self.link(u, v)?;
                            }
                        }
                    } else {
                        self.wire_layer(&fresh)?;
                    }
                }
                self.reconcile_all(0)?;
            }
            RobustnessPolicy::Half | RobustnessPolicy::HalfPlusN { .. } => {
                if seed_n != 2 {
                    return bad(format!("half policies seed with exactly 2 nodes, got {seed_n}"));
                }
                let a = self.insert_latest(0)?;
                let b = self.insert_latest(1)?;
                self.link(a, b)?;
                self.nf = self.policy.nf_at(2, 0);
            }
        }
        let nodes: Vec<NodeId> = self.graph.nodes().collect();
        self.finish(nodes);
        Ok(())
    }

    pub fn policy(&self) -> &RobustnessPolicy {
        &self.policy
    }

    pub fn strategy(&self) -> InsertionStrategy {
        self.strategy
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rings(&self) -> Vec<&RingOrder> {
        self.rings.iter().map(|s| &s.order).collect()
    }

    /// Robustness the current graph is built for (`N_{f,k}`).
    pub fn current_nf(&self) -> usize {
        self.nf
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    /// Full trace, starting with the seed record.
    pub fn trace(&self) -> &GrowthTrace {
        &self.trace
    }

    pub fn into_parts(self) -> (Graph, GrowthTrace) {
        (self.graph, self.trace)
    }

    /// Advances by one step of the policy.
    pub fn step(&mut self) -> Result<TraceEvent> {
        match self.policy {
            RobustnessPolicy::FixedNf { .. } => self.step_fixed_nf(),
            RobustnessPolicy::VariableNf { .. } => self.step_variable_nf(),
            RobustnessPolicy::Fraction2f { .. } => self.step_two_rings(),
            RobustnessPolicy::Fraction2mf { .. } => self.step_2m_rings(),
            RobustnessPolicy::Half => self.step_half(),
            RobustnessPolicy::HalfPlusN { .. } => self.step_half_plus_n(),
        }
    }

    /// Steps until the graph has `target` nodes. Batch arrivals are taken
    /// as a sequence of single policy steps.
    pub fn grow_to(&mut self, target: usize) -> Result<Vec<TraceEvent>> {
        let n = self.graph.node_count();
        let size = self.policy.step_size();
        if target < n || !(target - n).is_multiple_of(size) {
            return Err(Error::invalid(format!(
                "cannot grow from {n} to {target} nodes in steps of {size}"
            )));
        }
        let mut events = Vec::with_capacity((target - n) / size);
        while self.graph.node_count() < target {
            events.push(self.step()?);
        }
        Ok(events)
    }

    /// One arrival with fixed robustness: wire the newcomer to the ring
    /// neighbours within `(nf+1)/2` hops (odd `nf`), or within `nf/2` hops
    /// plus a long link and, on even rings, every missing diametric pair.
    pub fn step_fixed_nf(&mut self) -> Result<TraceEvent> {
        let RobustnessPolicy::FixedNf { nf } = self.policy else {
            return Err(self.wrong_policy("step_fixed_nf"));
        };
        let u = self.insert(0)?;
        self.wire_newcomer(u, nf)?;
        Ok(self.finish(vec![u]))
    }

    /// One arrival under a varying demand: wire the newcomer as in the fixed
    /// case, then bring every older node up to the demand.
    pub fn step_variable_nf(&mut self) -> Result<TraceEvent> {
        if !matches!(self.policy, RobustnessPolicy::VariableNf { .. }) {
            return Err(self.wrong_policy("step_variable_nf"));
        }
        let demand = self.policy.nf_at(0, self.step + 1).max(self.rings[0].demand);
        let u = self.insert(0)?;
        self.wire_newcomer(u, demand)?;
        self.rings[0].demand = demand;
        let added = reconcile_ring(&mut self.graph, &self.rings[0].order, demand)?;
        self.pending.extend(added);
        self.nf = demand;
        Ok(self.finish(vec![u]))
    }

    /// Catch-up pass without arrivals, raising the single ring to `nf_k`.
    /// A lower `nf_k` than already applied reconciles to the running maximum.
    pub fn reconcile_variable_nf(&mut self, nf_k: usize) -> Result<TraceEvent> {
        if !matches!(self.policy, RobustnessPolicy::VariableNf { .. }) {
            return Err(self.wrong_policy("reconcile_variable_nf"));
        }
        let demand = nf_k.max(self.rings[0].demand);
        self.rings[0].demand = demand;
        let added = reconcile_ring(&mut self.graph, &self.rings[0].order, demand)?;
        self.pending.extend(added);
        self.nf = demand;
        Ok(self.finish(Vec::new()))
    }

    /// Two arrivals, one per ring, joined to each other; both rings are
    /// then reconciled to `N_{f,k} - 1` with `N_{f,k} = floor(N_k / 2f_k)`.
    pub fn step_two_rings(&mut self) -> Result<TraceEvent> {
        if !matches!(self.policy, RobustnessPolicy::Fraction2f { .. }) {
            return Err(self.wrong_policy("step_two_rings"));
        }
        self.multi_ring_step()
    }

    /// `2m` arrivals, one per ring, wired as a cycle in ring order; every
    /// ring is then reconciled to `N_{f,k} - 1` with
    /// `N_{f,k} = floor(N_k / 2m f_k)`.
    pub fn step_2m_rings(&mut self) -> Result<TraceEvent> {
        if !matches!(self.policy, RobustnessPolicy::Fraction2mf { .. }) {
            return Err(self.wrong_policy("step_2m_rings"));
        }
        self.multi_ring_step()
    }

    /// Two arrivals: each joins every node of its own ring, the pair is
    /// linked, and each links to the first node of the other ring.
    pub fn step_half(&mut self) -> Result<TraceEvent> {
        if !matches!(self.policy, RobustnessPolicy::Half) {
            return Err(self.wrong_policy("step_half"));
        }
        self.half_step(1)
    }

    /// As [`Self::step_half`] but each arrival links to the first `n + 1`
    /// nodes of the other ring (all of it while the ring is smaller).
    pub fn step_half_plus_n(&mut self) -> Result<TraceEvent> {
        let RobustnessPolicy::HalfPlusN { n } = self.policy else {
            return Err(self.wrong_policy("step_half_plus_n"));
        };
        self.half_step(n + 1)
    }

    fn multi_ring_step(&mut self) -> Result<TraceEvent> {
        let fresh: Vec<NodeId> = (0..self.rings.len())
            .map(|i| self.insert(i))
            .collect::<Result<_>>()?;
        self.wire_layer(&fresh)?;
        self.reconcile_all(self.step + 1)?;
        Ok(self.finish(fresh))
    }

    fn wire_layer(&mut self, fresh: &[NodeId]) -> Result<()> {
        if fresh.len() == 2 {
            self.link(fresh[0], fresh[1])?;
        } else {
            for i in 0..fresh.len() {
                self.link(fresh[i], fresh[(i + 1) % fresh.len()])?;
            }
        }
        Ok(())
    }

    /// Per-ring demand `max(N_{f,k} - 1, 1)`, never lowered.
    fn reconcile_all(&mut self, step: usize) -> Result<()> {
        let n = self.graph.node_count();
        let nf = self.policy.nf_at(n, step);
        let per_ring = nf.saturating_sub(1).max(1);
        for i in 0..self.rings.len() {
            let demand = self.rings[i].demand.max(per_ring);
            self.rings[i].demand = demand;
            let added = reconcile_ring(&mut self.graph, &self.rings[i].order, demand)?;
            self.pending.extend(added);
        }
        self.nf = nf;
        Ok(())
    }

    fn half_step(&mut self, first: usize) -> Result<TraceEvent> {
        let a = self.insert(0)?;
        let b = self.insert(1)?;
        for (ring, u) in [(0, a), (1, b)] {
            let mates: Vec<NodeId> = self.rings[ring].order.members().to_vec();
            for v in mates.into_iter().filter(|&v| v != u) {
                self.link(u, v)?;
            }
        }
        self.link(a, b)?;
        for (u, other) in [(a, 1), (b, 0)] {
            let mut ids: Vec<NodeId> = self.rings[other].order.members().to_vec();
            ids.sort();
            for v in ids.into_iter().take(first) {
                self.link(u, v)?;
            }
        }
        self.nf = self.policy.nf_at(self.graph.node_count(), self.step + 1);
        Ok(self.finish(vec![a, b]))
    }

    fn wire_newcomer(&mut self, u: NodeId, nf: usize) -> Result<()> {
        let ring = &self.rings[0].order;
        let pos = ring.position(u).expect("just inserted");
        let r = ring.len();
        let mut targets = if nf % 2 == 1 {
            ring.neighbors_within_pos(pos, nf.div_ceil(2))
        } else {
            ring.neighbors_within_pos(pos, nf / 2)
        };
        if nf.is_multiple_of(2) {
            let d = if r.is_multiple_of(2) { r / 2 } else { (r - 1) / 2 };
            targets.push(ring.at(pos + d));
        }
        for v in targets {
            if v != u {
                self.link(u, v)?;
            }
        }
        if nf.is_multiple_of(2) && r.is_multiple_of(2) {
            let added = long_link_pass(&mut self.graph, &self.rings[0].order)?;
            self.pending.extend(added);
        }
        Ok(())
    }

    fn link(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        if self.graph.add_edge(u, v)? {
            self.pending.push(canonical(u, v));
        }
        Ok(())
    }

    fn insert_latest(&mut self, ring: usize) -> Result<NodeId> {
        let u = self.graph.add_node();
        let slot = &mut self.rings[ring];
        match slot.last {
            None => slot.order.push_first(u)?,
            Some(after) => slot.order.insert_after(u, after)?,
        }
        slot.last = Some(u);
        Ok(u)
    }

    fn insert(&mut self, ring: usize) -> Result<NodeId> {
        match self.strategy {
            InsertionStrategy::Latest => self.insert_latest(ring),
            InsertionStrategy::Random(_) => {
                let len = self.rings[ring].order.len();
                if len == 0 {
                    return self.insert_latest(ring);
                }
                let pick = self.rng.gen_range(0..len);
                let after = self.rings[ring].order.at(pick);
                let u = self.graph.add_node();
                let slot = &mut self.rings[ring];
                slot.order.insert_after(u, after)?;
                slot.last = Some(u);
                Ok(u)
            }
        }
    }

    fn finish(&mut self, added_nodes: Vec<NodeId>) -> TraceEvent {
        let n = self.graph.node_count();
        let event = TraceEvent {
            step: self.trace.events.len(),
            n,
            nf: self.nf,
            added_nodes,
            added_edges: std::mem::take(&mut self.pending),
            links: self.graph.link_count(),
            bound: self.policy.bound_at(n),
        };
        self.step = event.step;
        self.trace.events.push(event.clone());
        event
    }

    fn wrong_policy(&self, op: &str) -> Error {
        Error::invalid(format!("{op} does not apply to policy {}", self.policy.name()))
    }
}

#[cfg(test)]
mod tests;
