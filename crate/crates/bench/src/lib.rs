//! Shared inputs for the criterion benches.

use robustnet_core::{GrowthBuilder, InsertionStrategy, RobustnessPolicy};

/// Grows `policy` from its minimal seed to `to` nodes and returns the link count.
pub fn grow(policy: RobustnessPolicy, to: usize) -> usize {
    let mut b = GrowthBuilder::with_min_seed(policy, InsertionStrategy::Latest).expect("valid policy");
    b.grow_to(to).expect("reachable size");
    b.graph().link_count()
}
